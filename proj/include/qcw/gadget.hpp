#pragma once

#include <stdexcept>
#include <vector>

#include "qcw/circuit.hpp"

namespace qcw {

struct PauliZProduct {
  std::vector<int> support; // sorted, distinct
  bool operator==(const PauliZProduct&) const = default;
  bool operator<(const PauliZProduct& o) const { return support < o.support; }
  bool has(int q) const;
};

// exp(-i angle P / 2), replayed as e^{i angle parity} up to global phase
struct PhaseGadget {
  PauliZProduct product;
  Angle angle;
  bool operator==(const PhaseGadget&) const = default;
};

// Hadamard gadget: PrepPlus(b); CZ(a,b); [Z(b) if flip]; MeasX(a); corrections on b.
struct HPair {
  int a = 0;
  int b = 0;
  bool flip = false;
  std::vector<GateKind> corrections; // CtrlX / CtrlZ on b, in order
  bool operator==(const HPair&) const = default;
};

struct EventRef {
  enum Kind { Gadget, Pair } kind;
  int index;
  bool operator==(const EventRef&) const = default;
};

struct GadgetizedCircuit {
  int num_qubits = 0;
  std::vector<int> inputs;  // port -> qubit, all created before the first event
  std::vector<int> outputs; // port -> qubit after trailing_clifford
  std::vector<Gate> leading_clifford;
  std::vector<PhaseGadget> gadgets;
  std::vector<HPair> h_pairs;
  std::vector<EventRef> event_order; // extraction order; may be empty for hand-built instances
  std::vector<Gate> trailing_clifford;

  int n_original() const { return num_qubits - static_cast<int>(h_pairs.size()); }
  // qubits that exist before the first event (not created by a pair)
  std::vector<bool> initial_mask() const;
  void validate() const;
};

class ExtractError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Indices of H gates with a non-Clifford gate somewhere before and after.
std::vector<int> internal_hadamards(const Circuit& c);
Circuit gadgetize_hadamards(const Circuit& c);

GadgetizedCircuit extract_gadget_form(const Circuit& c);

// Keeps every pair gadgetized: degadgetize(g, all pairs).
Circuit replay(const GadgetizedCircuit& g);

GadgetizedCircuit gadgetized_from_json(const std::string& text);
std::string gadgetized_to_json(const GadgetizedCircuit& g);

// Gates of the CNOT ladder realizing a phase gadget on the given lines.
void emit_gadget(std::vector<Gate>& out, const std::vector<int>& lines, const Angle& angle);

} // namespace qcw
