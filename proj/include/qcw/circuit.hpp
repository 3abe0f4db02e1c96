#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qcw/angle.hpp"

namespace qcw {

enum class GateKind {
  H, X, Z, S, Sdg, T, Tdg, Rz, Rx,
  CNOT, CZ,
  PrepPlus, PrepZero,
  MeasX, MeasZ,
  CtrlZ, CtrlX,
};

std::string_view kind_name(GateKind k);
std::optional<GateKind> kind_from_name(std::string_view s);
int arity(GateKind k);
bool is_measurement(GateKind k);
bool is_preparation(GateKind k);
bool is_controlled(GateKind k);

struct Gate {
  GateKind kind = GateKind::H;
  std::vector<int> qubits;
  Angle angle;      // Rz / Rx only
  int outcome = -1; // MeasX/MeasZ: id defined; CtrlZ/CtrlX: id referenced

  bool operator==(const Gate&) const = default;

  static Gate single(GateKind k, int q) { return Gate{k, {q}, {}, -1}; }
  static Gate two(GateKind k, int a, int b) { return Gate{k, {a, b}, {}, -1}; }
  static Gate rz(int q, Angle a) { return Gate{GateKind::Rz, {q}, a, -1}; }
  static Gate rx(int q, Angle a) { return Gate{GateKind::Rx, {q}, a, -1}; }
  static Gate meas(GateKind k, int q, int s) { return Gate{k, {q}, {}, s}; }
  static Gate ctrl(GateKind k, int q, int s) { return Gate{k, {q}, {}, s}; }
};

// Z-axis phase carried by a diagonal single-qubit gate (Z, S, Sdg, T, Tdg, Rz)
std::optional<Angle> z_phase(const Gate& g);
// Diagonal single-qubit gate for a Z-axis phase, using the named gate when one fits
Gate phase_gate(int q, const Angle& a);
bool is_non_clifford(const Gate& g);

struct Circuit {
  int num_qubits = 0;
  std::vector<Gate> gates;
  // inputs[k] / outputs[k]: qubit carrying port k
  std::vector<int> inputs;
  std::vector<int> outputs;
  std::vector<std::string> names; // optional labels, size num_qubits when present

  static Circuit identity(int n);
  int next_outcome() const;
  // throws CircuitError when an invariant of the gate list is broken
  void validate() const;
  bool operator==(const Circuit&) const = default;
};

class CircuitError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
  ParseError(int line, const std::string& msg);
  int line() const { return line_; }

private:
  int line_;
};

Circuit parse_qc(std::string_view text);
std::string write_qc(const Circuit& c);

Circuit circuit_from_json(std::string_view text);
std::string circuit_to_json(const Circuit& c);

// Reads .qc or .json by extension
Circuit load_circuit(const std::string& path);
void save_circuit(const Circuit& c, const std::string& path);

int count_kind(const Circuit& c, GateKind k);

} // namespace qcw
