#pragma once

#include <chrono>
#include <vector>

#include "qcw/circuit.hpp"
#include "qcw/gadget.hpp"
#include "qcw/graph.hpp"

namespace qcw {

// Vertices 0..m-1 are p_0..p_{m-1} (gadgets), m..m+l-1 are h_0..h_{l-1} (pairs).
struct PrecedenceGraph {
  int num_gadgets = 0;
  int num_pairs = 0;
  Digraph arcs;

  int p(int i) const { return i; }
  int h(int j) const { return num_gadgets + j; }
  bool is_h(int v) const { return v >= num_gadgets; }
};

PrecedenceGraph build_precedence_graph(const GadgetizedCircuit& g);

// Digraph on pair indices 0..l-1.
using HConflictGraph = Digraph;
HConflictGraph project_h_graph(const PrecedenceGraph& pg);

enum class FvsMode { Exact, Heuristic };

struct FvsResult {
  std::vector<int> vertices; // sorted
  bool optimal = false;
};

FvsResult min_fvs(const Digraph& g, FvsMode mode,
                  std::chrono::milliseconds budget = std::chrono::milliseconds(10000));

// Keeps the pairs in X gadgetized, turns every other pair back into an H gate.
Circuit degadgetize(const GadgetizedCircuit& g, const std::vector<int>& X);

class DegadgetError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace qcw
