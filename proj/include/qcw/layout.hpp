#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "qcw/graph.hpp"
#include "qcw/zx.hpp"

namespace qcw {

// A degree-2 spider taken out of the signature; a and b are its neighbours
// (diagram node ids) at the time it was removed.
struct Reinsertion {
  int node = 0;
  int a = 0;
  int b = 0;
};

struct SignatureOptions {
  bool merge_leaves = true;
  bool reduce_degree2 = false;
};

struct Signature {
  Graph graph;
  std::vector<int> inputs;  // vertex set I, sorted
  std::vector<int> outputs; // vertex set O, sorted
  std::vector<int> node;    // vertex -> diagram node id
  std::vector<Reinsertion> reinsertions; // in removal order
};

Signature signature(const ZxDiagram& d, SignatureOptions opt = {});

struct MergedGraph {
  Graph graph;
  int u = 0; // merged inputs
  int w = 0; // merged outputs
  std::vector<int> vertex_of; // signature vertex -> merged vertex
};
// Missing inputs or outputs leave u or w isolated.
MergedGraph merge_boundaries(const Signature& s);

enum class SolveMode { Exact, Greedy };

struct SolveResult {
  Ordering order;
  int width = 0;
  bool optimal = false;
};

SolveResult solve_cutwidth_fixed_ends(const Graph& g, int u, int w, SolveMode mode,
                                      std::chrono::milliseconds budget = std::chrono::milliseconds(10000));
// U first, W last; each block's internal order is optimized as well.
SolveResult solve_pathwidth_fixed_endbags(const Graph& g, const std::vector<int>& U,
                                          const std::vector<int>& W, SolveMode mode,
                                          std::chrono::milliseconds budget = std::chrono::milliseconds(10000));

struct IntervalLayout {
  std::vector<int> start; // rank, 1-based
  std::vector<int> end;
  std::vector<int> track;
  int tracks = 0;
};
IntervalLayout interval_layout(const Graph& g, const Ordering& f);

std::string layout_to_json(const Ordering& f, int width, const IntervalLayout& lay);

struct LayoutResult {
  ZxDiagram diagram;
  Signature sig;
  SolveResult solve;
};

// Fuses, solves fixed-endbags pathwidth on the signature and unfuses every
// spider along its interval. Cross edges sit inside a single column.
LayoutResult optimize_diagram(const ZxDiagram& d, SolveMode mode,
                              std::chrono::milliseconds budget = std::chrono::milliseconds(10000));

// Re-columns the spiders by a fixed-endvertices cutwidth ordering of the merged
// signature; the diagram itself is untouched.
LayoutResult reorder_diagram_cutwidth(const ZxDiagram& d, SolveMode mode,
                                      std::chrono::milliseconds budget = std::chrono::milliseconds(10000));

} // namespace qcw
