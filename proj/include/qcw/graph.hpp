#pragma once

#include <string>
#include <utility>
#include <vector>

namespace qcw {

// Undirected multigraph on vertices 0..n-1.
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  explicit Graph(int n_ = 0) : n(n_) {}
  void add_edge(int u, int v) { edges.emplace_back(u, v); }
  // neighbor lists with multiplicity, self-loops skipped
  std::vector<std::vector<int>> adjacency() const;
};

// Directed graph with set semantics on arcs; self-loops allowed.
struct Digraph {
  int n = 0;
  std::vector<std::vector<int>> out;

  explicit Digraph(int n_ = 0) : n(n_), out(n_) {}
  void add_arc(int u, int v);
  bool has_arc(int u, int v) const;
  std::size_t arc_count() const;
  // true when the subgraph induced by vertices with removed[v] == false is acyclic
  bool acyclic_without(const std::vector<bool>& removed) const;
  bool acyclic() const { return acyclic_without(std::vector<bool>(n, false)); }
};

// order[pos] = vertex; the rank of vertex v is pos + 1
using Ordering = std::vector<int>;
std::vector<int> positions(const Ordering& f, int n);

int cutwidth_of(const Graph& g, const Ordering& f);
int vsep_of(const Graph& g, const Ordering& f);

// Edge-list text: "u v" per line, "#" comments, optional "U ..." / "W ..." lines
struct GraphInstance {
  Graph graph;
  std::vector<int> U, W;
};
GraphInstance parse_edge_list(const std::string& text);

// DIMACS-like arc list: "p fvs n m" then "a u v" (1-based)
std::string to_dimacs(const Digraph& g);
Digraph parse_dimacs(const std::string& text);

} // namespace qcw
