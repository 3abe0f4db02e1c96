#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcw/angle.hpp"
#include "qcw/circuit.hpp"
#include "qcw/linalg.hpp"

namespace qcw {

enum class NodeKind { Z, X, In, Out };
enum class EdgeKind { Plain, Hadamard };

struct ZxNode {
  NodeKind kind = NodeKind::Z;
  Angle phase;
  int port = -1; // In/Out only

  bool is_spider() const { return kind == NodeKind::Z || kind == NodeKind::X; }
  bool is_boundary() const { return !is_spider(); }
};

struct ZxEdge {
  int u = 0;
  int v = 0;
  EdgeKind kind = EdgeKind::Plain;

  int other(int x) const { return x == u ? v : u; }
};

class ZxError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ZxDiagram {
public:
  std::map<int, ZxNode> nodes;
  std::vector<ZxEdge> edges;
  std::optional<std::map<int, int>> columns;

  int add_node(NodeKind kind, Angle phase = {}, int port = -1);
  int add_spider(NodeKind kind, Angle phase = {}) { return add_node(kind, phase); }
  void add_edge(int u, int v, EdgeKind kind = EdgeKind::Plain);
  void remove_node(int id); // also drops incident edges
  void set_column(int id, int col);

  const ZxNode& node(int id) const { return nodes.at(id); }
  std::vector<int> incident(int id) const; // edge indices; self-loops listed once
  int degree(int id) const;                // self-loops count twice
  std::vector<int> inputs() const;         // node ids ordered by port
  std::vector<int> outputs() const;
  int spider_count() const;
  int next_id() const { return next_id_; }

  void validate() const;

private:
  int next_id_ = 0;
};

ZxDiagram circuit_to_zx(const Circuit& c);
ZxDiagram fuse_spiders(const ZxDiagram& d);
ZxDiagram remove_identity_spiders(const ZxDiagram& d);
// Recolors every X spider to Z (toggling its edges) and fuses: all spider-spider
// edges of the result are Hadamard edges between Z spiders.
ZxDiagram to_graph_like(const ZxDiagram& d);
// Plain self-loops vanish, Hadamard self-loops add pi.
ZxDiagram drop_self_loops(const ZxDiagram& d);

CMatrix evaluate_tensor(const ZxDiagram& d, int cap = 12);

Circuit zx_to_circuit(const ZxDiagram& d);

// Max number of wires met by a vertical cut: either the gap between two
// consecutive occupied columns, or through a column (wires passing over it
// plus the vertical wires inside it).
int max_cut(const ZxDiagram& d);

std::string zx_to_json(const ZxDiagram& d);
ZxDiagram zx_from_json(const std::string& text);

} // namespace qcw
