#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "qcw/zx.hpp"

namespace qcw {

namespace {

struct NodeLinks {
  int left = -1;  // edge index of the horizontal edge to an earlier column
  int right = -1; // edge index to a later column
  std::vector<int> cross;
};

} // namespace

Circuit zx_to_circuit(const ZxDiagram& d0) {
  if (!d0.columns) throw ZxError("zx_to_circuit needs column assignments");
  ZxDiagram d = drop_self_loops(d0);
  const auto& col = *d.columns;
  for (const auto& [id, n] : d.nodes)
    if (!col.count(id)) throw ZxError("node " + std::to_string(id) + " has no column");

  std::map<int, NodeLinks> links;
  std::ostringstream bad;
  for (std::size_t i = 0; i < d.edges.size(); ++i) {
    const auto& e = d.edges[i];
    int cu = col.at(e.u), cv = col.at(e.v);
    int ei = static_cast<int>(i);
    if (cu == cv) {
      if (!d.node(e.u).is_spider() || !d.node(e.v).is_spider())
        throw ZxError("boundary node shares a column with its neighbour");
      links[e.u].cross.push_back(ei);
      links[e.v].cross.push_back(ei);
      continue;
    }
    int lo = cu < cv ? e.u : e.v, hi = cu < cv ? e.v : e.u;
    if (links[lo].right != -1 || links[hi].left != -1)
      throw ZxError("node has two horizontal edges on one side; not a line layout");
    links[lo].right = ei;
    links[hi].left = ei;
  }
  for (const auto& [id, l] : links)
    if (l.cross.size() > 1) throw ZxError("node " + std::to_string(id) + " has more than one cross edge");

  // cross-edge gate shapes
  for (std::size_t i = 0; i < d.edges.size(); ++i) {
    const auto& e = d.edges[i];
    if (col.at(e.u) != col.at(e.v)) continue;
    NodeKind a = d.node(e.u).kind, b = d.node(e.v).kind;
    bool ok = (a != b && e.kind == EdgeKind::Plain) || (a == b && e.kind == EdgeKind::Hadamard);
    if (!ok)
      bad << " (" << e.u << "," << e.v << ")";
  }
  if (!bad.str().empty()) throw ZxError("not circuit-like: cross edges" + bad.str());

  // chains
  struct Chain {
    std::vector<int> nodes;
    int start = 0, end = 0;
    int line = -1;
  };
  std::vector<Chain> chains;
  std::map<int, int> chain_of;
  for (const auto& [id, n] : d.nodes) {
    if (links[id].left != -1) continue;
    if (n.is_spider() && links[id].right == -1 && links[id].cross.empty()) continue; // scalar
    Chain ch;
    int cur = id;
    while (true) {
      ch.nodes.push_back(cur);
      int r = links[cur].right;
      if (r == -1) break;
      cur = d.edges[r].other(cur);
    }
    ch.start = col.at(ch.nodes.front());
    ch.end = col.at(ch.nodes.back());
    if (d.node(ch.nodes.front()).kind == NodeKind::Out) throw ZxError("output boundary starts a line");
    if (d.node(ch.nodes.back()).kind == NodeKind::In) throw ZxError("input boundary ends a line");
    for (int v : ch.nodes) chain_of[v] = static_cast<int>(chains.size());
    chains.push_back(std::move(ch));
  }
  for (const auto& [id, n] : d.nodes)
    if (!chain_of.count(id) && (links[id].right != -1 || !links[id].cross.empty() || n.is_boundary()))
      throw ZxError("horizontal edges form a cycle");

  // first-fit line assignment over column intervals
  std::vector<int> order(chains.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (chains[a].start != chains[b].start) return chains[a].start < chains[b].start;
    return chains[a].nodes.front() < chains[b].nodes.front();
  });
  std::vector<int> line_end;
  for (int ci : order) {
    auto& ch = chains[ci];
    int line = -1;
    for (std::size_t l = 0; l < line_end.size(); ++l)
      if (line_end[l] < ch.start) {
        line = static_cast<int>(l);
        break;
      }
    if (line < 0) {
      line = static_cast<int>(line_end.size());
      line_end.push_back(0);
    }
    line_end[line] = ch.end;
    ch.line = line;
  }

  Circuit c;
  c.num_qubits = static_cast<int>(line_end.size());
  for (int id : d.inputs()) c.inputs.push_back(chains[chain_of.at(id)].line);
  for (int id : d.outputs()) c.outputs.push_back(chains[chain_of.at(id)].line);

  std::map<int, std::vector<int>> by_col;
  for (const auto& [id, n] : d.nodes)
    if (chain_of.count(id)) by_col[col.at(id)].push_back(id);

  int outcome = 0;
  using K = GateKind;
  for (const auto& [cc, ids] : by_col) {
    for (int id : ids) {
      const auto& n = d.node(id);
      int q = chains[chain_of.at(id)].line;
      const auto& l = links[id];
      if (l.left != -1 && d.edges[l.left].kind == EdgeKind::Hadamard) c.gates.push_back(Gate::single(K::H, q));
      if (!n.is_spider()) continue;
      if (l.left == -1) c.gates.push_back(Gate::single(n.kind == NodeKind::Z ? K::PrepPlus : K::PrepZero, q));
      if (!n.phase.is_zero()) {
        if (n.kind == NodeKind::Z) c.gates.push_back(phase_gate(q, n.phase));
        else if (n.phase == Angle::pi()) c.gates.push_back(Gate::single(K::X, q));
        else c.gates.push_back(Gate::rx(q, n.phase));
      }
    }
    std::set<int> done;
    for (int id : ids)
      for (int ei : links[id].cross) {
        if (!done.insert(ei).second) continue;
        const auto& e = d.edges[ei];
        int qu = chains[chain_of.at(e.u)].line, qv = chains[chain_of.at(e.v)].line;
        NodeKind ku = d.node(e.u).kind, kv = d.node(e.v).kind;
        if (ku != kv) {
          if (ku == NodeKind::Z) c.gates.push_back(Gate::two(K::CNOT, qu, qv));
          else c.gates.push_back(Gate::two(K::CNOT, qv, qu));
        } else if (ku == NodeKind::Z) {
          c.gates.push_back(Gate::two(K::CZ, qu, qv));
        } else {
          for (int q : {qu, qv}) c.gates.push_back(Gate::single(K::H, q));
          c.gates.push_back(Gate::two(K::CZ, qu, qv));
          for (int q : {qu, qv}) c.gates.push_back(Gate::single(K::H, q));
        }
      }
    for (int id : ids) {
      const auto& n = d.node(id);
      if (!n.is_spider() || links[id].right != -1) continue;
      int q = chains[chain_of.at(id)].line;
      c.gates.push_back(Gate::meas(n.kind == NodeKind::Z ? K::MeasX : K::MeasZ, q, outcome++));
    }
  }
  c.validate();
  return c;
}

} // namespace qcw
