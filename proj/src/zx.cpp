#include "qcw/zx.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

namespace qcw {

int ZxDiagram::add_node(NodeKind kind, Angle phase, int port) {
  int id = next_id_++;
  nodes[id] = ZxNode{kind, phase, port};
  return id;
}

void ZxDiagram::add_edge(int u, int v, EdgeKind kind) {
  if (!nodes.count(u) || !nodes.count(v)) throw ZxError("edge references unknown node");
  edges.push_back(ZxEdge{u, v, kind});
}

void ZxDiagram::remove_node(int id) {
  nodes.erase(id);
  std::erase_if(edges, [id](const ZxEdge& e) { return e.u == id || e.v == id; });
  if (columns) columns->erase(id);
}

void ZxDiagram::set_column(int id, int col) {
  if (!columns) columns.emplace();
  (*columns)[id] = col;
}

std::vector<int> ZxDiagram::incident(int id) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edges[i].u == id || edges[i].v == id) out.push_back(static_cast<int>(i));
  return out;
}

int ZxDiagram::degree(int id) const {
  int d = 0;
  for (const auto& e : edges) d += (e.u == id) + (e.v == id);
  return d;
}

namespace {

std::vector<int> boundary_nodes(const ZxDiagram& d, NodeKind kind) {
  std::vector<std::pair<int, int>> found;
  for (const auto& [id, n] : d.nodes)
    if (n.kind == kind) found.emplace_back(n.port, id);
  std::sort(found.begin(), found.end());
  std::vector<int> out;
  for (auto& f : found) out.push_back(f.second);
  return out;
}

} // namespace

std::vector<int> ZxDiagram::inputs() const { return boundary_nodes(*this, NodeKind::In); }
std::vector<int> ZxDiagram::outputs() const { return boundary_nodes(*this, NodeKind::Out); }

int ZxDiagram::spider_count() const {
  int k = 0;
  for (const auto& [id, n] : nodes) k += n.is_spider();
  return k;
}

void ZxDiagram::validate() const {
  for (const auto& e : edges)
    if (!nodes.count(e.u) || !nodes.count(e.v)) throw ZxError("edge references unknown node");
  for (NodeKind k : {NodeKind::In, NodeKind::Out}) {
    auto b = boundary_nodes(*this, k);
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (nodes.at(b[i]).port != static_cast<int>(i))
        throw ZxError("boundary ports must be 0..k-1 without gaps");
      if (degree(b[i]) != 1) throw ZxError("boundary node " + std::to_string(b[i]) + " must have degree 1");
    }
  }
  if (columns)
    for (const auto& [id, col] : *columns)
      if (!nodes.count(id)) throw ZxError("column assigned to unknown node");
}

// ---------------------------------------------------------------------------
// circuit -> diagram

ZxDiagram circuit_to_zx(const Circuit& c) {
  c.validate();
  using K = GateKind;
  ZxDiagram d;
  int n = c.num_qubits;
  std::vector<int> last(n, -1);
  std::vector<bool> pending_h(n, false);
  auto col_of = [](std::size_t gate_index) { return 3 * static_cast<int>(gate_index + 1); };

  for (std::size_t k = 0; k < c.inputs.size(); ++k) {
    int id = d.add_node(NodeKind::In, {}, static_cast<int>(k));
    d.set_column(id, 0);
    last[c.inputs[k]] = id;
  }
  auto attach = [&](int q, int id) {
    d.add_edge(last[q], id, pending_h[q] ? EdgeKind::Hadamard : EdgeKind::Plain);
    pending_h[q] = false;
    last[q] = id;
  };
  // a qubit touched before any preparation starts in |0>
  auto ensure_live = [&](int q, int col) {
    if (last[q] != -1) return;
    int id = d.add_spider(NodeKind::X);
    d.set_column(id, col - 1);
    last[q] = id;
    pending_h[q] = false;
  };
  auto spider_on = [&](int q, NodeKind kind, Angle phase, int col) {
    ensure_live(q, col);
    int id = d.add_spider(kind, phase);
    d.set_column(id, col);
    attach(q, id);
    return id;
  };

  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    int col = col_of(i);
    int q = g.qubits[0];
    if (auto ph = z_phase(g)) {
      spider_on(q, NodeKind::Z, *ph, col);
      continue;
    }
    switch (g.kind) {
      case K::H:
        ensure_live(q, col);
        pending_h[q] = !pending_h[q];
        break;
      case K::X: spider_on(q, NodeKind::X, Angle::pi(), col); break;
      case K::Rx: spider_on(q, NodeKind::X, g.angle, col); break;
      case K::CNOT: {
        int a = spider_on(g.qubits[0], NodeKind::Z, {}, col);
        int b = spider_on(g.qubits[1], NodeKind::X, {}, col);
        d.add_edge(a, b, EdgeKind::Plain);
        break;
      }
      case K::CZ: {
        int a = spider_on(g.qubits[0], NodeKind::Z, {}, col);
        int b = spider_on(g.qubits[1], NodeKind::Z, {}, col);
        d.add_edge(a, b, EdgeKind::Hadamard);
        break;
      }
      case K::PrepPlus:
      case K::PrepZero: {
        int id = d.add_spider(g.kind == K::PrepPlus ? NodeKind::Z : NodeKind::X);
        d.set_column(id, col);
        last[q] = id;
        pending_h[q] = false;
        break;
      }
      case K::MeasX:
      case K::MeasZ:
        // outcome 0 branch
        spider_on(q, g.kind == K::MeasX ? NodeKind::Z : NodeKind::X, {}, col);
        last[q] = -1;
        break;
      case K::CtrlX:
      case K::CtrlZ: break;
      default: throw ZxError("unsupported gate in circuit_to_zx");
    }
  }

  int end_col = col_of(c.gates.size());
  std::vector<bool> is_output(n, false);
  for (std::size_t k = 0; k < c.outputs.size(); ++k) {
    int q = c.outputs[k];
    is_output[q] = true;
    ensure_live(q, end_col);
    int id = d.add_node(NodeKind::Out, {}, static_cast<int>(k));
    d.set_column(id, end_col + 1);
    attach(q, id);
  }
  // live non-output qubits are projected onto <0|
  for (int q = 0; q < n; ++q) {
    if (is_output[q] || last[q] == -1) continue;
    int id = d.add_spider(NodeKind::X);
    d.set_column(id, end_col);
    attach(q, id);
  }
  return d;
}

// ---------------------------------------------------------------------------
// rewrites

ZxDiagram drop_self_loops(const ZxDiagram& d) {
  ZxDiagram out = d;
  std::vector<ZxEdge> kept;
  for (const auto& e : out.edges) {
    if (e.u != e.v) {
      kept.push_back(e);
      continue;
    }
    if (!out.nodes.at(e.u).is_spider()) throw ZxError("self-loop on a boundary node");
    if (e.kind == EdgeKind::Hadamard) out.nodes.at(e.u).phase += Angle::pi();
  }
  out.edges = std::move(kept);
  return out;
}

namespace {

bool same_color_spiders(const ZxDiagram& d, int u, int v) {
  const auto& a = d.nodes.at(u);
  const auto& b = d.nodes.at(v);
  return a.is_spider() && b.is_spider() && a.kind == b.kind;
}

// merges v into u
void merge_into(ZxDiagram& d, int u, int v) {
  d.nodes.at(u).phase += d.nodes.at(v).phase;
  for (auto& e : d.edges) {
    if (e.u == v) e.u = u;
    if (e.v == v) e.v = u;
  }
  d.nodes.erase(v);
  if (d.columns) d.columns->erase(v);
}

} // namespace

ZxDiagram fuse_spiders(const ZxDiagram& d) {
  ZxDiagram out = d;
  while (true) {
    int hit = -1;
    for (std::size_t i = 0; i < out.edges.size(); ++i) {
      const auto& e = out.edges[i];
      if (e.u != e.v && e.kind == EdgeKind::Plain && same_color_spiders(out, e.u, e.v)) {
        hit = static_cast<int>(i);
        break;
      }
    }
    if (hit < 0) break;
    ZxEdge e = out.edges[hit];
    out.edges.erase(out.edges.begin() + hit);
    merge_into(out, std::min(e.u, e.v), std::max(e.u, e.v));
    out = drop_self_loops(out);
  }
  return drop_self_loops(out);
}

ZxDiagram remove_identity_spiders(const ZxDiagram& d) {
  ZxDiagram out = drop_self_loops(d);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [id, n] : out.nodes) {
      if (!n.is_spider() || !n.phase.is_zero()) continue;
      auto inc = out.incident(id);
      if (inc.size() != 2) continue;
      const ZxEdge e1 = out.edges[inc[0]], e2 = out.edges[inc[1]];
      if (e1.u == e1.v || e2.u == e2.v) continue;
      int x = e1.other(id), y = e2.other(id);
      bool h = (e1.kind == EdgeKind::Hadamard) != (e2.kind == EdgeKind::Hadamard);
      out.remove_node(id);
      out.add_edge(x, y, h ? EdgeKind::Hadamard : EdgeKind::Plain);
      out = drop_self_loops(out);
      changed = true;
      break;
    }
  }
  return out;
}

ZxDiagram to_graph_like(const ZxDiagram& d) {
  ZxDiagram out = d;
  std::set<int> recolor;
  for (auto& [id, n] : out.nodes)
    if (n.kind == NodeKind::X) {
      n.kind = NodeKind::Z;
      recolor.insert(id);
    }
  for (auto& e : out.edges) {
    int flips = static_cast<int>(recolor.count(e.u)) + static_cast<int>(recolor.count(e.v));
    if (flips % 2) e.kind = e.kind == EdgeKind::Plain ? EdgeKind::Hadamard : EdgeKind::Plain;
  }
  return fuse_spiders(out);
}

// ---------------------------------------------------------------------------
// footprint

int max_cut(const ZxDiagram& d) {
  if (!d.columns) throw ZxError("max_cut needs column assignments");
  const auto& col = *d.columns;
  for (const auto& [id, n] : d.nodes)
    if (!col.count(id)) throw ZxError("node " + std::to_string(id) + " has no column");
  std::set<int> used;
  for (const auto& [id, c] : col) used.insert(c);
  std::vector<int> cols(used.begin(), used.end());
  int best = 0;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    int gap = 0, inside = 0; // right after column i / through it
    for (const auto& e : d.edges) {
      int a = std::min(col.at(e.u), col.at(e.v)), b = std::max(col.at(e.u), col.at(e.v));
      if (a <= cols[i] && b > cols[i]) ++gap;
      if ((a < cols[i] && b > cols[i]) || (a == cols[i] && b == cols[i] && e.u != e.v)) ++inside;
    }
    if (i + 1 < cols.size()) best = std::max(best, gap);
    best = std::max(best, inside);
  }
  return best;
}

// ---------------------------------------------------------------------------
// JSON

using nlohmann::json;

namespace {

std::string node_kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::Z: return "Z";
    case NodeKind::X: return "X";
    case NodeKind::In: return "in";
    case NodeKind::Out: return "out";
  }
  return "?";
}

NodeKind node_kind_from(const std::string& s) {
  if (s == "Z") return NodeKind::Z;
  if (s == "X") return NodeKind::X;
  if (s == "in") return NodeKind::In;
  if (s == "out") return NodeKind::Out;
  throw ZxError("unknown node kind '" + s + "'");
}

json phase_json(const Angle& a) {
  if (a.is_symbolic()) return a.str();
  return json::array({a.num(), a.den()});
}

Angle phase_from(const json& j) {
  if (j.is_string()) return Angle::parse(j.get<std::string>());
  if (j.is_array() && j.size() == 2) return Angle(j[0].get<std::int64_t>(), j[1].get<std::int64_t>());
  if (j.is_number_integer() && j.get<int>() == 0) return {};
  throw ZxError("phase must be [num, den] or a string");
}

} // namespace

std::string zx_to_json(const ZxDiagram& d) {
  json nodes = json::array(), edges = json::array();
  for (const auto& [id, n] : d.nodes) {
    json jn{{"id", id}, {"kind", node_kind_name(n.kind)}};
    if (n.is_spider()) jn["phase"] = phase_json(n.phase);
    else jn["port"] = n.port;
    nodes.push_back(jn);
  }
  for (const auto& e : d.edges)
    edges.push_back(json::array({e.u, e.v, e.kind == EdgeKind::Plain ? "plain" : "h"}));
  json j{{"nodes", nodes}, {"edges", edges}};
  if (d.columns) {
    json cols = json::object();
    for (const auto& [id, c] : *d.columns) cols[std::to_string(id)] = c;
    j["columns"] = cols;
  }
  return j.dump(2);
}

ZxDiagram zx_from_json(const std::string& text) {
  ZxDiagram d;
  try {
    json j = json::parse(text);
    std::map<int, int> remap;
    std::vector<std::pair<int, ZxNode>> raw;
    for (const auto& jn : j.at("nodes")) {
      ZxNode n;
      n.kind = node_kind_from(jn.at("kind").get<std::string>());
      if (jn.contains("phase")) n.phase = phase_from(jn["phase"]);
      if (!n.is_spider()) n.port = jn.at("port").get<int>();
      raw.emplace_back(jn.at("id").get<int>(), n);
    }
    std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [id, n] : raw) {
      if (remap.count(id)) throw ZxError("duplicate node id " + std::to_string(id));
      // ids are kept when they are dense from 0, otherwise renumbered in order
      remap[id] = d.add_node(n.kind, n.phase, n.port);
    }
    for (const auto& je : j.at("edges")) {
      std::string kind = je.size() > 2 ? je[2].get<std::string>() : "plain";
      if (kind != "plain" && kind != "h") throw ZxError("edge kind must be plain or h");
      d.add_edge(remap.at(je[0].get<int>()), remap.at(je[1].get<int>()),
                 kind == "h" ? EdgeKind::Hadamard : EdgeKind::Plain);
    }
    if (j.contains("columns"))
      for (const auto& [key, val] : j["columns"].items()) d.set_column(remap.at(std::stoi(key)), val.get<int>());
  } catch (const json::exception& e) {
    throw ZxError(std::string("bad diagram JSON: ") + e.what());
  } catch (const std::out_of_range&) {
    throw ZxError("bad diagram JSON: edge or column references unknown node");
  }
  d.validate();
  return d;
}

} // namespace qcw
