#include <algorithm>
#include <climits>
#include <map>
#include <tuple>

#include "qcw/layout.hpp"

namespace qcw {

namespace {

using Key = std::tuple<int, int, int, int>;

NodeKind opposite(NodeKind k) { return k == NodeKind::Z ? NodeKind::X : NodeKind::Z; }

} // namespace

LayoutResult optimize_diagram(const ZxDiagram& d, SolveMode mode, std::chrono::milliseconds budget) {
  ZxDiagram fused = drop_self_loops(fuse_spiders(d));
  Signature sig = signature(fused, {false, false});
  SolveResult sol = solve_pathwidth_fixed_endbags(sig.graph, sig.inputs, sig.outputs, mode, budget);

  std::map<int, int> rank; // spider node id -> rank
  {
    auto pos = positions(sol.order, sig.graph.n);
    for (int v = 0; v < sig.graph.n; ++v) rank[sig.node[v]] = pos[v] + 1;
  }

  // one piece per (column, spider); identity pieces carry spider = -1 - owner
  struct Piece {
    Key key;
    int spider;
    int node = -1; // id in the new diagram
  };
  std::vector<Piece> pieces;
  struct Cross {
    int a, b; // piece indices
    EdgeKind kind;
  };
  std::vector<Cross> crosses;
  struct Leg {
    int boundary;   // old boundary id
    int piece = -1; // identity piece index, or -1 for a direct line
    int spider;
    EdgeKind kind;
  };
  std::vector<Leg> legs;
  std::map<int, int> end_rank;
  for (const auto& [id, n] : fused.nodes)
    if (n.is_spider()) end_rank[id] = rank.at(id);

  for (std::size_t i = 0; i < fused.edges.size(); ++i) {
    const auto& e = fused.edges[i];
    if (!fused.node(e.u).is_spider() || !fused.node(e.v).is_spider()) continue;
    int ru = rank.at(e.u), rv = rank.at(e.v);
    Key k{std::max(ru, rv), std::min(ru, rv), static_cast<int>(i), 0};
    int pa = static_cast<int>(pieces.size());
    pieces.push_back({k, e.u});
    pieces.push_back({k, e.v});
    crosses.push_back({pa, pa + 1, e.kind});
    end_rank[e.u] = std::max(end_rank[e.u], std::get<0>(k));
    end_rank[e.v] = std::max(end_rank[e.v], std::get<0>(k));
  }

  ZxDiagram out;
  std::map<int, int> new_id;
  for (const auto& [id, n] : fused.nodes)
    if (n.is_boundary()) new_id[id] = out.add_node(n.kind, {}, n.port);

  std::vector<ZxEdge> bare; // In -> Out wires
  for (const auto& [id, n] : fused.nodes) {
    if (!n.is_spider()) continue;
    bool has_spider_nbr = false;
    int n_in = 0, n_out = 0;
    for (int ei : fused.incident(id)) {
      const auto& e = fused.edges[ei];
      int o = e.other(id);
      const auto& on = fused.node(o);
      if (on.is_spider()) {
        has_spider_nbr = true;
        continue;
      }
      bool is_in = on.kind == NodeKind::In;
      int& count = is_in ? n_in : n_out;
      Leg leg{o, -1, id, e.kind};
      if (count > 0) {
        // extra leg: identity spider of the other colour beside a fresh piece
        Key k = is_in ? Key{rank.at(id), -2, count, 0} : Key{end_rank.at(id), INT_MAX, count, 0};
        int pa = static_cast<int>(pieces.size());
        pieces.push_back({k, id});
        pieces.push_back({k, -1 - id}); // identity marker
        crosses.push_back({pa, pa + 1, EdgeKind::Plain});
        leg.piece = pa + 1;
      }
      ++count;
      legs.push_back(leg);
    }
    if (!has_spider_nbr) pieces.push_back({Key{rank.at(id), -1, 0, 0}, id});
  }
  for (const auto& e : fused.edges)
    if (fused.node(e.u).is_boundary() && fused.node(e.v).is_boundary()) bare.push_back(e);

  // columns
  std::map<Key, int> col_of;
  for (const auto& p : pieces) col_of[p.key];
  int c = 0;
  for (auto& [k, v] : col_of) v = ++c;
  const int last_col = c + 1;
  out.columns = std::map<int, int>{};

  // create pieces; identity markers are spiders of the opposite colour
  std::map<int, std::vector<int>> chain; // spider -> piece indices
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    auto& p = pieces[i];
    if (p.spider >= 0) {
      p.node = out.add_spider(fused.node(p.spider).kind);
      chain[p.spider].push_back(static_cast<int>(i));
    } else {
      int s = -1 - p.spider;
      p.node = out.add_spider(opposite(fused.node(s).kind));
    }
    out.set_column(p.node, col_of.at(p.key));
  }
  for (auto& [s, idx] : chain) {
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return pieces[a].key < pieces[b].key; });
    out.nodes.at(pieces[idx.front()].node).phase = fused.node(s).phase;
    for (std::size_t i = 1; i < idx.size(); ++i) out.add_edge(pieces[idx[i - 1]].node, pieces[idx[i]].node);
  }
  for (const auto& x : crosses) out.add_edge(pieces[x.a].node, pieces[x.b].node, x.kind);

  for (const auto& [id, n] : fused.nodes)
    if (n.is_boundary()) out.set_column(new_id.at(id), n.kind == NodeKind::In ? 0 : last_col);
  for (const auto& leg : legs) {
    int b = new_id.at(leg.boundary);
    bool is_in = fused.node(leg.boundary).kind == NodeKind::In;
    int target;
    if (leg.piece >= 0) target = pieces[leg.piece].node;
    else {
      const auto& idx = chain.at(leg.spider);
      target = pieces[is_in ? idx.front() : idx.back()].node;
    }
    if (is_in) out.add_edge(b, target, leg.kind);
    else out.add_edge(target, b, leg.kind);
  }
  for (const auto& e : bare) {
    bool u_in = fused.node(e.u).kind == NodeKind::In;
    out.add_edge(new_id.at(u_in ? e.u : e.v), new_id.at(u_in ? e.v : e.u), e.kind);
  }

  out.validate();
  return {std::move(out), std::move(sig), std::move(sol)};
}

LayoutResult reorder_diagram_cutwidth(const ZxDiagram& d, SolveMode mode, std::chrono::milliseconds budget) {
  ZxDiagram out = drop_self_loops(d);
  Signature sig = signature(out, {false, true});
  MergedGraph m = merge_boundaries(sig);
  SolveResult sol = solve_cutwidth_fixed_ends(m.graph, m.u, m.w, mode, budget);

  std::vector<int> merged_node(m.graph.n, -1);
  for (int v = 0; v < sig.graph.n; ++v)
    if (m.vertex_of[v] != m.u && m.vertex_of[v] != m.w) merged_node[m.vertex_of[v]] = sig.node[v];
  std::vector<int> seq;
  for (int v : sol.order)
    if (v != m.u && v != m.w) seq.push_back(merged_node[v]);

  // degree-2 spiders go back in right after their earlier neighbour
  for (auto it = sig.reinsertions.rbegin(); it != sig.reinsertions.rend(); ++it) {
    auto where = [&](int id) -> int {
      const auto& n = out.node(id);
      if (n.kind == NodeKind::In) return -1;
      if (n.kind == NodeKind::Out) return static_cast<int>(seq.size());
      return static_cast<int>(std::find(seq.begin(), seq.end(), id) - seq.begin());
    };
    int p = std::min(where(it->a), where(it->b));
    p = std::min(p + 1, static_cast<int>(seq.size()));
    seq.insert(seq.begin() + p, it->node);
  }

  out.columns = std::map<int, int>{};
  for (std::size_t i = 0; i < seq.size(); ++i) out.set_column(seq[i], static_cast<int>(i) + 1);
  for (const auto& [id, n] : out.nodes) {
    if (n.kind == NodeKind::In) out.set_column(id, 0);
    if (n.kind == NodeKind::Out) out.set_column(id, static_cast<int>(seq.size()) + 1);
  }
  out.validate();
  return {std::move(out), std::move(sig), std::move(sol)};
}

} // namespace qcw
