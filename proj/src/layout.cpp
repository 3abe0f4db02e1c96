#include "qcw/layout.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <unordered_set>

#include <json.hpp>

namespace qcw {

// ---------------------------------------------------------------------------
// signature

Signature signature(const ZxDiagram& d0, SignatureOptions opt) {
  ZxDiagram d = drop_self_loops(d0);
  std::map<int, std::vector<int>> adj;
  for (const auto& [id, n] : d.nodes) adj[id];
  for (const auto& e : d.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  auto erase_one = [&](int at, int val) {
    auto& v = adj[at];
    v.erase(std::find(v.begin(), v.end(), val));
  };

  Signature s;
  if (opt.reduce_degree2) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto& [id, nb] : adj) {
        if (!d.node(id).is_spider() || nb.size() != 2 || nb[0] == nb[1]) continue;
        int a = nb[0], b = nb[1];
        erase_one(a, id);
        erase_one(b, id);
        adj[a].push_back(b);
        adj[b].push_back(a);
        s.reinsertions.push_back({id, a, b});
        adj.erase(id);
        changed = true;
        break;
      }
    }
  }

  std::set<int> in_set, out_set;
  if (opt.merge_leaves) {
    // decided on the unmerged graph: a spider with exactly one boundary neighbour absorbs it
    std::vector<std::pair<int, int>> absorb;
    for (const auto& [id, nb] : adj) {
      if (!d.node(id).is_spider()) continue;
      std::vector<int> bnd;
      for (int x : nb)
        if (d.node(x).is_boundary()) bnd.push_back(x);
      if (bnd.size() == 1) absorb.emplace_back(id, bnd[0]);
    }
    for (auto [sp, b] : absorb) {
      (d.node(b).kind == NodeKind::In ? in_set : out_set).insert(sp);
      erase_one(sp, b);
      adj.erase(b);
    }
  }
  for (const auto& [id, nb] : adj) {
    if (d.node(id).kind == NodeKind::In) in_set.insert(id);
    if (d.node(id).kind == NodeKind::Out) out_set.insert(id);
  }

  std::map<int, int> vid;
  for (const auto& [id, nb] : adj) {
    vid[id] = static_cast<int>(s.node.size());
    s.node.push_back(id);
  }
  s.graph = Graph(static_cast<int>(s.node.size()));
  for (const auto& [id, nb] : adj)
    for (int x : nb)
      if (id < x) s.graph.add_edge(vid[id], vid[x]);
  for (int id : in_set) s.inputs.push_back(vid[id]);
  for (int id : out_set) s.outputs.push_back(vid[id]);
  std::sort(s.inputs.begin(), s.inputs.end());
  std::sort(s.outputs.begin(), s.outputs.end());
  return s;
}

MergedGraph merge_boundaries(const Signature& s) {
  MergedGraph m;
  int n = s.graph.n;
  std::vector<int> role(n, 0); // 1 input, 2 output
  for (int v : s.inputs) role[v] = 1;
  for (int v : s.outputs) {
    if (role[v] == 1) throw std::invalid_argument("merge_boundaries: vertex in both I and O");
    role[v] = 2;
  }
  m.vertex_of.assign(n, -1);
  m.u = 0;
  int next = 1;
  for (int v = 0; v < n; ++v)
    if (role[v] == 0) m.vertex_of[v] = next++;
  m.w = next++;
  for (int v = 0; v < n; ++v) {
    if (role[v] == 1) m.vertex_of[v] = m.u;
    if (role[v] == 2) m.vertex_of[v] = m.w;
  }
  m.graph = Graph(next);
  for (auto [a, b] : s.graph.edges) {
    int x = m.vertex_of[a], y = m.vertex_of[b];
    if (x != y) m.graph.add_edge(x, y);
  }
  return m;
}

// ---------------------------------------------------------------------------
// solvers

namespace {

using Mask = std::uint64_t;
using Clock = std::chrono::steady_clock;

struct BudgetExceeded {};

class Deadline {
public:
  explicit Deadline(std::chrono::milliseconds budget) : end_(Clock::now() + budget) {}
  void tick() {
    if ((++count_ & 0x3ff) == 0 && Clock::now() > end_) throw BudgetExceeded{};
  }

private:
  Clock::time_point end_;
  std::uint64_t count_ = 0;
};

std::vector<std::vector<int>> distinct_neighbors(const Graph& g) {
  auto adj = g.adjacency();
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  return adj;
}

// multiplicity matrix, self-loops ignored
std::vector<std::vector<int>> multiplicity(const Graph& g) {
  std::vector<std::vector<int>> m(g.n, std::vector<int>(g.n, 0));
  for (auto [a, b] : g.edges)
    if (a != b) {
      ++m[a][b];
      ++m[b][a];
    }
  return m;
}

// Searches orders of `block` after `base` such that every prefix value stays <= k.
// value(S) is evaluated on the full placed set. Memoizes failed block subsets.
template <class Value>
bool search_block(const std::vector<int>& block, Mask base, int k, Value value, Deadline& dl,
                  std::vector<int>& out) {
  const int m = static_cast<int>(block.size());
  if (m == 0) return true;
  const Mask full = m == 64 ? ~Mask{0} : (Mask{1} << m) - 1;
  std::unordered_set<Mask> dead;
  std::vector<int> stack;
  // iterative DFS would be longer; depth is at most m
  auto rec = [&](auto&& self, Mask t, Mask placed) -> bool {
    if (t == full) return true;
    for (int i = 0; i < m; ++i) {
      Mask bit = Mask{1} << i;
      if (t & bit) continue;
      Mask t2 = t | bit;
      if (dead.count(t2)) continue;
      dl.tick();
      Mask p2 = placed | (Mask{1} << block[i]);
      if (value(p2) > k) {
        dead.insert(t2);
        continue;
      }
      stack.push_back(block[i]);
      if (self(self, t2, p2)) return true;
      stack.pop_back();
    }
    dead.insert(t);
    return false;
  };
  if (!rec(rec, 0, base)) return false;
  out.insert(out.end(), stack.begin(), stack.end());
  return true;
}

SolveResult greedy_vsep(const Graph& g, const std::vector<std::vector<int>>& blocks) {
  auto nb = distinct_neighbors(g);
  int n = g.n;
  std::vector<char> in(n, 0);
  std::vector<int> outside(n);
  for (int v = 0; v < n; ++v) outside[v] = static_cast<int>(nb[v].size());
  int sep = 0;
  SolveResult r;
  for (const auto& block : blocks) {
    std::vector<int> left = block;
    while (!left.empty()) {
      int best = -1, best_sep = 0, best_new = 0;
      for (int v : left) {
        int s2 = sep;
        for (int y : nb[v])
          if (in[y] && outside[y] == 1) --s2;
        int newr = 0;
        for (int y : nb[v]) newr += !in[y];
        if (newr > 0) ++s2;
        if (best < 0 || s2 < best_sep || (s2 == best_sep && (newr < best_new || (newr == best_new && v < best)))) {
          best = v;
          best_sep = s2;
          best_new = newr;
        }
      }
      in[best] = 1;
      for (int y : nb[best]) --outside[y];
      sep = best_sep;
      r.width = std::max(r.width, sep);
      r.order.push_back(best);
      left.erase(std::find(left.begin(), left.end(), best));
    }
  }
  return r;
}

std::vector<std::vector<int>> endbag_blocks(int n, const std::vector<int>& U, const std::vector<int>& W) {
  std::vector<int> role(n, 0);
  for (int v : U) role.at(v) = 1;
  for (int v : W) {
    if (role.at(v) == 1) throw std::invalid_argument("endbags must be disjoint");
    role[v] = 2;
  }
  std::vector<std::vector<int>> blocks(3);
  for (int v = 0; v < n; ++v) blocks[role[v] == 1 ? 0 : role[v] == 0 ? 1 : 2].push_back(v);
  return blocks;
}

SolveResult greedy_cutwidth(const Graph& g, int u, int w) {
  int n = g.n;
  auto mult = multiplicity(g);
  std::vector<char> in(n, 0);
  std::vector<int> deg(n, 0);
  for (int v = 0; v < n; ++v)
    for (int x = 0; x < n; ++x) deg[v] += mult[v][x];
  SolveResult r;
  auto add = [&](int v, int& cut) {
    int to_in = 0;
    for (int x = 0; x < n; ++x)
      if (in[x]) to_in += mult[v][x];
    cut += deg[v] - 2 * to_in;
    in[v] = 1;
    r.order.push_back(v);
  };
  int cut = 0;
  add(u, cut);
  r.width = cut;
  for (int step = 0; step < n - 2; ++step) {
    int best = -1, best_cut = 0;
    for (int v = 0; v < n; ++v) {
      if (in[v] || v == w) continue;
      int to_in = 0;
      for (int x = 0; x < n; ++x)
        if (in[x]) to_in += mult[v][x];
      int c2 = cut + deg[v] - 2 * to_in;
      if (best < 0 || c2 < best_cut) {
        best = v;
        best_cut = c2;
      }
    }
    add(best, cut);
    r.width = std::max(r.width, cut);
  }
  if (n > 1) add(w, cut);
  return r;
}

} // namespace

SolveResult solve_pathwidth_fixed_endbags(const Graph& g, const std::vector<int>& U, const std::vector<int>& W,
                                          SolveMode mode, std::chrono::milliseconds budget) {
  auto blocks = endbag_blocks(g.n, U, W);
  SolveResult greedy = greedy_vsep(g, blocks);
  if (mode == SolveMode::Greedy || g.n > 64) return greedy;

  auto nb = distinct_neighbors(g);
  std::vector<Mask> nbr(g.n, 0);
  for (int v = 0; v < g.n; ++v)
    for (int y : nb[v]) nbr[v] |= Mask{1} << y;
  auto sep = [&](Mask s) {
    int c = 0;
    for (Mask t = s; t; t &= t - 1) {
      int x = std::countr_zero(t);
      c += (nbr[x] & ~s) != 0;
    }
    return c;
  };

  Deadline dl(budget);
  try {
    SolveResult r;
    Mask base = 0;
    int k = 0;
    for (const auto& block : blocks) {
      Mask end = base;
      for (int v : block) end |= Mask{1} << v;
      if (!block.empty()) k = std::max({k, sep(end)});
      std::vector<int> part;
      while (!search_block(block, base, k, sep, dl, part)) ++k;
      r.order.insert(r.order.end(), part.begin(), part.end());
      base = end;
    }
    r.width = vsep_of(g, r.order);
    r.optimal = true;
    return r;
  } catch (const BudgetExceeded&) {
    return greedy;
  }
}

SolveResult solve_cutwidth_fixed_ends(const Graph& g, int u, int w, SolveMode mode, std::chrono::milliseconds budget) {
  if (u == w || u < 0 || w < 0 || u >= g.n || w >= g.n)
    throw std::invalid_argument("cutwidth: end vertices must be distinct vertices of the graph");
  SolveResult greedy = greedy_cutwidth(g, u, w);
  if (mode == SolveMode::Greedy || g.n > 64) return greedy;

  auto mult = multiplicity(g);
  std::vector<int> deg(g.n, 0);
  for (int v = 0; v < g.n; ++v)
    for (int x = 0; x < g.n; ++x) deg[v] += mult[v][x];
  auto cut = [&](Mask s) {
    int c = 0;
    for (Mask t = s; t; t &= t - 1) {
      int x = std::countr_zero(t);
      for (int y = 0; y < g.n; ++y)
        if (!(s >> y & 1)) c += mult[x][y];
    }
    return c;
  };
  std::vector<int> mid;
  for (int v = 0; v < g.n; ++v)
    if (v != u && v != w) mid.push_back(v);
  Mask base = Mask{1} << u;
  int k = cut(base);
  k = std::max(k, deg[w]);
  for (int v : mid) k = std::max(k, (deg[v] + 1) / 2);

  Deadline dl(budget);
  try {
    std::vector<int> part;
    while (!search_block(mid, base, k, cut, dl, part)) ++k;
    SolveResult r;
    r.order.push_back(u);
    r.order.insert(r.order.end(), part.begin(), part.end());
    r.order.push_back(w);
    r.width = cutwidth_of(g, r.order);
    r.optimal = true;
    return r;
  } catch (const BudgetExceeded&) {
    return greedy;
  }
}

// ---------------------------------------------------------------------------
// intervals

IntervalLayout interval_layout(const Graph& g, const Ordering& f) {
  auto pos = positions(f, g.n);
  IntervalLayout lay;
  lay.start.resize(g.n);
  lay.end.resize(g.n);
  lay.track.assign(g.n, -1);
  for (int v = 0; v < g.n; ++v) lay.start[v] = lay.end[v] = pos[v] + 1;
  for (auto [a, b] : g.edges) {
    lay.end[a] = std::max(lay.end[a], pos[b] + 1);
    lay.end[b] = std::max(lay.end[b], pos[a] + 1);
  }
  std::vector<int> track_end;
  for (int v : f) {
    int t = 0;
    while (t < static_cast<int>(track_end.size()) && track_end[t] >= lay.start[v]) ++t;
    if (t == static_cast<int>(track_end.size())) track_end.push_back(0);
    track_end[t] = lay.end[v];
    lay.track[v] = t;
  }
  lay.tracks = static_cast<int>(track_end.size());
  return lay;
}

std::string layout_to_json(const Ordering& f, int width, const IntervalLayout& lay) {
  nlohmann::json tracks = nlohmann::json::object();
  for (std::size_t v = 0; v < lay.track.size(); ++v) tracks[std::to_string(v)] = lay.track[v];
  nlohmann::json j{{"order", f}, {"width", width}, {"tracks", tracks}};
  return j.dump(1) + "\n";
}

} // namespace qcw
