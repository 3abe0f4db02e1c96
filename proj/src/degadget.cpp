#include "qcw/degadget.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>

namespace qcw {

PrecedenceGraph build_precedence_graph(const GadgetizedCircuit& g) {
  PrecedenceGraph pg;
  pg.num_gadgets = static_cast<int>(g.gadgets.size());
  pg.num_pairs = static_cast<int>(g.h_pairs.size());
  pg.arcs = Digraph(pg.num_gadgets + pg.num_pairs);
  for (int i = 0; i < pg.num_gadgets; ++i) {
    const auto& prod = g.gadgets[i].product;
    for (int j = 0; j < pg.num_pairs; ++j) {
      if (prod.has(g.h_pairs[j].a)) pg.arcs.add_arc(pg.p(i), pg.h(j));
      if (prod.has(g.h_pairs[j].b)) pg.arcs.add_arc(pg.h(j), pg.p(i));
    }
  }
  for (int i = 0; i < pg.num_pairs; ++i)
    for (int j = 0; j < pg.num_pairs; ++j)
      if (i != j && g.h_pairs[i].b == g.h_pairs[j].a) pg.arcs.add_arc(pg.h(i), pg.h(j));
  return pg;
}

HConflictGraph project_h_graph(const PrecedenceGraph& pg) {
  HConflictGraph out(pg.num_pairs);
  for (int i = 0; i < pg.num_pairs; ++i) {
    for (int v : pg.arcs.out[pg.h(i)]) {
      if (pg.is_h(v)) {
        out.add_arc(i, v - pg.num_gadgets);
        continue;
      }
      for (int w : pg.arcs.out[v])
        if (pg.is_h(w)) out.add_arc(i, w - pg.num_gadgets);
    }
  }
  return out;
}

namespace {

struct Timeout {};

class FvsSearch {
public:
  FvsSearch(const Digraph& g, std::chrono::steady_clock::time_point deadline)
      : g_(g), deadline_(deadline), in_(g.n) {
    for (int u = 0; u < g.n; ++u)
      for (int v : g.out[u]) in_[v].push_back(u);
  }

  // Is there a set of at most k vertices, avoiding `forbidden`, whose removal
  // (together with `removed`) leaves an acyclic graph?
  bool feasible(std::vector<bool> removed, const std::vector<bool>& forbidden, int k) {
    if (++calls_ % 256 == 0 && std::chrono::steady_clock::now() > deadline_) throw Timeout{};
    if (!reduce(removed, forbidden, k)) return false;
    auto cyc = shortest_cycle(removed);
    if (cyc.empty()) return true;
    if (k == 0) return false;
    if (packing_bound(removed) > k) return false;
    std::sort(cyc.begin(), cyc.end());
    std::vector<bool> forb = forbidden;
    for (int v : cyc) {
      if (forb[v]) continue;
      auto r = removed;
      r[v] = true;
      if (feasible(r, forb, k - 1)) return true;
      forb[v] = true;
    }
    return false;
  }

  int packing_bound(std::vector<bool> removed) {
    int count = 0;
    while (true) {
      auto c = shortest_cycle(removed);
      if (c.empty()) return count;
      ++count;
      for (int v : c) removed[v] = true;
    }
  }

  // drops vertices outside cycles and forces self-loops; false when a forced
  // vertex is forbidden or k runs out
  bool reduce(std::vector<bool>& removed, const std::vector<bool>& forbidden, int& k) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int v = 0; v < g_.n; ++v) {
        if (removed[v] || !g_.has_arc(v, v)) continue;
        if (forbidden[v] || k == 0) return false;
        removed[v] = true;
        --k;
        changed = true;
      }
      auto comp = scc(removed);
      std::vector<int> size(g_.n, 0);
      for (int v = 0; v < g_.n; ++v)
        if (!removed[v]) ++size[comp[v]];
      for (int v = 0; v < g_.n; ++v)
        if (!removed[v] && size[comp[v]] == 1) {
          removed[v] = true; // no self-loop left, so v lies on no cycle
          changed = true;
        }
    }
    return true;
  }

  std::vector<int> scc(const std::vector<bool>& removed) const {
    int n = g_.n, counter = 0, ncomp = 0;
    std::vector<int> idx(n, -1), low(n, 0), comp(n, -1), stack;
    std::vector<bool> on(n, false);
    // iterative Tarjan
    for (int s = 0; s < n; ++s) {
      if (removed[s] || idx[s] != -1) continue;
      std::vector<std::pair<int, std::size_t>> call{{s, 0}};
      idx[s] = low[s] = counter++;
      stack.push_back(s);
      on[s] = true;
      while (!call.empty()) {
        auto& [u, it] = call.back();
        if (it < g_.out[u].size()) {
          int v = g_.out[u][it++];
          if (removed[v]) continue;
          if (idx[v] == -1) {
            idx[v] = low[v] = counter++;
            stack.push_back(v);
            on[v] = true;
            call.push_back({v, 0});
          } else if (on[v]) {
            low[u] = std::min(low[u], idx[v]);
          }
          continue;
        }
        if (low[u] == idx[u]) {
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on[w] = false;
            comp[w] = ncomp;
            if (w == u) break;
          }
          ++ncomp;
        }
        int done = u;
        call.pop_back();
        if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      }
    }
    return comp;
  }

  std::vector<int> shortest_cycle(const std::vector<bool>& removed) const {
    int n = g_.n;
    std::vector<int> best;
    std::vector<int> dist(n), parent(n);
    for (int s = 0; s < n; ++s) {
      if (removed[s]) continue;
      std::fill(dist.begin(), dist.end(), -1);
      dist[s] = 0;
      std::queue<int> q;
      q.push(s);
      int close = -1;
      while (!q.empty() && close < 0) {
        int u = q.front();
        q.pop();
        if (!best.empty() && dist[u] + 1 >= static_cast<int>(best.size())) break;
        for (int v : g_.out[u]) {
          if (removed[v]) continue;
          if (v == s) {
            close = u;
            break;
          }
          if (dist[v] == -1) {
            dist[v] = dist[u] + 1;
            parent[v] = u;
            q.push(v);
          }
        }
      }
      if (close < 0) continue;
      std::vector<int> cyc;
      for (int u = close; u != s; u = parent[u]) cyc.push_back(u);
      cyc.push_back(s);
      if (best.empty() || cyc.size() < best.size()) best = cyc;
      if (best.size() == 1) break;
    }
    return best;
  }

private:
  const Digraph& g_;
  std::chrono::steady_clock::time_point deadline_;
  std::vector<std::vector<int>> in_;
  long calls_ = 0;
};

std::vector<int> heuristic_fvs(const Digraph& g) {
  FvsSearch search(g, std::chrono::steady_clock::time_point::max());
  std::vector<bool> removed(g.n, false);
  std::vector<int> out;
  while (true) {
    for (int v = 0; v < g.n; ++v)
      if (!removed[v] && g.has_arc(v, v)) {
        removed[v] = true;
        out.push_back(v);
      }
    auto comp = search.scc(removed);
    std::vector<int> size(g.n, 0);
    for (int v = 0; v < g.n; ++v)
      if (!removed[v]) ++size[comp[v]];
    int best = -1;
    long best_score = -1;
    for (int v = 0; v < g.n; ++v) {
      if (removed[v] || size[comp[v]] < 2) continue;
      long in = 0, outd = 0;
      for (int w : g.out[v])
        if (!removed[w] && comp[w] == comp[v]) ++outd;
      for (int u = 0; u < g.n; ++u)
        if (!removed[u] && comp[u] == comp[v] && g.has_arc(u, v)) ++in;
      if (in * outd > best_score) {
        best_score = in * outd;
        best = v;
      }
    }
    if (best < 0) break;
    removed[best] = true;
    out.push_back(best);
  }
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace

FvsResult min_fvs(const Digraph& g, FvsMode mode, std::chrono::milliseconds budget) {
  if (mode == FvsMode::Heuristic) return {heuristic_fvs(g), false};
  auto deadline = std::chrono::steady_clock::now() + budget;
  FvsSearch search(g, deadline);
  std::vector<bool> none(g.n, false);
  try {
    int k = search.packing_bound(none);
    while (!search.feasible(none, none, k)) ++k;
    // lexicographically smallest minimum set
    std::vector<bool> removed(g.n, false), rejected(g.n, false);
    std::vector<int> chosen;
    for (int v = 0; v < g.n && k > 0; ++v) {
      if (g.acyclic_without(removed)) break;
      auto r = removed;
      r[v] = true;
      if (search.feasible(r, rejected, k - 1)) {
        removed = r;
        chosen.push_back(v);
        --k;
      } else {
        rejected[v] = true;
      }
    }
    return {chosen, true};
  } catch (const Timeout&) {
    return {heuristic_fvs(g), false};
  }
}

namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

} // namespace

Circuit degadgetize(const GadgetizedCircuit& g, const std::vector<int>& X) {
  g.validate();
  const int m = static_cast<int>(g.gadgets.size());
  const int l = static_cast<int>(g.h_pairs.size());
  std::vector<bool> keep(l, false);
  for (int j : X) {
    if (j < 0 || j >= l) throw DegadgetError("feedback set names an unknown pair");
    keep[j] = true;
  }

  // a degadgetized pair's b continues on a's line
  std::vector<int> parent(g.num_qubits);
  std::iota(parent.begin(), parent.end(), 0);
  for (int j = 0; j < l; ++j)
    if (!keep[j]) {
      int ra = find_root(parent, g.h_pairs[j].a), rb = find_root(parent, g.h_pairs[j].b);
      parent[std::max(ra, rb)] = std::min(ra, rb);
    }
  std::vector<int> line(g.num_qubits, -1), root_line(g.num_qubits, -1);
  int nlines = 0;
  for (int q = 0; q < g.num_qubits; ++q) {
    int r = find_root(parent, q);
    if (root_line[r] < 0) root_line[r] = nlines++;
    line[q] = root_line[r];
  }

  Circuit out;
  out.num_qubits = nlines;
  for (int q : g.inputs) out.inputs.push_back(line[q]);
  for (int q : g.outputs) out.outputs.push_back(line[q]);
  auto remap = [&](Gate gt) {
    for (int& q : gt.qubits) q = line[q];
    return gt;
  };
  for (const auto& gt : g.leading_clifford) out.gates.push_back(remap(gt));

  auto pg = build_precedence_graph(g);
  const int nv = m + l;
  std::vector<int> indeg(nv, 0);
  for (int u = 0; u < nv; ++u)
    for (int v : pg.arcs.out[u]) ++indeg[v];
  std::vector<int> creator(g.num_qubits, -1);
  for (int j = 0; j < l; ++j) creator[g.h_pairs[j].b] = j;
  std::vector<bool> done(nv, false), released(l, false), cz_done(l, false);
  std::vector<bool> created = g.initial_mask();
  std::vector<int> pending; // released pairs whose CZ waits for a
  int outcome = 0;

  auto finish = [&](int v) {
    done[v] = true;
    for (int w : pg.arcs.out[v]) --indeg[w];
  };
  auto flush = [&] {
    for (auto it = pending.begin(); it != pending.end();) {
      const auto& p = g.h_pairs[*it];
      if (!created[p.a]) {
        ++it;
        continue;
      }
      out.gates.push_back(Gate::two(GateKind::CZ, line[p.a], line[p.b]));
      if (p.flip) out.gates.push_back(Gate::single(GateKind::Z, line[p.b]));
      cz_done[*it] = true;
      it = pending.erase(it);
    }
  };
  auto ready = [&](int v) {
    if (done[v] || indeg[v] > 0) return false;
    if (!pg.is_h(v)) return true;
    int k = creator[g.h_pairs[v - m].a];
    return k < 0 || !released[k] || cz_done[k];
  };

  int processed = 0;
  while (processed < nv) {
    flush();
    int v = -1;
    for (int u = 0; u < nv && v < 0; ++u)
      if (ready(u)) v = u;
    if (v >= 0) {
      if (!pg.is_h(v)) {
        std::vector<int> lines;
        for (int q : g.gadgets[v].product.support) lines.push_back(line[q]);
        emit_gadget(out.gates, lines, g.gadgets[v].angle);
      } else {
        int j = v - m;
        const auto& p = g.h_pairs[j];
        if (!keep[j]) {
          out.gates.push_back(Gate::single(GateKind::H, line[p.a]));
          if (p.flip) out.gates.push_back(Gate::single(GateKind::Z, line[p.a]));
        } else {
          out.gates.push_back(Gate::single(GateKind::PrepPlus, line[p.b]));
          out.gates.push_back(Gate::two(GateKind::CZ, line[p.a], line[p.b]));
          if (p.flip) out.gates.push_back(Gate::single(GateKind::Z, line[p.b]));
          out.gates.push_back(Gate::meas(GateKind::MeasX, line[p.a], outcome));
          for (auto k : p.corrections) out.gates.push_back(Gate::ctrl(k, line[p.b], outcome));
          ++outcome;
        }
        created[p.b] = true;
      }
      finish(v);
      ++processed;
      continue;
    }
    // stuck: release the smallest pending kept pair
    int j = -1;
    for (int k = 0; k < l && j < 0; ++k)
      if (keep[k] && !done[pg.h(k)]) j = k;
    if (j < 0) throw DegadgetError("cycle among degadgetized pairs: not a feedback vertex set");
    const auto& p = g.h_pairs[j];
    out.gates.push_back(Gate::single(GateKind::PrepPlus, line[p.b]));
    created[p.b] = true;
    released[j] = true;
    pending.push_back(j);
    finish(pg.h(j));
    ++processed;
  }
  flush();
  if (!pending.empty()) throw DegadgetError("released pair never received its control qubit");
  for (int j = 0; j < l; ++j)
    if (released[j]) out.gates.push_back(Gate::meas(GateKind::MeasX, line[g.h_pairs[j].a], outcome++));
  for (const auto& gt : g.trailing_clifford) out.gates.push_back(remap(gt));
  out.validate();
  return out;
}

Circuit replay(const GadgetizedCircuit& g) {
  std::vector<int> all(g.h_pairs.size());
  std::iota(all.begin(), all.end(), 0);
  return degadgetize(g, all);
}

} // namespace qcw
