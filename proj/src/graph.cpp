#include "qcw/graph.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qcw {

std::vector<std::vector<int>> Graph::adjacency() const {
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : edges) {
    if (u == v) continue;
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

void Digraph::add_arc(int u, int v) {
  if (!has_arc(u, v)) out[u].push_back(v);
}

bool Digraph::has_arc(int u, int v) const {
  return std::find(out[u].begin(), out[u].end(), v) != out[u].end();
}

std::size_t Digraph::arc_count() const {
  std::size_t m = 0;
  for (const auto& o : out) m += o.size();
  return m;
}

bool Digraph::acyclic_without(const std::vector<bool>& removed) const {
  std::vector<int> indeg(n, 0);
  for (int u = 0; u < n; ++u) {
    if (removed[u]) continue;
    for (int v : out[u])
      if (!removed[v]) ++indeg[v];
  }
  std::vector<int> stack;
  int alive = 0;
  for (int u = 0; u < n; ++u) {
    if (removed[u]) continue;
    ++alive;
    if (indeg[u] == 0) stack.push_back(u);
  }
  int seen = 0;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    ++seen;
    for (int v : out[u])
      if (!removed[v] && --indeg[v] == 0) stack.push_back(v);
  }
  return seen == alive;
}

std::vector<int> positions(const Ordering& f, int n) {
  if (static_cast<int>(f.size()) != n) throw std::invalid_argument("ordering size mismatch");
  std::vector<int> pos(n, -1);
  for (int i = 0; i < n; ++i) {
    int v = f[i];
    if (v < 0 || v >= n || pos[v] != -1) throw std::invalid_argument("ordering is not a bijection");
    pos[v] = i;
  }
  return pos;
}

int cutwidth_of(const Graph& g, const Ordering& f) {
  auto pos = positions(f, g.n);
  if (g.n < 2) return 0;
  // difference array over gaps 0..n-2 (gap i sits between positions i and i+1)
  std::vector<int> diff(g.n, 0);
  for (auto [u, v] : g.edges) {
    int a = std::min(pos[u], pos[v]), b = std::max(pos[u], pos[v]);
    if (a == b) continue;
    diff[a] += 1;
    diff[b] -= 1;
  }
  int best = 0, run = 0;
  for (int i = 0; i + 1 < g.n; ++i) {
    run += diff[i];
    best = std::max(best, run);
  }
  return best;
}

int vsep_of(const Graph& g, const Ordering& f) {
  auto pos = positions(f, g.n);
  if (g.n < 2) return 0;
  // vertex u counts at gaps pos[u] .. last-1 where last = max neighbor position
  std::vector<int> last(g.n, -1);
  for (auto [u, v] : g.edges) {
    last[u] = std::max(last[u], pos[v]);
    last[v] = std::max(last[v], pos[u]);
  }
  std::vector<int> diff(g.n + 1, 0);
  for (int u = 0; u < g.n; ++u) {
    if (last[u] > pos[u]) {
      diff[pos[u]] += 1;
      diff[last[u]] -= 1;
    }
  }
  int best = 0, run = 0;
  for (int i = 0; i + 1 < g.n; ++i) {
    run += diff[i];
    best = std::max(best, run);
  }
  return best;
}

GraphInstance parse_edge_list(const std::string& text) {
  GraphInstance inst;
  std::istringstream in(text);
  std::string line;
  int maxv = -1, lineno = 0;
  std::vector<std::pair<int, int>> edges;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "U" || head == "W") {
      int v;
      auto& dst = head == "U" ? inst.U : inst.W;
      while (ls >> v) {
        dst.push_back(v);
        maxv = std::max(maxv, v);
      }
      continue;
    }
    if (head == "n") {
      int n;
      if (!(ls >> n)) throw std::invalid_argument("line " + std::to_string(lineno) + ": bad n");
      maxv = std::max(maxv, n - 1);
      continue;
    }
    int u, v;
    try {
      u = std::stoi(head);
    } catch (const std::exception&) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": expected 'u v'");
    }
    if (!(ls >> v) || u < 0 || v < 0)
      throw std::invalid_argument("line " + std::to_string(lineno) + ": expected 'u v'");
    edges.emplace_back(u, v);
    maxv = std::max({maxv, u, v});
  }
  inst.graph = Graph(maxv + 1);
  inst.graph.edges = std::move(edges);
  return inst;
}

std::string to_dimacs(const Digraph& g) {
  std::ostringstream out;
  out << "p fvs " << g.n << ' ' << g.arc_count() << '\n';
  for (int u = 0; u < g.n; ++u) {
    auto o = g.out[u];
    std::sort(o.begin(), o.end());
    for (int v : o) out << "a " << u + 1 << ' ' << v + 1 << '\n';
  }
  return out.str();
}

Digraph parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Digraph g;
  bool header = false;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    if (tag == "p") {
      std::string kind;
      int n, m;
      if (!(ls >> kind >> n >> m)) throw std::invalid_argument("bad DIMACS header");
      g = Digraph(n);
      header = true;
    } else if (tag == "a") {
      int u, v;
      if (!header || !(ls >> u >> v) || u < 1 || v < 1 || u > g.n || v > g.n)
        throw std::invalid_argument("bad DIMACS arc: " + line);
      g.add_arc(u - 1, v - 1);
    } else {
      throw std::invalid_argument("unknown DIMACS line: " + line);
    }
  }
  if (!header) throw std::invalid_argument("missing DIMACS header");
  return g;
}

} // namespace qcw
