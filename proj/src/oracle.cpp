#include "qcw/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <set>

namespace qcw {

FvsWitness brute_fvs(const Digraph& g) {
  if (g.n > 14) throw CapError("brute_fvs: more than 14 vertices");
  for (int k = 0; k <= g.n; ++k) {
    // combinations of size k in lexicographic order
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      std::vector<bool> removed(g.n, false);
      for (int v : idx) removed[v] = true;
      if (g.acyclic_without(removed)) return {k, idx};
      int i = k - 1;
      while (i >= 0 && idx[i] == g.n - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return {g.n, {}};
}

WidthWitness brute_width(const Graph& g, const std::vector<int>& U, const std::vector<int>& W,
                         WidthKind kind, int cap) {
  if (g.n > cap) throw CapError("brute_width: graph exceeds the vertex cap");
  std::vector<int> u(U), w(W), mid;
  std::sort(u.begin(), u.end());
  std::sort(w.begin(), w.end());
  for (int v = 0; v < g.n; ++v)
    if (!std::binary_search(u.begin(), u.end(), v) && !std::binary_search(w.begin(), w.end(), v))
      mid.push_back(v);
  WidthWitness best{-1, {}};
  do {
    do {
      do {
        Ordering f(u);
        f.insert(f.end(), mid.begin(), mid.end());
        f.insert(f.end(), w.begin(), w.end());
        int val = kind == WidthKind::Cutwidth ? cutwidth_of(g, f) : vsep_of(g, f);
        if (best.width < 0 || val < best.width) best = {val, f};
      } while (std::next_permutation(w.begin(), w.end()));
    } while (std::next_permutation(mid.begin(), mid.end()));
  } while (std::next_permutation(u.begin(), u.end()));
  return best;
}

namespace {

struct Sim {
  int n;
  std::vector<cplx> psi;

  void apply1(int q, cplx m00, cplx m01, cplx m10, cplx m11) {
    std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < psi.size(); ++i) {
      if (i & bit) continue;
      cplx a = psi[i], b = psi[i | bit];
      psi[i] = m00 * a + m01 * b;
      psi[i | bit] = m10 * a + m11 * b;
    }
  }
  void h(int q) {
    const double r = 1.0 / std::numbers::sqrt2;
    apply1(q, r, r, r, -r);
  }
  void x(int q) { apply1(q, 0, 1, 1, 0); }
  void phase(int q, double t) { apply1(q, 1, 0, 0, std::polar(1.0, t)); }
  void cnot(int c, int t) {
    std::size_t cb = std::size_t{1} << c, tb = std::size_t{1} << t;
    for (std::size_t i = 0; i < psi.size(); ++i)
      if ((i & cb) && !(i & tb)) std::swap(psi[i], psi[i | tb]);
  }
  void cz(int a, int b) {
    std::size_t m = (std::size_t{1} << a) | (std::size_t{1} << b);
    for (std::size_t i = 0; i < psi.size(); ++i)
      if ((i & m) == m) psi[i] = -psi[i];
  }
  // project onto Z-eigenvalue s, then reset to |0>
  void postselect(int q, int s) {
    std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < psi.size(); ++i)
      if (((i & bit) != 0) != (s != 0)) psi[i] = 0;
    if (s) x(q);
  }
};

} // namespace

CMatrix circuit_matrix(const Circuit& c, const Branch& branch, int cap) {
  if (c.num_qubits > cap)
    throw CapError("circuit has " + std::to_string(c.num_qubits) + " qubits, cap is " +
                   std::to_string(cap));
  int nin = static_cast<int>(c.inputs.size()), nout = static_cast<int>(c.outputs.size());
  CMatrix m(1 << nout, 1 << nin);
  auto bit_of = [&](int outcome) {
    auto it = branch.find(outcome);
    return it == branch.end() ? 0 : it->second;
  };
  for (int col = 0; col < (1 << nin); ++col) {
    Sim s{c.num_qubits, std::vector<cplx>(std::size_t{1} << c.num_qubits)};
    std::size_t start = 0;
    for (int k = 0; k < nin; ++k)
      if ((col >> (nin - 1 - k)) & 1) start |= std::size_t{1} << c.inputs[k];
    s.psi[start] = 1.0;
    for (const auto& g : c.gates) {
      using K = GateKind;
      int q = g.qubits[0];
      switch (g.kind) {
      case K::H: s.h(q); break;
      case K::X: s.x(q); break;
      case K::CNOT: s.cnot(q, g.qubits[1]); break;
      case K::CZ: s.cz(q, g.qubits[1]); break;
      case K::Rx:
        s.h(q);
        s.phase(q, g.angle.value());
        s.h(q);
        break;
      case K::PrepPlus: s.h(q); break;
      case K::PrepZero: break;
      case K::MeasZ: s.postselect(q, bit_of(g.outcome)); break;
      case K::MeasX:
        s.h(q);
        s.postselect(q, bit_of(g.outcome));
        break;
      case K::CtrlX:
        if (bit_of(g.outcome)) s.x(q);
        break;
      case K::CtrlZ:
        if (bit_of(g.outcome)) s.phase(q, std::numbers::pi);
        break;
      default: s.phase(q, z_phase(g)->value()); break;
      }
    }
    for (int row = 0; row < (1 << nout); ++row) {
      std::size_t idx = 0;
      for (int k = 0; k < nout; ++k)
        if ((row >> (nout - 1 - k)) & 1) idx |= std::size_t{1} << c.outputs[k];
      m(row, col) = s.psi[idx];
    }
  }
  return m;
}

namespace {

std::vector<int> corrected_outcomes(const Circuit& c) {
  std::set<int> ids;
  for (const auto& g : c.gates)
    if (is_controlled(g.kind)) ids.insert(g.outcome);
  return {ids.begin(), ids.end()};
}

// max deviation of every corrected branch of c from its s = 0 branch
double branch_spread(const Circuit& c, const CMatrix& base, int cap, int& branches) {
  auto ids = corrected_outcomes(c);
  if (ids.size() > 16) throw CapError("too many corrected measurements to enumerate");
  double dev = 0;
  for (std::uint32_t mask = 1; mask < (1u << ids.size()); ++mask) {
    Branch b;
    for (std::size_t i = 0; i < ids.size(); ++i) b[ids[i]] = (mask >> i) & 1;
    dev = std::max(dev, scalar_deviation(base, circuit_matrix(c, b, cap)));
    ++branches;
  }
  return dev;
}

} // namespace

Equivalence verify_circuits(const Circuit& a, const Circuit& b, int cap, double tol) {
  Equivalence r;
  if (a.inputs.size() != b.inputs.size() || a.outputs.size() != b.outputs.size()) {
    r.deviation = std::numeric_limits<double>::infinity();
    return r;
  }
  CMatrix ma = circuit_matrix(a, {}, cap), mb = circuit_matrix(b, {}, cap);
  r.branches = 1;
  r.deviation = scalar_deviation(ma, mb);
  r.deviation = std::max(r.deviation, branch_spread(a, ma, cap, r.branches));
  r.deviation = std::max(r.deviation, branch_spread(b, mb, cap, r.branches));
  r.equivalent = r.deviation < tol && !ma.is_zero();
  return r;
}

std::uint64_t seed_base() {
  if (const char* s = std::getenv("QCWIDTH_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
    }
  }
  return 20240917ull;
}

Graph random_graph(std::mt19937_64& rng, int n, double p, double multi_p) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (U(rng) < p) {
        g.add_edge(u, v);
        if (U(rng) < multi_p) g.add_edge(u, v);
      }
  return g;
}

Digraph random_digraph(std::mt19937_64& rng, int n, double p, double loop_p) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  Digraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (u == v ? U(rng) < loop_p : U(rng) < p) g.add_arc(u, v);
    }
  return g;
}

ZxDiagram random_zx(std::mt19937_64& rng, int spiders, int inputs, int outputs, double p) {
  if (inputs > spiders || outputs > spiders) throw std::invalid_argument("random_zx: too many boundaries");
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::uniform_int_distribution<int> coin(0, 1), eighth(0, 7);
  ZxDiagram d;
  std::vector<int> ids;
  for (int i = 0; i < spiders; ++i)
    ids.push_back(d.add_spider(coin(rng) ? NodeKind::Z : NodeKind::X, Angle(eighth(rng), 4)));
  for (int a = 0; a < spiders; ++a)
    for (int b = a + 1; b < spiders; ++b)
      if (U(rng) < p) d.add_edge(ids[a], ids[b], coin(rng) ? EdgeKind::Hadamard : EdgeKind::Plain);
  std::vector<int> perm = ids;
  std::shuffle(perm.begin(), perm.end(), rng);
  for (int k = 0; k < inputs; ++k) d.add_edge(d.add_node(NodeKind::In, {}, k), perm[k]);
  std::shuffle(perm.begin(), perm.end(), rng);
  for (int k = 0; k < outputs; ++k) d.add_edge(perm[k], d.add_node(NodeKind::Out, {}, k));
  return d;
}

} // namespace qcw
