#include <algorithm>
#include <cmath>
#include <map>

#include "qcw/oracle.hpp"
#include "qcw/zx.hpp"

namespace qcw {

namespace {

constexpr int kMaxIntermediateRank = 24;

// data index bit k <-> legs[k]
struct Tensor {
  std::vector<int> legs;
  std::vector<cplx> data;
};

Tensor spider_tensor(NodeKind kind, const Angle& phase, std::vector<int> legs) {
  Tensor t{std::move(legs), {}};
  std::size_t k = t.legs.size();
  t.data.assign(std::size_t{1} << k, 0.0);
  cplx e = std::polar(1.0, phase.value());
  if (kind == NodeKind::Z) {
    t.data[0] += 1.0;
    t.data[(std::size_t{1} << k) - 1] += e;
  } else {
    for (std::size_t x = 0; x < t.data.size(); ++x)
      t.data[x] = 1.0 + e * (std::popcount(x) % 2 ? -1.0 : 1.0);
  }
  return t;
}

Tensor contract(const Tensor& a, const Tensor& b) {
  std::vector<int> shared, ra, rb;
  for (int l : a.legs)
    (std::find(b.legs.begin(), b.legs.end(), l) != b.legs.end() ? shared : ra).push_back(l);
  for (int l : b.legs)
    if (std::find(shared.begin(), shared.end(), l) == shared.end()) rb.push_back(l);
  Tensor out;
  out.legs = ra;
  out.legs.insert(out.legs.end(), rb.begin(), rb.end());
  if (out.legs.size() > kMaxIntermediateRank) throw CapError("tensor contraction exceeds rank cap");
  auto pos = [](const std::vector<int>& legs, int l) {
    return static_cast<int>(std::find(legs.begin(), legs.end(), l) - legs.begin());
  };
  // bit positions in a / b for each result leg and shared leg
  std::vector<int> ra_a, rb_b, sh_a, sh_b;
  for (int l : ra) ra_a.push_back(pos(a.legs, l));
  for (int l : rb) rb_b.push_back(pos(b.legs, l));
  for (int l : shared) {
    sh_a.push_back(pos(a.legs, l));
    sh_b.push_back(pos(b.legs, l));
  }
  std::size_t nres = std::size_t{1} << out.legs.size(), nsh = std::size_t{1} << shared.size();
  out.data.assign(nres, 0.0);
  for (std::size_t r = 0; r < nres; ++r) {
    std::size_t ia = 0, ib = 0;
    for (std::size_t k = 0; k < ra.size(); ++k)
      if (r >> k & 1) ia |= std::size_t{1} << ra_a[k];
    for (std::size_t k = 0; k < rb.size(); ++k)
      if (r >> (ra.size() + k) & 1) ib |= std::size_t{1} << rb_b[k];
    cplx sum = 0.0;
    for (std::size_t s = 0; s < nsh; ++s) {
      std::size_t ja = ia, jb = ib;
      for (std::size_t k = 0; k < shared.size(); ++k)
        if (s >> k & 1) {
          ja |= std::size_t{1} << sh_a[k];
          jb |= std::size_t{1} << sh_b[k];
        }
      sum += a.data[ja] * b.data[jb];
    }
    out.data[r] = sum;
  }
  return out;
}

} // namespace

CMatrix evaluate_tensor(const ZxDiagram& d0, int cap) {
  ZxDiagram d = drop_self_loops(d0);
  auto ins = d.inputs(), outs = d.outputs();
  int open = static_cast<int>(ins.size() + outs.size());
  if (open > cap) throw CapError("diagram has " + std::to_string(open) + " boundary legs, cap is " + std::to_string(cap));

  int next_leg = 0;
  std::map<int, std::vector<int>> node_legs;
  std::vector<Tensor> ts;
  const double r = 1.0 / std::sqrt(2.0);
  for (const auto& e : d.edges) {
    if (e.kind == EdgeKind::Plain) {
      int l = next_leg++;
      node_legs[e.u].push_back(l);
      node_legs[e.v].push_back(l);
    } else {
      int l1 = next_leg++, l2 = next_leg++;
      node_legs[e.u].push_back(l1);
      node_legs[e.v].push_back(l2);
      ts.push_back(Tensor{{l1, l2}, {r, r, r, -r}});
    }
  }
  // open legs: -1 - port for inputs, -1 - (#in + port) for outputs
  std::map<int, int> open_leg;
  for (std::size_t k = 0; k < ins.size(); ++k) open_leg[ins[k]] = -1 - static_cast<int>(k);
  for (std::size_t k = 0; k < outs.size(); ++k) open_leg[outs[k]] = -1 - static_cast<int>(ins.size() + k);
  for (const auto& [id, n] : d.nodes) {
    auto& legs = node_legs[id];
    if (n.is_spider()) {
      ts.push_back(spider_tensor(n.kind, n.phase, legs));
    } else {
      if (legs.size() != 1) throw ZxError("boundary node must have degree 1");
      ts.push_back(Tensor{{open_leg.at(id), legs[0]}, {1.0, 0.0, 0.0, 1.0}});
    }
  }

  // greedy: contract the sharing pair with the smallest result rank
  while (ts.size() > 1) {
    int bi = -1, bj = -1, best = 1 << 30;
    for (std::size_t i = 0; i < ts.size(); ++i)
      for (std::size_t j = i + 1; j < ts.size(); ++j) {
        int sh = 0;
        for (int l : ts[i].legs) sh += std::count(ts[j].legs.begin(), ts[j].legs.end(), l) > 0;
        if (sh == 0) continue;
        int rank = static_cast<int>(ts[i].legs.size() + ts[j].legs.size()) - 2 * sh;
        if (rank < best) {
          best = rank;
          bi = static_cast<int>(i);
          bj = static_cast<int>(j);
        }
      }
    if (bi < 0) {
      // disconnected pieces: outer product of the two smallest
      std::sort(ts.begin(), ts.end(), [](const Tensor& a, const Tensor& b) { return a.legs.size() < b.legs.size(); });
      bi = 0;
      bj = 1;
    }
    Tensor t = contract(ts[bi], ts[bj]);
    ts.erase(ts.begin() + bj);
    ts[bi] = std::move(t);
  }

  Tensor t = ts.empty() ? Tensor{{}, {1.0}} : ts[0];
  int nin = static_cast<int>(ins.size()), nout = static_cast<int>(outs.size());
  CMatrix m(1 << nout, 1 << nin);
  std::vector<int> bitpos(open);
  for (int k = 0; k < open; ++k) bitpos[k] = static_cast<int>(std::find(t.legs.begin(), t.legs.end(), -1 - k) - t.legs.begin());
  for (int row = 0; row < m.rows; ++row)
    for (int col = 0; col < m.cols; ++col) {
      std::size_t idx = 0;
      // port 0 is the most significant bit
      for (int k = 0; k < nin; ++k)
        if (col >> (nin - 1 - k) & 1) idx |= std::size_t{1} << bitpos[k];
      for (int k = 0; k < nout; ++k)
        if (row >> (nout - 1 - k) & 1) idx |= std::size_t{1} << bitpos[nin + k];
      m(row, col) = t.data[idx];
    }
  return m;
}

} // namespace qcw
