#include "qcw/gf2.hpp"

#include <stdexcept>
#include <utility>

namespace qcw {

std::optional<Bits> gf2_solve(BitMatrix a, Bits rhs) {
  std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && !a[piv][col]) ++piv;
    if (piv == n) return std::nullopt;
    if (piv != col) {
      std::swap(a[piv], a[col]);
      bool t = rhs[piv];
      rhs[piv] = rhs[col];
      rhs[col] = t;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r != col && a[r][col]) {
        a[r] ^= a[col];
        rhs[r] = rhs[r] != rhs[col];
      }
    }
  }
  return rhs;
}

std::optional<BitMatrix> gf2_inverse(const BitMatrix& a) {
  std::size_t n = a.size();
  BitMatrix m = a, inv(n, Bits(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = true;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && !m[piv][col]) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    for (std::size_t r = 0; r < n; ++r)
      if (r != col && m[r][col]) {
        m[r] ^= m[col];
        inv[r] ^= inv[col];
      }
  }
  return inv;
}

std::vector<Gate> synthesize_linear(const BitMatrix& a, const std::vector<int>& lines) {
  std::size_t n = a.size();
  if (lines.size() != n) throw std::invalid_argument("synthesize_linear: size mismatch");
  // reduce to identity with row additions only; ops[k] = (target row, source row)
  BitMatrix m = a;
  std::vector<std::pair<std::size_t, std::size_t>> ops;
  auto add = [&](std::size_t t, std::size_t s) {
    m[t] ^= m[s];
    ops.emplace_back(t, s);
  };
  for (std::size_t col = 0; col < n; ++col) {
    if (!m[col][col]) {
      std::size_t piv = col + 1;
      while (piv < n && !m[piv][col]) ++piv;
      if (piv == n) throw std::invalid_argument("synthesize_linear: singular matrix");
      add(col, piv);
    }
    for (std::size_t r = 0; r < n; ++r)
      if (r != col && m[r][col]) add(r, col);
  }
  // R_k ... R_1 A = I, so A = R_1 ... R_k: apply R_k first
  std::vector<Gate> out;
  for (auto it = ops.rbegin(); it != ops.rend(); ++it)
    out.push_back(Gate::two(GateKind::CNOT, lines[it->second], lines[it->first]));
  return out;
}

} // namespace qcw
