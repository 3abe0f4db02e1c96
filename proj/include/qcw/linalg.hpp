#pragma once

#include <complex>
#include <vector>

namespace qcw {

using cplx = std::complex<double>;

struct CMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<cplx> a;

  CMatrix() = default;
  CMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}
  static CMatrix identity(int n);

  cplx& operator()(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  cplx operator()(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
  CMatrix operator*(const CMatrix& o) const;
  double norm() const;
  bool is_zero(double eps = 1e-12) const { return norm() <= eps; }
};

// Max elementwise difference after Frobenius normalization and optimal global
// phase alignment; 0 when both are zero, 2 when exactly one is, inf on shape mismatch.
double scalar_deviation(const CMatrix& x, const CMatrix& y);

} // namespace qcw
