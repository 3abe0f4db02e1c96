#include "qcw/linalg.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qcw {

CMatrix CMatrix::identity(int n) {
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::operator*(const CMatrix& o) const {
  if (cols != o.rows) throw std::invalid_argument("matrix shape mismatch");
  CMatrix r(rows, o.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      cplx v = (*this)(i, k);
      if (v == cplx{}) continue;
      for (int j = 0; j < o.cols; ++j) r(i, j) += v * o(k, j);
    }
  return r;
}

double CMatrix::norm() const {
  double s = 0;
  for (const auto& v : a) s += std::norm(v);
  return std::sqrt(s);
}

double scalar_deviation(const CMatrix& x, const CMatrix& y) {
  if (x.rows != y.rows || x.cols != y.cols) return std::numeric_limits<double>::infinity();
  double nx = x.norm(), ny = y.norm();
  bool zx = nx < 1e-12, zy = ny < 1e-12;
  if (zx && zy) return 0.0;
  if (zx || zy) return 2.0;
  cplx inner{};
  for (std::size_t i = 0; i < x.a.size(); ++i) inner += std::conj(x.a[i]) * y.a[i];
  cplx phase = std::abs(inner) > 1e-300 ? inner / std::abs(inner) : cplx{1.0};
  double dev = 0;
  for (std::size_t i = 0; i < x.a.size(); ++i)
    dev = std::max(dev, std::abs(x.a[i] / nx - y.a[i] / (ny * phase)));
  return dev;
}

} // namespace qcw
