#include "qcw/clifford.hpp"

namespace qcw {

Tableau::Tableau(int n)
    : n_(n), x_(2 * n, std::vector<bool>(n)), z_(2 * n, std::vector<bool>(n)), r_(2 * n) {
  for (int i = 0; i < n; ++i) {
    x_[i][i] = true;
    z_[n + i][i] = true;
  }
}

Tableau Tableau::from_gates(int n, const std::vector<Gate>& gates) {
  Tableau t(n);
  for (const auto& g : gates) t.apply(g);
  return t;
}

void Tableau::h(int q) {
  for (int i = 0; i < 2 * n_; ++i) {
    if (x_[i][q] && z_[i][q]) r_[i] = !r_[i];
    bool tmp = x_[i][q];
    x_[i][q] = z_[i][q];
    z_[i][q] = tmp;
  }
}

void Tableau::s(int q) {
  for (int i = 0; i < 2 * n_; ++i) {
    if (x_[i][q] && z_[i][q]) r_[i] = !r_[i];
    z_[i][q] = z_[i][q] != x_[i][q];
  }
}

void Tableau::cnot(int c, int t) {
  for (int i = 0; i < 2 * n_; ++i) {
    if (x_[i][c] && z_[i][t] && (x_[i][t] == z_[i][c])) r_[i] = !r_[i];
    x_[i][t] = x_[i][t] != x_[i][c];
    z_[i][c] = z_[i][c] != z_[i][t];
  }
}

void Tableau::apply(const Gate& g) {
  using K = GateKind;
  int q = g.qubits.empty() ? 0 : g.qubits[0];
  auto zpow = [&](int k) {
    for (int i = 0; i < k; ++i) s(q);
  };
  switch (g.kind) {
  case K::H: h(q); return;
  case K::S: zpow(1); return;
  case K::Z: zpow(2); return;
  case K::Sdg: zpow(3); return;
  case K::X:
    h(q);
    zpow(2);
    h(q);
    return;
  case K::CNOT: cnot(q, g.qubits[1]); return;
  case K::CZ:
    h(g.qubits[1]);
    cnot(q, g.qubits[1]);
    h(g.qubits[1]);
    return;
  case K::Rz:
  case K::Rx:
    if (g.angle.is_clifford()) {
      int k = static_cast<int>(2 * g.angle.num() / g.angle.den());
      if (g.kind == K::Rx) h(q);
      zpow(k);
      if (g.kind == K::Rx) h(q);
      return;
    }
    break;
  default: break;
  }
  throw CircuitError("tableau: unsupported gate " + std::string(kind_name(g.kind)));
}

Tableau::Pauli Tableau::image_of_z(int q) const { return {x_[n_ + q], z_[n_ + q], r_[n_ + q]}; }
Tableau::Pauli Tableau::image_of_x(int q) const { return {x_[q], z_[q], r_[q]}; }

} // namespace qcw
