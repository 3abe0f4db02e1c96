#pragma once

#include <vector>

#include "qcw/circuit.hpp"

namespace qcw {

// Stabilizer tableau (Aaronson-Gottesman layout): rows 0..n-1 are the images
// of X_i, rows n..2n-1 the images of Z_i.
class Tableau {
public:
  explicit Tableau(int n = 0);
  static Tableau from_gates(int n, const std::vector<Gate>& gates);

  int size() const { return n_; }
  void h(int q);
  void s(int q);
  void cnot(int c, int t);
  void apply(const Gate& g); // throws CircuitError on non-Clifford or non-unitary gates

  // image of Z_q as (x bits, z bits, sign)
  struct Pauli {
    std::vector<bool> x, z;
    bool negative = false;
    bool operator==(const Pauli&) const = default;
  };
  Pauli image_of_z(int q) const;
  Pauli image_of_x(int q) const;

  bool operator==(const Tableau&) const = default;

private:
  int n_;
  std::vector<std::vector<bool>> x_, z_;
  std::vector<bool> r_;
};

} // namespace qcw
