#pragma once

#include <optional>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "qcw/circuit.hpp"

namespace qcw {

using Bits = boost::dynamic_bitset<>;
using BitMatrix = std::vector<Bits>; // row-major

// Solve A x = rhs for square invertible A; nullopt when singular.
std::optional<Bits> gf2_solve(BitMatrix a, Bits rhs);
std::optional<BitMatrix> gf2_inverse(const BitMatrix& a);

// CNOT network mapping the values x on lines[] to A x (A square, invertible).
std::vector<Gate> synthesize_linear(const BitMatrix& a, const std::vector<int>& lines);

} // namespace qcw
