#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "qcw/circuit.hpp"
#include "qcw/graph.hpp"
#include "qcw/linalg.hpp"
#include "qcw/zx.hpp"

namespace qcw {

class CapError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct FvsWitness {
  int size = 0;
  std::vector<int> set;
};
FvsWitness brute_fvs(const Digraph& g);

enum class WidthKind { Cutwidth, Vsep };

struct WidthWitness {
  int width = 0;
  Ordering order;
};
// U placed first and W last (each block permuted freely), middle permuted freely
WidthWitness brute_width(const Graph& g, const std::vector<int>& U, const std::vector<int>& W,
                         WidthKind kind, int cap = 9);

// outcome id -> bit; missing ids read as 0
using Branch = std::map<int, int>;

CMatrix circuit_matrix(const Circuit& c, const Branch& branch = {}, int cap = 6);

struct Equivalence {
  bool equivalent = false;
  double deviation = 0.0;
  int branches = 0;
};
// Every corrected branch of each circuit must match its own s = 0 branch, and
// the two s = 0 branches must match, all up to a global scalar.
Equivalence verify_circuits(const Circuit& a, const Circuit& b, int cap = 6, double tol = 1e-9);

// Seed base for generated instances; QCWIDTH_SEED overrides the default.
std::uint64_t seed_base();

Graph random_graph(std::mt19937_64& rng, int n, double p, double multi_p = 0.0);
Digraph random_digraph(std::mt19937_64& rng, int n, double p, double loop_p = 0.0);
// Spiders with random colours and pi/4 phases, random plain/H edges; each
// boundary attaches to its own spider (no spider gets two inputs or two outputs).
ZxDiagram random_zx(std::mt19937_64& rng, int spiders, int inputs, int outputs, double p);

} // namespace qcw
