#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "qcw/gadget.hpp"
#include "qcw/oracle.hpp"

using namespace qcw;
using K = GateKind;

namespace {

Circuit make(int n, std::vector<Gate> gates) {
  Circuit c = Circuit::identity(n);
  c.gates = std::move(gates);
  return c;
}

Circuit random_clifford_t(std::mt19937_64& rng, int n, int len) {
  Circuit c = Circuit::identity(n);
  std::uniform_int_distribution<int> pick(0, 7), q(0, n - 1);
  for (int i = 0; i < len; ++i) {
    int a = q(rng), b = q(rng);
    switch (pick(rng)) {
      case 0: case 1: c.gates.push_back(Gate::single(K::T, a)); break;
      case 2: c.gates.push_back(Gate::single(K::Tdg, a)); break;
      case 3: case 4: c.gates.push_back(Gate::single(K::H, a)); break;
      case 5: c.gates.push_back(Gate::single(K::S, a)); break;
      default:
        if (a != b) c.gates.push_back(Gate::two(K::CNOT, a, b));
        break;
    }
  }
  return c;
}

// Clifford-angle gadgets may legitimately move into the Clifford segments
std::vector<PhaseGadget> sorted_gadgets(std::vector<PhaseGadget> g) {
  std::erase_if(g, [](const PhaseGadget& x) { return x.angle.is_clifford(); });
  std::sort(g.begin(), g.end(), [](const PhaseGadget& x, const PhaseGadget& y) {
    return x.product < y.product || (x.product == y.product && x.angle < y.angle);
  });
  return g;
}

} // namespace

TEST(Gadgetize, LeadingHUntouched) {
  Circuit c = make(2, {Gate::single(K::H, 0), Gate::single(K::H, 1), Gate::single(K::T, 0)});
  Circuit g = gadgetize_hadamards(c);
  EXPECT_EQ(g.num_qubits, 2);
  EXPECT_EQ(g.gates, c.gates);
}

TEST(Gadgetize, SingleInternalH) {
  Circuit c = make(1, {Gate::single(K::T, 0), Gate::single(K::H, 0), Gate::single(K::T, 0)});
  Circuit g = gadgetize_hadamards(c);
  ASSERT_EQ(g.num_qubits, 2);
  std::vector<Gate> want = {Gate::single(K::T, 0), Gate::single(K::PrepPlus, 1), Gate::two(K::CZ, 0, 1),
                            Gate::meas(K::MeasX, 0, 0), Gate::ctrl(K::CtrlX, 1, 0), Gate::single(K::T, 1)};
  EXPECT_EQ(g.gates, want);
  EXPECT_EQ(g.inputs, std::vector<int>{0});
  EXPECT_EQ(g.outputs, std::vector<int>{1});
  auto eq = verify_circuits(c, g);
  EXPECT_TRUE(eq.equivalent) << eq.deviation;
  EXPECT_EQ(eq.branches, 2);
}

TEST(Gadgetize, QubitCountGrowsByInternalH) {
  std::mt19937_64 rng(seed_base() + 11);
  for (int t = 0; t < 40; ++t) {
    Circuit c = random_clifford_t(rng, 1 + t % 3, 12);
    int h = static_cast<int>(internal_hadamards(c).size());
    Circuit g = gadgetize_hadamards(c);
    EXPECT_EQ(g.num_qubits, c.num_qubits + h);
    if (g.num_qubits <= 6) EXPECT_TRUE(verify_circuits(c, g).equivalent);
  }
}

TEST(Extract, SingleT) {
  GadgetizedCircuit g = extract_gadget_form(make(1, {Gate::single(K::T, 0)}));
  ASSERT_EQ(g.gadgets.size(), 1u);
  EXPECT_EQ(g.gadgets[0].product.support, std::vector<int>{0});
  EXPECT_EQ(g.gadgets[0].angle, Angle(1, 4));
  EXPECT_TRUE(g.h_pairs.empty());
  EXPECT_TRUE(g.trailing_clifford.empty());
}

TEST(Extract, CnotThenT) {
  Circuit c = make(2, {Gate::two(K::CNOT, 0, 1), Gate::single(K::T, 1)});
  GadgetizedCircuit g = extract_gadget_form(c);
  ASSERT_EQ(g.gadgets.size(), 1u);
  EXPECT_EQ(g.gadgets[0].product.support, (std::vector<int>{0, 1}));
  EXPECT_EQ(g.gadgets[0].angle, Angle(1, 4));
  EXPECT_EQ(g.trailing_clifford, std::vector<Gate>{Gate::two(K::CNOT, 0, 1)});
  EXPECT_LT(scalar_deviation(circuit_matrix(replay(g)), circuit_matrix(c)), 1e-9);
}

TEST(Extract, Cancellation) {
  GadgetizedCircuit g = extract_gadget_form(make(1, {Gate::single(K::T, 0), Gate::single(K::Tdg, 0)}));
  EXPECT_TRUE(g.gadgets.empty());
  EXPECT_TRUE(g.trailing_clifford.empty());
}

TEST(Extract, RandomCircuitsReplayAndRoundTrip) {
  std::mt19937_64 rng(seed_base() + 12);
  int checked = 0;
  for (int t = 0; t < 60; ++t) {
    Circuit c = random_clifford_t(rng, 2 + t % 2, 10);
    Circuit gz = gadgetize_hadamards(c);
    if (gz.num_qubits > 6) continue;
    GadgetizedCircuit g;
    try {
      g = extract_gadget_form(gz);
    } catch (const ExtractError&) {
      continue;
    }
    ++checked;
    Circuit r = replay(g);
    EXPECT_EQ(r.num_qubits, gz.num_qubits);
    auto eq = verify_circuits(gz, r);
    EXPECT_TRUE(eq.equivalent) << "trial " << t << " dev " << eq.deviation;
    int non_clifford = 0;
    for (const auto& gate : c.gates) non_clifford += is_non_clifford(gate);
    int nc_gadgets = 0;
    for (const auto& gd : g.gadgets) nc_gadgets += !gd.angle.is_clifford();
    EXPECT_LE(nc_gadgets, non_clifford);

    GadgetizedCircuit again = extract_gadget_form(r);
    EXPECT_EQ(sorted_gadgets(again.gadgets), sorted_gadgets(g.gadgets));
    ASSERT_EQ(again.h_pairs.size(), g.h_pairs.size());
    for (std::size_t i = 0; i < g.h_pairs.size(); ++i) {
      EXPECT_EQ(again.h_pairs[i].a, g.h_pairs[i].a);
      EXPECT_EQ(again.h_pairs[i].b, g.h_pairs[i].b);
    }
  }
  EXPECT_GT(checked, 30);
}

TEST(GadgetizedJson, RoundTrip) {
  Circuit c = make(2, {Gate::single(K::T, 0), Gate::two(K::CNOT, 0, 1), Gate::single(K::H, 1),
                       Gate::single(K::T, 1)});
  GadgetizedCircuit g = extract_gadget_form(gadgetize_hadamards(c));
  GadgetizedCircuit back = gadgetized_from_json(gadgetized_to_json(g));
  EXPECT_EQ(back.gadgets, g.gadgets);
  EXPECT_EQ(back.h_pairs, g.h_pairs);
  EXPECT_EQ(back.trailing_clifford, g.trailing_clifford);
  EXPECT_EQ(back.outputs, g.outputs);
}
