#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "qcw/oracle.hpp"
#include "qcw/zx.hpp"

using namespace qcw;
using K = GateKind;

namespace {

Circuit make(int n, std::vector<Gate> gates) {
  Circuit c = Circuit::identity(n);
  c.gates = std::move(gates);
  return c;
}

ZxDiagram one_spider(NodeKind kind, Angle a) {
  ZxDiagram d;
  int i = d.add_node(NodeKind::In, {}, 0);
  int s = d.add_spider(kind, a);
  int o = d.add_node(NodeKind::Out, {}, 0);
  d.add_edge(i, s);
  d.add_edge(s, o);
  return d;
}

Circuit random_circuit(std::mt19937_64& rng, int n, int len) {
  Circuit c = Circuit::identity(n);
  std::uniform_int_distribution<int> pick(0, 6), q(0, n - 1);
  for (int i = 0; i < len; ++i) {
    int a = q(rng), b = q(rng);
    switch (pick(rng)) {
      case 0: c.gates.push_back(Gate::single(K::T, a)); break;
      case 1: c.gates.push_back(Gate::single(K::H, a)); break;
      case 2: c.gates.push_back(Gate::rx(a, Angle(1, 3))); break;
      case 3: if (a != b) c.gates.push_back(Gate::two(K::CZ, a, b)); break;
      default: if (a != b) c.gates.push_back(Gate::two(K::CNOT, a, b)); break;
    }
  }
  return c;
}

} // namespace

TEST(CircuitToZx, BareWire) {
  ZxDiagram d = circuit_to_zx(Circuit::identity(1));
  EXPECT_EQ(d.nodes.size(), 2u);
  ASSERT_EQ(d.edges.size(), 1u);
  EXPECT_EQ(d.edges[0].kind, EdgeKind::Plain);
}

TEST(CircuitToZx, Cnot) {
  ZxDiagram d = circuit_to_zx(make(2, {Gate::two(K::CNOT, 0, 1)}));
  EXPECT_EQ(d.spider_count(), 2);
  EXPECT_EQ(d.edges.size(), 5u);
  CMatrix cnot(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
  EXPECT_LT(scalar_deviation(evaluate_tensor(d), cnot), 1e-12);
}

TEST(CircuitToZx, TGate) {
  ZxDiagram d = circuit_to_zx(make(1, {Gate::single(K::T, 0)}));
  EXPECT_EQ(d.spider_count(), 1);
  CMatrix m = evaluate_tensor(d);
  EXPECT_NEAR(std::abs(m(0, 0) - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(m(1, 1) - std::polar(1.0, M_PI / 4)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(m(0, 1)) + std::abs(m(1, 0)), 0.0, 1e-12);
}

TEST(Tensor, HadamardEdge) {
  ZxDiagram d;
  int i = d.add_node(NodeKind::In, {}, 0);
  int o = d.add_node(NodeKind::Out, {}, 0);
  d.add_edge(i, o, EdgeKind::Hadamard);
  CMatrix m = evaluate_tensor(d);
  double r = 1 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(m(0, 0) - r), 0, 1e-12);
  EXPECT_NEAR(std::abs(m(1, 1) + r), 0, 1e-12);
  EXPECT_NEAR(std::abs(m(0, 1) - r), 0, 1e-12);
}

TEST(Tensor, CapExceeded) {
  EXPECT_THROW(evaluate_tensor(circuit_to_zx(Circuit::identity(7))), CapError);
  EXPECT_NO_THROW(evaluate_tensor(circuit_to_zx(Circuit::identity(7)), 14));
}

TEST(Tensor, AgreesWithCircuitMatrix) {
  std::mt19937_64 rng(seed_base() + 31);
  for (int t = 0; t < 40; ++t) {
    Circuit c = random_circuit(rng, 1 + t % 4, 14);
    auto dev = scalar_deviation(evaluate_tensor(circuit_to_zx(c)), circuit_matrix(c));
    EXPECT_LT(dev, 1e-9) << "trial " << t;
  }
}

TEST(Fusion, TwoPhases) {
  ZxDiagram d;
  int i = d.add_node(NodeKind::In, {}, 0);
  int a = d.add_spider(NodeKind::Z, Angle(1, 4));
  int b = d.add_spider(NodeKind::Z, Angle(1, 4));
  int o = d.add_node(NodeKind::Out, {}, 0);
  d.add_edge(i, a);
  d.add_edge(a, b);
  d.add_edge(b, o);
  ZxDiagram f = fuse_spiders(d);
  ASSERT_EQ(f.spider_count(), 1);
  EXPECT_EQ(f.nodes.at(a).phase, Angle(1, 2));
}

TEST(Fusion, FixedPointAndChain) {
  ZxDiagram cnot = circuit_to_zx(make(2, {Gate::two(K::CNOT, 0, 1)}));
  ZxDiagram f = fuse_spiders(cnot);
  EXPECT_EQ(f.nodes.size(), cnot.nodes.size());
  EXPECT_EQ(f.edges.size(), cnot.edges.size());

  Circuit c = make(1, {Gate::rz(0, Angle::symbol("a")), Gate::rz(0, Angle::symbol("b")),
                       Gate::rz(0, Angle::symbol("g"))});
  ZxDiagram d = circuit_to_zx(c);
  ZxDiagram g = fuse_spiders(d);
  EXPECT_EQ(g.spider_count(), 1);
  EXPECT_LT(scalar_deviation(evaluate_tensor(g), evaluate_tensor(d)), 1e-12);
}

TEST(Fusion, HadamardSelfLoopAddsPi) {
  ZxDiagram d;
  int i = d.add_node(NodeKind::In, {}, 0);
  int a = d.add_spider(NodeKind::Z);
  int b = d.add_spider(NodeKind::Z);
  int o = d.add_node(NodeKind::Out, {}, 0);
  d.add_edge(i, a);
  d.add_edge(a, b);
  d.add_edge(a, b, EdgeKind::Hadamard);
  d.add_edge(b, o);
  ZxDiagram f = fuse_spiders(d);
  EXPECT_EQ(f.spider_count(), 1);
  EXPECT_EQ(f.nodes.at(a).phase, Angle::pi());
  EXPECT_LT(scalar_deviation(evaluate_tensor(f), evaluate_tensor(d)), 1e-12);
}

TEST(Identity, Removal) {
  ZxDiagram d = one_spider(NodeKind::Z, {});
  ZxDiagram r = remove_identity_spiders(d);
  EXPECT_EQ(r.spider_count(), 0);
  ASSERT_EQ(r.edges.size(), 1u);
  EXPECT_EQ(r.edges[0].kind, EdgeKind::Plain);

  EXPECT_EQ(remove_identity_spiders(one_spider(NodeKind::Z, Angle(1, 4))).spider_count(), 1);

  ZxDiagram h;
  int i = h.add_node(NodeKind::In, {}, 0);
  int s = h.add_spider(NodeKind::Z);
  int o = h.add_node(NodeKind::Out, {}, 0);
  h.add_edge(i, s, EdgeKind::Hadamard);
  h.add_edge(s, o, EdgeKind::Hadamard);
  ZxDiagram hr = remove_identity_spiders(h);
  ASSERT_EQ(hr.edges.size(), 1u);
  EXPECT_EQ(hr.edges[0].kind, EdgeKind::Plain);
  EXPECT_LT(scalar_deviation(evaluate_tensor(hr), evaluate_tensor(h)), 1e-12);
}

TEST(Rewrites, PreserveSemantics) {
  std::mt19937_64 rng(seed_base() + 32);
  for (int t = 0; t < 30; ++t) {
    Circuit c = random_circuit(rng, 2 + t % 3, 12);
    ZxDiagram d = circuit_to_zx(c);
    CMatrix m = evaluate_tensor(d);
    EXPECT_LT(scalar_deviation(evaluate_tensor(fuse_spiders(d)), m), 1e-9);
    EXPECT_LT(scalar_deviation(evaluate_tensor(remove_identity_spiders(d)), m), 1e-9);
    EXPECT_LT(scalar_deviation(evaluate_tensor(to_graph_like(d)), m), 1e-9);
    ZxDiagram shifted = d;
    for (auto& [id, col] : *shifted.columns) col = col * 2 + 1;
    EXPECT_LT(scalar_deviation(evaluate_tensor(shifted), m), 1e-15);
  }
}

TEST(ZxToCircuit, BareWiresAndCnot) {
  Circuit e = zx_to_circuit(circuit_to_zx(Circuit::identity(3)));
  EXPECT_EQ(e.num_qubits, 3);
  EXPECT_TRUE(e.gates.empty());
  Circuit c = zx_to_circuit(circuit_to_zx(make(2, {Gate::two(K::CNOT, 0, 1)})));
  EXPECT_EQ(c.gates, std::vector<Gate>{Gate::two(K::CNOT, 0, 1)});
}

TEST(ZxToCircuit, RoundTripSemantics) {
  std::mt19937_64 rng(seed_base() + 33);
  for (int t = 0; t < 40; ++t) {
    Circuit c = random_circuit(rng, 1 + t % 4, 12);
    Circuit back = zx_to_circuit(circuit_to_zx(c));
    EXPECT_LE(back.num_qubits, c.num_qubits);
    EXPECT_LT(scalar_deviation(circuit_matrix(back), circuit_matrix(c)), 1e-9) << "trial " << t;
  }
}

TEST(ZxToCircuit, RejectsNonCircuitLike) {
  ZxDiagram d = circuit_to_zx(make(2, {Gate::two(K::CZ, 0, 1)}));
  for (auto& e : d.edges)
    if (d.node(e.u).is_spider() && d.node(e.v).is_spider()) e.kind = EdgeKind::Plain;
  EXPECT_THROW(zx_to_circuit(d), ZxError);
}

TEST(ZxJson, RoundTrip) {
  ZxDiagram d = circuit_to_zx(make(2, {Gate::two(K::CZ, 0, 1), Gate::rz(1, Angle::symbol("q"))}));
  ZxDiagram back = zx_from_json(zx_to_json(d));
  EXPECT_EQ(back.nodes.size(), d.nodes.size());
  EXPECT_EQ(back.edges.size(), d.edges.size());
  EXPECT_EQ(back.columns, d.columns);
  EXPECT_LT(scalar_deviation(evaluate_tensor(back), evaluate_tensor(d)), 1e-12);
}

TEST(MaxCut, CountsColumnGaps) {
  ZxDiagram d = circuit_to_zx(make(3, {Gate::two(K::CNOT, 0, 1)}));
  EXPECT_EQ(max_cut(d), 3);
}
