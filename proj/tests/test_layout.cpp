#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "qcw/layout.hpp"
#include "qcw/oracle.hpp"

using namespace qcw;
using K = GateKind;

namespace {

Graph path(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph complete(int n) {
  Graph g(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) g.add_edge(a, b);
  return g;
}

Circuit random_circuit(std::mt19937_64& rng, int n, int len) {
  Circuit c = Circuit::identity(n);
  std::uniform_int_distribution<int> pick(0, 5), q(0, n - 1);
  for (int i = 0; i < len; ++i) {
    int a = q(rng), b = q(rng);
    switch (pick(rng)) {
      case 0: c.gates.push_back(Gate::single(K::T, a)); break;
      case 1: c.gates.push_back(Gate::single(K::H, a)); break;
      case 2: if (a != b) c.gates.push_back(Gate::two(K::CZ, a, b)); break;
      default: if (a != b) c.gates.push_back(Gate::two(K::CNOT, a, b)); break;
    }
  }
  return c;
}

} // namespace

TEST(Widths, SmallExamples) {
  Ordering id4{0, 1, 2, 3};
  EXPECT_EQ(cutwidth_of(path(4), id4), 1);
  EXPECT_EQ(vsep_of(path(4), id4), 1);
  EXPECT_EQ(cutwidth_of(complete(4), id4), 4);
  EXPECT_EQ(vsep_of(complete(4), id4), 3);
  Graph star(4);
  for (int l = 1; l < 4; ++l) star.add_edge(0, l);
  EXPECT_EQ(vsep_of(star, id4), 1);
}

TEST(Solvers, StarWithFixedLeaves) {
  Graph star(4);
  for (int l = 1; l < 4; ++l) star.add_edge(0, l);
  auto r = solve_cutwidth_fixed_ends(star, 1, 3, SolveMode::Exact);
  EXPECT_EQ(r.width, 2);
  EXPECT_TRUE(r.optimal);
  EXPECT_EQ(r.order.front(), 1);
  EXPECT_EQ(r.order.back(), 3);
}

TEST(Solvers, CycleVsep) {
  Graph c5 = path(5);
  c5.add_edge(4, 0);
  auto r = solve_pathwidth_fixed_endbags(c5, {}, {}, SolveMode::Exact);
  EXPECT_EQ(r.width, 2);
  EXPECT_EQ(vsep_of(c5, r.order), 2);
}

TEST(Solvers, ExactMatchesBrute) {
  std::mt19937_64 rng(seed_base() + 11);
  for (int n = 4; n <= 8; ++n)
    for (int t = 0; t < 20; ++t) {
      Graph g = random_graph(rng, n, 0.45, 0.2);
      auto cw = solve_cutwidth_fixed_ends(g, 0, n - 1, SolveMode::Exact);
      EXPECT_EQ(cw.width, brute_width(g, {0}, {n - 1}, WidthKind::Cutwidth).width);
      EXPECT_EQ(cutwidth_of(g, cw.order), cw.width);
      std::vector<int> U{0, 1}, W{n - 1};
      auto pw = solve_pathwidth_fixed_endbags(g, U, W, SolveMode::Exact);
      EXPECT_EQ(pw.width, brute_width(g, U, W, WidthKind::Vsep).width);
      auto gr = solve_pathwidth_fixed_endbags(g, U, W, SolveMode::Greedy);
      EXPECT_GE(gr.width, pw.width);
      EXPECT_EQ(vsep_of(g, gr.order), gr.width);
    }
}

TEST(Solvers, BudgetFallsBackToGreedy) {
  std::mt19937_64 rng(seed_base() + 12);
  Graph g = random_graph(rng, 40, 0.3);
  auto r = solve_pathwidth_fixed_endbags(g, {}, {}, SolveMode::Exact, std::chrono::milliseconds(0));
  EXPECT_FALSE(r.optimal);
  EXPECT_EQ(vsep_of(g, r.order), r.width);
}

TEST(Interval, EdgeAndTracks) {
  Graph g(2);
  g.add_edge(0, 1);
  auto lay = interval_layout(g, {0, 1});
  EXPECT_EQ(lay.start[0], 1);
  EXPECT_EQ(lay.end[0], 2);
  EXPECT_EQ(lay.start[1], 2);
  EXPECT_EQ(lay.end[1], 2);
  EXPECT_EQ(lay.tracks, 2);

  std::mt19937_64 rng(seed_base() + 13);
  for (int t = 0; t < 30; ++t) {
    Graph h = random_graph(rng, 8, 0.35);
    auto r = solve_pathwidth_fixed_endbags(h, {}, {}, SolveMode::Exact);
    EXPECT_LE(interval_layout(h, r.order).tracks, r.width + 1);
  }
}

TEST(Signature, BareWire) {
  auto s = signature(circuit_to_zx(Circuit::identity(1)));
  EXPECT_EQ(s.graph.n, 2);
  EXPECT_EQ(s.graph.edges.size(), 1u);
  EXPECT_EQ(s.inputs, std::vector<int>{0});
  EXPECT_EQ(s.outputs, std::vector<int>{1});
}

TEST(Signature, CnotAndMerge) {
  Circuit c = Circuit::identity(2);
  c.gates.push_back(Gate::two(K::CNOT, 0, 1));
  auto s = signature(circuit_to_zx(c));
  // each spider touches one input and one output, so nothing is absorbed
  EXPECT_EQ(s.graph.n, 6);
  EXPECT_EQ(s.inputs.size(), 2u);
  EXPECT_EQ(s.outputs.size(), 2u);
  auto m = merge_boundaries(s);
  EXPECT_EQ(m.graph.n, 4);
  EXPECT_EQ(m.graph.edges.size(), 5u);
}

TEST(Signature, LeafAbsorbedAndDegree2) {
  ZxDiagram d;
  int i = d.add_node(NodeKind::In, {}, 0);
  int a = d.add_spider(NodeKind::Z);
  int b = d.add_spider(NodeKind::X, Angle(1, 4));
  int x = d.add_spider(NodeKind::Z);
  int o = d.add_node(NodeKind::Out, {}, 0);
  d.add_edge(i, a);
  d.add_edge(a, b);
  d.add_edge(a, x);
  d.add_edge(b, x);
  d.add_edge(x, o);
  auto s = signature(d);
  EXPECT_EQ(s.graph.n, 3);
  auto r = signature(d, {false, true});
  ASSERT_EQ(r.reinsertions.size(), 1u);
  EXPECT_EQ(r.reinsertions[0].node, b);
}

TEST(Optimize, PreservesSemantics) {
  std::mt19937_64 rng(seed_base() + 14);
  for (int t = 0; t < 25; ++t) {
    Circuit c = random_circuit(rng, 3, 8);
    ZxDiagram d = to_graph_like(circuit_to_zx(c));
    auto r = optimize_diagram(d, SolveMode::Exact);
    EXPECT_LT(scalar_deviation(evaluate_tensor(r.diagram, 16), evaluate_tensor(d, 16)), 1e-9);
    Circuit out = zx_to_circuit(r.diagram);
    EXPECT_LT(scalar_deviation(circuit_matrix(out, {}, 8), circuit_matrix(c)), 1e-9) << t;
  }
}

TEST(Optimize, RandomDiagramsKeepSemanticsAndBound) {
  std::mt19937_64 rng(seed_base() + 15);
  for (int t = 0; t < 25; ++t) {
    ZxDiagram d = random_zx(rng, 5, 1, 2, 0.4);
    auto r = optimize_diagram(d, SolveMode::Exact);
    EXPECT_LT(scalar_deviation(evaluate_tensor(r.diagram, 16), evaluate_tensor(d, 16)), 1e-9);
    EXPECT_LE(max_cut(r.diagram), r.solve.width + 2);
  }
}

TEST(Reorder, FootprintIsCutwidth) {
  std::mt19937_64 rng(seed_base() + 16);
  for (int t = 0; t < 20; ++t) {
    Circuit c = random_circuit(rng, 3, 10);
    ZxDiagram d = circuit_to_zx(c);
    auto r = reorder_diagram_cutwidth(d, SolveMode::Exact);
    EXPECT_EQ(max_cut(r.diagram), r.solve.width);
    EXPECT_LT(scalar_deviation(evaluate_tensor(r.diagram, 16), evaluate_tensor(d, 16)), 1e-9);
  }
}

TEST(LayoutJson, Shape) {
  Graph g = path(3);
  Ordering f{0, 1, 2};
  auto j = layout_to_json(f, 1, interval_layout(g, f));
  EXPECT_NE(j.find("\"order\""), std::string::npos);
  EXPECT_NE(j.find("\"tracks\""), std::string::npos);
}

TEST(Optimize, ChainKeepsFootprintOne) {
  ZxDiagram d;
  int prev = d.add_node(NodeKind::In, {}, 0);
  for (int i = 0; i < 5; ++i) {
    int s = d.add_spider(i % 2 ? NodeKind::X : NodeKind::Z, Angle(1, 4));
    d.add_edge(prev, s);
    prev = s;
  }
  d.add_edge(prev, d.add_node(NodeKind::Out, {}, 0));
  auto r = optimize_diagram(d, SolveMode::Exact);
  EXPECT_EQ(max_cut(r.diagram), 1);
  // as a circuit each link is a two-line gate
  EXPECT_LE(zx_to_circuit(r.diagram).num_qubits, 2);
  auto c = reorder_diagram_cutwidth(d, SolveMode::Exact);
  EXPECT_EQ(max_cut(c.diagram), 1);
}

TEST(Optimize, MultiTargetCnotCoreIndependentOfTargets) {
  // one control spider wired to k target spiders, every target on its own wire
  std::vector<int> cuts;
  for (int k = 2; k <= 6; ++k) {
    ZxDiagram d;
    int ctl = d.add_spider(NodeKind::Z);
    d.add_edge(d.add_node(NodeKind::In, {}, 0), ctl);
    d.add_edge(ctl, d.add_node(NodeKind::Out, {}, 0));
    for (int t = 1; t <= k; ++t) {
      int x = d.add_spider(NodeKind::X);
      d.add_edge(ctl, x);
      d.add_edge(d.add_node(NodeKind::In, {}, t), x);
      d.add_edge(x, d.add_node(NodeKind::Out, {}, t));
    }
    auto r = optimize_diagram(d, SolveMode::Exact);
    // the k target wires are live throughout; the control adds a constant
    cuts.push_back(max_cut(r.diagram) - (k + 1));
  }
  for (int v : cuts) EXPECT_EQ(v, cuts.front());
}

TEST(Fixtures, ReorderAndUnfuse) {
  auto load = [](const std::string& name) {
    std::ifstream f(std::string(QCW_FIXTURE_DIR) + "/" + name);
    std::stringstream ss;
    ss << f.rdbuf();
    return zx_from_json(ss.str());
  };
  ZxDiagram f4 = load("reorder_9_to_6.json"), f5 = load("reorder_9_to_5.json"), f7 = load("unfuse_4_lines.json");
  EXPECT_EQ(max_cut(f4), 9);
  EXPECT_EQ(max_cut(reorder_diagram_cutwidth(f4, SolveMode::Exact).diagram), 6);
  EXPECT_EQ(max_cut(f5), 9);
  auto r5 = reorder_diagram_cutwidth(f5, SolveMode::Exact);
  EXPECT_EQ(max_cut(r5.diagram), 5);
  EXPECT_EQ(r5.solve.width, 5);
  auto r7 = optimize_diagram(f7, SolveMode::Exact);
  Circuit c7 = zx_to_circuit(r7.diagram);
  EXPECT_EQ(c7.num_qubits, 4);
  EXPECT_LT(scalar_deviation(evaluate_tensor(r7.diagram, 16), evaluate_tensor(f7, 16)), 1e-9);
}
