#include <gtest/gtest.h>

#include "qcw/gadget.hpp"
#include "qcw/oracle.hpp"
#include "qcw/pipeline.hpp"

using namespace qcw;
using K = GateKind;

namespace {

Circuit t_h_t() {
  Circuit c = Circuit::identity(1);
  c.gates = {Gate::single(K::T, 0), Gate::single(K::H, 0), Gate::single(K::T, 0)};
  return c;
}

} // namespace

TEST(Pipeline, LoneHadamardIsDegadgetized) {
  PipelineOptions opt;
  opt.method = Method::Degadget;
  auto r = optimize_circuit(t_h_t(), "tht", opt);
  EXPECT_EQ(r.report.n, 1);
  EXPECT_EQ(r.report.h, 1);
  EXPECT_EQ(r.report.initial_qubits, 2);
  ASSERT_TRUE(r.circuit);
  EXPECT_EQ(r.circuit->num_qubits, 1);
  EXPECT_TRUE(verify_circuits(t_h_t(), *r.circuit).equivalent);
}

TEST(Pipeline, BothMethodsReportAndKeepNarrower) {
  auto r = optimize_circuit(t_h_t(), "tht", {});
  ASSERT_TRUE(r.report.degadget_qubits && r.report.pathwidth_qubits);
  EXPECT_LE(*r.report.degadget_qubits, r.report.initial_qubits);
  EXPECT_GE(*r.report.pathwidth_qubits, 1);
  EXPECT_EQ(r.circuit->num_qubits, std::min(*r.report.degadget_qubits, *r.report.pathwidth_qubits));
  // the pathwidth bracket on the gadgetized circuit's diagram
  EXPECT_GE(*r.report.pathwidth_qubits, *r.report.pathwidth);
  EXPECT_LE(*r.report.pathwidth_qubits, *r.report.pathwidth + 1);
}

TEST(Pipeline, ReportJsonHasSchema) {
  auto r = optimize_circuit(t_h_t(), "tht", {});
  auto j = report_to_json(r.report);
  EXPECT_NE(j.find("\"schema\": 1"), std::string::npos);
  EXPECT_NE(j.find("\"initial_qubits\": 2"), std::string::npos);
}

TEST(Pipeline, CutwidthMethodGivesDiagram) {
  PipelineOptions opt;
  opt.method = Method::Cutwidth;
  auto r = optimize_circuit(t_h_t(), "tht", opt);
  ASSERT_TRUE(r.diagram);
  EXPECT_EQ(*r.report.cutwidth_qubits, max_cut(*r.diagram));
}

TEST(Bench, HeaderOnlyAndDeterministic) {
  EXPECT_EQ(bench_table({}, false), "Circuit\tn\th\tinitial\tDegadgetization\tPathwidth\n");
  auto row = optimize_circuit(t_h_t(), "tht", {}).report;
  EXPECT_EQ(bench_table({row}, true), bench_table({row}, true));
  EXPECT_NE(bench_table({row}, true).find("| tht | 1 | 1 | 2 |"), std::string::npos);
}
