#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcw/circuit.hpp"
#include "qcw/zx.hpp"

namespace qcw {

enum class Method { Degadget, Pathwidth, Cutwidth, Both };
enum class SolverChoice { Exact, Greedy };

struct PipelineOptions {
  Method method = Method::Both;
  SolverChoice solver = SolverChoice::Exact;
  std::chrono::milliseconds budget{10000};
  int fvs_exact_limit = 24;   // |V_H| above this runs the heuristic
  int width_exact_limit = 20; // signature |V| above this runs greedy
};

struct OptimizeReport {
  std::string name;
  int n = 0;
  int h = 0;
  int initial_qubits = 0;
  std::optional<int> degadget_qubits;
  std::optional<int> pathwidth_qubits;
  std::optional<int> cutwidth_qubits; // max vertical cut of the re-columned diagram
  std::optional<int> pathwidth;       // width the solver reached on the signature
  int fvs_size = 0;
  std::string fvs_mode;   // "exact" / "heuristic"
  std::string width_mode; // "exact" / "greedy"
  bool fvs_optimal = false;
  bool width_optimal = false;
  std::map<std::string, double> stage_ms;
  std::vector<std::string> warnings;
  std::vector<std::string> errors; // a method that could not run
};

std::string report_to_json(const OptimizeReport& r);

struct DegadgetOutcome {
  Circuit circuit;
  std::vector<int> fvs;
  bool optimal = false;
  bool exact = false;
};
// circuit -> gadgetized -> gadget form -> FVS of the projected precedence graph -> degadgetized
DegadgetOutcome run_degadget(const Circuit& gadgetized, bool exact, std::chrono::milliseconds budget);

struct PathwidthOutcome {
  Circuit circuit; // post-selected on all measurement outcomes 0
  int width = 0;
  bool optimal = false;
  bool exact = false;
};
PathwidthOutcome run_pathwidth(const Circuit& gadgetized, const PipelineOptions& opt);

struct CutwidthOutcome {
  ZxDiagram diagram; // re-columned, same connectivity
  int footprint = 0;
  bool optimal = false;
  bool exact = false;
};
CutwidthOutcome run_cutwidth(const Circuit& gadgetized, const PipelineOptions& opt);

struct PipelineResult {
  OptimizeReport report;
  std::optional<Circuit> circuit;   // narrowest circuit produced
  std::optional<ZxDiagram> diagram; // cutwidth method only
};
PipelineResult optimize_circuit(const Circuit& c, const std::string& name, const PipelineOptions& opt);

// Benchmark table rows (Circuit, n, h, initial, Degadgetization, Pathwidth), one per report.
std::string bench_table(const std::vector<OptimizeReport>& rows, bool markdown);

} // namespace qcw
