#include "qcw/pipeline.hpp"

#include <sstream>

#include <json.hpp>

#include "qcw/degadget.hpp"
#include "qcw/gadget.hpp"
#include "qcw/layout.hpp"

namespace qcw {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string cell(const std::optional<int>& v) { return v ? std::to_string(*v) : "-"; }

int signature_size(const ZxDiagram& d) {
  return signature(drop_self_loops(fuse_spiders(d)), {false, false}).graph.n;
}

} // namespace

DegadgetOutcome run_degadget(const Circuit& gadgetized, bool exact, std::chrono::milliseconds budget) {
  GadgetizedCircuit g = extract_gadget_form(gadgetized);
  HConflictGraph hg = project_h_graph(build_precedence_graph(g));
  FvsResult fvs = min_fvs(hg, exact ? FvsMode::Exact : FvsMode::Heuristic, budget);
  DegadgetOutcome out;
  out.circuit = degadgetize(g, fvs.vertices);
  out.fvs = fvs.vertices;
  out.optimal = fvs.optimal;
  out.exact = exact;
  return out;
}

PathwidthOutcome run_pathwidth(const Circuit& gadgetized, const PipelineOptions& opt) {
  ZxDiagram d = to_graph_like(circuit_to_zx(gadgetized));
  bool exact = opt.solver == SolverChoice::Exact && signature_size(d) <= opt.width_exact_limit;
  LayoutResult r = optimize_diagram(d, exact ? SolveMode::Exact : SolveMode::Greedy, opt.budget);
  PathwidthOutcome out;
  out.circuit = zx_to_circuit(r.diagram);
  out.width = r.solve.width;
  out.optimal = r.solve.optimal;
  out.exact = exact;
  return out;
}

CutwidthOutcome run_cutwidth(const Circuit& gadgetized, const PipelineOptions& opt) {
  ZxDiagram d = circuit_to_zx(gadgetized);
  Signature s = signature(d, {false, true});
  bool exact = opt.solver == SolverChoice::Exact && merge_boundaries(s).graph.n <= opt.width_exact_limit;
  LayoutResult r = reorder_diagram_cutwidth(d, exact ? SolveMode::Exact : SolveMode::Greedy, opt.budget);
  CutwidthOutcome out;
  out.footprint = max_cut(r.diagram);
  out.diagram = std::move(r.diagram);
  out.optimal = r.solve.optimal;
  out.exact = exact;
  return out;
}

PipelineResult optimize_circuit(const Circuit& c, const std::string& name, const PipelineOptions& opt) {
  PipelineResult res;
  OptimizeReport& rep = res.report;
  rep.name = name;
  rep.n = c.num_qubits;

  auto t0 = Clock::now();
  rep.h = static_cast<int>(internal_hadamards(c).size());
  Circuit gadgetized = gadgetize_hadamards(c);
  rep.initial_qubits = gadgetized.num_qubits;
  rep.stage_ms["gadgetize"] = ms_since(t0);
  if (rep.initial_qubits != rep.n + rep.h)
    rep.errors.push_back("initial qubit count " + std::to_string(rep.initial_qubits) + " != n + h");

  bool want_degadget = opt.method == Method::Degadget || opt.method == Method::Both;
  bool want_pathwidth = opt.method == Method::Pathwidth || opt.method == Method::Both;

  if (want_degadget) {
    t0 = Clock::now();
    try {
      // one H-graph vertex per pair
      bool exact = opt.solver == SolverChoice::Exact && rep.h <= opt.fvs_exact_limit;
      if (opt.solver == SolverChoice::Exact && !exact)
        rep.warnings.push_back("FVS instance too large for the exact solver; using the heuristic");
      DegadgetOutcome d = run_degadget(gadgetized, exact, opt.budget);
      rep.degadget_qubits = d.circuit.num_qubits;
      rep.fvs_size = static_cast<int>(d.fvs.size());
      rep.fvs_mode = exact ? "exact" : "heuristic";
      rep.fvs_optimal = d.optimal;
      if (exact && !d.optimal) rep.warnings.push_back("FVS budget exhausted; heuristic result");
      res.circuit = std::move(d.circuit);
    } catch (const std::exception& e) {
      rep.errors.push_back(std::string("degadget: ") + e.what());
    }
    rep.stage_ms["degadget"] = ms_since(t0);
  }

  if (want_pathwidth) {
    t0 = Clock::now();
    try {
      PathwidthOutcome p = run_pathwidth(gadgetized, opt);
      rep.pathwidth_qubits = p.circuit.num_qubits;
      rep.pathwidth = p.width;
      rep.width_mode = p.exact ? "exact" : "greedy";
      rep.width_optimal = p.optimal;
      if (opt.solver == SolverChoice::Exact && !p.exact)
        rep.warnings.push_back("signature too large for the exact width solver; using greedy");
      else if (p.exact && !p.optimal)
        rep.warnings.push_back("width budget exhausted; greedy result");
      if (!res.circuit || p.circuit.num_qubits < res.circuit->num_qubits) res.circuit = std::move(p.circuit);
    } catch (const std::exception& e) {
      rep.errors.push_back(std::string("pathwidth: ") + e.what());
    }
    rep.stage_ms["pathwidth"] = ms_since(t0);
  }

  if (opt.method == Method::Cutwidth) {
    t0 = Clock::now();
    try {
      CutwidthOutcome cw = run_cutwidth(gadgetized, opt);
      rep.cutwidth_qubits = cw.footprint;
      rep.width_mode = cw.exact ? "exact" : "greedy";
      rep.width_optimal = cw.optimal;
      res.diagram = std::move(cw.diagram);
    } catch (const std::exception& e) {
      rep.errors.push_back(std::string("cutwidth: ") + e.what());
    }
    rep.stage_ms["cutwidth"] = ms_since(t0);
  }
  return res;
}

std::string report_to_json(const OptimizeReport& r) {
  using nlohmann::json;
  auto opt = [](const std::optional<int>& v) { return v ? json(*v) : json(nullptr); };
  json j{{"schema", 1},
         {"circuit", r.name},
         {"n", r.n},
         {"h", r.h},
         {"initial_qubits", r.initial_qubits},
         {"degadget_qubits", opt(r.degadget_qubits)},
         {"pathwidth_qubits", opt(r.pathwidth_qubits)},
         {"cutwidth_qubits", opt(r.cutwidth_qubits)},
         {"pathwidth", opt(r.pathwidth)},
         {"fvs_size", r.fvs_size},
         {"solver", {{"fvs", r.fvs_mode}, {"width", r.width_mode}}},
         {"optimal", {{"fvs", r.fvs_optimal}, {"width", r.width_optimal}}},
         {"stage_ms", r.stage_ms},
         {"warnings", r.warnings},
         {"errors", r.errors}};
  return j.dump(2) + "\n";
}

std::string bench_table(const std::vector<OptimizeReport>& rows, bool markdown) {
  std::ostringstream os;
  const char* cols[] = {"Circuit", "n", "h", "initial", "Degadgetization", "Pathwidth"};
  if (markdown) {
    os << "|";
    for (const char* c : cols) os << " " << c << " |";
    os << "\n|";
    for (int i = 0; i < 6; ++i) os << (i == 0 ? " --- |" : " ---: |");
    os << "\n";
  } else {
    for (int i = 0; i < 6; ++i) os << (i ? "\t" : "") << cols[i];
    os << "\n";
  }
  for (const auto& r : rows) {
    std::string v[] = {r.name, std::to_string(r.n), std::to_string(r.h), std::to_string(r.initial_qubits),
                       cell(r.degadget_qubits), cell(r.pathwidth_qubits)};
    if (markdown) {
      os << "|";
      for (const auto& s : v) os << " " << s << " |";
    } else {
      for (int i = 0; i < 6; ++i) os << (i ? "\t" : "") << v[i];
    }
    os << "\n";
  }
  return os.str();
}

} // namespace qcw
