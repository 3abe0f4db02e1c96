// qcwidth: qubit-count reduction for Clifford+T circuits.
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qcw/circuit.hpp"
#include "qcw/degadget.hpp"
#include "qcw/layout.hpp"
#include "qcw/oracle.hpp"
#include "qcw/pipeline.hpp"

using namespace qcw;
namespace fs = std::filesystem;

namespace {

enum Exit { Ok = 0, Fail = 1, Parse = 2, Inequivalent = 3, Cap = 4, Budget = 5 };

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError(0, "cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

bool is_circuit_file(const fs::path& p) {
  auto e = p.extension().string();
  return e == ".qc" || e == ".json";
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"qcwidth: reduce the qubit count of Clifford+T circuits"};
  app.require_subcommand(1);

  PipelineOptions opt;
  std::string method = "both", solver = "exact", format = "tsv";
  long budget_ms = 10000;
  int tensor_cap = 6;
  std::string input, out_path, stats_path, a_path, b_path, dir;

  auto add_solver_flags = [&](CLI::App* sc) {
    sc->add_option("--solver", solver, "exact or greedy")->check(CLI::IsMember({"exact", "greedy"}));
    sc->add_option("--budget-ms", budget_ms, "time budget per exact solve");
    sc->add_option("--fvs-exact-limit", opt.fvs_exact_limit, "largest H-graph solved exactly");
    sc->add_option("--width-exact-limit", opt.width_exact_limit, "largest signature solved exactly");
  };

  auto* optimize = app.add_subcommand("optimize", "optimize one circuit");
  optimize->add_option("input", input, "circuit (.qc or .json)")->required();
  optimize->add_option("--method", method, "degadget, pathwidth, cutwidth or both")
      ->check(CLI::IsMember({"degadget", "pathwidth", "cutwidth", "both"}));
  optimize->add_option("--out", out_path, "output circuit (.qc or .json); cutwidth writes a diagram");
  optimize->add_option("--stats", stats_path, "report JSON");
  optimize->add_option("--tensor-cap", tensor_cap, "verify the output when its width is at most this");
  add_solver_flags(optimize);

  auto* verify = app.add_subcommand("verify", "check two circuits for equivalence up to scalar");
  verify->add_option("a", a_path)->required();
  verify->add_option("b", b_path)->required();
  verify->add_option("--tensor-cap", tensor_cap, "largest width simulated");

  auto* bench = app.add_subcommand("bench", "benchmark table over a directory of circuits");
  bench->add_option("dir", dir)->required();
  bench->add_option("--format", format)->check(CLI::IsMember({"tsv", "markdown"}));
  bench->add_option("--out", out_path, "write the table here instead of stdout");
  add_solver_flags(bench);

  std::string fvs_path, graph_path, kind = "vsep";
  auto* fvs = app.add_subcommand("fvs", "minimum feedback vertex set of a DIMACS arc list");
  fvs->add_option("input", fvs_path)->required();
  add_solver_flags(fvs);

  auto* width = app.add_subcommand("width", "constrained vertex separation / cutwidth of an edge list");
  width->add_option("input", graph_path)->required();
  width->add_option("--kind", kind)->check(CLI::IsMember({"vsep", "cutwidth"}));
  add_solver_flags(width);

  CLI11_PARSE(app, argc, argv);
  opt.solver = solver == "exact" ? SolverChoice::Exact : SolverChoice::Greedy;
  opt.budget = std::chrono::milliseconds(budget_ms);

  try {
    if (*optimize) {
      opt.method = method == "degadget"    ? Method::Degadget
                   : method == "pathwidth" ? Method::Pathwidth
                   : method == "cutwidth"  ? Method::Cutwidth
                                           : Method::Both;
      Circuit c;
      try {
        c = load_circuit(input);
      } catch (const std::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return Parse;
      }
      PipelineResult r = optimize_circuit(c, fs::path(input).stem().string(), opt);
      for (const auto& w : r.report.warnings) std::cerr << "warning: " << w << "\n";
      for (const auto& e : r.report.errors) std::cerr << "error: " << e << "\n";
      if (!stats_path.empty()) write_file(stats_path, report_to_json(r.report));
      if (!out_path.empty()) {
        if (r.circuit) save_circuit(*r.circuit, out_path);
        else if (r.diagram) write_file(out_path, zx_to_json(*r.diagram));
      }
      std::cout << report_to_json(r.report);
      if (!r.circuit && !r.diagram) return Fail;
      if (r.circuit && std::max(r.circuit->num_qubits, c.num_qubits) <= tensor_cap) {
        auto eq = verify_circuits(c, *r.circuit, tensor_cap);
        if (!eq.equivalent) {
          std::cerr << "output is not equivalent to the input (deviation " << eq.deviation << ")\n";
          return Inequivalent;
        }
      }
      bool exhausted = std::any_of(r.report.warnings.begin(), r.report.warnings.end(),
                                   [](const std::string& w) { return w.find("budget") != std::string::npos; });
      return exhausted ? Budget : Ok;
    }

    if (*verify) {
      Circuit a, b;
      try {
        a = load_circuit(a_path);
        b = load_circuit(b_path);
      } catch (const std::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return Parse;
      }
      try {
        auto eq = verify_circuits(a, b, tensor_cap);
        std::cout << (eq.equivalent ? "equivalent" : "not equivalent") << " (max deviation " << eq.deviation
                  << ", " << eq.branches << " branches)\n";
        return eq.equivalent ? Ok : Inequivalent;
      } catch (const CapError& e) {
        std::cerr << e.what() << "\n";
        return Cap;
      }
    }

    if (*bench) {
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && is_circuit_file(entry.path())) files.push_back(entry.path());
      std::sort(files.begin(), files.end());
      opt.method = Method::Both;
      std::vector<std::future<OptimizeReport>> jobs;
      for (const auto& f : files)
        jobs.push_back(std::async(std::launch::async, [f, opt]() {
          try {
            return optimize_circuit(load_circuit(f.string()), f.stem().string(), opt).report;
          } catch (const std::exception& e) {
            OptimizeReport r;
            r.name = f.stem().string();
            r.errors.push_back(e.what());
            return r;
          }
        }));
      std::vector<OptimizeReport> rows;
      int status = Ok;
      for (auto& j : jobs) {
        rows.push_back(j.get());
        const auto& r = rows.back();
        for (const auto& e : r.errors) std::cerr << r.name << ": " << e << "\n";
        if (r.initial_qubits != r.n + r.h) {
          std::cerr << r.name << ": initial != n + h\n";
          status = Fail;
        }
      }
      std::string table = bench_table(rows, format == "markdown");
      if (out_path.empty()) std::cout << table;
      else write_file(out_path, table);
      return status;
    }

    if (*fvs) {
      Digraph g;
      try {
        g = parse_dimacs(slurp(fvs_path));
      } catch (const std::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return Parse;
      }
      auto r = min_fvs(g, opt.solver == SolverChoice::Exact ? FvsMode::Exact : FvsMode::Heuristic, opt.budget);
      std::cout << "size " << r.vertices.size() << (r.optimal ? " (optimal)" : "") << "\nset";
      for (int v : r.vertices) std::cout << " " << v + 1;
      std::cout << "\n";
      return opt.solver == SolverChoice::Exact && !r.optimal ? Budget : Ok;
    }

    if (*width) {
      GraphInstance gi;
      try {
        gi = parse_edge_list(slurp(graph_path));
      } catch (const std::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return Parse;
      }
      SolveMode mode = opt.solver == SolverChoice::Exact ? SolveMode::Exact : SolveMode::Greedy;
      SolveResult r;
      if (kind == "vsep") {
        r = solve_pathwidth_fixed_endbags(gi.graph, gi.U, gi.W, mode, opt.budget);
      } else {
        if (gi.U.size() != 1 || gi.W.size() != 1) {
          std::cerr << "cutwidth needs exactly one U and one W vertex\n";
          return Parse;
        }
        r = solve_cutwidth_fixed_ends(gi.graph, gi.U[0], gi.W[0], mode, opt.budget);
      }
      std::cout << layout_to_json(r.order, r.width, interval_layout(gi.graph, r.order));
      return mode == SolveMode::Exact && !r.optimal ? Budget : Ok;
    }
  } catch (const CapError& e) {
    std::cerr << e.what() << "\n";
    return Cap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Fail;
  }
  return Ok;
}
