// One PASS/FAIL line per acceptance criterion. Exit status is the number of failures.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "qcw/degadget.hpp"
#include "qcw/gadget.hpp"
#include "qcw/layout.hpp"
#include "qcw/oracle.hpp"
#include "qcw/pipeline.hpp"

using namespace qcw;
using K = GateKind;
namespace fs = std::filesystem;

namespace {

// pinned tolerances
constexpr int kWidthTol = 0;
constexpr int kFvsTol = 0;
constexpr double kSemanticTol = 1e-9;
constexpr int kVerifyCap = 8; // pathwidth outputs may use a couple more lines than the input
constexpr int kBruteCap = 10;

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("criterion %d: %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string read(const std::string& p) {
  std::ifstream f(p);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Circuit random_clifford_t(std::mt19937_64& rng, int n, int len) {
  Circuit c = Circuit::identity(n);
  std::uniform_int_distribution<int> pick(0, 6), q(0, n - 1);
  for (int i = 0; i < len; ++i) {
    int a = q(rng), b = q(rng);
    switch (pick(rng)) {
      case 0: c.gates.push_back(Gate::single(K::T, a)); break;
      case 1: c.gates.push_back(Gate::single(K::Tdg, a)); break;
      case 2: case 3: c.gates.push_back(Gate::single(K::H, a)); break;
      case 4: c.gates.push_back(Gate::single(K::S, a)); break;
      default: if (a != b) c.gates.push_back(Gate::two(K::CNOT, a, b)); break;
    }
  }
  return c;
}

// exact pathwidth of the fused diagram's signature, by enumeration
int brute_pw(const ZxDiagram& d) {
  Signature s = signature(drop_self_loops(fuse_spiders(d)), {false, false});
  return brute_width(s.graph, s.inputs, s.outputs, WidthKind::Vsep, kBruteCap).width;
}

int signature_size(const ZxDiagram& d) {
  return signature(drop_self_loops(fuse_spiders(d)), {false, false}).graph.n;
}

void criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(seed_base() + 101);
  int bad = 0, runs = 0;
  for (int n = 4; n <= 9; ++n)
    for (int t = 0; t < 200; ++t) {
      Graph g = random_graph(rng, n, 0.4, 0.15);
      int u = 0, w = n - 1;
      auto cw = solve_cutwidth_fixed_ends(g, u, w, SolveMode::Exact);
      auto bcw = brute_width(g, {u}, {w}, WidthKind::Cutwidth);
      std::uniform_int_distribution<int> bag(0, 2);
      std::vector<int> U, W;
      for (int i = 0, k = bag(rng); i < k; ++i) U.push_back(i);
      for (int i = 0, k = bag(rng); i < k; ++i) W.push_back(n - 1 - i);
      auto pw = solve_pathwidth_fixed_endbags(g, U, W, SolveMode::Exact);
      auto bpw = brute_width(g, U, W, WidthKind::Vsep);
      if (std::abs(cw.width - bcw.width) > kWidthTol || cutwidth_of(g, cw.order) != cw.width) ++bad;
      if (std::abs(pw.width - bpw.width) > kWidthTol || vsep_of(g, pw.order) != pw.width) ++bad;
      runs += 2;
    }
  char buf[160];
  std::snprintf(buf, sizeof buf, "width solvers vs brute force: %d/%d mismatches, %.1fs", bad, runs, seconds_since(t0));
  report(1, bad == 0, buf);
}

void criterion2() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(seed_base() + 102);
  int bad = 0, runs = 0;
  for (int n = 4; n <= 12; ++n)
    for (int t = 0; t < 200; ++t) {
      Digraph g = random_digraph(rng, n, 0.25, 0.05);
      auto r = min_fvs(g, FvsMode::Exact);
      int b = brute_fvs(g).size;
      std::vector<bool> removed(n, false);
      for (int v : r.vertices) removed[v] = true;
      if (std::abs(static_cast<int>(r.vertices.size()) - b) > kFvsTol || !g.acyclic_without(removed)) ++bad;
      ++runs;
    }
  char buf[160];
  std::snprintf(buf, sizeof buf, "exact FVS vs brute force: %d/%d mismatches, %.1fs", bad, runs, seconds_since(t0));
  report(2, bad == 0, buf);
}

// Corpus for 3 and 4: 50 random diagrams plus 50 circuit-translated ones.
struct Instance {
  ZxDiagram d;
  bool from_circuit = false;
};

std::vector<Instance> width_corpus() {
  std::mt19937_64 rng(seed_base() + 103);
  std::vector<Instance> out;
  std::uniform_int_distribution<int> spiders(3, 8), io(0, 2), cq(2, 3), len(3, 9);
  while (out.size() < 50) {
    int s = spiders(rng);
    ZxDiagram d = random_zx(rng, s, std::min(s, io(rng)), std::min(s, io(rng)), 0.45);
    if (fuse_spiders(d).spider_count() <= 10 && signature_size(d) <= kBruteCap) out.push_back({d, false});
  }
  while (out.size() < 100) {
    ZxDiagram d = to_graph_like(circuit_to_zx(random_clifford_t(rng, cq(rng), len(rng))));
    if (d.spider_count() <= 10 && signature_size(d) <= kBruteCap) out.push_back({d, true});
  }
  return out;
}

void criteria34() {
  auto corpus = width_corpus();
  int bad3 = 0, bad4 = 0, n4 = 0;
  std::string first3, first4;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& inst = corpus[i];
    int pw = brute_pw(inst.d);
    auto r = optimize_diagram(inst.d, SolveMode::Exact);
    int cut = max_cut(r.diagram);
    if (cut < pw || cut > pw + 2) {
      if (bad3++ == 0) first3 = " first #" + std::to_string(i) + " pw=" + std::to_string(pw) + " cut=" + std::to_string(cut);
    }
    if (inst.from_circuit) {
      ++n4;
      int q = zx_to_circuit(r.diagram).num_qubits;
      if (q < pw || q > pw + 1) {
        if (bad4++ == 0) first4 = " first #" + std::to_string(i) + " pw=" + std::to_string(pw) + " qubits=" + std::to_string(q);
      }
    }
  }
  report(3, bad3 == 0, "pw <= max cut <= pw+2: " + std::to_string(bad3) + "/100 violations" + first3);
  report(4, bad4 == 0,
         "circuit-translated qubits in [pw, pw+1]: " + std::to_string(bad4) + "/" + std::to_string(n4) + " violations" + first4);
}

void criterion5() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(seed_base() + 105);
  int suite = 0, checked = 0, bad = 0, skipped = 0;
  double worst = 0;
  std::uniform_int_distribution<int> nq(1, 3), len(4, 12);
  while (suite < 50) {
    Circuit c = random_clifford_t(rng, nq(rng), len(rng));
    if (gadgetize_hadamards(c).num_qubits > 6) continue;
    ++suite;
    PipelineOptions opt;
    for (Method m : {Method::Degadget, Method::Pathwidth}) {
      opt.method = m;
      PipelineResult r = optimize_circuit(c, "c", opt);
      if (!r.circuit) {
        ++skipped;
        continue;
      }
      auto eq = verify_circuits(c, *r.circuit, kVerifyCap, kSemanticTol);
      worst = std::max(worst, eq.deviation);
      ++checked;
      if (!eq.equivalent || eq.deviation >= kSemanticTol) ++bad;
    }
  }
  char buf[200];
  std::snprintf(buf, sizeof buf, "%d circuits, %d outputs verified, %d inequivalent, %d skipped (extraction unsupported), max dev %.2e, %.1fs",
                suite, checked, bad, skipped, worst, seconds_since(t0));
  report(5, bad == 0 && checked > 0, buf);
}

void criterion6() {
  GadgetizedCircuit g = gadgetized_from_json(read(QCW_FIXTURE_DIR "/two_cycle_pairs.json"));
  auto fvs = min_fvs(project_h_graph(build_precedence_graph(g)), FvsMode::Exact);
  Circuit full = replay(g);
  Circuit out = degadgetize(g, fvs.vertices);
  int removed = full.num_qubits - out.num_qubits;
  bool same = verify_circuits(full, out, 7).equivalent;
  report(6, fvs.vertices.size() == 2 && removed == 2 && same,
         "two-cycle pairs: |FVS| = " + std::to_string(fvs.vertices.size()) + ", ancillas removed = " + std::to_string(removed) +
             (same ? ", equivalent to replay" : ", NOT equivalent"));
}

void criterion7() {
  auto load = [](const char* name) { return zx_from_json(read(std::string(QCW_FIXTURE_DIR) + "/" + name)); };
  ZxDiagram f4 = load("reorder_9_to_6.json"), f5 = load("reorder_9_to_5.json"), f7 = load("unfuse_4_lines.json");
  int f4_before = max_cut(f4), f4_after = max_cut(reorder_diagram_cutwidth(f4, SolveMode::Exact).diagram);
  int f5_before = max_cut(f5), f5_after = max_cut(reorder_diagram_cutwidth(f5, SolveMode::Exact).diagram);
  auto r7 = optimize_diagram(f7, SolveMode::Exact);
  Circuit c7 = zx_to_circuit(r7.diagram);
  double dev7 = scalar_deviation(evaluate_tensor(r7.diagram, 16), evaluate_tensor(f7, 16));
  bool ok = f5_before == 9 && f5_after == 5 && c7.num_qubits == 4 && dev7 < kSemanticTol;
  char buf[200];
  std::snprintf(buf, sizeof buf, "reorder 9->5 fixture: %d -> %d, unfuse fixture: %d lines (dev %.1e); reorder 9->6 fixture: %d -> %d", f5_before,
                f5_after, c7.num_qubits, dev7, f4_before, f4_after);
  report(7, ok, buf);
}

void criterion8() {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(QCW_BENCH_DIR))
    if (e.path().extension() == ".qc") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<OptimizeReport> rows;
  int bad = 0;
  for (const auto& f : files) {
    rows.push_back(optimize_circuit(load_circuit(f.string()), f.stem().string(), {}).report);
    if (rows.back().initial_qubits != rows.back().n + rows.back().h) ++bad;
  }
  std::string t1 = bench_table(rows, false), t2 = bench_table(rows, false);
  bool header = t1.rfind("Circuit\tn\th\tinitial\tDegadgetization\tPathwidth\n", 0) == 0;
  report(8, bad == 0 && header && t1 == t2 && !rows.empty(),
         std::to_string(rows.size()) + " bench rows, initial = n + h violated on " + std::to_string(bad) +
             " (absolute counts need the pre-optimized corpus)");
}

void criterion9() {
  std::mt19937_64 rng(seed_base() + 109);
  int runs = 0, width_bad = 0, worse = 0, skipped = 0;
  std::uniform_int_distribution<int> nq(1, 4), len(6, 30);
  std::vector<Circuit> inputs;
  for (int i = 0; i < 60; ++i) inputs.push_back(random_clifford_t(rng, nq(rng), len(rng)));
  for (const auto& e : fs::directory_iterator(QCW_BENCH_DIR))
    if (e.path().extension() == ".qc") inputs.push_back(load_circuit(e.path().string()));
  for (const auto& c : inputs) {
    Circuit gz = gadgetize_hadamards(c);
    try {
      auto ex = run_degadget(gz, true, std::chrono::milliseconds(10000));
      auto he = run_degadget(gz, false, std::chrono::milliseconds(10000));
      for (const auto* o : {&ex, &he}) {
        ++runs;
        if (o->circuit.num_qubits != c.num_qubits + static_cast<int>(o->fvs.size())) ++width_bad;
      }
      if (ex.fvs.size() > he.fvs.size()) ++worse;
    } catch (const ExtractError&) {
      ++skipped;
    }
  }
  report(9, width_bad == 0 && worse == 0 && runs > 0,
         std::to_string(runs) + " degadget runs, width != n + |X| on " + std::to_string(width_bad) +
             ", exact worse than heuristic on " + std::to_string(worse) + ", " + std::to_string(skipped) +
             " skipped (extraction unsupported)");
}

} // namespace

int main() {
  criterion1();
  criterion2();
  criteria34();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  return failures;
}
