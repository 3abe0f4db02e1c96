#include "qcw/circuit.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace qcw {

namespace {

struct KindInfo {
  GateKind kind;
  std::string_view name;
  int arity;
};

constexpr std::array<KindInfo, 17> kKinds{{
    {GateKind::H, "H", 1},
    {GateKind::X, "X", 1},
    {GateKind::Z, "Z", 1},
    {GateKind::S, "S", 1},
    {GateKind::Sdg, "Sdg", 1},
    {GateKind::T, "T", 1},
    {GateKind::Tdg, "Tdg", 1},
    {GateKind::Rz, "Rz", 1},
    {GateKind::Rx, "Rx", 1},
    {GateKind::CNOT, "CNOT", 2},
    {GateKind::CZ, "CZ", 2},
    {GateKind::PrepPlus, "PrepPlus", 1},
    {GateKind::PrepZero, "PrepZero", 1},
    {GateKind::MeasX, "MeasX", 1},
    {GateKind::MeasZ, "MeasZ", 1},
    {GateKind::CtrlZ, "CtrlZ", 1},
    {GateKind::CtrlX, "CtrlX", 1},
}};

const KindInfo& info(GateKind k) {
  for (const auto& i : kKinds)
    if (i.kind == k) return i;
  throw std::logic_error("unknown gate kind");
}

} // namespace

std::string_view kind_name(GateKind k) { return info(k).name; }

std::optional<GateKind> kind_from_name(std::string_view s) {
  for (const auto& i : kKinds)
    if (i.name == s) return i.kind;
  return std::nullopt;
}

int arity(GateKind k) { return info(k).arity; }

bool is_measurement(GateKind k) { return k == GateKind::MeasX || k == GateKind::MeasZ; }
bool is_preparation(GateKind k) { return k == GateKind::PrepPlus || k == GateKind::PrepZero; }
bool is_controlled(GateKind k) { return k == GateKind::CtrlX || k == GateKind::CtrlZ; }

std::optional<Angle> z_phase(const Gate& g) {
  switch (g.kind) {
  case GateKind::Z: return Angle(1, 1);
  case GateKind::S: return Angle(1, 2);
  case GateKind::Sdg: return Angle(3, 2);
  case GateKind::T: return Angle(1, 4);
  case GateKind::Tdg: return Angle(7, 4);
  case GateKind::Rz: return g.angle;
  default: return std::nullopt;
  }
}

Gate phase_gate(int q, const Angle& a) {
  if (!a.is_symbolic()) {
    if (a == Angle(1, 4)) return Gate::single(GateKind::T, q);
    if (a == Angle(7, 4)) return Gate::single(GateKind::Tdg, q);
    if (a == Angle(1, 2)) return Gate::single(GateKind::S, q);
    if (a == Angle(3, 2)) return Gate::single(GateKind::Sdg, q);
    if (a == Angle(1, 1)) return Gate::single(GateKind::Z, q);
  }
  return Gate::rz(q, a);
}

bool is_non_clifford(const Gate& g) {
  switch (g.kind) {
  case GateKind::T:
  case GateKind::Tdg: return true;
  case GateKind::Rz:
  case GateKind::Rx: return !g.angle.is_clifford();
  default: return false;
  }
}

Circuit Circuit::identity(int n) {
  Circuit c;
  c.num_qubits = n;
  for (int q = 0; q < n; ++q) {
    c.inputs.push_back(q);
    c.outputs.push_back(q);
  }
  return c;
}

int Circuit::next_outcome() const {
  int m = 0;
  for (const auto& g : gates)
    if (is_measurement(g.kind)) m = std::max(m, g.outcome + 1);
  return m;
}

void Circuit::validate() const {
  enum class St { Fresh, Live, Dead };
  if (num_qubits < 0) throw CircuitError("negative qubit count");
  std::vector<St> st(num_qubits, St::Fresh);
  auto check_ports = [&](const std::vector<int>& ports, const char* what) {
    std::set<int> seen;
    for (int q : ports) {
      if (q < 0 || q >= num_qubits)
        throw CircuitError(std::string(what) + " qubit out of range: " + std::to_string(q));
      if (!seen.insert(q).second)
        throw CircuitError(std::string(what) + " qubit listed twice: " + std::to_string(q));
    }
  };
  check_ports(inputs, "input");
  check_ports(outputs, "output");
  for (int q : inputs) st[q] = St::Live;
  std::set<int> outcomes;
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    auto where = " (gate " + std::to_string(i) + ")";
    if (static_cast<int>(g.qubits.size()) != arity(g.kind))
      throw CircuitError("arity mismatch for " + std::string(kind_name(g.kind)) + where);
    for (int q : g.qubits)
      if (q < 0 || q >= num_qubits) throw CircuitError("qubit out of range" + where);
    if (g.qubits.size() == 2 && g.qubits[0] == g.qubits[1])
      throw CircuitError("repeated qubit in gate" + where);
    if (is_controlled(g.kind) && !outcomes.count(g.outcome))
      throw CircuitError("correction references undefined outcome" + where);
    if (is_preparation(g.kind)) {
      int q = g.qubits[0];
      if (st[q] == St::Live) throw CircuitError("preparation of a live qubit" + where);
      st[q] = St::Live;
      continue;
    }
    for (int q : g.qubits) {
      if (st[q] == St::Dead) throw CircuitError("gate on measured qubit" + where);
      st[q] = St::Live;
    }
    if (is_measurement(g.kind)) {
      if (!outcomes.insert(g.outcome).second || g.outcome < 0)
        throw CircuitError("measurement outcome id reused or negative" + where);
      st[g.qubits[0]] = St::Dead;
    }
  }
  for (int q : outputs)
    if (st[q] == St::Dead) throw CircuitError("output qubit was measured: " + std::to_string(q));
}

int count_kind(const Circuit& c, GateKind k) {
  return static_cast<int>(
      std::count_if(c.gates.begin(), c.gates.end(), [k](const Gate& g) { return g.kind == k; }));
}

ParseError::ParseError(int line, const std::string& msg)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
      line_(line) {}

} // namespace qcw
