#include "qcw/gadget.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <json.hpp>

#include "qcw/gf2.hpp"

namespace qcw {

bool PauliZProduct::has(int q) const {
  return std::binary_search(support.begin(), support.end(), q);
}

std::vector<bool> GadgetizedCircuit::initial_mask() const {
  std::vector<bool> m(num_qubits, true);
  for (const auto& p : h_pairs) m[p.b] = false;
  return m;
}

void GadgetizedCircuit::validate() const {
  auto in_range = [&](int q) { return q >= 0 && q < num_qubits; };
  std::set<int> as, bs;
  for (const auto& p : h_pairs) {
    if (!in_range(p.a) || !in_range(p.b) || p.a == p.b) throw CircuitError("bad Hadamard pair");
    if (!as.insert(p.a).second) throw CircuitError("qubit measured by two pairs");
    if (!bs.insert(p.b).second) throw CircuitError("qubit created by two pairs");
  }
  for (int q : inputs)
    if (bs.count(q)) throw CircuitError("pair creates an input qubit");
  for (int q : outputs)
    if (!in_range(q) || as.count(q)) throw CircuitError("output qubit is measured by a pair");
  for (const auto& g : gadgets) {
    if (g.product.support.empty()) throw CircuitError("gadget with empty support");
    if (g.angle.is_zero()) throw CircuitError("gadget with zero angle");
    for (int q : g.product.support)
      if (!in_range(q)) throw CircuitError("gadget support out of range");
  }
  if (!event_order.empty()) {
    std::set<std::pair<int, int>> seen;
    for (const auto& e : event_order) seen.insert({e.kind, e.index});
    if (event_order.size() != gadgets.size() + h_pairs.size() ||
        seen.size() != event_order.size())
      throw CircuitError("event order is not a permutation of gadgets and pairs");
  }
}

std::vector<int> internal_hadamards(const Circuit& c) {
  int total = 0;
  for (const auto& g : c.gates) total += is_non_clifford(g);
  std::vector<int> out;
  int before = 0;
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const auto& g = c.gates[i];
    if (is_non_clifford(g)) ++before;
    if (g.kind == GateKind::H && before > 0 && before < total) out.push_back(static_cast<int>(i));
  }
  return out;
}

Circuit gadgetize_hadamards(const Circuit& c) {
  for (const auto& g : c.gates)
    if (is_measurement(g.kind) || is_preparation(g.kind) || is_controlled(g.kind))
      throw CircuitError("gadgetize_hadamards: circuit already contains measurements");
  auto internal = internal_hadamards(c);
  std::set<int> is_internal(internal.begin(), internal.end());
  Circuit out;
  out.num_qubits = c.num_qubits;
  out.inputs = c.inputs;
  out.names = c.names;
  std::vector<int> cur(c.num_qubits);
  for (int q = 0; q < c.num_qubits; ++q) cur[q] = q;
  int outcome = 0;
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    Gate g = c.gates[i];
    if (is_internal.count(static_cast<int>(i))) {
      int q = g.qubits[0], a = cur[q], b = out.num_qubits++;
      if (!out.names.empty()) out.names.push_back("h" + std::to_string(b - c.num_qubits) + "_");
      out.gates.push_back(Gate::single(GateKind::PrepPlus, b));
      out.gates.push_back(Gate::two(GateKind::CZ, a, b));
      out.gates.push_back(Gate::meas(GateKind::MeasX, a, outcome));
      out.gates.push_back(Gate::ctrl(GateKind::CtrlX, b, outcome));
      ++outcome;
      cur[q] = b;
      continue;
    }
    for (int& q : g.qubits) q = cur[q];
    out.gates.push_back(std::move(g));
  }
  for (int q : c.outputs) out.outputs.push_back(cur[q]);
  if (!out.names.empty()) {
    std::set<std::string> used(c.names.begin(), c.names.end());
    for (int q = c.num_qubits; q < out.num_qubits; ++q)
      while (!used.insert(out.names[q]).second) out.names[q] += "_";
  }
  return out;
}

void emit_gadget(std::vector<Gate>& out, const std::vector<int>& lines, const Angle& angle) {
  if (lines.empty()) return;
  std::vector<int> l(lines);
  std::sort(l.begin(), l.end());
  int target = l.back();
  for (std::size_t i = 0; i + 1 < l.size(); ++i)
    out.push_back(Gate::two(GateKind::CNOT, l[i], target));
  out.push_back(phase_gate(target, angle));
  for (std::size_t i = l.size() - 1; i-- > 0;)
    out.push_back(Gate::two(GateKind::CNOT, l[i], target));
}

namespace {

// Affine frame over GF(2): wire w holds rows[w] . x + cst[w], x = frame variables
// (one per wire index; a pair's b doubles as its fresh variable).
struct Frame {
  int n;
  BitMatrix rows;
  std::vector<bool> cst, wire_alive, var_alive, young;

  explicit Frame(int n_)
      : n(n_), rows(n_, Bits(n_)), cst(n_), wire_alive(n_), var_alive(n_), young(n_) {}

  std::vector<int> alive_wires() const {
    std::vector<int> w;
    for (int i = 0; i < n; ++i)
      if (wire_alive[i]) w.push_back(i);
    return w;
  }
  std::vector<int> alive_vars() const {
    std::vector<int> v;
    for (int i = 0; i < n; ++i)
      if (var_alive[i]) v.push_back(i);
    return v;
  }
};

struct RawGadget {
  Bits parity;
  Angle angle;
};

// parity^T E, for E e_{a'} = q and E e_v = e_v + p_v q (v != a')
Bits substitute(const Bits& s, const Bits& p, const Bits& q, int ap) {
  bool sq = (s & q).count() % 2 == 1;
  Bits r = s;
  if (sq) r ^= p;
  r[ap] = sq;
  return r;
}

} // namespace

GadgetizedCircuit extract_gadget_form(const Circuit& c) {
  c.validate();
  const int n = c.num_qubits;
  int first = -1, last = -1;
  for (int i = 0; i < static_cast<int>(c.gates.size()); ++i)
    if (is_non_clifford(c.gates[i]) || is_preparation(c.gates[i].kind) ||
        is_measurement(c.gates[i].kind) || is_controlled(c.gates[i].kind)) {
      if (first < 0) first = i;
      last = i;
    }

  GadgetizedCircuit g;
  g.num_qubits = n;
  g.inputs = c.inputs;
  auto check_plain = [&](int from, int to) {
    for (int i = from; i < to; ++i) {
      auto k = c.gates[i].kind;
      if (is_measurement(k) || is_preparation(k) || is_controlled(k) || k == GateKind::Rx)
        throw ExtractError("gate " + std::to_string(i) + " (" + std::string(kind_name(k)) +
                           ") outside the gadget region");
    }
  };
  if (first < 0) {
    // no gadget structure: phase gates still become (Clifford) gadgets
    int n_gates = static_cast<int>(c.gates.size());
    first = n_gates;
    for (int i = 0; i < n_gates && first == n_gates; ++i)
      if (z_phase(c.gates[i])) first = i;
    last = std::min(first, n_gates - 1);
  }
  check_plain(0, first);
  check_plain(last + 1, static_cast<int>(c.gates.size()));
  // verbatim segments end at the H nearest to the gadget region; everything
  // between them runs through the frame
  int start = 0, stop = static_cast<int>(c.gates.size());
  for (int i = 0; i < first; ++i)
    if (c.gates[i].kind == GateKind::H) start = i + 1;
  for (int i = stop - 1; i > last; --i)
    if (c.gates[i].kind == GateKind::H) stop = i;
  last = stop - 1;
  g.leading_clifford.assign(c.gates.begin(), c.gates.begin() + start);

  Frame fr(n);
  std::vector<bool> fresh(n, false);
  for (int i = start; i <= last; ++i)
    if (c.gates[i].kind == GateKind::PrepPlus) fresh[c.gates[i].qubits[0]] = true;
  for (int q = 0; q < n; ++q) {
    if (fresh[q]) continue;
    fr.rows[q][q] = true;
    fr.wire_alive[q] = fr.var_alive[q] = true;
  }

  std::vector<RawGadget> raw;
  std::vector<Gate> front; // basis changes, appended to the leading segment
  auto add_gadget = [&](const Bits& parity, bool negate, const Angle& a) {
    if (parity.none() || a.is_zero()) return;
    raw.push_back({parity, negate ? -a : a});
    g.event_order.push_back({EventRef::Gadget, static_cast<int>(raw.size()) - 1});
  };

  for (int i = start; i <= last; ++i) {
    const Gate& gt = c.gates[i];
    const auto where = " at gate " + std::to_string(i);
    using K = GateKind;
    switch (gt.kind) {
    case K::CNOT: {
      int ct = gt.qubits[0], tg = gt.qubits[1];
      fr.rows[tg] ^= fr.rows[ct];
      fr.cst[tg] = fr.cst[tg] != fr.cst[ct];
      continue;
    }
    case K::X: fr.cst[gt.qubits[0]] = !fr.cst[gt.qubits[0]]; continue;
    case K::CZ: {
      int a = gt.qubits[0], b = gt.qubits[1];
      Angle q(1, 2);
      add_gadget(fr.rows[a], fr.cst[a], q);
      add_gadget(fr.rows[b], fr.cst[b], q);
      add_gadget(fr.rows[a] ^ fr.rows[b], fr.cst[a] != fr.cst[b], -q);
      continue;
    }
    case K::PrepPlus: break;
    case K::H: throw ExtractError("Hadamard inside the non-Clifford region" + where);
    default:
      if (auto ph = z_phase(gt)) {
        int q = gt.qubits[0];
        add_gadget(fr.rows[q], fr.cst[q], *ph);
        continue;
      }
      throw ExtractError("unexpected " + std::string(kind_name(gt.kind)) + where);
    }

    // PrepPlus(b); CZ(a,b); MeasX(a); corrections on b
    int b = gt.qubits[0];
    if (i + 2 > last || c.gates[i + 1].kind != K::CZ || c.gates[i + 2].kind != K::MeasX)
      throw ExtractError("preparation not followed by a Hadamard gadget" + where);
    const Gate& cz = c.gates[i + 1];
    if (cz.qubits[0] != b && cz.qubits[1] != b)
      throw ExtractError("gadget CZ does not touch the prepared qubit" + where);
    int a = cz.qubits[0] == b ? cz.qubits[1] : cz.qubits[0];
    const Gate& ms = c.gates[i + 2];
    if (ms.qubits[0] != a) throw ExtractError("gadget measures the wrong qubit" + where);
    HPair pair;
    int j = i + 3;
    while (j <= last && is_controlled(c.gates[j].kind) && c.gates[j].outcome == ms.outcome &&
           c.gates[j].qubits[0] == b)
      pair.corrections.push_back(c.gates[j++].kind);
    i = j - 1;

    // which frame variables does wire a consist of, and which does it feed?
    auto wires = fr.alive_wires(), vars = fr.alive_vars();
    BitMatrix sq;
    for (int w : wires) {
      Bits r(vars.size());
      for (std::size_t k = 0; k < vars.size(); ++k) r[k] = fr.rows[w][vars[k]];
      sq.push_back(r);
    }
    // q = column a of the inverse: solve M^T-free by inverting the compact matrix
    auto inv = gf2_inverse(sq);
    if (!inv) throw ExtractError("singular frame" + where);
    std::size_t apos = std::lower_bound(wires.begin(), wires.end(), a) - wires.begin();
    Bits p(n), qv(n);
    for (std::size_t k = 0; k < vars.size(); ++k) {
      p[vars[k]] = fr.rows[a][vars[k]];
      qv[vars[k]] = (*inv)[k][apos];
    }
    int ap;
    if (p.count() == 1 && p == qv) {
      ap = static_cast<int>(p.find_first());
    } else {
      Bits both = p | qv;
      for (auto v = both.find_first(); v != Bits::npos; v = both.find_next(v))
        if (fr.young[v]) throw ExtractError("unresolvable gadget frame" + where);
      Bits common = p & qv;
      ap = common[a] ? a : static_cast<int>(common.find_first());
      for (auto& r : fr.rows) r = substitute(r, p, qv, ap);
      for (auto& rg : raw) rg.parity = substitute(rg.parity, p, qv, ap);
      // front network: z = E^{-1} x on the touched variables
      std::vector<int> touched;
      for (auto v = both.find_first(); v != Bits::npos; v = both.find_next(v))
        touched.push_back(static_cast<int>(v));
      BitMatrix e(touched.size(), Bits(touched.size()));
      for (std::size_t col = 0; col < touched.size(); ++col) {
        int v = touched[col];
        for (std::size_t row = 0; row < touched.size(); ++row) {
          int u = touched[row];
          bool val = v == ap ? qv[u] : ((u == v) != (p[v] && qv[u]));
          e[row][col] = val;
        }
      }
      auto einv = gf2_inverse(e);
      if (!einv) throw ExtractError("singular basis change" + where);
      auto net = synthesize_linear(*einv, touched);
      front.insert(front.end(), net.begin(), net.end());
    }
    pair.a = ap;
    pair.b = b;
    pair.flip = fr.cst[a];
    g.h_pairs.push_back(pair);
    g.event_order.push_back({EventRef::Pair, static_cast<int>(g.h_pairs.size()) - 1});
    fr.wire_alive[a] = false;
    fr.var_alive[ap] = false;
    fr.rows[b].reset();
    fr.rows[b][b] = true;
    fr.cst[b] = false;
    fr.wire_alive[b] = fr.var_alive[b] = fr.young[b] = true;
  }
  g.leading_clifford.insert(g.leading_clifford.end(), front.begin(), front.end());

  // trailing: linear network alive vars -> alive wires, constants, then the segment
  auto wires = fr.alive_wires(), vars = fr.alive_vars();
  if (wires.size() != vars.size()) throw ExtractError("frame lost track of a qubit");
  BitMatrix a(wires.size(), Bits(vars.size()));
  for (std::size_t i = 0; i < wires.size(); ++i)
    for (std::size_t j = 0; j < vars.size(); ++j) a[i][j] = fr.rows[wires[i]][vars[j]];
  g.trailing_clifford = synthesize_linear(a, vars);
  std::vector<int> line_of(n, -1);
  for (std::size_t i = 0; i < wires.size(); ++i) {
    line_of[wires[i]] = vars[i];
    if (fr.cst[wires[i]]) g.trailing_clifford.push_back(Gate::single(GateKind::X, vars[i]));
  }
  for (int i = last + 1; i < static_cast<int>(c.gates.size()); ++i) {
    Gate t = c.gates[i];
    for (int& q : t.qubits) {
      if (line_of[q] < 0) throw ExtractError("trailing gate on a measured qubit");
      q = line_of[q];
    }
    g.trailing_clifford.push_back(std::move(t));
  }
  for (int q : c.outputs) {
    if (line_of[q] < 0) throw ExtractError("output qubit was measured");
    g.outputs.push_back(line_of[q]);
  }

  // merge equal products at their first occurrence, drop zero angles
  std::map<Bits, int> first_of;
  std::vector<int> slot(raw.size(), -1);
  std::vector<PhaseGadget> merged;
  for (std::size_t k = 0; k < raw.size(); ++k) {
    auto [it, inserted] = first_of.emplace(raw[k].parity, static_cast<int>(merged.size()));
    if (inserted) {
      PauliZProduct pz;
      for (auto v = raw[k].parity.find_first(); v != Bits::npos; v = raw[k].parity.find_next(v))
        pz.support.push_back(static_cast<int>(v));
      merged.push_back({pz, raw[k].angle});
      slot[k] = it->second;
    } else {
      merged[it->second].angle += raw[k].angle;
    }
  }
  std::vector<int> renum(merged.size(), -1);
  for (std::size_t k = 0; k < merged.size(); ++k)
    if (!merged[k].angle.is_zero()) {
      renum[k] = static_cast<int>(g.gadgets.size());
      g.gadgets.push_back(merged[k]);
    }
  std::vector<EventRef> events;
  for (const auto& e : g.event_order) {
    if (e.kind == EventRef::Pair) {
      events.push_back(e);
    } else if (slot[e.index] >= 0 && renum[slot[e.index]] >= 0) {
      events.push_back({EventRef::Gadget, renum[slot[e.index]]});
    }
  }
  g.event_order = std::move(events);
  return g;
}

namespace {

using nlohmann::json;

json gates_json(const std::vector<Gate>& gates) {
  Circuit c;
  c.gates = gates;
  for (const auto& gt : gates)
    for (int q : gt.qubits) c.num_qubits = std::max(c.num_qubits, q + 1);
  return json::parse(circuit_to_json(c))["gates"];
}

std::vector<Gate> gates_from(const json& j, int n) {
  Circuit c;
  for (const auto& jg : j) {
    auto k = kind_from_name(jg.at("kind").get<std::string>());
    if (!k) throw std::invalid_argument("unknown gate kind");
    Gate gt{*k, jg.at("qubits").get<std::vector<int>>(), {}, -1};
    for (int q : gt.qubits)
      if (q < 0 || q >= n) throw std::invalid_argument("gate qubit out of range");
    if (jg.contains("angle")) {
      const auto& ja = jg["angle"];
      gt.angle = ja.is_string() ? Angle::parse(ja.get<std::string>())
                                : Angle(ja[0].get<std::int64_t>(), ja[1].get<std::int64_t>());
    }
    c.gates.push_back(gt);
  }
  return c.gates;
}

json angle_json(const Angle& a) {
  if (a.is_symbolic()) return a.str();
  return json::array({a.num(), a.den()});
}

} // namespace

std::string gadgetized_to_json(const GadgetizedCircuit& g) {
  json gadgets = json::array(), pairs = json::array(), events = json::array();
  for (const auto& gd : g.gadgets)
    gadgets.push_back({{"support", gd.product.support}, {"angle", angle_json(gd.angle)}});
  for (const auto& p : g.h_pairs) {
    json jp{{"a", p.a}, {"b", p.b}};
    if (p.flip) jp["flip"] = true;
    json corr = json::array();
    for (auto k : p.corrections) corr.push_back(std::string(kind_name(k)));
    jp["corrections"] = corr;
    pairs.push_back(jp);
  }
  for (const auto& e : g.event_order)
    events.push_back(json::array({e.kind == EventRef::Gadget ? "p" : "h", e.index}));
  json j{{"num_qubits", g.num_qubits}, {"inputs", g.inputs},    {"outputs", g.outputs},
         {"gadgets", gadgets},         {"pairs", pairs},        {"events", events},
         {"leading", gates_json(g.leading_clifford)},
         {"trailing", gates_json(g.trailing_clifford)}};
  return j.dump(1) + "\n";
}

GadgetizedCircuit gadgetized_from_json(const std::string& text) {
  GadgetizedCircuit g;
  try {
    json j = json::parse(text);
    g.num_qubits = j.at("num_qubits").get<int>();
    g.inputs = j.at("inputs").get<std::vector<int>>();
    g.outputs = j.at("outputs").get<std::vector<int>>();
    for (const auto& jg : j.at("gadgets")) {
      PhaseGadget pg;
      pg.product.support = jg.at("support").get<std::vector<int>>();
      std::sort(pg.product.support.begin(), pg.product.support.end());
      const auto& ja = jg.at("angle");
      pg.angle = ja.is_string() ? Angle::parse(ja.get<std::string>())
                                : Angle(ja[0].get<std::int64_t>(), ja[1].get<std::int64_t>());
      g.gadgets.push_back(pg);
    }
    for (const auto& jp : j.at("pairs")) {
      HPair p;
      p.a = jp.at("a").get<int>();
      p.b = jp.at("b").get<int>();
      p.flip = jp.value("flip", false);
      if (jp.contains("corrections"))
        for (const auto& k : jp["corrections"]) p.corrections.push_back(kind_from_name(k.get<std::string>()).value());
      g.h_pairs.push_back(p);
    }
    if (j.contains("events"))
      for (const auto& e : j["events"])
        g.event_order.push_back(
            {e[0].get<std::string>() == "p" ? EventRef::Gadget : EventRef::Pair, e[1].get<int>()});
    if (j.contains("leading")) g.leading_clifford = gates_from(j["leading"], g.num_qubits);
    if (j.contains("trailing")) g.trailing_clifford = gates_from(j["trailing"], g.num_qubits);
  } catch (const std::exception& e) {
    throw ParseError(0, std::string("gadgetized circuit: ") + e.what());
  }
  g.validate();
  return g;
}

} // namespace qcw
