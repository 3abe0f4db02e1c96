#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "qcw/circuit.hpp"

namespace qcw {

namespace {

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

// Standard 7-T Toffoli (Nielsen & Chuang Fig. 4.9), target c
void append_toffoli(std::vector<Gate>& out, int a, int b, int c) {
  using K = GateKind;
  out.push_back(Gate::single(K::H, c));
  out.push_back(Gate::two(K::CNOT, b, c));
  out.push_back(Gate::single(K::Tdg, c));
  out.push_back(Gate::two(K::CNOT, a, c));
  out.push_back(Gate::single(K::T, c));
  out.push_back(Gate::two(K::CNOT, b, c));
  out.push_back(Gate::single(K::Tdg, c));
  out.push_back(Gate::two(K::CNOT, a, c));
  out.push_back(Gate::single(K::T, b));
  out.push_back(Gate::single(K::T, c));
  out.push_back(Gate::single(K::H, c));
  out.push_back(Gate::two(K::CNOT, a, b));
  out.push_back(Gate::single(K::T, a));
  out.push_back(Gate::single(K::Tdg, b));
  out.push_back(Gate::two(K::CNOT, a, b));
}

} // namespace

Circuit parse_qc(std::string_view text) {
  Circuit c;
  std::map<std::string, int> index;
  std::vector<std::string> in_labels, out_labels;
  bool have_i = false, have_o = false, in_body = false, ended = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;

  auto lookup = [&](const std::string& label) {
    auto it = index.find(label);
    if (it == index.end()) throw ParseError(lineno, "undeclared qubit '" + label + "'");
    return it->second;
  };

  while (std::getline(in, raw)) {
    ++lineno;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    auto toks = split_ws(raw);
    if (toks.empty()) continue;
    const std::string& head = toks[0];
    std::vector<std::string> args(toks.begin() + 1, toks.end());
    if (ended) throw ParseError(lineno, "content after END");

    if (!in_body) {
      if (head == ".v") {
        for (const auto& l : args) {
          if (index.count(l)) throw ParseError(lineno, "qubit '" + l + "' declared twice");
          index[l] = c.num_qubits++;
          c.names.push_back(l);
        }
      } else if (head == ".i") {
        have_i = true;
        in_labels.insert(in_labels.end(), args.begin(), args.end());
      } else if (head == ".o") {
        have_o = true;
        out_labels.insert(out_labels.end(), args.begin(), args.end());
      } else if (head == "BEGIN") {
        in_body = true;
      } else if (head[0] == '.') {
        continue; // .c and other directives carry nothing we use
      } else {
        throw ParseError(lineno, "gate outside BEGIN/END");
      }
      continue;
    }
    if (head == "END") {
      ended = true;
      continue;
    }

    std::string name = head, param;
    if (auto p = head.find('('); p != std::string::npos) {
      if (head.back() != ')') throw ParseError(lineno, "malformed parameter in '" + head + "'");
      name = head.substr(0, p);
      param = head.substr(p + 1, head.size() - p - 2);
    }
    std::vector<int> qs;
    for (const auto& a : args) qs.push_back(lookup(a));
    auto need = [&](std::size_t n) {
      if (qs.size() != n)
        throw ParseError(lineno, "'" + head + "' expects " + std::to_string(n) + " qubit(s), got " +
                                     std::to_string(qs.size()));
    };
    auto outcome = [&] {
      try {
        return std::stoi(param);
      } catch (const std::exception&) {
        throw ParseError(lineno, "bad outcome id in '" + head + "'");
      }
    };
    using K = GateKind;
    auto single = [&](K k) {
      need(1);
      c.gates.push_back(Gate::single(k, qs[0]));
    };

    if (name == "H") single(K::H);
    else if (name == "T") single(K::T);
    else if (name == "T*" || name == "Tdg") single(K::Tdg);
    else if (name == "S" || name == "P") single(K::S);
    else if (name == "S*" || name == "P*" || name == "Sdg") single(K::Sdg);
    else if (name == "X") single(K::X);
    else if (name == "Z") {
      if (qs.size() == 2)
        c.gates.push_back(Gate::two(K::CZ, qs[0], qs[1]));
      else
        single(K::Z);
    } else if (name == "cnot" || name == "CNOT") {
      need(2);
      c.gates.push_back(Gate::two(K::CNOT, qs[0], qs[1]));
    } else if (name == "tof") {
      if (qs.size() == 1)
        c.gates.push_back(Gate::single(K::X, qs[0]));
      else if (qs.size() == 2)
        c.gates.push_back(Gate::two(K::CNOT, qs[0], qs[1]));
      else if (qs.size() == 3)
        append_toffoli(c.gates, qs[0], qs[1], qs[2]);
      else
        throw ParseError(lineno, "'tof' expects 1 to 3 qubits, got " + std::to_string(qs.size()));
    } else if (name == "Rz" || name == "Rx") {
      need(1);
      Angle a;
      try {
        a = Angle::parse(param);
      } catch (const std::exception& e) {
        throw ParseError(lineno, e.what());
      }
      c.gates.push_back(name == "Rz" ? Gate::rz(qs[0], a) : Gate::rx(qs[0], a));
    } else if (name == "PrepPlus") single(K::PrepPlus);
    else if (name == "PrepZero") single(K::PrepZero);
    else if (name == "MeasX" || name == "MeasZ" || name == "CtrlX" || name == "CtrlZ") {
      need(1);
      c.gates.push_back(Gate{*kind_from_name(name), {qs[0]}, {}, outcome()});
    } else {
      throw ParseError(lineno, "unknown gate '" + head + "'");
    }
    if (qs.size() == 2 && qs[0] == qs[1]) throw ParseError(lineno, "repeated qubit in '" + head + "'");
  }
  if (in_body && !ended) throw ParseError(lineno, "missing END");

  lineno = 0;
  for (const auto& l : in_labels) c.inputs.push_back(lookup(l));
  for (const auto& l : out_labels) c.outputs.push_back(lookup(l));
  if (!have_i)
    for (int q = 0; q < c.num_qubits; ++q) c.inputs.push_back(q);
  if (!have_o)
    for (int q = 0; q < c.num_qubits; ++q) c.outputs.push_back(q);
  try {
    c.validate();
  } catch (const CircuitError& e) {
    throw ParseError(0, e.what());
  }
  return c;
}

std::string write_qc(const Circuit& c) {
  std::vector<std::string> names = c.names;
  if (static_cast<int>(names.size()) != c.num_qubits) {
    names.clear();
    for (int q = 0; q < c.num_qubits; ++q) names.push_back("q" + std::to_string(q));
  }
  std::ostringstream out;
  auto list = [&](const char* dir, const std::vector<int>& qs) {
    out << dir;
    for (int q : qs) out << ' ' << names[q];
    out << '\n';
  };
  std::vector<int> all(c.num_qubits);
  for (int q = 0; q < c.num_qubits; ++q) all[q] = q;
  list(".v", all);
  list(".i", c.inputs);
  list(".o", c.outputs);
  out << "\nBEGIN\n";
  for (const auto& g : c.gates) {
    using K = GateKind;
    switch (g.kind) {
    case K::H: out << "H"; break;
    case K::X: out << "X"; break;
    case K::Z: out << "Z"; break;
    case K::S: out << "S"; break;
    case K::Sdg: out << "S*"; break;
    case K::T: out << "T"; break;
    case K::Tdg: out << "T*"; break;
    case K::CNOT: out << "tof"; break;
    case K::CZ: out << "Z"; break;
    case K::Rz:
    case K::Rx: out << kind_name(g.kind) << '(' << g.angle.str() << ')'; break;
    case K::PrepPlus:
    case K::PrepZero: out << kind_name(g.kind); break;
    case K::MeasX:
    case K::MeasZ:
    case K::CtrlX:
    case K::CtrlZ: out << kind_name(g.kind) << '(' << g.outcome << ')'; break;
    }
    for (int q : g.qubits) out << ' ' << names[q];
    out << '\n';
  }
  out << "END\n";
  return out.str();
}

namespace {

using nlohmann::json;

json angle_to_json(const Angle& a) {
  if (a.is_symbolic()) return a.str();
  return json::array({a.num(), a.den()});
}

Angle angle_from_json(const json& j) {
  if (j.is_string()) return Angle::parse(j.get<std::string>());
  if (j.is_array() && j.size() == 2) return Angle(j[0].get<std::int64_t>(), j[1].get<std::int64_t>());
  throw std::invalid_argument("angle must be [num, den] or a string");
}

} // namespace

std::string circuit_to_json(const Circuit& c) {
  json gates = json::array();
  for (const auto& g : c.gates) {
    json jg{{"kind", std::string(kind_name(g.kind))}, {"qubits", g.qubits}};
    if (g.kind == GateKind::Rz || g.kind == GateKind::Rx) jg["angle"] = angle_to_json(g.angle);
    if (g.outcome >= 0) jg["outcome"] = g.outcome;
    gates.push_back(std::move(jg));
  }
  json j{{"n", c.num_qubits}, {"gates", gates}, {"inputs", c.inputs}, {"outputs", c.outputs}};
  return j.dump(1) + "\n";
}

Circuit circuit_from_json(std::string_view text) {
  Circuit c;
  try {
    json j = json::parse(text);
    c.num_qubits = j.at("n").get<int>();
    int idx = 0;
    for (const auto& jg : j.at("gates")) {
      auto name = jg.at("kind").get<std::string>();
      auto k = kind_from_name(name);
      if (!k) throw ParseError(0, "gate " + std::to_string(idx) + ": unknown kind '" + name + "'");
      Gate g{*k, jg.at("qubits").get<std::vector<int>>(), {}, -1};
      if (jg.contains("angle")) g.angle = angle_from_json(jg["angle"]);
      if (jg.contains("outcome")) g.outcome = jg["outcome"].get<int>();
      if ((is_measurement(g.kind) || is_controlled(g.kind)) && g.outcome < 0)
        throw ParseError(0, "gate " + std::to_string(idx) + ": missing outcome");
      c.gates.push_back(std::move(g));
      ++idx;
    }
    if (j.contains("inputs")) c.inputs = j["inputs"].get<std::vector<int>>();
    else
      for (int q = 0; q < c.num_qubits; ++q) c.inputs.push_back(q);
    if (j.contains("outputs")) c.outputs = j["outputs"].get<std::vector<int>>();
    else
      for (int q = 0; q < c.num_qubits; ++q) c.outputs.push_back(q);
    c.validate();
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(0, e.what());
  }
  return c;
}

namespace {

bool ends_with(const std::string& s, std::string_view suf) {
  return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

} // namespace

Circuit load_circuit(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError(0, "cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ends_with(path, ".json") ? circuit_from_json(ss.str()) : parse_qc(ss.str());
}

void save_circuit(const Circuit& c, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << (ends_with(path, ".json") ? circuit_to_json(c) : write_qc(c));
}

} // namespace qcw
