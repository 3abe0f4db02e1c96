#include "qcw/angle.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace qcw {

Angle::Angle(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
  if (den == 0) throw std::invalid_argument("angle with zero denominator");
  normalize();
}

Angle Angle::symbol(const std::string& name) {
  if (name.empty()) throw std::invalid_argument("empty angle symbol");
  Angle a;
  a.syms_[name] = 1;
  return a;
}

void Angle::normalize() {
  if (den_ < 0) {
    den_ = -den_;
    num_ = -num_;
  }
  std::int64_t g = std::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
  std::int64_t period = 2 * den_;
  num_ %= period;
  if (num_ < 0) num_ += period;
  if (num_ == 0) den_ = 1;
  for (auto it = syms_.begin(); it != syms_.end();) {
    if (it->second == 0)
      it = syms_.erase(it);
    else
      ++it;
  }
}

bool Angle::is_clifford() const { return syms_.empty() && (2 * num_) % den_ == 0; }

double symbol_value(const std::string& name) {
  // FNV-1a, mapped into (0, 2pi); only needs to be deterministic and generic
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : name) {
    h ^= c;
    h *= 1099511628211ull;
  }
  double frac = static_cast<double>(h >> 11) / static_cast<double>(1ull << 53);
  return (0.05 + 0.9 * frac) * 2.0 * std::numbers::pi;
}

double Angle::value() const {
  double v = std::numbers::pi * static_cast<double>(num_) / static_cast<double>(den_);
  for (const auto& [s, k] : syms_) v += k * symbol_value(s);
  return v;
}

Angle Angle::operator+(const Angle& o) const {
  std::int64_t l = std::lcm(den_, o.den_);
  Angle r(num_ * (l / den_) + o.num_ * (l / o.den_), l);
  r.syms_ = syms_;
  for (const auto& [s, k] : o.syms_) r.syms_[s] += k;
  r.normalize();
  return r;
}

Angle Angle::operator-() const {
  Angle r(-num_, den_);
  for (const auto& [s, k] : syms_) r.syms_[s] = -k;
  return r;
}

bool Angle::operator<(const Angle& o) const {
  return std::tie(num_, den_, syms_) < std::tie(o.num_, o.den_, o.syms_);
}

std::string Angle::str() const {
  std::string out;
  for (const auto& [s, k] : syms_) {
    if (k < 0)
      out += "-";
    else if (!out.empty())
      out += "+";
    if (std::abs(k) != 1) out += std::to_string(std::abs(k)) + "*";
    out += s;
  }
  if (num_ != 0 || out.empty()) {
    if (!out.empty()) out += "+";
    out += std::to_string(num_);
    if (den_ != 1) out += "/" + std::to_string(den_);
  }
  return out;
}

namespace {

bool is_sym_char(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
         std::isdigit(static_cast<unsigned char>(c));
}

} // namespace

Angle Angle::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("empty angle");
  Angle total;
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    }
    if (i >= s.size()) throw std::invalid_argument("bad angle: " + text);
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j < s.size() && (s[j] == '*' || (j == i && is_sym_char(s[j])))) {
      // symbolic term, optional integer coefficient
      int coef = 1;
      if (s[j] == '*') {
        if (j == i) throw std::invalid_argument("bad angle: " + text);
        coef = std::stoi(s.substr(i, j - i));
        ++j;
      }
      std::size_t k = j;
      if (k >= s.size() || !(std::isalpha(static_cast<unsigned char>(s[k])) || s[k] == '_'))
        throw std::invalid_argument("bad angle: " + text);
      while (k < s.size() && is_sym_char(s[k])) ++k;
      Angle t = Angle::symbol(s.substr(j, k - j));
      t.syms_.begin()->second = sign * coef;
      total += t;
      i = k;
    } else {
      if (j == i) throw std::invalid_argument("bad angle: " + text);
      std::int64_t num = std::stoll(s.substr(i, j - i));
      std::int64_t den = 1;
      if (j < s.size() && s[j] == '/') {
        std::size_t k = j + 1;
        while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
        if (k == j + 1) throw std::invalid_argument("bad angle: " + text);
        den = std::stoll(s.substr(j + 1, k - j - 1));
        j = k;
      }
      total += Angle(sign * num, den);
      i = j;
    }
  }
  return total;
}

} // namespace qcw
