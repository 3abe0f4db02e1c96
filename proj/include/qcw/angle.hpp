#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace qcw {

// Exact phase: (num/den)*pi reduced mod 2*pi, plus an integer combination of
// opaque symbols. Symbols compare by name.
class Angle {
public:
  Angle() = default;
  Angle(std::int64_t num, std::int64_t den);
  static Angle symbol(const std::string& name);
  static Angle pi() { return Angle(1, 1); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  const std::map<std::string, int>& symbols() const { return syms_; }

  bool is_zero() const { return num_ == 0 && syms_.empty(); }
  bool is_symbolic() const { return !syms_.empty(); }
  // multiple of pi/2 with no symbolic part
  bool is_clifford() const;
  double value() const;

  Angle operator+(const Angle& o) const;
  Angle operator-() const;
  Angle operator-(const Angle& o) const { return *this + (-o); }
  Angle& operator+=(const Angle& o) { return *this = *this + o; }
  bool operator==(const Angle& o) const = default;
  bool operator<(const Angle& o) const;

  // "1/4", "0", "a+b-1/4"; parse accepts the same grammar
  std::string str() const;
  static Angle parse(const std::string& s);

private:
  void normalize();
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::map<std::string, int> syms_;
};

double symbol_value(const std::string& name);

} // namespace qcw
