#pragma once
// Exact linear combinations of 1, the sigma unit and named singular symbols.

#include <map>
#include <string>

#include "wc/rational.hpp"

namespace wc {

class SymbolicRational {
 public:
  static constexpr const char* kOne = "1";
  static constexpr const char* kSigma = "sigma";

  SymbolicRational() = default;
  static SymbolicRational constant(const Q& q) { return term(kOne, q); }
  static SymbolicRational sigma(const Q& q) { return term(kSigma, q); }
  static SymbolicRational term(const std::string& key, const Q& q);
  // q * sigma(total) when twisted, plain q otherwise
  static SymbolicRational unit(bool twisted, const Q& q) { return twisted ? sigma(q) : constant(q); }

  SymbolicRational& operator+=(const SymbolicRational& o);
  SymbolicRational& operator-=(const SymbolicRational& o);
  SymbolicRational& operator*=(const Q& q);
  friend SymbolicRational operator+(SymbolicRational a, const SymbolicRational& b) { return a += b; }
  friend SymbolicRational operator-(SymbolicRational a, const SymbolicRational& b) { return a -= b; }
  friend SymbolicRational operator*(const Q& q, SymbolicRational a) { return a *= q; }
  bool operator==(const SymbolicRational& o) const { return terms_ == o.terms_; }

  Q coeff(const std::string& key) const;
  bool is_zero() const { return terms_.empty(); }
  const std::map<std::string, Q>& terms() const { return terms_; }
  // e.g. "-σ/2", "1 + 3/4 sing_a"
  std::string str() const;

 private:
  std::map<std::string, Q> terms_;
};

// "-σ/2" style rendering of q times a named unit
std::string format_scaled(const Q& q, const std::string& unit);

}  // namespace wc
