#include "wc/symbolic.hpp"

namespace wc {

SymbolicRational SymbolicRational::term(const std::string& key, const Q& q) {
  SymbolicRational s;
  if (q != 0) s.terms_[key] = q;
  return s;
}

SymbolicRational& SymbolicRational::operator+=(const SymbolicRational& o) {
  for (const auto& [k, v] : o.terms_) {
    Q& slot = terms_[k];
    slot += v;
    if (slot == 0) terms_.erase(k);
  }
  return *this;
}

SymbolicRational& SymbolicRational::operator-=(const SymbolicRational& o) {
  return *this += Q(-1) * o;
}

SymbolicRational& SymbolicRational::operator*=(const Q& q) {
  if (q == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= q;
  return *this;
}

Q SymbolicRational::coeff(const std::string& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? Q(0) : it->second;
}

std::string format_scaled(const Q& q, const std::string& unit) {
  if (unit.empty() || unit == SymbolicRational::kOne) return to_string(q);
  std::string u = unit == SymbolicRational::kSigma ? "σ" : unit;
  std::string sign = q < 0 ? "-" : "";
  Q a = abs(q);
  std::string num = a.get_num() == 1 ? "" : a.get_num().get_str();
  std::string out = sign + num + u;
  if (a.get_den() != 1) out += "/" + a.get_den().get_str();
  return out;
}

std::string SymbolicRational::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  auto emit = [&](const std::string& key, const Q& v) {
    std::string piece = format_scaled(v, key);
    if (out.empty()) {
      out = piece;
    } else if (piece[0] == '-') {
      out += " - " + piece.substr(1);
    } else {
      out += " + " + piece;
    }
  };
  // constant and sigma first, then symbols in key order
  if (auto it = terms_.find(kOne); it != terms_.end()) emit(it->first, it->second);
  if (auto it = terms_.find(kSigma); it != terms_.end()) emit(it->first, it->second);
  for (const auto& [k, v] : terms_)
    if (k != kOne && k != kSigma) emit(k, v);
  return out;
}

}  // namespace wc
