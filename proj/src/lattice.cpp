#include "wc/lattice.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace wc {

Charge Charge::unit(std::size_t rank, std::size_t i) {
  Charge g = zero(rank);
  g.c[i] = 1;
  return g;
}

bool Charge::is_zero() const {
  for (long x : c)
    if (x != 0) return false;
  return true;
}

bool Charge::is_effective() const {
  for (long x : c)
    if (x < 0) return false;
  return !is_zero();
}

long Charge::gcd() const {
  long g = 0;
  for (long x : c) g = std::gcd(g, x < 0 ? -x : x);
  return g;
}

Charge Charge::primitive() const {
  long g = gcd();
  if (g == 0) return *this;
  Charge p = *this;
  for (auto& x : p.c) x /= g;
  return p;
}

long Charge::degree() const {
  long d = 0;
  for (long x : c) d += x;
  return d;
}

Charge& Charge::operator+=(const Charge& o) {
  if (o.rank() != rank()) throw InvalidCharge("charge rank mismatch");
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
  return *this;
}

Charge& Charge::operator-=(const Charge& o) {
  if (o.rank() != rank()) throw InvalidCharge("charge rank mismatch");
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
  return *this;
}

Charge Charge::operator-() const {
  Charge n = *this;
  for (auto& x : n.c) x = -x;
  return n;
}

Charge sum(const std::vector<Charge>& parts, std::size_t rank) {
  Charge t = Charge::zero(rank);
  for (const auto& p : parts) t += p;
  return t;
}

std::string coords_string(const Charge& g) {
  std::string s = "[";
  for (std::size_t i = 0; i < g.rank(); ++i) {
    if (i) s += ",";
    s += std::to_string(g[i]);
  }
  return s + "]";
}

const char* region_name(Region r) { return r == Region::Plus ? "plus" : "minus"; }

ZValue operator+(const ZValue& a, const ZValue& b) { return {a.re + b.re, a.im + b.im}; }
ZValue operator*(long k, const ZValue& a) { return {Q(k) * a.re, Q(k) * a.im}; }

Q cross(const ZValue& a, const ZValue& b) { return a.re * b.im - a.im * b.re; }

int phase_cmp(const ZValue& a, const ZValue& b) {
  int s = sgn(cross(a, b));
  return -s;
}

const char* sweep_name(Sweep s) {
  switch (s) {
    case Sweep::CCW: return "ccw";
    case Sweep::CW: return "cw";
    default: return "none";
  }
}

Sweep sweep_over(const ZValue& a, const ZValue& b, const ZValue& p) {
  int ab = sgn(cross(a, b));
  if (ab == 0) return Sweep::None;
  int ap = sgn(cross(a, p)), pb = sgn(cross(p, b));
  if (ab > 0 && ap > 0 && pb > 0) return Sweep::CCW;
  if (ab < 0 && ap < 0 && pb < 0) return Sweep::CW;
  return Sweep::None;
}

ZValue PhaseModel::z(Region r, const Charge& g) const {
  const auto& basis = r == Region::Plus ? plus : minus;
  if (g.rank() != basis.size()) throw InvalidCharge("charge rank does not match phase model");
  ZValue out{0, 0};
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (g[i] == 0) continue;
    out.re += Q(g[i]) * basis[i].re;
    out.im += Q(g[i]) * basis[i].im;
  }
  return out;
}

void Theory::check_rank(const Charge& g) const {
  if (g.rank() != rank())
    throw InvalidCharge("charge " + coords_string(g) + " has rank " + std::to_string(g.rank()) +
                        ", theory " + name + " has rank " + std::to_string(rank()));
}

void Theory::validate() const {
  std::size_t n = rank();
  if (n == 0) throw std::invalid_argument("theory has empty basis");
  if (pairing.size() != n) throw std::invalid_argument("pairing matrix has wrong size");
  for (std::size_t i = 0; i < n; ++i) {
    if (pairing[i].size() != n) throw std::invalid_argument("pairing matrix is not square");
    for (std::size_t j = 0; j < n; ++j)
      if (pairing[i][j] != -pairing[j][i])
        throw std::invalid_argument("pairing matrix is not skew-symmetric");
  }
  if (model.plus.size() != n || model.minus.size() != n)
    throw std::invalid_argument("phase model size does not match basis");
  for (std::size_t i = 0; i < n; ++i)
    if (model.plus[i].im <= 0 || model.minus[i].im <= 0)
      throw std::invalid_argument("basis central charges must lie in the open upper half plane");
  if (root_index >= n) throw std::invalid_argument("root index out of range");
}

long Theory::pair(const Charge& a, const Charge& b) const {
  check_rank(a);
  check_rank(b);
  long s = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < rank(); ++j) s += a[i] * pairing[i][j] * b[j];
  }
  return s;
}

std::pair<int, Charge> Theory::sigma_reduce(const std::vector<Charge>& charges) const {
  int sign = 1;
  Charge total = Charge::zero(rank());
  for (const auto& g : charges) {
    if (pair(total, g) % 2 != 0) sign = -sign;
    total += g;
  }
  return {sign, total};
}

int Theory::sigma_sign(const std::vector<Charge>& charges) const {
  return sigma_reduce(charges).first;
}

ZValue Theory::ray_phase(Region r, const Charge& g) const {
  ZValue v = z(r, g);
  if (v.is_zero()) throw DegenerateRay("zero central charge for " + format(g));
  return v;
}

Sweep Theory::crossing(const Charge& moved, Region from, Region to, const Charge& target,
                       Region target_region) const {
  return sweep_over(ray_phase(from, moved), ray_phase(to, moved), ray_phase(target_region, target));
}

namespace {

bool is_name_char(char ch) {
  return std::isalnum(static_cast<unsigned char>(ch)) || ch == '^' || ch == '_';
}

}  // namespace

Charge Theory::parse_charge(const std::string& text) const {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw InvalidCharge("empty charge");
  if (s.front() == '[') {
    if (s.back() != ']') throw InvalidCharge("unterminated coordinate list: " + text);
    std::vector<long> v;
    std::stringstream ss(s.substr(1, s.size() - 2));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        std::size_t used = 0;
        v.push_back(std::stol(tok, &used));
        if (used != tok.size()) throw InvalidCharge("bad coordinate: " + tok);
      } catch (const std::logic_error&) {
        throw InvalidCharge("bad coordinate: " + tok);
      }
    }
    Charge g(v);
    check_rank(g);
    return g;
  }
  Charge g = Charge::zero(rank());
  std::size_t i = 0;
  bool first = true;
  while (i < s.size()) {
    long sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      throw InvalidCharge("expected + or - in " + text);
    }
    first = false;
    long coef = 1;
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) {
      coef = std::stol(s.substr(i, j - i));
      i = j;
      if (i < s.size() && s[i] == '*') ++i;
    }
    j = i;
    while (j < s.size() && is_name_char(s[j])) ++j;
    std::string name = s.substr(i, j - i);
    std::size_t k = 0;
    while (k < basis.size() && basis[k] != name) ++k;
    if (k == basis.size()) throw InvalidCharge("unknown basis name '" + name + "' in " + text);
    g[k] += sign * coef;
    i = j;
  }
  return g;
}

std::string Theory::format(const Charge& g) const {
  check_rank(g);
  std::string s;
  for (std::size_t i = 0; i < rank(); ++i) {
    long x = g[i];
    if (x == 0) continue;
    if (x < 0) s += "-";
    else if (!s.empty()) s += "+";
    long a = x < 0 ? -x : x;
    if (a != 1) s += std::to_string(a);
    s += basis[i];
  }
  return s.empty() ? "0" : s;
}

namespace {

// type-delta and type-gm central charges near the wall
const ZValue kDeltaPlus{-1, 10}, kGmPlus{1, 10};
const ZValue kDeltaMinus{Q(1, 2), 10}, kGmMinus{Q(-1, 2), 10};

std::vector<std::vector<long>> zeros(std::size_t n) {
  return std::vector<std::vector<long>>(n, std::vector<long>(n, 0));
}

void set_pair(std::vector<std::vector<long>>& m, std::size_t i, std::size_t j, long v) {
  m[i][j] = v;
  m[j][i] = -v;
}

}  // namespace

Theory theory_nf0() {
  Theory t;
  t.name = "nf0";
  t.basis = {"d", "gm"};
  t.pairing = zeros(2);
  set_pair(t.pairing, 0, 1, 2);
  t.model.plus = {kDeltaPlus, kGmPlus};
  t.model.minus = {kDeltaMinus, kGmMinus};
  t.sigma_trivial = true;
  return t;
}

Theory theory_nf1() {
  // m3 stands for -g3, the third strong coupling state
  Theory t;
  t.name = "nf1";
  t.basis = {"g1", "g2", "m3"};
  t.pairing = zeros(3);
  set_pair(t.pairing, 0, 1, 1);
  set_pair(t.pairing, 0, 2, 1);
  set_pair(t.pairing, 1, 2, -1);
  ZValue pinned = kDeltaPlus + kGmPlus;
  t.model.plus = {kDeltaPlus, kGmPlus, pinned};
  t.model.minus = {kDeltaMinus, kGmMinus, pinned};
  t.sigma_trivial = false;
  return t;
}

Theory theory_nf2() {
  Theory t;
  t.name = "nf2";
  t.basis = {"g1^1", "g1^2", "g2^1", "g2^2"};
  t.pairing = zeros(4);
  for (std::size_t i : {0, 1})
    for (std::size_t j : {2, 3}) set_pair(t.pairing, i, j, 1);
  t.model.plus = {kDeltaPlus, kDeltaPlus, kGmPlus, kGmPlus};
  t.model.minus = {kDeltaMinus, kDeltaMinus, kGmMinus, kGmMinus};
  t.sigma_trivial = false;
  return t;
}

Theory theory_nf3() {
  Theory t;
  t.name = "nf3";
  t.basis = {"g1^1", "g1^2", "g1^3", "g1^4", "g2"};
  t.pairing = zeros(5);
  for (std::size_t i = 0; i < 4; ++i) set_pair(t.pairing, i, 4, 1);
  t.model.plus = {kDeltaPlus, kDeltaPlus, kDeltaPlus, kDeltaPlus, kGmPlus};
  t.model.minus = {kDeltaMinus, kDeltaMinus, kDeltaMinus, kDeltaMinus, kGmMinus};
  t.sigma_trivial = false;
  return t;
}

Theory builtin_theory(const std::string& name) {
  if (name == "nf0") return theory_nf0();
  if (name == "nf1") return theory_nf1();
  if (name == "nf2") return theory_nf2();
  if (name == "nf3") return theory_nf3();
  throw std::invalid_argument("unknown theory '" + name + "' (expected nf0..nf3)");
}

namespace {

ZValue z_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("central charge must be [re, im]");
  auto comp = [](const nlohmann::json& x) {
    if (x.is_string()) return parse_q(x.get<std::string>());
    if (x.is_number_integer()) return Q(x.get<long>());
    throw std::invalid_argument("central charge components must be integers or rational strings");
  };
  return {comp(j[0]), comp(j[1])};
}

nlohmann::ordered_json z_to_json(const ZValue& z) { return nlohmann::ordered_json::array({to_string(z.re), to_string(z.im)}); }

}  // namespace

Theory theory_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("theory json: ") + e.what());
  }
  Theory t;
  try {
    t.name = j.at("name").get<std::string>();
    t.basis = j.at("basis").get<std::vector<std::string>>();
    t.pairing = j.at("pairing").get<std::vector<std::vector<long>>>();
    for (const auto& z : j.at("z_plus")) t.model.plus.push_back(z_from_json(z));
    for (const auto& z : j.at("z_minus")) t.model.minus.push_back(z_from_json(z));
    t.sigma_trivial = j.value("sigma_trivial", true);
    t.root_index = j.value("root_index", std::size_t{0});
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("theory json: ") + e.what());
  }
  t.validate();
  return t;
}

std::string theory_to_json(const Theory& t) {
  nlohmann::ordered_json j;
  j["name"] = t.name;
  j["basis"] = t.basis;
  j["pairing"] = t.pairing;
  nlohmann::ordered_json zp = nlohmann::ordered_json::array(), zm = nlohmann::ordered_json::array();
  for (const auto& z : t.model.plus) zp.push_back(z_to_json(z));
  for (const auto& z : t.model.minus) zm.push_back(z_to_json(z));
  j["z_plus"] = zp;
  j["z_minus"] = zm;
  j["sigma_trivial"] = t.sigma_trivial;
  j["root_index"] = t.root_index;
  return j.dump(2);
}

}  // namespace wc
