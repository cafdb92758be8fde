#pragma once
// Charge lattice, skew pairing, quadratic refinement signs and exact ray phases.

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wc/rational.hpp"

namespace wc {

struct InvalidCharge : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DegenerateRay : std::domain_error {
  using std::domain_error::domain_error;
};

// Integer coordinates in the theory's basis.
struct Charge {
  std::vector<long> c;

  Charge() = default;
  explicit Charge(std::vector<long> v) : c(std::move(v)) {}
  static Charge zero(std::size_t rank) { return Charge(std::vector<long>(rank, 0)); }
  static Charge unit(std::size_t rank, std::size_t i);

  std::size_t rank() const { return c.size(); }
  long operator[](std::size_t i) const { return c[i]; }
  long& operator[](std::size_t i) { return c[i]; }

  bool is_zero() const;
  // nonzero with all coordinates nonnegative
  bool is_effective() const;
  long gcd() const;
  Charge primitive() const;
  long degree() const;

  Charge& operator+=(const Charge& o);
  Charge& operator-=(const Charge& o);
  friend Charge operator+(Charge a, const Charge& b) { return a += b; }
  friend Charge operator-(Charge a, const Charge& b) { return a -= b; }
  Charge operator-() const;
  friend Charge operator*(long k, Charge a) {
    for (auto& x : a.c) x *= k;
    return a;
  }
  auto operator<=>(const Charge&) const = default;
  bool operator==(const Charge&) const = default;
};

Charge sum(const std::vector<Charge>& parts, std::size_t rank);
std::string coords_string(const Charge& g);

enum class Region { Plus, Minus };
const char* region_name(Region r);

// Exact complex number with rational components.
struct ZValue {
  Q re, im;
  bool is_zero() const { return re == 0 && im == 0; }
  bool operator==(const ZValue&) const = default;
};

ZValue operator+(const ZValue& a, const ZValue& b);
ZValue operator*(long k, const ZValue& a);
// re(a)*im(b) - im(a)*re(b); positive iff arg a < arg b for upper half plane values
Q cross(const ZValue& a, const ZValue& b);
// -1, 0, +1 as arg a <, =, > arg b
int phase_cmp(const ZValue& a, const ZValue& b);

enum class Sweep { None, CCW, CW };
const char* sweep_name(Sweep s);
// Does the sweep from phase a to phase b pass strictly over phase p?
Sweep sweep_over(const ZValue& a, const ZValue& b, const ZValue& p);

struct PhaseModel {
  std::vector<ZValue> plus, minus;
  ZValue z(Region r, const Charge& g) const;
};

class Theory {
 public:
  std::string name;
  std::vector<std::string> basis;
  std::vector<std::vector<long>> pairing;
  PhaseModel model;
  // sigma identically +1 on the BPS span
  bool sigma_trivial = true;
  // basis direction allowed as a diagram root
  std::size_t root_index = 0;

  std::size_t rank() const { return basis.size(); }
  void validate() const;

  long pair(const Charge& a, const Charge& b) const;
  // Normal form of prod sigma(g_i) = sign * sigma(sum g_i), folded left to right.
  std::pair<int, Charge> sigma_reduce(const std::vector<Charge>& charges) const;
  int sigma_sign(const std::vector<Charge>& charges) const;

  ZValue z(Region r, const Charge& g) const { return model.z(r, g); }
  ZValue ray_phase(Region r, const Charge& g) const;
  Sweep crossing(const Charge& moved, Region from, Region to, const Charge& target,
                 Region target_region) const;

  Charge parse_charge(const std::string& text) const;
  std::string format(const Charge& g) const;
  void check_rank(const Charge& g) const;
};

Theory theory_nf0();
Theory theory_nf1();
Theory theory_nf2();
Theory theory_nf3();
// "nf0".."nf3"
Theory builtin_theory(const std::string& name);
Theory theory_from_json(const std::string& text);
std::string theory_to_json(const Theory& t);

}  // namespace wc
