#pragma once
// Truncated Kontsevich-Soibelman automorphisms of the classical torus algebra.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "wc/lattice.hpp"
#include "wc/spectrum.hpp"

namespace wc {

struct FactorizationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Monomial = std::vector<int>;

// Power series in x_g for g in the effective cone, dropping total degree > N.
class TruncatedSeries {
 public:
  TruncatedSeries() = default;
  TruncatedSeries(std::size_t rank, int N) : rank_(rank), N_(N) {}
  static TruncatedSeries one(std::size_t rank, int N);
  static TruncatedSeries monomial(const Monomial& m, const Q& c, int N);

  std::size_t rank() const { return rank_; }
  int truncation() const { return N_; }
  Q coeff(const Monomial& m) const;
  void add(const Monomial& m, const Q& c);
  const std::map<Monomial, Q>& terms() const { return c_; }

  TruncatedSeries operator*(const TruncatedSeries& o) const;
  TruncatedSeries operator+(const TruncatedSeries& o) const;
  TruncatedSeries operator-(const TruncatedSeries& o) const;
  TruncatedSeries scaled(const Q& q) const;
  TruncatedSeries pow(int e) const;
  // (1 + u)^e for u without constant term, any integer e
  static TruncatedSeries binomial(const TruncatedSeries& u, long e);
  // lowest total degree with a nonzero coefficient, or -1
  int lowest_degree() const;
  bool operator==(const TruncatedSeries& o) const { return c_ == o.c_; }

 private:
  std::size_t rank_ = 0;
  int N_ = 0;
  std::map<Monomial, Q> c_;
};

int degree(const Monomial& m);
Monomial to_monomial(const Charge& g);

// x_b -> x_b * factor[b]; truncation applies to the factors.
struct Automorphism {
  std::vector<TruncatedSeries> factor;
  static Automorphism identity(std::size_t rank, int N);
  // image of x^m as a series (including the x^m shift)
  TruncatedSeries apply(const Monomial& m) const;
};

// (phi o psi)(x) = phi(psi(x))
Automorphism compose(const Automorphism& phi, const Automorphism& psi);

// sigma(g) with sigma = +1 on basis charges
int ks_sigma(const Theory& th, const Charge& g);

// x_mu -> x_mu (1 - sigma x_g)^(Omega <g, mu>), returned as the full image of x_mu.
TruncatedSeries ks_apply(const Theory& th, const Charge& g, long omega, int sigma_sign, std::size_t mu, int N);
Automorphism ks_operator(const Theory& th, const Charge& g, long omega, int sigma_sign, int N);
// phi o K_(g, omega), computed without expanding K separately
Automorphism compose_ks(const Theory& th, const Automorphism& phi, const Charge& g, long omega, int N);

// Factors ordered by decreasing phase at `region`.
Automorphism ks_product(const Theory& th, const std::vector<std::pair<Charge, long>>& spectrum, Region region,
                        int N);
std::vector<std::pair<Charge, long>> truncated_support(const SpectrumTable& t, int N);

struct WallIdentity {
  bool equal = false;
  // agreement holds through this degree
  int agree_degree = 0;
  std::string mismatch;
};

WallIdentity verify_wall_identity(const Theory& th, const SpectrumTable& strong, const SpectrumTable& weak, int N);
// Rank-two lattice with <g1, g2> = 1 whose two states form a three-state chamber across the wall.
Theory pentagon_theory();
// Two-factor versus three-factor products of pentagon_theory through degree N.
WallIdentity pentagon_check(int N);

SpectrumTable infer_weak_spectrum(const Theory& th, const SpectrumTable& strong, int N);

}  // namespace wc
