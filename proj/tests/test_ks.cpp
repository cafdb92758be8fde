#include <doctest.h>

#include "wc/ks.hpp"

using namespace wc;

namespace {

bool same(const Automorphism& a, const Automorphism& b) {
  if (a.factor.size() != b.factor.size()) return false;
  for (std::size_t i = 0; i < a.factor.size(); ++i)
    if (!(a.factor[i] == b.factor[i])) return false;
  return true;
}

long inferred(const SpectrumTable& t, const Charge& g) {
  for (const auto& [c, o] : t.support())
    if (c == g) return o;
  return 0;
}

}  // namespace

TEST_CASE("truncated series arithmetic") {
  auto x = TruncatedSeries::monomial({1, 0}, 1, 5);
  auto one = TruncatedSeries::one(2, 5);
  // (1 + x)^-1 (1 + x) = 1
  CHECK(TruncatedSeries::binomial(x, -1) * TruncatedSeries::binomial(x, 1) == one);
  CHECK((x.pow(6)).lowest_degree() == -1);
  CHECK(TruncatedSeries::binomial(x, 3).coeff({2, 0}) == 3);
}

TEST_CASE("KS operators invert by flipping the index") {
  Theory th = theory_nf0();
  Charge g = th.parse_charge("d+gm");
  int N = 6;
  Automorphism k = ks_operator(th, g, 1, 1, N), kinv = ks_operator(th, g, -1, 1, N);
  CHECK(same(compose(k, kinv), Automorphism::identity(2, N)));
  CHECK(same(compose_ks(th, k, g, -1, N), Automorphism::identity(2, N)));
}

TEST_CASE("pentagon identity") {
  WallIdentity w = pentagon_check(10);
  INFO(w.mismatch);
  CHECK(w.equal);
  CHECK(w.agree_degree >= 10);
}

TEST_CASE("weak spectrum of pure SU(2) from the strong side") {
  Theory th = theory_nf0();
  int N = 8;
  SpectrumTable inf = infer_weak_spectrum(th, strong_table(th), N);
  SpectrumTable weak = builtin_spectrum("nf0", Coupling::Weak, N);
  std::map<Charge, long> expect, got;
  for (const auto& [g, o] : weak.support())
    if (g.is_effective() && g.degree() <= N) expect[g] = o;
  for (const auto& [g, o] : inf.support())
    if (o != 0) got[g] = o;
  CHECK(got == expect);
  CHECK(got[th.parse_charge("d+gm")] == -2);
}

TEST_CASE("weak spectra with flavours") {
  Theory t1 = theory_nf1();
  SpectrumTable i1 = infer_weak_spectrum(t1, strong_table(t1), 4);
  CHECK(inferred(i1, t1.parse_charge("g1+g2+m3")) == -2);
  Theory t3 = theory_nf3();
  SpectrumTable i3 = infer_weak_spectrum(t3, strong_table(t3), 6);
  SpectrumTable w3 = builtin_spectrum("nf3", Coupling::Weak, 6);
  for (const auto& [g, o] : w3.support())
    if (g.is_effective() && g.degree() <= 6) CHECK(inferred(i3, g) == o);
  // the -2 state carries 2g2; with a single g2 the four-flavour charge is a plain hypermultiplet
  CHECK(inferred(i3, t3.parse_charge("g1^1+g1^2+g1^3+g1^4+g2")) == 1);
}

TEST_CASE("wall identity on every theory") {
  for (const char* n : {"nf0", "nf1", "nf2", "nf3"}) {
    Theory th = builtin_theory(n);
    SpectrumTable s = strong_table(th);
    int N = th.rank() > 3 ? 5 : 6;
    SpectrumTable inf = infer_weak_spectrum(th, s, N);
    INFO(n);
    CHECK(verify_wall_identity(th, s, inf, N).equal);
    SpectrumTable w = builtin_spectrum(n, Coupling::Weak, N);
    if (w.complete) {
      CHECK(verify_wall_identity(th, s, w, N).equal);
    } else {
      CHECK_THROWS_AS(verify_wall_identity(th, s, w, N), UnknownSpectrum);
    }
  }
}
