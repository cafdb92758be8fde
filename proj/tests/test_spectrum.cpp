#include <doctest.h>

#include "wc/spectrum.hpp"

using namespace wc;

TEST_CASE("strong spectra are the basis states with index one") {
  for (const char* n : {"nf0", "nf1", "nf2", "nf3"}) {
    Theory th = builtin_theory(n);
    SpectrumTable s = strong_table(th);
    auto sup = s.support();
    CHECK(sup.size() == th.rank());
    for (const auto& [g, o] : sup) {
      CHECK(o == 1);
      CHECK(g.degree() == 1);
    }
    // the built-in file agrees with the generated table
    SpectrumTable f = builtin_spectrum(n, Coupling::Strong);
    CHECK(f.support() == sup);
  }
  Theory t0 = theory_nf0();
  SpectrumTable s = strong_table(t0);
  CHECK(omega(s, t0.parse_charge("d")) == 1);
  CHECK(omega(s, t0.parse_charge("-gm")) == 1);
  CHECK(omega(s, t0.parse_charge("d+gm")) == 0);
}

TEST_CASE("pure SU(2) weak-coupling spectrum") {
  Theory th = theory_nf0();
  SpectrumTable w = builtin_spectrum("nf0", Coupling::Weak, 2);
  CHECK(omega(w, th.parse_charge("d+gm")) == -2);
  CHECK(omega(w, th.parse_charge("d")) == 1);
  CHECK(omega(w, th.parse_charge("gm")) == 1);
  CHECK(omega(w, th.parse_charge("2d+gm")) == 1);
  CHECK(omega(w, th.parse_charge("d+2gm")) == 1);
  CHECK(omega(w, th.parse_charge("3d+2gm")) == 1);
  CHECK(omega(w, th.parse_charge("2d+3gm")) == 1);
  CHECK(omega(w, th.parse_charge("2d+2gm")) == 0);
  CHECK_THROWS_AS(omega(w, th.parse_charge("4d+3gm")), TruncationError);

  SpectrumTable w0 = builtin_spectrum("nf0", Coupling::Weak, 0);
  auto sup = w0.support();
  CHECK(sup.size() == 3);
  CHECK_THROWS_AS(omega(w0, th.parse_charge("2d+gm")), TruncationError);
}

TEST_CASE("spectra are symmetric under charge conjugation") {
  for (const char* n : {"nf0", "nf1", "nf2", "nf3"}) {
    Theory th = builtin_theory(n);
    for (Coupling c : {Coupling::Strong, Coupling::Weak}) {
      SpectrumTable t = builtin_spectrum(n, c, 4);
      for (const auto& [g, o] : t.support()) {
        CHECK(omega(t, g) == o);
        CHECK(omega(t, -g) == o);
        CHECK(dt(t, g) == dt(t, -g));
      }
    }
  }
}

TEST_CASE("partially known spectra refuse to guess") {
  Theory th = theory_nf3();
  SpectrumTable w = builtin_spectrum("nf3", Coupling::Weak);
  CHECK_FALSE(w.complete);
  CHECK(omega(w, th.parse_charge("g1^1+g1^2+g2")) == 1);
  CHECK(omega(w, th.parse_charge("g1^1+g1^2+g1^3+g1^4+2g2")) == -2);
  CHECK_THROWS_AS(omega(w, th.parse_charge("g1^1+g1^2")), UnknownSpectrum);
}

TEST_CASE("multi-cover DT values") {
  Theory th = theory_nf0();
  SpectrumTable s = strong_table(th);
  CHECK(dt(s, th.parse_charge("2gm")) == make_q(1, 4));
  CHECK(dt(s, th.parse_charge("3d")) == make_q(1, 9));
  CHECK(dt(s, th.parse_charge("d+gm")) == 0);
  SpectrumTable w = builtin_spectrum("nf0", Coupling::Weak);
  // Omega(2d+2gm) = 0 but Omega(d+gm) = -2
  CHECK(dt(w, th.parse_charge("2d+2gm")) == make_q(-1, 2));
}

TEST_CASE("f-coefficient equals DT times the charge when sigma is trivial") {
  Theory th = theory_nf0();
  for (Coupling c : {Coupling::Strong, Coupling::Weak}) {
    SpectrumTable t = builtin_spectrum("nf0", c, 6);
    for (long i = -4; i <= 4; ++i)
      for (long j = -4; j <= 4; ++j) {
        Charge g({i, j});
        if (g.is_zero()) continue;
        FCoeff f = f_coeff(th, t, g);
        CHECK_FALSE(f.sigma);
        // f = coef * primitive and DT * g = DT * gcd * primitive
        CHECK(f.coef == dt(t, g) * Q(g.gcd()));
        CHECK(f.direction == g.primitive());
      }
  }
  Theory t1 = theory_nf1();
  CHECK(f_coeff(t1, strong_table(t1), t1.parse_charge("g1")).sigma);
}

TEST_CASE("spectrum json round trip and validation") {
  for (const char* n : {"nf0", "nf1", "nf2", "nf3"}) {
    Theory th = builtin_theory(n);
    SpectrumTable w = builtin_spectrum(n, Coupling::Weak, 3);
    SpectrumTable back = spectrum_from_json(spectrum_to_json(w, &th));
    CHECK(back.entries == w.entries);
    CHECK(back.families.size() == w.families.size());
    CHECK(back.complete == w.complete);
    back.K = w.K;
    CHECK(back.support() == w.support());
  }
  CHECK_THROWS(spectrum_from_json("{\"schema\": \"other\"}"));
  CHECK_THROWS(spectrum_from_json("not json"));
  CHECK(parse_coupling("weak") == Coupling::Weak);
  CHECK_THROWS(parse_coupling("medium"));
}
