#include <doctest.h>

#include <algorithm>
#include <random>

#include "wc/lattice.hpp"

using namespace wc;

namespace {

// sign of prod sigma(g_i) / sigma(sum g_i) from the pairwise cocycle
int pairwise_sign(const Theory& th, const std::vector<Charge>& gs) {
  long e = 0;
  for (std::size_t i = 0; i < gs.size(); ++i)
    for (std::size_t j = i + 1; j < gs.size(); ++j) e += th.pair(gs[i], gs[j]);
  return e % 2 == 0 ? 1 : -1;
}

}  // namespace

TEST_CASE("charge arithmetic and predicates") {
  Charge a({1, 2}), b({0, -1});
  CHECK(a + b == Charge({1, 1}));
  CHECK(a - b == Charge({1, 3}));
  CHECK(-a == Charge({-1, -2}));
  CHECK(3 * a == Charge({3, 6}));
  CHECK(a.is_effective());
  CHECK_FALSE(b.is_effective());
  CHECK_FALSE(Charge::zero(2).is_effective());
  CHECK(Charge({2, 4}).gcd() == 2);
  CHECK(Charge({2, 4}).primitive() == Charge({1, 2}));
  CHECK(Charge({2, 4}).degree() == 6);
  CHECK_THROWS_AS(a + Charge({1, 1, 1}), InvalidCharge);
}

TEST_CASE("parse and format charges") {
  Theory th = theory_nf0();
  CHECK(th.parse_charge("d+2gm") == Charge({1, 2}));
  CHECK(th.parse_charge("[2,3]") == Charge({2, 3}));
  CHECK(th.parse_charge("2d - gm") == Charge({2, -1}));
  CHECK(th.format(Charge({2, 3})) == "2d+3gm");
  CHECK(th.parse_charge(th.format(Charge({-1, 4}))) == Charge({-1, 4}));
  CHECK_THROWS_AS(th.parse_charge("q+gm"), InvalidCharge);
  CHECK_THROWS_AS(th.parse_charge("[1,2,3]"), InvalidCharge);
  CHECK_THROWS_AS(th.parse_charge(""), InvalidCharge);
  Theory t3 = theory_nf3();
  CHECK(t3.parse_charge("g1^1+g1^2+g1^3+g1^4+2g2") == Charge({1, 1, 1, 1, 2}));
}

TEST_CASE("pairings are skew and match the basis tables") {
  for (const char* n : {"nf0", "nf1", "nf2", "nf3"}) {
    Theory th = builtin_theory(n);
    CHECK_NOTHROW(th.validate());
    for (std::size_t i = 0; i < th.rank(); ++i)
      for (std::size_t j = 0; j < th.rank(); ++j)
        CHECK(th.pair(Charge::unit(th.rank(), i), Charge::unit(th.rank(), j)) ==
              -th.pair(Charge::unit(th.rank(), j), Charge::unit(th.rank(), i)));
  }
  Theory t0 = theory_nf0();
  CHECK(t0.pair(t0.parse_charge("d"), t0.parse_charge("gm")) == 2);
  Theory t1 = theory_nf1();
  CHECK(t1.pair(t1.parse_charge("g1"), t1.parse_charge("g2")) == 1);
  CHECK(t1.pair(t1.parse_charge("g2"), t1.parse_charge("m3")) == -1);
}

TEST_CASE("sigma sign is permutation invariant and matches the pairwise cocycle") {
  std::mt19937 rng(7);
  for (const char* n : {"nf0", "nf1", "nf2", "nf3"}) {
    Theory th = builtin_theory(n);
    std::uniform_int_distribution<long> coord(-2, 2);
    for (int trial = 0; trial < 40; ++trial) {
      int len = 2 + trial % 4;
      std::vector<Charge> gs;
      for (int k = 0; k < len; ++k) {
        Charge g = Charge::zero(th.rank());
        for (std::size_t i = 0; i < th.rank(); ++i) g[i] = coord(rng);
        gs.push_back(g);
      }
      int expect = pairwise_sign(th, gs);
      std::vector<int> idx(gs.size());
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
      do {
        std::vector<Charge> p;
        for (int i : idx) p.push_back(gs[i]);
        auto [s, tot] = th.sigma_reduce(p);
        REQUIRE(s == expect);
        REQUIRE(tot == sum(gs, th.rank()));
      } while (std::next_permutation(idx.begin(), idx.end()));
    }
  }
}

TEST_CASE("exact phases and sweeps") {
  ZValue a{make_q(-1), make_q(10)}, b{make_q(1), make_q(10)};
  CHECK(phase_cmp(a, b) == 1);
  CHECK(phase_cmp(b, a) == -1);
  CHECK(phase_cmp(a, 2 * a) == 0);
  ZValue mid{make_q(0), make_q(1)};
  CHECK(sweep_over(b, a, mid) == Sweep::CCW);
  CHECK(sweep_over(a, b, mid) == Sweep::CW);
  CHECK(sweep_over(a, b, ZValue{make_q(5), make_q(1)}) == Sweep::None);
  CHECK(sweep_over(a, b, a) == Sweep::None);

  Theory th = theory_nf0();
  Charge d = th.parse_charge("d"), m = th.parse_charge("gm");
  // type-d states sit to the left of type-gm states at strong coupling and swap across the wall
  CHECK(phase_cmp(th.ray_phase(Region::Plus, d), th.ray_phase(Region::Plus, m)) == 1);
  CHECK(phase_cmp(th.ray_phase(Region::Minus, d), th.ray_phase(Region::Minus, m)) == -1);
  CHECK_THROWS_AS(th.ray_phase(Region::Plus, Charge::zero(2)), DegenerateRay);
}

TEST_CASE("theory json round trip") {
  for (const char* n : {"nf0", "nf1", "nf2", "nf3"}) {
    Theory th = builtin_theory(n);
    Theory back = theory_from_json(theory_to_json(th));
    CHECK(back.name == th.name);
    CHECK(back.basis == th.basis);
    CHECK(back.pairing == th.pairing);
    CHECK(back.model.plus == th.model.plus);
    CHECK(back.model.minus == th.model.minus);
    CHECK(back.sigma_trivial == th.sigma_trivial);
    CHECK(back.root_index == th.root_index);
  }
  CHECK_THROWS(theory_from_json("{\"name\": 3}"));
  CHECK_THROWS(builtin_theory("nf9"));
}
