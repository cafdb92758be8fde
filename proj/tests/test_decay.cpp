#include <doctest.h>

#include "diagram_util.hpp"
#include "wc/decay.hpp"

using namespace wc;
using wctest::diagram;

TEST_CASE("a two-gm chain cancels between its residues") {
  Theory th = theory_nf0();
  SpectrumTable s = strong_table(th);
  RootedDiagram d = diagram(th, "d gm d 2gm", {-1, 0, 1, 2});
  for (Schedule sc : {Schedule::RootFirst, Schedule::LeavesFirst}) {
    GmnContribution g = gmn_contribution(th, s, d, sc);
    CHECK(g.regular == 0);
    CHECK(g.singular.empty());
  }
}

TEST_CASE("the 2gm-first chain contributes -4 in every framing") {
  Theory th = theory_nf0();
  SpectrumTable s = strong_table(th);
  RootedDiagram d = diagram(th, "d 2gm d gm", {-1, 0, 1, 2});
  for (Schedule sc : {Schedule::RootFirst, Schedule::LeavesFirst}) {
    GmnContribution g = gmn_contribution(th, s, d, sc);
    CHECK(g.value() == SymbolicRational::constant(-4));
  }
}

TEST_CASE("signs of the worked star cancel") {
  Theory th = theory_nf0();
  RootedDiagram d = diagram(th, "d gm d gm gm", {-1, 0, 1, 2, 2});
  DecayResult r = run_decay(th, d);
  CHECK(r.eps_sum() == 0);
  CHECK(r.effective);
}

TEST_CASE("the first bound state does not depend on the push order") {
  Theory th = theory_nf0();
  SpectrumTable s = strong_table(th);
  RootedDiagram d = diagram(th, "d gm", {-1, 0});
  GmnContribution a = gmn_contribution(th, s, d, Schedule::RootFirst);
  GmnContribution b = gmn_contribution(th, s, d, Schedule::LeavesFirst);
  CHECK(a.value() == b.value());
  CHECK(a.decay.eps_sum() == b.decay.eps_sum());
  // the single tree of d+gm carries the whole jump of the index
  CHECK(a.regular == -2);
}

TEST_CASE("decay terminates with effective states on every small diagram") {
  struct Case {
    const char* theory;
    const char* target;
  } cases[] = {{"nf0", "d+gm"}, {"nf0", "d+2gm"}, {"nf0", "2d+gm"}, {"nf0", "2d+3gm"}, {"nf0", "3d+3gm"},
               {"nf1", "g1+g2+m3"}, {"nf2", "g1^1+g1^2+g2^1+g2^2"}, {"nf3", "g1^1+g1^2+g1^3+g1^4+2g2"}};
  long diagrams = 0;
  for (const auto& c : cases) {
    Theory th = builtin_theory(c.theory);
    SpectrumTable s = strong_table(th);
    Charge t = th.parse_charge(c.target);
    for (const auto& d : enumerate_diagrams(th, s, t, 6, true)) {
      for (Schedule sc : {Schedule::RootFirst, Schedule::LeavesFirst}) {
        DecayResult r = run_decay(th, d, sc, true);
        const std::string where = std::string(c.theory) + " " + diagram_string(th, d);
        INFO(where);
        CHECK(r.effective);
        CHECK(r.steps < kDefaultStepBound);
        for (const auto& st : r.singleton_states) {
          CHECK(st.total() == t);
          for (int x : st.alive()) CHECK(st.v[x].c.is_effective());
        }
        for (int e : r.singletons) CHECK((e == 1 || e == -1));
      }
      ++diagrams;
    }
  }
  CHECK(diagrams > 20);
}

TEST_CASE("promotion refuses to sweep a child only in strict mode") {
  Theory th = theory_nf0();
  RootedDiagram d = diagram(th, "d gm", {-1, 0});
  DecayState s = initial_state(d);
  CHECK(s.annotation(s.root()) == Annotation::Plus);
  auto next = promote(th, s, s.root());
  CHECK_FALSE(next.empty());
  if (promote_hits_child(th, s, s.root())) CHECK_THROWS_AS(promote(th, s, s.root(), false, true), OrderingError);
}
