// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "wc/decay.hpp"
#include "wc/js.hpp"
#include "wc/ks.hpp"
#include "wc/ledger.hpp"
#include "wc/numeric.hpp"

using namespace wc;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream notes;
  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes << " [" << what << "]";
    }
  }
};

std::vector<Charge> seq(const Theory& th, const std::string& s) {
  std::vector<Charge> out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) out.push_back(th.parse_charge(tok));
  return out;
}

RootedDiagram diagram(const Theory& th, const std::string& labels, std::vector<int> parent) {
  RootedDiagram d;
  std::istringstream in(labels);
  std::string tok;
  while (in >> tok) d.labels.push_back(th.parse_charge(tok));
  d.parent = std::move(parent);
  for (std::size_t i = 0; i < d.parent.size(); ++i)
    if (d.parent[i] < 0) d.root = static_cast<int>(i);
  return d;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void js_goldens(Outcome& o) {
  auto t0 = std::chrono::steady_clock::now();
  Theory th = theory_nf0();
  SpectrumTable s = strong_table(th);
  Q a = js_wallcross(th, s, th.parse_charge("d+gm"));
  Q b = js_wallcross(th, s, th.parse_charge("d+2gm"));
  double t = seconds_since(t0);
  o.expect(a == -2, "DT(d+gm) = " + to_string(a));
  o.expect(b == 1, "DT(d+2gm) = " + to_string(b));
  o.expect(t < 1.0, "runtime");
  o.notes << " DT(d+gm)=" << a << " DT(d+2gm)=" << b << " time=" << t << "s";
}

void symbol_tables(Outcome& o) {
  struct Row {
    const char* theory;
    const char* seq;
    Q value;
    bool is_s;
  };
  std::vector<Row> rows = {
      {"nf0", "d,gm", 1, false}, {"nf0", "gm,d", -1, false}, {"nf0", "d,2gm", 1, false},
      {"nf0", "2gm,d", -1, false}, {"nf0", "d,gm,gm", make_q(1, 2), false}, {"nf0", "gm,d,gm", -1, false},
      {"nf0", "gm,gm,d", make_q(1, 2), false},
      {"nf1", "g1,g2,m3", 0, true}, {"nf1", "g1,m3,g2", 1, true}, {"nf1", "m3,g1,g2", 0, true},
      {"nf1", "g2,g1,m3", -1, true}, {"nf1", "g2,m3,g1", 1, true}, {"nf1", "m3,g2,g1", -1, true},
      {"nf1", "g1,g2,m3", make_q(-1, 2), false}, {"nf1", "g1,m3,g2", 1, false},
      {"nf1", "m3,g1,g2", make_q(-1, 2), false}, {"nf1", "g2,g1,m3", make_q(-1, 2), false},
      {"nf1", "g2,m3,g1", 1, false}, {"nf1", "m3,g2,g1", make_q(-1, 2), false},
      {"nf2", "g1^1,g1^2,g2^1,g2^2", make_q(1, 4), false}, {"nf2", "g1^1,g2^1,g1^2,g2^2", make_q(-1, 2), false},
      {"nf2", "g1^1,g2^1,g2^2,g1^2", 0, false}, {"nf2", "g2^1,g1^1,g1^2,g2^2", 0, false},
      {"nf2", "g2^1,g2^2,g1^1,g1^2", make_q(-1, 4), false}, {"nf2", "g2^1,g1^1,g2^2,g1^2", make_q(1, 2), false},
      // flavour images
      {"nf2", "g1^2,g1^1,g2^1,g2^2", make_q(1, 4), false}, {"nf2", "g1^1,g2^2,g1^2,g2^1", make_q(-1, 2), false},
      {"nf2", "g2^2,g2^1,g1^1,g1^2", make_q(-1, 4), false}, {"nf2", "g2^1,g1^2,g2^2,g1^1", make_q(1, 2), false},
      // reference values for the three-flavour star
      {"nf3", "g1^1,g1^2,g1^3,g1^4,2g2", make_q(1, 24), false},
      {"nf3", "g1^1,g1^2,g1^3,2g2,g1^4", make_q(-1, 6), false},
      {"nf3", "g1^1,g1^2,2g2,g1^3,g1^4", make_q(3, 2), false},
      {"nf3", "g1^1,2g2,g1^2,g1^3,g1^4", make_q(-1, 6), false},
      {"nf3", "2g2,g1^1,g1^2,g1^3,g1^4", make_q(-1, 24), false},
  };
  int ok = 0;
  for (const auto& r : rows) {
    Theory th = builtin_theory(r.theory);
    auto parts = seq(th, r.seq);
    Q got = r.is_s ? Q(s_symbol(th, parts)) : u_symbol(th, parts);
    if (got == r.value) ++ok;
    else o.expect(false, std::string(r.theory) + (r.is_s ? " S(" : " U(") + r.seq + ") = " + to_string(got) +
                             " expected " + to_string(r.value));
  }
  o.notes << " " << ok << "/" << rows.size() << " values";
}

void weights(Outcome& o) {
  struct Row {
    const char* theory;
    const char* labels;
    std::vector<int> parent;
    Q coef;
    const char* dir;
    bool sigma;
  };
  std::vector<Row> rows = {
      {"nf0", "d gm", {-1, 0}, 2, "d", false},
      {"nf0", "d gm gm", {-1, 0, 0}, -2, "d", false},
      {"nf0", "d gm d 2gm", {-1, 0, 1, 2}, -4, "d", false},
      {"nf0", "d gm d gm gm", {-1, 0, 1, 2, 2}, 8, "d", false},
      {"nf1", "g1 g2 m3", {-1, 0, 1}, -1, "g1", true},
      {"nf1", "g1 g2 m3", {-1, 0, 0}, 1, "g1", true},
      {"nf2", "g1^1 g2^1 g1^2 g2^2", {-1, 0, 1, 2}, -1, "g1^1", true},
      {"nf3", "g1^1 2g2 g1^2 g1^3 g1^4", {-1, 0, 1, 1, 1}, 4, "g1^1", true},
  };
  for (const auto& r : rows) {
    Theory th = builtin_theory(r.theory);
    RootedDiagram d = diagram(th, r.labels, r.parent);
    Weight w = weight_W(th, strong_table(th), d);
    Charge expect = th.parse_charge(r.dir);
    bool same = w.sigma == r.sigma;
    for (std::size_t i = 0; i < expect.rank(); ++i) same = same && w.coef * Q(w.direction[i]) == r.coef * Q(expect[i]);
    o.expect(same, std::string(r.theory) + " " + diagram_string(th, d) + " gave " + w.str(th));
    o.notes << " " << w.str(th);
  }
}

void decay_goldens(Outcome& o) {
  Theory th = theory_nf0();
  SpectrumTable s = strong_table(th);
  for (Schedule sc : {Schedule::RootFirst, Schedule::LeavesFirst}) {
    std::string sn = schedule_name(sc);
    GmnContribution a = gmn_contribution(th, s, diagram(th, "d gm d 2gm", {-1, 0, 1, 2}), sc);
    o.expect(a.value().is_zero(), sn + " d>gm>d>2gm = " + a.value().str());
    GmnContribution b = gmn_contribution(th, s, diagram(th, "d 2gm d gm", {-1, 0, 1, 2}), sc);
    o.expect(b.value() == SymbolicRational::constant(-4), sn + " d>2gm>d>gm = " + b.value().str());
  }
  DecayResult star = run_decay(th, diagram(th, "d gm d gm gm", {-1, 0, 1, 2, 2}));
  o.expect(star.eps_sum() == 0, "star eps sum " + std::to_string(star.eps_sum()));
  RootedDiagram one = diagram(th, "d gm", {-1, 0});
  SymbolicRational r1 = gmn_contribution(th, s, one, Schedule::RootFirst).value();
  SymbolicRational r2 = gmn_contribution(th, s, one, Schedule::LeavesFirst).value();
  o.expect(r1 == r2, "d+gm schedules disagree");
  o.notes << " chain=0 2gm-first=-4 star eps=" << star.eps_sum() << " d+gm=" << r1.str();
}

void conjecture(Outcome& o) {
  auto t0 = std::chrono::steady_clock::now();
  auto run = [](const char* theory, const char* target) {
    Theory th = builtin_theory(theory);
    Charge t = th.parse_charge(target);
    return check_conjecture(th, strong_table(th), t, static_cast<int>(t.degree()));
  };
  for (const char* t : {"d+gm", "d+2gm", "2d+3gm"}) {
    ConjectureReport r = run("nf0", t);
    o.expect(r.pass, std::string("nf0 ") + t);
  }
  ConjectureReport r1 = run("nf1", "g1+g2+m3");
  o.expect(r1.pass, "nf1 check");
  o.expect(r1.solution.values.size() == 1 && symbol_value(r1, "sing_1") == SymbolicRational::sigma(make_q(-1, 2)),
           "nf1 sing != -σ/2");

  ConjectureReport r2 = run("nf2", "g1^1+g1^2+g2^1+g2^2");
  o.expect(r2.pass, "nf2 check");
  // reference pair and its sum constraint
  std::vector<Q> vals;
  for (const auto& [n, v] : r2.solution.values) vals.push_back(v);
  std::sort(vals.begin(), vals.end());
  bool pair_match = false;
  for (std::size_t i = 0; i < vals.size(); ++i)
    for (std::size_t j = 0; j < vals.size(); ++j)
      if (i != j && vals[i] == make_q(3, 4) && vals[j] == make_q(1, 4)) pair_match = true;
  std::ostringstream nf2;
  for (const auto& [n, v] : r2.solution.values) nf2 << n << "(" << r2.symbols.at(n).side << ")=" << v << " ";
  o.expect(pair_match, "nf2 ledger has no 3σ/4, σ/4 pair: " + nf2.str());
  bool constraints_hold = true;
  for (const auto& c : r2.constraints) {
    Q lhs = 0;
    for (const auto& [n, q] : c.coeffs) lhs += q * r2.solution.values.at(n);
    constraints_hold = constraints_hold && lhs == c.rhs;
  }
  o.expect(constraints_hold && !r2.constraints.empty(), "nf2 residue constraints");

  ConjectureReport r3 = run("nf3", "g1^1+g1^2+g1^3+g1^4+2g2");
  o.expect(r3.pass, "nf3 check");
  Theory t3 = theory_nf3();
  Charge center = t3.parse_charge("2g2");
  LabelledTree star{{center, t3.parse_charge("g1^1"), t3.parse_charge("g1^2"), t3.parse_charge("g1^3"),
                     t3.parse_charge("g1^4")},
                    {{0, 1}, {0, 2}, {0, 3}, {0, 4}}};
  std::map<int, Q> by_out;
  for (const auto& c : js_oriented_values(t3, strong_table(t3), star)) {
    const auto& rep = c.representative;
    int ci = static_cast<int>(std::find(rep.labels.begin(), rep.labels.end(), center) - rep.labels.begin());
    int out = 0;
    for (auto [a, b] : rep.edges)
      if (a == ci) ++out;
    by_out[out] += c.value;
  }
  std::vector<Q> shapes, reference{make_q(1, 4), 1, make_q(1, 4), make_q(3, 2), 1};
  for (const auto& [k, v] : by_out) shapes.push_back(v);
  std::sort(shapes.begin(), shapes.end());
  std::sort(reference.begin(), reference.end());
  o.expect(shapes == reference, "nf3 per-shape values");
  double t = seconds_since(t0);
  o.expect(t < 60, "runtime");
  o.notes << " nf1 sing_1=-σ/2 nf2 " << nf2.str() << "nf3 shapes";
  for (const auto& [k, v] : by_out) o.notes << " " << v << "σ";
  o.notes << " time=" << t << "s";
}

void ks_oracle(Outcome& o) {
  Theory th = theory_nf0();
  SpectrumTable s = strong_table(th);
  SpectrumTable inf = infer_weak_spectrum(th, s, 8);
  std::map<Charge, long> expect, got;
  for (const auto& [g, om] : builtin_spectrum("nf0", Coupling::Weak, 8).support())
    if (g.is_effective() && g.degree() <= 8) expect[g] = om;
  for (const auto& [g, om] : inf.support())
    if (om != 0) got[g] = om;
  o.expect(got == expect, "nf0 inferred table");
  WallIdentity p = pentagon_check(10);
  o.expect(p.equal, "pentagon: " + p.mismatch);
  for (const char* n : {"nf0", "nf1", "nf2", "nf3"}) {
    Theory t = builtin_theory(n);
    SpectrumTable st = strong_table(t);
    int N = t.rank() > 3 ? 5 : 6;
    WallIdentity w = verify_wall_identity(t, st, infer_weak_spectrum(t, st, N), N);
    o.expect(w.equal, std::string(n) + " round trip: " + w.mismatch);
  }
  o.notes << " nf0 weak entries=" << got.size() << " pentagon degree " << p.agree_degree;
}

void numerics(Outcome& o) {
  Theory th = theory_nf0();
  cd zeta = std::polar(1.0, 1.0);
  std::vector<CheckResult> rs;
  auto timed = [&](const std::function<CheckResult()>& f) {
    auto t0 = std::chrono::steady_clock::now();
    CheckResult r = f();
    o.expect(seconds_since(t0) < 30, r.name + " runtime");
    rs.push_back(r);
  };
  timed([&] { return residue_move_check(th, 3.0, 400); });
  for (int q : {1, 2}) {
    OVModel m;
    m.q = q;
    timed([&] { return scale_invariance_check(m, zeta); });
  }
  timed([&] { return decay_fit_check(th, 3.0, -1.5); });
  OVModel m;
  timed([&] { return tba_fixed_point_check(m, zeta); });
  for (const auto& r : rs) {
    o.expect(r.pass, r.name);
    o.notes << " " << r.name << "=" << r.value << "(<" << r.threshold << ")";
  }
}

void properties(Outcome& o) {
  // sigma: permutation invariance and agreement with the pairwise cocycle
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> coord(-2, 2);
  long perms = 0;
  for (const char* n : {"nf0", "nf1", "nf2", "nf3"}) {
    Theory th = builtin_theory(n);
    for (int trial = 0; trial < 20; ++trial) {
      int len = 2 + trial % 4;
      std::vector<Charge> gs;
      for (int k = 0; k < len; ++k) {
        Charge g = Charge::zero(th.rank());
        for (std::size_t i = 0; i < th.rank(); ++i) g[i] = coord(rng);
        gs.push_back(g);
      }
      long e = 0;
      for (int i = 0; i < len; ++i)
        for (int j = i + 1; j < len; ++j) e += th.pair(gs[i], gs[j]);
      int expect = e % 2 == 0 ? 1 : -1;
      std::vector<int> idx(len);
      for (int i = 0; i < len; ++i) idx[i] = i;
      do {
        std::vector<Charge> p;
        for (int i : idx) p.push_back(gs[i]);
        if (th.sigma_reduce(p).first != expect) o.expect(false, std::string("sigma cocycle ") + n);
        ++perms;
      } while (std::next_permutation(idx.begin(), idx.end()));
    }
  }
  // Cayley
  for (int n = 1; n <= 6; ++n) {
    long want = n <= 2 ? 1 : 1;
    for (int k = 0; k < n - 2; ++k) want *= n;
    o.expect(static_cast<long>(enumerate_labelled_trees(n).size()) == want, "tree count n=" + std::to_string(n));
  }
  // f = DT * g for trivial sigma, and Omega(g) = Omega(-g)
  Theory t0 = theory_nf0();
  for (Coupling c : {Coupling::Strong, Coupling::Weak}) {
    SpectrumTable t = builtin_spectrum("nf0", c, 6);
    for (long i = -4; i <= 4; ++i)
      for (long j = -4; j <= 4; ++j) {
        Charge g({i, j});
        if (g.is_zero()) continue;
        FCoeff f = f_coeff(t0, t, g);
        if (f.sigma || f.direction != g.primitive() || f.coef != dt(t, g) * Q(g.gcd()))
          o.expect(false, "f_coeff at " + t0.format(g));
        if (omega(t, g) != omega(t, -g)) o.expect(false, "symmetry at " + t0.format(g));
      }
  }
  for (const char* n : {"nf1", "nf2", "nf3"}) {
    Theory th = builtin_theory(n);
    SpectrumTable t = builtin_spectrum(n, Coupling::Weak, 4);
    for (const auto& [g, om] : t.support())
      if (omega(t, -g) != om) o.expect(false, std::string("symmetry ") + n);
  }
  // decay closure and termination
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
        DecayResult r = run_decay(th, d, sc);
        if (!r.effective || r.steps >= kDefaultStepBound)
          o.expect(false, std::string("decay of ") + c.theory + " " + diagram_string(th, d));
      }
      ++diagrams;
    }
  }
  o.notes << " sigma permutations=" << perms << " decay diagrams=" << diagrams;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<void(Outcome&)> run;
  };
  std::vector<Criterion> cs = {
      {"JS golden values", js_goldens},   {"U/S tables", symbol_tables},
      {"GMN weights", weights},           {"decay calculus goldens", decay_goldens},
      {"conjecture checker", conjecture}, {"KS oracle", ks_oracle},
      {"numeric identities", numerics},   {"property suites", properties},
  };
  int failed = 0;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    Outcome o;
    try {
      cs[i].run(o);
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    if (!o.pass) ++failed;
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << " " << cs[i].name << ":"
              << o.notes.str() << std::endl;
  }
  return failed ? 1 : 0;
}
