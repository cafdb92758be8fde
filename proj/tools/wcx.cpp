// wcx: command-line front end for the wall-crossing library.
// Exit codes: 0 pass, 1 check failure, 2 configuration or input error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "wc/report.hpp"

using namespace wc;

namespace {

struct Flags {
  std::string config;
  std::string theory, theory_file, target, schedule, json_out, csv_out;
  int max_vertices = 0, K = 10, N = 6, nodes = 200;
  double tolerance = 1e-10, R = 3.0;
};

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config, "JSON run configuration");
  app->add_option("--theory", f.theory, "built-in theory: nf0, nf1, nf2, nf3");
  app->add_option("--theory-file", f.theory_file, "JSON theory description");
  app->add_option("--json", f.json_out, "write the JSON report here as well as to stdout");
  app->add_option("--csv", f.csv_out, "write the CSV table here");
}

// config file first, then explicit flags
RunConfig build_config(const CLI::App* app, const Flags& f) {
  RunConfig c;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw ConfigError("cannot read config " + f.config);
    std::stringstream ss;
    ss << in.rdbuf();
    c = config_from_json(ss.str());
  }
  auto set = [&](const char* name) {
    auto opts = app->get_options([&](const CLI::Option* o) { return o->check_lname(name); });
    return !opts.empty() && opts.front()->count() > 0;
  };
  if (set("theory")) c.theory = f.theory;
  if (set("theory-file")) c.theory_file = f.theory_file;
  if (set("target")) c.target = f.target;
  if (set("max-vertices")) c.max_vertices = f.max_vertices;
  if (set("K")) c.K = f.K;
  if (set("N")) c.N = f.N;
  if (set("nodes")) c.quadrature.nodes = f.nodes;
  if (set("tolerance")) c.quadrature.tolerance = f.tolerance;
  if (set("R")) c.R = f.R;
  if (set("json")) c.json_out = f.json_out;
  if (set("csv")) c.csv_out = f.csv_out;
  if (set("schedule")) {
    if (f.schedule == "root-first") c.schedule = Schedule::RootFirst;
    else if (f.schedule == "leaves-first") c.schedule = Schedule::LeavesFirst;
    else throw ConfigError("unknown schedule " + f.schedule);
  }
  c.validate();
  return c;
}

void emit(const RunConfig& c, const Json& j) {
  std::string text = j.dump(2) + "\n";
  std::cout << text;
  write_file(c.json_out, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wall-crossing of BPS spectra: Joyce-Song sums, GMN diagrams, KS products, numerics"};
  app.require_subcommand(1);
  Flags f;
  std::string region = "strong", lookup, check = "all";
  int index = -1, q = 0;
  bool with_pentagon = false;

  auto* sp = app.add_subcommand("spectrum", "print a truncated BPS spectrum");
  add_common(sp, f);
  sp->add_option("--region", region, "strong or weak");
  sp->add_option("--K", f.K, "largest family index");
  sp->add_option("--lookup", lookup, "print Omega of one charge");

  auto* js = app.add_subcommand("js", "Joyce-Song sum for a target charge");
  add_common(js, f);
  js->add_option("--target", f.target)->required();
  js->add_option("--max-vertices", f.max_vertices);

  auto* gm = app.add_subcommand("gmn", "GMN diagrams for a target and their decay contributions");
  add_common(gm, f);
  gm->add_option("--target", f.target)->required();
  gm->add_option("--max-vertices", f.max_vertices);
  gm->add_option("--schedule", f.schedule, "root-first or leaves-first");

  auto* trace = app.add_subcommand("decay-trace", "step-by-step decay of the diagrams of a target");
  add_common(trace, f);
  trace->add_option("--target", f.target)->required();
  trace->add_option("--max-vertices", f.max_vertices);
  trace->add_option("--schedule", f.schedule, "root-first or leaves-first");
  trace->add_option("--index", index, "only the diagram at this position");

  auto* cc = app.add_subcommand("check-conjecture", "compare JS and GMN per tree and solve the singular ledger");
  add_common(cc, f);
  cc->add_option("--target", f.target)->required();
  cc->add_option("--max-vertices", f.max_vertices);
  cc->add_option("--schedule", f.schedule, "root-first or leaves-first");

  auto* ks = app.add_subcommand("ks-oracle", "infer the weak spectrum from the strong KS product");
  add_common(ks, f);
  ks->add_option("--N", f.N, "series truncation degree");
  ks->add_flag("--pentagon", with_pentagon, "also run the pentagon self-test at degree N");

  auto* nu = app.add_subcommand("numeric", "numerical identity checks");
  add_common(nu, f);
  nu->add_option("--check", check, "residue_move, scale_invariance, decay_fit, tba, wallcross or all");
  nu->add_option("--R", f.R);
  nu->add_option("--nodes", f.nodes);
  nu->add_option("--tolerance", f.tolerance);
  nu->add_option("--q", q, "OV charge (default: both 1 and 2)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    CLI::App* cmd = app.get_subcommands().front();
    RunConfig c = build_config(cmd, f);
    Theory th = c.load_theory();
    SpectrumTable strong = strong_table(th);

    if (cmd == sp) {
      Coupling cp = parse_coupling(region);
      SpectrumTable t = cp == Coupling::Strong ? strong : builtin_spectrum(th.name, cp, c.K);
      if (!lookup.empty()) {
        Charge g = th.parse_charge(lookup);
        long o = omega(t, g);
        emit(c, Json{{"theory", th.name}, {"coupling", region}, {"charge", th.format(g)}, {"omega", o},
                     {"dt", to_string(dt(t, g))}});
        return 0;
      }
      emit(c, spectrum_json(th, t));
      write_file(c.csv_out, spectrum_csv(th, t));
      return 0;
    }
    if (cmd == js) {
      Charge g = c.target_charge(th);
      emit(c, js_json(th, strong, g, c.vertex_bound(g)));
      return 0;
    }
    if (cmd == gm) {
      Charge g = c.target_charge(th);
      emit(c, diagrams_json(th, strong, g, c.vertex_bound(g), c.schedule));
      return 0;
    }
    if (cmd == trace) {
      Charge g = c.target_charge(th);
      auto ds = enumerate_diagrams(th, strong, g, c.vertex_bound(g));
      Json out = Json::array();
      for (int i = 0; i < static_cast<int>(ds.size()); ++i)
        if (index < 0 || index == i) out.push_back(decay_trace_json(th, strong, ds[i], c.schedule));
      if (index >= static_cast<int>(ds.size())) throw ConfigError("diagram index out of range");
      emit(c, out);
      return 0;
    }
    if (cmd == cc) {
      Charge g = c.target_charge(th);
      ConjectureReport r = check_conjecture(th, strong, g, c.vertex_bound(g), c.schedule);
      emit(c, conjecture_json(th, r));
      write_file(c.csv_out, conjecture_csv(th, r));
      return r.pass ? 0 : 1;
    }
    if (cmd == ks) {
      SpectrumTable inferred = infer_weak_spectrum(th, strong, c.N);
      std::optional<WallIdentity> wi;
      SpectrumTable weak = builtin_spectrum(th.name, Coupling::Weak);
      if (weak.complete) wi = verify_wall_identity(th, strong, weak, c.N);
      Json j = ks_json(th, strong, inferred, wi, c.N);
      bool ok = !wi || wi->equal;
      if (with_pentagon) {
        WallIdentity p = pentagon_check(c.N);
        j["pentagon"] = {{"equal", p.equal}, {"agree_degree", p.agree_degree}, {"mismatch", p.mismatch}};
        ok = ok && p.equal;
      }
      emit(c, j);
      return ok ? 0 : 1;
    }
    if (cmd == nu) {
      static const std::vector<std::string> known{"residue_move", "scale_invariance", "decay_fit", "tba",
                                                  "wallcross", "all"};
      if (std::find(known.begin(), known.end(), check) == known.end()) throw ConfigError("unknown check " + check);
      bool all = check == "all";
      std::vector<CheckResult> res;
      std::vector<int> qs = q > 0 ? std::vector<int>{q} : std::vector<int>{1, 2};
      Theory nf0 = builtin_theory("nf0");
      cd zeta = std::polar(1.0, 1.0);
      if (all || check == "residue_move") res.push_back(residue_move_check(nf0, c.R, c.quadrature.nodes));
      if (all || check == "scale_invariance")
        for (int qq : qs) {
          OVModel m;
          m.q = qq;
          m.R = c.R;
          res.push_back(scale_invariance_check(m, zeta, 1e-5, c.quadrature));
        }
      if (all || check == "tba")
        for (int qq : qs) {
          OVModel m;
          m.q = qq;
          m.R = c.R;
          res.push_back(tba_fixed_point_check(m, zeta, c.quadrature));
        }
      std::vector<DecayFit> fits;
      if (all || check == "decay_fit") {
        res.push_back(decay_fit_check(nf0, c.R));
        for (double R : {2.0, 3.0, 4.0}) fits.push_back(decay_fit(nf0, R));
        write_file(c.csv_out, decay_fit_csv(fits));
      }
      if (all || check == "wallcross") res.push_back(wallcross_check(nf0, c.R));
      Json j;
      Json arr = Json::array();
      bool ok = true;
      for (const auto& r : res) {
        arr.push_back(check_json(r));
        ok = ok && r.pass;
      }
      j["checks"] = arr;
      j["pass"] = ok;
      emit(c, j);
      return ok ? 0 : 1;
    }
  } catch (const ConfigError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidCharge& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const UnknownSpectrum& e) {
    std::cerr << "unknown spectrum: " << e.what() << "\n";
    return 2;
  } catch (const TruncationError& e) {
    std::cerr << "truncation: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
