#include "wc/report.hpp"

#include <fstream>
#include <functional>
#include <sstream>

namespace wc {

namespace {

std::string val(const Q& q, bool twisted) { return format_scaled(q, twisted ? SymbolicRational::kSigma : ""); }

Schedule parse_schedule(const std::string& s) {
  if (s == "root-first") return Schedule::RootFirst;
  if (s == "leaves-first") return Schedule::LeavesFirst;
  throw ConfigError("unknown schedule '" + s + "' (root-first, leaves-first)");
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

Json tree_json(const Theory& th, const LabelledTree& t) {
  Json j;
  Json labels = Json::array();
  for (const auto& g : t.labels) labels.push_back(th.format(g));
  Json edges = Json::array();
  for (auto [a, b] : t.edges) edges.push_back(Json::array({a, b}));
  j["labels"] = labels;
  j["edges"] = edges;
  return j;
}

Json equation_json(const LedgerEquation& e) {
  Json j;
  Json c;
  for (const auto& [k, v] : e.coeffs) c[k] = to_string(v);
  j["coeffs"] = c;
  j["rhs"] = to_string(e.rhs);
  j["origin"] = e.origin;
  return j;
}

}  // namespace

void RunConfig::validate() const {
  if (max_vertices < 0) throw ConfigError("max-vertices must be positive");
  if (K < 0) throw ConfigError("K must be nonnegative");
  if (N < 1) throw ConfigError("N must be positive");
  if (quadrature.nodes < 20) throw ConfigError("quadrature needs at least 20 nodes");
  if (!(quadrature.tolerance > 0 && quadrature.tolerance < 1)) throw ConfigError("tolerance must lie in (0, 1)");
  if (!(R > 0)) throw ConfigError("R must be positive");
}

Theory RunConfig::load_theory() const {
  if (theory_file.empty()) {
    try {
      return builtin_theory(theory);
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
  }
  std::ifstream in(theory_file);
  if (!in) throw ConfigError("cannot read theory file " + theory_file);
  std::stringstream ss;
  ss << in.rdbuf();
  return theory_from_json(ss.str());
}

Charge RunConfig::target_charge(const Theory& th) const {
  if (target.empty()) throw ConfigError("a target charge is required");
  Charge g = th.parse_charge(target);
  if (!g.is_effective()) throw ConfigError("target " + target + " is not effective");
  return g;
}

int RunConfig::vertex_bound(const Charge& t) const {
  return max_vertices > 0 ? max_vertices : static_cast<int>(t.degree());
}

RunConfig config_from_json(const std::string& text, RunConfig c) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  try {
    for (const auto& [k, v] : j.items()) {
      if (k == "theory") c.theory = v.get<std::string>();
      else if (k == "theory_file") c.theory_file = v.get<std::string>();
      else if (k == "target") c.target = v.get<std::string>();
      else if (k == "max_vertices") c.max_vertices = v.get<int>();
      else if (k == "K") c.K = v.get<int>();
      else if (k == "N") c.N = v.get<int>();
      else if (k == "schedule") c.schedule = parse_schedule(v.get<std::string>());
      else if (k == "nodes") c.quadrature.nodes = v.get<int>();
      else if (k == "tolerance") c.quadrature.tolerance = v.get<double>();
      else if (k == "margin") c.quadrature.margin = v.get<double>();
      else if (k == "R") c.R = v.get<double>();
      else if (k == "json_out") c.json_out = v.get<std::string>();
      else if (k == "csv_out") c.csv_out = v.get<std::string>();
      else throw ConfigError("unknown config key '" + k + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  c.validate();
  return c;
}

Json config_to_json(const RunConfig& c) {
  Json j;
  j["theory"] = c.theory;
  j["theory_file"] = c.theory_file;
  j["target"] = c.target;
  j["max_vertices"] = c.max_vertices;
  j["K"] = c.K;
  j["N"] = c.N;
  j["schedule"] = c.schedule == Schedule::RootFirst ? "root-first" : "leaves-first";
  j["nodes"] = c.quadrature.nodes;
  j["tolerance"] = c.quadrature.tolerance;
  j["margin"] = c.quadrature.margin;
  j["R"] = c.R;
  j["json_out"] = c.json_out;
  j["csv_out"] = c.csv_out;
  return j;
}

Json spectrum_json(const Theory& th, const SpectrumTable& t) {
  Json j;
  j["theory"] = th.name;
  j["coupling"] = coupling_name(t.coupling);
  j["K"] = t.K;
  j["complete"] = t.complete;
  Json states = Json::array();
  for (const auto& [g, o] : t.support()) {
    Json s;
    s["charge"] = th.format(g);
    s["coords"] = g.c;
    s["omega"] = o;
    s["dt"] = to_string(dt(t, g));
    states.push_back(s);
  }
  j["states"] = states;
  j["note"] = "states come in pairs +g, -g with equal Omega; the positive member is listed";
  return j;
}

std::string spectrum_csv(const Theory& th, const SpectrumTable& t) {
  std::ostringstream os;
  os << "charge,coords,omega,dt\n";
  for (const auto& [g, o] : t.support())
    os << csv_field(th.format(g)) << "," << csv_field(coords_string(g)) << "," << o << "," << to_string(dt(t, g))
       << "\n";
  return os.str();
}

Json js_json(const Theory& th, const SpectrumTable& strong, const Charge& target, int max_parts) {
  Json j;
  bool tw = !th.sigma_trivial;
  j["theory"] = th.name;
  j["target"] = th.format(target);
  j["dt_weak"] = to_string(js_wallcross(th, strong, target, max_parts));
  j["dt_weak_twisted"] = js_wallcross_twisted(th, strong, target, max_parts).str();
  Json trees = Json::array();
  auto pool = js_pool(th, strong, target);
  for (const auto& ms : multiset_decompositions(target, pool, max_parts)) {
    auto vals = js_tree_values(th, strong, ms);
    std::map<std::string, LabelledTree> rep;
    for (const auto& e : labelled_trees_cached(static_cast<int>(ms.size()))) {
      LabelledTree t{ms, e};
      rep.emplace(canon_unrooted(t), t);
    }
    for (const auto& [key, v] : vals) {
      if (v == 0) continue;
      Json row;
      row["key"] = key;
      row["tree"] = tree_json(th, rep.at(key));
      row["value"] = val(v, tw);
      trees.push_back(row);
    }
  }
  j["trees"] = trees;
  return j;
}

Json diagram_tree_json(const Theory& th, const RootedDiagram& d) {
  auto kids = d.children();
  std::function<Json(int)> rec = [&](int v) {
    Json n;
    n["charge"] = th.format(d.labels[v]);
    Json ch = Json::array();
    for (int c : kids[v]) ch.push_back(rec(c));
    n["children"] = ch;
    return n;
  };
  return rec(d.root);
}

Json diagrams_json(const Theory& th, const SpectrumTable& strong, const Charge& target, int max_vertices,
                   Schedule sched) {
  Json j;
  bool tw = !th.sigma_trivial;
  j["theory"] = th.name;
  j["target"] = th.format(target);
  j["schedule"] = schedule_name(sched);
  Json list = Json::array();
  for (const auto& d : enumerate_diagrams(th, strong, target, max_vertices)) {
    GmnContribution g = gmn_contribution(th, strong, d, sched);
    Json row;
    row["diagram"] = diagram_string(th, d);
    row["tree"] = diagram_tree_json(th, d);
    row["aut"] = aut_order(d);
    row["weight"] = g.weight.str(th);
    row["p"] = to_string(g.p);
    row["eps_sum"] = g.decay.eps_sum();
    row["regular"] = val(g.regular, tw);
    Json sing = Json::array();
    for (const auto& s : g.singular) {
      Json t;
      t["key"] = s.term.key;
      t["side"] = s.term.side;
      t["coef"] = to_string(s.coef);
      sing.push_back(t);
    }
    row["singular"] = sing;
    row["contribution"] = g.value().str();
    list.push_back(row);
  }
  j["diagrams"] = list;
  return j;
}

Json decay_trace_json(const Theory& th, const SpectrumTable& strong, const RootedDiagram& d, Schedule sched) {
  GmnContribution g = gmn_contribution(th, strong, d, sched, true);
  Json j;
  j["diagram"] = diagram_string(th, d);
  j["schedule"] = schedule_name(sched);
  j["weight"] = g.weight.str(th);
  j["p"] = to_string(g.p);
  j["steps"] = g.decay.steps;
  j["discarded"] = g.decay.discarded;
  j["child_crossings"] = g.decay.child_crossings;
  j["effective"] = g.decay.effective;
  Json singles = Json::array();
  for (const auto& st : g.decay.singleton_states) {
    Json s;
    s["eps"] = st.eps;
    s["state"] = st.str(th);
    s["trail"] = st.trail;
    singles.push_back(s);
  }
  j["singletons"] = singles;
  j["eps_sum"] = g.decay.eps_sum();
  Json sing = Json::array();
  for (const auto& s : g.decay.singular) {
    Json t;
    t["key"] = s.key;
    t["side"] = s.side;
    t["eps"] = s.eps;
    t["residual"] = s.residual;
    sing.push_back(t);
  }
  j["singular"] = sing;
  j["contribution"] = g.value().str();
  return j;
}

Json conjecture_json(const Theory& th, const ConjectureReport& r) {
  bool tw = r.twisted;
  Json j;
  j["theory"] = r.theory;
  j["target"] = th.format(r.target);
  j["twisted"] = tw;
  j["max_vertices"] = r.max_vertices;
  j["schedule"] = schedule_name(r.schedule);
  j["pass"] = r.pass;
  j["js_total"] = val(r.js_total, tw);
  j["gmn_regular_total"] = val(r.gmn_regular_total, tw);
  Json trees = Json::array();
  for (const auto& tc : r.trees) {
    Json t;
    t["key"] = tc.key;
    t["tree"] = tree_json(th, tc.tree);
    t["js"] = val(tc.js, tw);
    t["gmn_regular"] = val(tc.gmn_regular, tw);
    Json s;
    for (const auto& [k, v] : tc.singular) s[k] = to_string(v);
    t["singular"] = s;
    t["pass"] = tc.pass;
    Json roots = Json::array();
    for (const auto& rc : tc.roots) {
      Json x;
      x["diagram"] = diagram_string(th, rc.diagram);
      x["weight"] = rc.gmn.weight.str(th);
      x["eps_sum"] = rc.gmn.decay.eps_sum();
      x["contribution"] = rc.gmn.value().str();
      roots.push_back(x);
    }
    t["roots"] = roots;
    trees.push_back(t);
  }
  j["trees"] = trees;
  Json syms = Json::array();
  for (const auto& [name, info] : r.symbols) {
    Json s;
    s["name"] = name;
    s["key"] = info.key;
    s["side"] = info.side;
    s["kappa"] = info.kappa;
    s["vertices"] = info.vertices;
    s["value"] = symbol_value(r, name).str();
    syms.push_back(s);
  }
  j["symbols"] = syms;
  Json eqs = Json::array(), cons = Json::array();
  for (const auto& e : r.equations) eqs.push_back(equation_json(e));
  for (const auto& e : r.constraints) cons.push_back(equation_json(e));
  j["equations"] = eqs;
  j["constraints"] = cons;
  Json sol;
  sol["consistent"] = r.solution.consistent;
  sol["unique"] = r.solution.unique;
  sol["rank"] = r.solution.rank;
  Json vals;
  for (const auto& [k, v] : r.solution.values) vals[k] = val(v, tw);
  sol["values"] = vals;
  sol["free"] = r.solution.free_symbols;
  sol["violated"] = r.solution.violated;
  j["ledger"] = sol;
  j["decay_steps"] = r.decay_steps;
  j["decay_effective"] = r.decay_effective;
  return j;
}

std::string conjecture_csv(const Theory& th, const ConjectureReport& r) {
  bool tw = r.twisted;
  std::ostringstream os;
  os << "tree,js,root_diagram,weight,eps_sum,regular,singular,tree_pass\n";
  for (const auto& tc : r.trees) {
    if (tc.roots.empty()) {
      os << csv_field(tc.key) << "," << csv_field(val(tc.js, tw)) << ",,,,,," << (tc.pass ? 1 : 0) << "\n";
      continue;
    }
    for (const auto& rc : tc.roots) {
      std::string sing;
      for (const auto& s : rc.gmn.singular)
        sing += (sing.empty() ? "" : " ") + to_string(s.coef) + "*" + singular_symbol(s.term.key, s.term.side);
      os << csv_field(tc.key) << "," << csv_field(val(tc.js, tw)) << "," << csv_field(diagram_string(th, rc.diagram))
         << "," << csv_field(rc.gmn.weight.str(th)) << "," << rc.gmn.decay.eps_sum() << ","
         << csv_field(val(rc.gmn.regular, tw)) << "," << csv_field(sing) << "," << (tc.pass ? 1 : 0) << "\n";
    }
  }
  return os.str();
}

Json ks_json(const Theory& th, const SpectrumTable& strong, const SpectrumTable& inferred,
             const std::optional<WallIdentity>& weak_check, int N) {
  Json j;
  j["theory"] = th.name;
  j["N"] = N;
  Json s = Json::array();
  for (const auto& [g, o] : truncated_support(strong, N)) s.push_back({{"charge", th.format(g)}, {"omega", o}});
  j["strong"] = s;
  Json w = Json::array();
  for (const auto& [g, o] : inferred.entries) w.push_back({{"charge", th.format(g)}, {"omega", o}});
  j["inferred_weak"] = w;
  if (weak_check) {
    Json c;
    c["equal"] = weak_check->equal;
    c["agree_degree"] = weak_check->agree_degree;
    c["mismatch"] = weak_check->mismatch;
    j["tabulated_weak_check"] = c;
  }
  return j;
}

Json check_json(const CheckResult& c) {
  Json j;
  j["name"] = c.name;
  j["value"] = c.value;
  j["threshold"] = c.threshold;
  j["pass"] = c.pass;
  j["detail"] = c.detail;
  return j;
}

std::string decay_fit_csv(const std::vector<DecayFit>& fits) {
  std::ostringstream os;
  os.precision(10);
  os << "n,R,abs_G\n";
  for (const auto& f : fits)
    for (const auto& p : f.points) os << p.n << "," << p.R << "," << p.abs_g << "\n";
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") return;
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
}

}  // namespace wc
