#include "wc/spectrum.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace wc {

const char* coupling_name(Coupling c) { return c == Coupling::Strong ? "strong" : "weak"; }

Coupling parse_coupling(const std::string& s) {
  if (s == "strong") return Coupling::Strong;
  if (s == "weak") return Coupling::Weak;
  throw std::invalid_argument("region must be 'strong' or 'weak', got '" + s + "'");
}

namespace {

// index k with g == base + k*step, or -1
long family_index(const Family& f, const Charge& g) {
  if (g.rank() != f.base.rank()) return -1;
  Charge d = g - f.base;
  long k = -1;
  for (std::size_t i = 0; i < d.rank(); ++i) {
    if (f.step[i] == 0) {
      if (d[i] != 0) return -1;
      continue;
    }
    if (d[i] % f.step[i] != 0) return -1;
    long ki = d[i] / f.step[i];
    if (k >= 0 && ki != k) return -1;
    if (ki < 0) return -1;
    k = ki;
  }
  return k < 0 ? 0 : k;
}

bool lookup_positive(const SpectrumTable& t, const Charge& g, long& out) {
  if (auto it = t.entries.find(g); it != t.entries.end()) {
    out = it->second;
    return true;
  }
  for (const auto& f : t.families) {
    long k = family_index(f, g);
    if (k < 0) continue;
    if (k > t.K)
      throw TruncationError("charge " + coords_string(g) + " is family member k=" + std::to_string(k) +
                            " beyond truncation K=" + std::to_string(t.K));
    out = f.omega;
    return true;
  }
  return false;
}

}  // namespace

std::vector<std::pair<Charge, long>> SpectrumTable::support() const {
  std::map<Charge, long> all(entries.begin(), entries.end());
  for (const auto& f : families)
    for (int k = 0; k <= K; ++k) all.emplace(f.base + static_cast<long>(k) * f.step, f.omega);
  return {all.begin(), all.end()};
}

long omega(const SpectrumTable& t, const Charge& g) {
  if (g.is_zero()) return 0;
  long out = 0;
  if (lookup_positive(t, g, out)) return out;
  if (lookup_positive(t, -g, out)) return out;
  if (!t.complete)
    throw UnknownSpectrum("the " + t.theory + " " + coupling_name(t.coupling) +
                          " spectrum is only partially known; no value for " + coords_string(g));
  return 0;
}

Q dt(const SpectrumTable& t, const Charge& g) {
  long n = g.gcd();
  Q s = 0;
  for (long m = 1; m <= n; ++m) {
    if (n % m != 0) continue;
    Charge part = g.primitive();
    part = (n / m) * part;
    long om = omega(t, part);
    if (om != 0) s += Q(om, m * m);
  }
  s.canonicalize();
  return s;
}

FCoeff f_coeff(const Theory& th, const SpectrumTable& t, const Charge& g) {
  FCoeff f;
  f.direction = g.primitive();
  f.sigma = !th.sigma_trivial;
  long n = g.gcd();
  for (long m = 1; m <= n; ++m) {
    if (n % m != 0) continue;
    long om = omega(t, (n / m) * f.direction);
    // Omega(g/m)/m times g/m, written along the primitive direction
    if (om != 0) f.coef += Q(om * (n / m), m);
  }
  f.coef.canonicalize();
  return f;
}

SpectrumTable strong_table(const Theory& th) {
  SpectrumTable t;
  t.theory = th.name;
  t.coupling = Coupling::Strong;
  for (std::size_t i = 0; i < th.rank(); ++i) t.entries[Charge::unit(th.rank(), i)] = 1;
  return t;
}

std::string data_dir() {
  if (const char* env = std::getenv("WC_DATA_DIR"); env && *env) return env;
  return WC_DATA_DIR;
}

SpectrumTable spectrum_from_json(const std::string& text) {
  SpectrumTable t;
  try {
    auto j = nlohmann::json::parse(text);
    if (j.value("schema", std::string()) != "wc-spectrum/1")
      throw std::invalid_argument("spectrum json: expected schema wc-spectrum/1");
    t.theory = j.at("theory").get<std::string>();
    t.coupling = parse_coupling(j.at("coupling").get<std::string>());
    t.complete = j.value("complete", true);
    t.K = j.value("K", 10);
    for (const auto& e : j.value("entries", nlohmann::json::array())) {
      Charge g(e.at("charge").get<std::vector<long>>());
      if (!t.entries.emplace(g, e.at("omega").get<long>()).second)
        throw std::invalid_argument("spectrum json: duplicate entry " + coords_string(g));
    }
    for (const auto& e : j.value("families", nlohmann::json::array())) {
      Family f;
      f.base = Charge(e.at("base").get<std::vector<long>>());
      f.step = Charge(e.at("step").get<std::vector<long>>());
      f.omega = e.at("omega").get<long>();
      f.label = e.value("label", std::string());
      if (f.step.is_zero() || f.step.rank() != f.base.rank())
        throw std::invalid_argument("spectrum json: bad family step");
      t.families.push_back(f);
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("spectrum json: ") + e.what());
  }
  return t;
}

std::string spectrum_to_json(const SpectrumTable& t, const Theory* th) {
  nlohmann::ordered_json j;
  j["schema"] = "wc-spectrum/1";
  j["theory"] = t.theory;
  j["coupling"] = coupling_name(t.coupling);
  j["complete"] = t.complete;
  j["K"] = t.K;
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const auto& [g, om] : t.entries) {
    nlohmann::ordered_json e;
    e["charge"] = g.c;
    if (th) e["label"] = th->format(g);
    e["omega"] = om;
    entries.push_back(e);
  }
  j["entries"] = entries;
  nlohmann::ordered_json fams = nlohmann::ordered_json::array();
  for (const auto& f : t.families) {
    nlohmann::ordered_json e;
    e["base"] = f.base.c;
    e["step"] = f.step.c;
    e["omega"] = f.omega;
    if (!f.label.empty()) e["label"] = f.label;
    fams.push_back(e);
  }
  j["families"] = fams;
  return j.dump(2);
}

SpectrumTable load_spectrum(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open spectrum file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return spectrum_from_json(ss.str());
}

SpectrumTable builtin_spectrum(const std::string& theory, Coupling c, int K) {
  SpectrumTable t = load_spectrum(data_dir() + "/spectra/" + theory + "_" + coupling_name(c) + ".json");
  t.K = K;
  return t;
}

}  // namespace wc
