#pragma once
// Run configuration and JSON/CSV reports for the command-line tool.

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "wc/decay.hpp"
#include "wc/ks.hpp"
#include "wc/ledger.hpp"
#include "wc/numeric.hpp"

namespace wc {

using Json = nlohmann::ordered_json;

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string theory = "nf0";
  // JSON theory description overriding the built-in one
  std::string theory_file;
  std::string target;
  // 0 means the degree of the target
  int max_vertices = 0;
  int K = 10;
  int N = 6;
  Schedule schedule = Schedule::RootFirst;
  QuadratureSpec quadrature;
  double R = 3.0;
  std::string json_out;
  std::string csv_out;

  void validate() const;
  Theory load_theory() const;
  // target parsed and checked effective
  Charge target_charge(const Theory& th) const;
  int vertex_bound(const Charge& target) const;
};

// Keys mirror the RunConfig fields; unknown keys are rejected.
RunConfig config_from_json(const std::string& text, RunConfig base = {});
Json config_to_json(const RunConfig& c);

Json spectrum_json(const Theory& th, const SpectrumTable& t);
std::string spectrum_csv(const Theory& th, const SpectrumTable& t);

Json js_json(const Theory& th, const SpectrumTable& strong, const Charge& target, int max_parts);

// {"charge": ..., "children": [...]} nesting from the root
Json diagram_tree_json(const Theory& th, const RootedDiagram& d);
Json diagrams_json(const Theory& th, const SpectrumTable& strong, const Charge& target, int max_vertices,
                   Schedule sched);

Json decay_trace_json(const Theory& th, const SpectrumTable& strong, const RootedDiagram& d, Schedule sched);

Json conjecture_json(const Theory& th, const ConjectureReport& r);
// one row per (tree, root): key, js, root, weight, p, eps sum, regular, singular terms
std::string conjecture_csv(const Theory& th, const ConjectureReport& r);

Json ks_json(const Theory& th, const SpectrumTable& strong, const SpectrumTable& inferred,
             const std::optional<WallIdentity>& weak_check, int N);

Json check_json(const CheckResult& c);
std::string decay_fit_csv(const std::vector<DecayFit>& fits);

// Writes text to path; "-" or empty prints nothing.
void write_file(const std::string& path, const std::string& text);

}  // namespace wc
