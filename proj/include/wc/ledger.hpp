#pragma once
// Linear ledger over singular symbols and the per-tree conjecture check.

#include <map>
#include <string>
#include <vector>

#include "wc/decay.hpp"
#include "wc/gmn.hpp"
#include "wc/js.hpp"

namespace wc {

struct LedgerEquation {
  std::map<std::string, Q> coeffs;
  Q rhs;
  std::string origin;
};

struct LedgerSolution {
  bool consistent = true;
  // every symbol that appears is pinned
  bool unique = true;
  int rank = 0;
  std::map<std::string, Q> values;
  std::vector<std::string> free_symbols;
  std::vector<std::string> violated;
};

// Exact Gaussian elimination; free symbols are reported, not assigned.
LedgerSolution solve_ledger(const std::vector<LedgerEquation>& eqs);

struct RootContribution {
  RootedDiagram diagram;
  GmnContribution gmn;
};

struct TreeCheck {
  std::string key;
  LabelledTree tree;
  Q js;
  Q gmn_regular;
  // symbol -> coefficient summed over roots
  std::map<std::string, Q> singular;
  std::vector<RootContribution> roots;
  bool pass = false;
};

struct SymbolInfo {
  std::string name;
  std::string key;
  std::string side;
  int kappa = 0;
  bool kappa_conflict = false;
  int vertices = 0;
  std::string residual;
};

struct ConjectureReport {
  std::string theory;
  Charge target;
  bool twisted = false;
  int max_vertices = 0;
  Schedule schedule = Schedule::RootFirst;
  std::vector<TreeCheck> trees;
  // symbol name -> info; names are sing_1, sing_2, ... in key order
  std::map<std::string, SymbolInfo> symbols;
  std::vector<LedgerEquation> equations;
  std::vector<LedgerEquation> constraints;
  LedgerSolution solution;
  Q js_total;
  Q gmn_regular_total;
  bool pass = false;
  long decay_steps = 0;
  bool decay_effective = true;
};

// Conjecture check for all trees with total `target` and at most max_vertices vertices.
ConjectureReport check_conjecture(const Theory& th, const SpectrumTable& strong, const Charge& target,
                                  int max_vertices, Schedule sched = Schedule::RootFirst);
// Same check restricted to one unoriented labelled tree.
ConjectureReport conjecture_check(const Theory& th, const SpectrumTable& strong, const LabelledTree& tree,
                                  Schedule sched = Schedule::RootFirst);

// Value of a symbol as q * sigma (twisted) or q.
SymbolicRational symbol_value(const ConjectureReport& r, const std::string& name);

}  // namespace wc
