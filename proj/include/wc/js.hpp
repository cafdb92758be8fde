#pragma once
// Joyce-Song wall-crossing: S and U coefficients, labelled-tree sums, per-tree values.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "wc/lattice.hpp"
#include "wc/spectrum.hpp"
#include "wc/symbolic.hpp"
#include "wc/trees.hpp"

namespace wc {

// Slopes s() are read at Region::Plus, w() at Region::Minus.
int s_symbol(const Theory& th, const std::vector<Charge>& parts);
Q u_symbol(const Theory& th, const std::vector<Charge>& parts);

// One summand of the formula: an ordered decomposition and a labelled tree on it.
struct JsTerm {
  const std::vector<Charge>* seq = nullptr;
  const EdgeList* edges = nullptr;
  // U * (-1)^(n-1)/2^(n-1) * prod over edges (-1)^<a_i,a_j> <a_i,a_j> * prod DT
  Q value;
  // sigma bookkeeping sign: prod_edges (-1)^<a_i,a_j> times the sigma normal-form sign
  int twist = 1;
};

// Effective charges below `target` with nonzero strong-side DT.
std::vector<Charge> js_pool(const Theory& th, const SpectrumTable& strong, const Charge& target);

void for_each_js_term(const Theory& th, const SpectrumTable& strong, const std::vector<Charge>& multiset,
                      const std::function<void(const JsTerm&)>& fn);

// DT(target) on the weak side; untwisted rational.
Q js_wallcross(const Theory& th, const SpectrumTable& strong, const Charge& target, int max_parts = 7);
// Same sum with the sigma twist applied; coefficient of sigma(target) for twisted theories.
SymbolicRational js_wallcross_twisted(const Theory& th, const SpectrumTable& strong, const Charge& target,
                                      int max_parts = 7);

// Twisted per-tree totals keyed by canon_unrooted (directed keys keep orientations apart).
std::map<std::string, Q> js_tree_values(const Theory& th, const SpectrumTable& strong,
                                        const std::vector<Charge>& multiset, bool directed = false);

SymbolicRational js_unoriented_value(const Theory& th, const SpectrumTable& strong, const LabelledTree& tree);

// Oriented contributions to one unoriented tree, with a representative orientation each.
struct OrientedClass {
  std::string key;
  LabelledTree representative;
  Q value;
};
std::vector<OrientedClass> js_oriented_values(const Theory& th, const SpectrumTable& strong,
                                              const LabelledTree& tree);

}  // namespace wc
