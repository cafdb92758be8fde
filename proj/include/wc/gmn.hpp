#pragma once
// Rooted decorated trees of the GMN expansion: enumeration, automorphisms, weights.

#include <string>
#include <vector>

#include "wc/lattice.hpp"
#include "wc/spectrum.hpp"
#include "wc/symbolic.hpp"
#include "wc/trees.hpp"

namespace wc {

struct RootedDiagram {
  std::vector<Charge> labels;
  // parent[root] == -1
  std::vector<int> parent;
  int root = 0;

  static RootedDiagram from_tree(const LabelledTree& t, int root);
  std::size_t size() const { return labels.size(); }
  std::vector<std::vector<int>> children() const;
  // edges directed parent -> child
  LabelledTree tree() const;
  Charge total() const;
  std::string canonical() const;
};

long aut_order(const RootedDiagram& d);

// coef * direction, times sigma(total) when `sigma` is set
struct Weight {
  Q coef;
  Charge direction;
  bool sigma = false;
  SymbolicRational scalar() const { return SymbolicRational::unit(sigma, coef); }
  std::string str(const Theory& th) const;
};

Weight weight_W(const Theory& th, const SpectrumTable& strong, const RootedDiagram& d);

// Root decorations must be positive multiples of the theory's root direction.
bool is_root_label(const Theory& th, const Charge& g);

// Rooted diagrams with effective decorations summing to target, deduplicated up to
// decoration-preserving isomorphism. Zero-weight diagrams are dropped unless keep_zero.
std::vector<RootedDiagram> enumerate_diagrams(const Theory& th, const SpectrumTable& strong,
                                              const Charge& target, int max_vertices,
                                              bool keep_zero = false);

// Nested text form, e.g. "d -> (gm, gm)".
std::string diagram_string(const Theory& th, const RootedDiagram& d);

}  // namespace wc
