#pragma once
// Labelled trees, Pruefer enumeration, canonical forms and multiset helpers.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wc/lattice.hpp"

namespace wc {

struct TreeSizeError : std::length_error {
  using std::length_error::length_error;
};

using Edge = std::pair<int, int>;
using EdgeList = std::vector<Edge>;

// Vertices 0..n-1 carry charges; an edge (a, b) is read as directed a -> b when direction matters.
struct LabelledTree {
  std::vector<Charge> labels;
  EdgeList edges;
  std::size_t size() const { return labels.size(); }
  Charge total() const;
};

constexpr int kDefaultTreeBound = 7;

// All n^(n-2) trees on {0..n-1}; every edge stored as (i, j) with i < j.
std::vector<EdgeList> enumerate_labelled_trees(int n, int bound = kDefaultTreeBound);
// Cached variant for repeated use.
const std::vector<EdgeList>& labelled_trees_cached(int n);
bool is_tree(int n, const EdgeList& edges);

std::vector<std::vector<int>> adjacency(std::size_t n, const EdgeList& edges);

// Canonical string of the tree rooted at `root`; with `directed` each child carries
// '>' when the edge points away from the root and '<' otherwise.
std::string canon_rooted(const LabelledTree& t, int root, bool directed = false);
// Minimum rooted form over all roots: equal iff the labelled trees are isomorphic.
std::string canon_unrooted(const LabelledTree& t, bool directed = false);

// Multisets of parts from `pool` (each usable repeatedly) summing to `target`, at most max_parts.
// Parts inside each multiset follow pool order.
std::vector<std::vector<Charge>> multiset_decompositions(const Charge& target,
                                                         const std::vector<Charge>& pool,
                                                         int max_parts);
// Distinct orderings of a multiset.
std::vector<std::vector<Charge>> distinct_permutations(std::vector<Charge> parts);

}  // namespace wc
