#include "wc/trees.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace wc {

Charge LabelledTree::total() const {
  if (labels.empty()) return {};
  return sum(labels, labels.front().rank());
}

std::vector<EdgeList> enumerate_labelled_trees(int n, int bound) {
  if (n < 1) throw TreeSizeError("tree size must be at least 1");
  if (n > bound)
    throw TreeSizeError("tree size " + std::to_string(n) + " exceeds bound " + std::to_string(bound));
  if (n == 1) return {EdgeList{}};
  if (n == 2) return {EdgeList{{0, 1}}};
  std::vector<EdgeList> out;
  std::vector<int> seq(n - 2, 0);
  while (true) {
    // decode the Pruefer sequence
    std::vector<int> deg(n, 1);
    for (int x : seq) ++deg[x];
    EdgeList edges;
    for (int x : seq) {
      int leaf = 0;
      while (deg[leaf] != 1) ++leaf;
      edges.emplace_back(std::min(leaf, x), std::max(leaf, x));
      --deg[leaf];
      --deg[x];
    }
    int u = -1, w = -1;
    for (int i = 0; i < n; ++i) {
      if (deg[i] != 1) continue;
      if (u < 0) u = i;
      else w = i;
    }
    edges.emplace_back(u, w);
    out.push_back(std::move(edges));
    int pos = n - 3;
    while (pos >= 0 && seq[pos] == n - 1) seq[pos--] = 0;
    if (pos < 0) break;
    ++seq[pos];
  }
  return out;
}

const std::vector<EdgeList>& labelled_trees_cached(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<EdgeList>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, enumerate_labelled_trees(n)).first;
  return it->second;
}

bool is_tree(int n, const EdgeList& edges) {
  if (static_cast<int>(edges.size()) != n - 1) return false;
  std::vector<int> comp(n);
  for (int i = 0; i < n; ++i) comp[i] = i;
  auto find = [&](int x) {
    while (comp[x] != x) x = comp[x] = comp[comp[x]];
    return x;
  };
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n) return false;
    int ra = find(a), rb = find(b);
    if (ra == rb) return false;
    comp[ra] = rb;
  }
  return true;
}

std::vector<std::vector<int>> adjacency(std::size_t n, const EdgeList& edges) {
  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

namespace {

std::string canon_from(const LabelledTree& t, const std::vector<std::vector<int>>& adj,
                       const std::vector<std::vector<bool>>* out_edge, int v, int parent) {
  std::vector<std::string> kids;
  for (int w : adj[v]) {
    if (w == parent) continue;
    std::string tag;
    if (out_edge) tag = (*out_edge)[v][w] ? ">" : "<";
    kids.push_back(tag + canon_from(t, adj, out_edge, w, v));
  }
  std::sort(kids.begin(), kids.end());
  std::string s = "(" + coords_string(t.labels[v]);
  for (const auto& k : kids) s += k;
  return s + ")";
}

std::vector<std::vector<bool>> out_edges(const LabelledTree& t) {
  std::vector<std::vector<bool>> m(t.size(), std::vector<bool>(t.size(), false));
  for (auto [a, b] : t.edges) m[a][b] = true;
  return m;
}

}  // namespace

std::string canon_rooted(const LabelledTree& t, int root, bool directed) {
  auto adj = adjacency(t.size(), t.edges);
  if (!directed) return canon_from(t, adj, nullptr, root, -1);
  auto m = out_edges(t);
  return canon_from(t, adj, &m, root, -1);
}

std::string canon_unrooted(const LabelledTree& t, bool directed) {
  auto adj = adjacency(t.size(), t.edges);
  std::vector<std::vector<bool>> m;
  if (directed) m = out_edges(t);
  std::string best;
  for (int r = 0; r < static_cast<int>(t.size()); ++r) {
    std::string s = canon_from(t, adj, directed ? &m : nullptr, r, -1);
    if (r == 0 || s < best) best = std::move(s);
  }
  return best;
}

namespace {

void decompose(const Charge& rem, const std::vector<Charge>& pool, std::size_t start, int max_parts,
               std::vector<Charge>& cur, std::vector<std::vector<Charge>>& out) {
  if (rem.is_zero()) {
    out.push_back(cur);
    return;
  }
  if (static_cast<int>(cur.size()) >= max_parts) return;
  for (std::size_t i = start; i < pool.size(); ++i) {
    const Charge& g = pool[i];
    bool fits = true;
    for (std::size_t k = 0; k < g.rank(); ++k)
      if (g[k] > rem[k]) fits = false;
    if (!fits) continue;
    cur.push_back(g);
    decompose(rem - g, pool, i, max_parts, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<std::vector<Charge>> multiset_decompositions(const Charge& target,
                                                         const std::vector<Charge>& pool,
                                                         int max_parts) {
  std::vector<std::vector<Charge>> out;
  std::vector<Charge> cur;
  for (const auto& g : pool)
    if (!g.is_effective()) throw InvalidCharge("decomposition pool must be effective");
  decompose(target, pool, 0, max_parts, cur, out);
  return out;
}

std::vector<std::vector<Charge>> distinct_permutations(std::vector<Charge> parts) {
  std::sort(parts.begin(), parts.end());
  std::vector<std::vector<Charge>> out;
  do {
    out.push_back(parts);
  } while (std::next_permutation(parts.begin(), parts.end()));
  return out;
}

}  // namespace wc
