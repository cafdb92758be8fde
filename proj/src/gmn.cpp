#include "wc/gmn.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "wc/js.hpp"

namespace wc {

RootedDiagram RootedDiagram::from_tree(const LabelledTree& t, int root) {
  int n = static_cast<int>(t.size());
  if (!is_tree(n, t.edges)) throw std::invalid_argument("diagram edges do not form a tree");
  if (root < 0 || root >= n) throw std::invalid_argument("root out of range");
  RootedDiagram d;
  d.labels = t.labels;
  d.root = root;
  d.parent.assign(n, -1);
  auto adj = adjacency(n, t.edges);
  std::vector<int> stack{root};
  std::vector<bool> seen(n, false);
  seen[root] = true;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v]) {
      if (seen[w]) continue;
      seen[w] = true;
      d.parent[w] = v;
      stack.push_back(w);
    }
  }
  return d;
}

std::vector<std::vector<int>> RootedDiagram::children() const {
  std::vector<std::vector<int>> kids(size());
  for (std::size_t v = 0; v < size(); ++v)
    if (parent[v] >= 0) kids[parent[v]].push_back(static_cast<int>(v));
  return kids;
}

LabelledTree RootedDiagram::tree() const {
  LabelledTree t;
  t.labels = labels;
  for (std::size_t v = 0; v < size(); ++v)
    if (parent[v] >= 0) t.edges.emplace_back(parent[v], static_cast<int>(v));
  return t;
}

Charge RootedDiagram::total() const { return sum(labels, labels.front().rank()); }

std::string RootedDiagram::canonical() const { return canon_rooted(tree(), root); }

namespace {

// canonical string and automorphism count of the subtree at v
std::pair<std::string, long> subtree_aut(const RootedDiagram& d, const std::vector<std::vector<int>>& kids, int v) {
  long a = 1;
  std::vector<std::string> forms;
  for (int c : kids[v]) {
    auto [s, ca] = subtree_aut(d, kids, c);
    a *= ca;
    forms.push_back(std::move(s));
  }
  std::sort(forms.begin(), forms.end());
  for (std::size_t i = 0; i < forms.size();) {
    std::size_t j = i;
    while (j < forms.size() && forms[j] == forms[i]) ++j;
    for (long k = 2; k <= static_cast<long>(j - i); ++k) a *= k;
    i = j;
  }
  std::string s = "(" + coords_string(d.labels[v]);
  for (const auto& f : forms) s += f;
  return {s + ")", a};
}

}  // namespace

long aut_order(const RootedDiagram& d) { return subtree_aut(d, d.children(), d.root).second; }

std::string Weight::str(const Theory& th) const {
  std::string dir = th.format(direction);
  SymbolicRational s = scalar();
  if (s.is_zero()) return "0";
  std::string c = s.str();
  if (c == "1") return dir;
  if (c == "-1") return "-" + dir;
  if (c == "σ") return "σ" + dir;
  if (c == "-σ") return "-σ" + dir;
  return c + " " + dir;
}

Weight weight_W(const Theory& th, const SpectrumTable& strong, const RootedDiagram& d) {
  int n = static_cast<int>(d.size());
  FCoeff froot = f_coeff(th, strong, d.labels[d.root]);
  Weight w;
  w.direction = froot.direction;
  w.sigma = !th.sigma_trivial;
  Q coef = n % 2 == 0 ? Q(1) : Q(-1);
  coef *= froot.coef;
  for (int v = 0; v < n; ++v) {
    if (d.parent[v] < 0) continue;
    FCoeff fc = f_coeff(th, strong, d.labels[v]);
    coef *= fc.coef * Q(th.pair(d.labels[d.parent[v]], fc.direction));
    if (coef == 0) break;
  }
  coef /= Q(aut_order(d));
  // prod sigma(g_i) = sign * sigma(total)
  if (w.sigma) coef *= th.sigma_sign(d.labels);
  coef.canonicalize();
  w.coef = coef;
  return w;
}

bool is_root_label(const Theory& th, const Charge& g) {
  for (std::size_t i = 0; i < g.rank(); ++i) {
    if (i == th.root_index) {
      if (g[i] <= 0) return false;
    } else if (g[i] != 0) {
      return false;
    }
  }
  return true;
}

std::vector<RootedDiagram> enumerate_diagrams(const Theory& th, const SpectrumTable& strong,
                                              const Charge& target, int max_vertices, bool keep_zero) {
  std::vector<RootedDiagram> out;
  std::set<std::string> seen;
  auto pool = js_pool(th, strong, target);
  for (const auto& ms : multiset_decompositions(target, pool, max_vertices)) {
    int n = static_cast<int>(ms.size());
    bool has_root = false;
    for (const auto& g : ms) has_root = has_root || is_root_label(th, g);
    if (!has_root) continue;
    for (const auto& edges : labelled_trees_cached(n)) {
      LabelledTree t{ms, edges};
      for (int r = 0; r < n; ++r) {
        if (!is_root_label(th, ms[r])) continue;
        RootedDiagram d = RootedDiagram::from_tree(t, r);
        if (!seen.insert(d.canonical()).second) continue;
        if (!keep_zero && weight_W(th, strong, d).coef == 0) continue;
        out.push_back(std::move(d));
      }
    }
  }
  return out;
}

std::string diagram_string(const Theory& th, const RootedDiagram& d) {
  auto kids = d.children();
  std::function<std::string(int)> rec = [&](int v) {
    std::string s = th.format(d.labels[v]);
    if (kids[v].empty()) return s;
    std::vector<std::string> parts;
    for (int c : kids[v]) parts.push_back(rec(c));
    std::sort(parts.begin(), parts.end());
    if (parts.size() == 1) return s + " -> " + parts[0];
    s += " -> (";
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? ", " : "") + parts[i];
    return s + ")";
  };
  return rec(d.root);
}

}  // namespace wc
