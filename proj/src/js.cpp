#include "wc/js.hpp"

#include <algorithm>

namespace wc {

namespace {

// cut points 0 = a_0 < ... < a_m = n
std::vector<std::vector<int>> compositions(int n) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
    std::vector<int> cuts{0};
    for (int i = 0; i < n - 1; ++i)
      if (mask >> i & 1u) cuts.push_back(i + 1);
    cuts.push_back(n);
    out.push_back(std::move(cuts));
  }
  return out;
}

Charge range_sum(const std::vector<Charge>& v, int lo, int hi) {
  Charge s = Charge::zero(v.front().rank());
  for (int i = lo; i < hi; ++i) s += v[i];
  return s;
}

}  // namespace

int s_symbol(const Theory& th, const std::vector<Charge>& parts) {
  int n = static_cast<int>(parts.size());
  if (n == 0) throw InvalidCharge("S symbol of an empty sequence");
  int flips = 0;
  for (int i = 0; i + 1 < n; ++i) {
    ZValue sa = th.ray_phase(Region::Plus, parts[i]);
    ZValue sb = th.ray_phase(Region::Plus, parts[i + 1]);
    ZValue wl = th.ray_phase(Region::Minus, range_sum(parts, 0, i + 1));
    ZValue wr = th.ray_phase(Region::Minus, range_sum(parts, i + 1, n));
    int cs = phase_cmp(sa, sb), cw = phase_cmp(wl, wr);
    // Equality in the slope goes with a strict drop of the weak slope and vice versa.
    if (cs <= 0 && cw > 0) ++flips;
    else if (cs > 0 && cw <= 0) continue;
    else return 0;
  }
  return flips % 2 ? -1 : 1;
}

Q u_symbol(const Theory& th, const std::vector<Charge>& parts) {
  int n = static_cast<int>(parts.size());
  if (n == 0) throw InvalidCharge("U symbol of an empty sequence");
  Charge total = range_sum(parts, 0, n);
  ZValue wtot = th.ray_phase(Region::Minus, total);
  Q out = 0;
  for (const auto& a : compositions(n)) {
    int m = static_cast<int>(a.size()) - 1;
    std::vector<Charge> betas;
    bool ok = true;
    Q fac = 1;
    for (int i = 0; i < m && ok; ++i) {
      Charge b = range_sum(parts, a[i], a[i + 1]);
      ZValue sb = th.ray_phase(Region::Plus, b);
      for (int k = a[i]; k < a[i + 1]; ++k)
        if (phase_cmp(th.ray_phase(Region::Plus, parts[k]), sb) != 0) ok = false;
      fac /= factorial_q(a[i + 1] - a[i]);
      betas.push_back(std::move(b));
    }
    if (!ok) continue;
    for (const auto& b : compositions(m)) {
      int l = static_cast<int>(b.size()) - 1;
      int prod = 1;
      for (int i = 0; i < l && prod != 0; ++i) {
        std::vector<Charge> blk(betas.begin() + b[i], betas.begin() + b[i + 1]);
        if (phase_cmp(th.ray_phase(Region::Minus, range_sum(blk, 0, static_cast<int>(blk.size()))), wtot) != 0) {
          prod = 0;
          break;
        }
        prod *= s_symbol(th, blk);
      }
      if (prod == 0) continue;
      out += Q(l % 2 == 1 ? prod : -prod, l) * fac;
    }
  }
  out.canonicalize();
  return out;
}

std::vector<Charge> js_pool(const Theory& th, const SpectrumTable& strong, const Charge& target) {
  th.check_rank(target);
  if (!target.is_effective()) throw InvalidCharge("target " + th.format(target) + " is not effective");
  std::vector<Charge> pool;
  std::vector<Charge> prims;
  for (const auto& [g, om] : strong.support())
    if (om != 0 && g.is_effective()) prims.push_back(g.primitive());
  std::sort(prims.begin(), prims.end());
  prims.erase(std::unique(prims.begin(), prims.end()), prims.end());
  for (const auto& p : prims) {
    for (long k = 1;; ++k) {
      Charge g = k * p;
      bool fits = true;
      for (std::size_t i = 0; i < g.rank(); ++i)
        if (g[i] > target[i]) fits = false;
      if (!fits) break;
      if (dt(strong, g) != 0) pool.push_back(g);
    }
  }
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  return pool;
}

void for_each_js_term(const Theory& th, const SpectrumTable& strong, const std::vector<Charge>& multiset,
                      const std::function<void(const JsTerm&)>& fn) {
  int n = static_cast<int>(multiset.size());
  const auto& trees = labelled_trees_cached(n);
  for (const auto& seq : distinct_permutations(multiset)) {
    Q u = u_symbol(th, seq);
    if (u == 0) continue;
    Q pre = u / Q(1L << (n - 1));
    if (n % 2 == 0) pre = -pre;
    for (const auto& g : seq) pre *= dt(strong, g);
    if (pre == 0) continue;
    std::vector<std::vector<long>> pr(n, std::vector<long>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) pr[i][j] = th.pair(seq[i], seq[j]);
    int sig = th.sigma_trivial ? 1 : th.sigma_sign(seq);
    for (const auto& edges : trees) {
      Q v = pre;
      int parity = 1;
      for (auto [i, j] : edges) {
        long p = pr[i][j];
        if (p == 0) {
          v = 0;
          break;
        }
        bool odd = p % 2 != 0;
        v *= odd ? -p : p;
        if (odd) parity = -parity;
      }
      if (v == 0) continue;
      JsTerm t;
      t.seq = &seq;
      t.edges = &edges;
      t.value = v;
      t.twist = th.sigma_trivial ? 1 : parity * sig;
      fn(t);
    }
  }
}

Q js_wallcross(const Theory& th, const SpectrumTable& strong, const Charge& target, int max_parts) {
  Q total = 0;
  for (const auto& ms : multiset_decompositions(target, js_pool(th, strong, target), max_parts))
    for_each_js_term(th, strong, ms, [&](const JsTerm& t) { total += t.value; });
  return total;
}

SymbolicRational js_wallcross_twisted(const Theory& th, const SpectrumTable& strong, const Charge& target,
                                      int max_parts) {
  Q total = 0;
  for (const auto& ms : multiset_decompositions(target, js_pool(th, strong, target), max_parts))
    for_each_js_term(th, strong, ms, [&](const JsTerm& t) { total += t.value * t.twist; });
  return SymbolicRational::unit(!th.sigma_trivial, total);
}

std::map<std::string, Q> js_tree_values(const Theory& th, const SpectrumTable& strong,
                                        const std::vector<Charge>& multiset, bool directed) {
  std::map<std::string, Q> out;
  for_each_js_term(th, strong, multiset, [&](const JsTerm& t) {
    LabelledTree lt{*t.seq, *t.edges};
    out[canon_unrooted(lt, directed)] += t.value * t.twist;
  });
  for (auto it = out.begin(); it != out.end();) {
    if (it->second == 0) it = out.erase(it);
    else ++it;
  }
  return out;
}

SymbolicRational js_unoriented_value(const Theory& th, const SpectrumTable& strong, const LabelledTree& tree) {
  if (!is_tree(static_cast<int>(tree.size()), tree.edges)) throw std::invalid_argument("not a tree");
  for (const auto& g : tree.labels)
    if (!g.is_effective()) throw InvalidCharge("tree labels must be effective");
  std::string key = canon_unrooted(tree);
  Q v = 0;
  for_each_js_term(th, strong, tree.labels, [&](const JsTerm& t) {
    LabelledTree lt{*t.seq, *t.edges};
    if (canon_unrooted(lt) == key) v += t.value * t.twist;
  });
  return SymbolicRational::unit(!th.sigma_trivial, v);
}

std::vector<OrientedClass> js_oriented_values(const Theory& th, const SpectrumTable& strong,
                                              const LabelledTree& tree) {
  std::string key = canon_unrooted(tree);
  std::map<std::string, OrientedClass> acc;
  for_each_js_term(th, strong, tree.labels, [&](const JsTerm& t) {
    LabelledTree lt{*t.seq, *t.edges};
    if (canon_unrooted(lt) != key) return;
    std::string dk = canon_unrooted(lt, true);
    auto it = acc.find(dk);
    if (it == acc.end()) it = acc.emplace(dk, OrientedClass{dk, lt, 0}).first;
    it->second.value += t.value * t.twist;
  });
  std::vector<OrientedClass> out;
  for (auto& [k, c] : acc)
    if (c.value != 0) out.push_back(std::move(c));
  return out;
}

}  // namespace wc
