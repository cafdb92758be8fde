#include "wc/decay.hpp"

#include <algorithm>
#include <functional>

namespace wc {

const char* annotation_name(Annotation a) {
  switch (a) {
    case Annotation::Plus: return "plus";
    case Annotation::Minus: return "minus";
    default: return "unbalanced";
  }
}

const char* schedule_name(Schedule s) { return s == Schedule::RootFirst ? "root-first" : "leaves-first"; }

int DecayState::root() const {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i].alive && parent[i] < 0) return static_cast<int>(i);
  return -1;
}

int DecayState::depth(int x) const {
  int d = 0;
  while (parent[x] >= 0) {
    x = parent[x];
    ++d;
  }
  return d;
}

std::vector<int> DecayState::alive() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i].alive) out.push_back(static_cast<int>(i));
  return out;
}

std::size_t DecayState::size() const { return alive().size(); }

Annotation DecayState::annotation(int x) const {
  if (v[x].reg == Region::Plus) return Annotation::Plus;
  return v[x].ray == v[x].c ? Annotation::Minus : Annotation::Unbalanced;
}

bool DecayState::settled(int x) const { return annotation(x) == Annotation::Minus; }

Charge DecayState::total() const {
  Charge t;
  for (const auto& x : v) {
    if (!x.alive) continue;
    t = t.rank() ? t + x.c : x.c;
  }
  return t;
}

LabelledTree DecayState::as_tree() const {
  LabelledTree t;
  std::vector<int> idx(v.size(), -1);
  for (int x : alive()) {
    idx[x] = static_cast<int>(t.labels.size());
    t.labels.push_back(v[x].c);
  }
  for (int x : alive())
    if (parent[x] >= 0) t.edges.emplace_back(idx[parent[x]], idx[x]);
  return t;
}

std::string DecayState::str(const Theory& th) const {
  std::function<std::string(int)> rec = [&](int x) {
    const auto& vx = v[x];
    std::string s;
    switch (annotation(x)) {
      case Annotation::Plus:
        s = th.format(vx.ray) + "+";
        if (vx.ray != vx.c) s += " + " + th.format(vx.c - vx.ray) + "*";
        break;
      case Annotation::Minus: s = th.format(vx.c) + "-"; break;
      case Annotation::Unbalanced: s = th.format(vx.ray) + "- + " + th.format(vx.c - vx.ray) + "*"; break;
    }
    if (kids[x].empty()) return "[" + s + "]";
    std::string out = "[" + s + " ->";
    for (int c : kids[x]) out += " " + rec(c);
    return out + "]";
  };
  int r = root();
  return (eps > 0 ? "+" : "-") + (r < 0 ? std::string("[]") : rec(r));
}

DecayState initial_state(const RootedDiagram& d) {
  DecayState s;
  std::size_t n = d.size();
  s.v.resize(n);
  s.parent = d.parent;
  s.kids = d.children();
  for (std::size_t i = 0; i < n; ++i) s.v[i] = DecayVertex{d.labels[i], d.labels[i], Region::Plus, true};
  return s;
}

ZValue vertex_phase(const Theory& th, const DecayVertex& x) { return th.ray_phase(x.reg, x.ray); }

namespace {

std::vector<std::pair<int, bool>> neighbours(const DecayState& s, int x) {
  std::vector<std::pair<int, bool>> out;
  if (s.parent[x] >= 0) out.emplace_back(s.parent[x], true);
  for (int c : s.kids[x]) out.emplace_back(c, false);
  return out;
}

// merge x into w; w keeps its ray and absorbs x's integrand charge and other neighbours
void merge(DecayState& s, int x, int w) {
  s.v[w].c += s.v[x].c;
  int px = s.parent[x];
  if (s.parent[w] == x) {
    s.parent[w] = px;
    if (px >= 0) std::replace(s.kids[px].begin(), s.kids[px].end(), x, w);
    auto& kx = s.kids[x];
    kx.erase(std::find(kx.begin(), kx.end(), w));
    for (int c : kx) s.parent[c] = w;
    s.kids[w].insert(s.kids[w].end(), kx.begin(), kx.end());
  } else {
    auto& kw = s.kids[w];
    auto pos = std::find(kw.begin(), kw.end(), x);
    for (int c : s.kids[x]) s.parent[c] = w;
    pos = kw.erase(pos);
    kw.insert(pos, s.kids[x].begin(), s.kids[x].end());
  }
  s.v[x].alive = false;
  s.kids[x].clear();
  s.parent[x] = -1;
}

std::string vertex_name(const Theory& th, const DecayState& s, int x) {
  return "v" + std::to_string(x) + "(" + th.format(s.v[x].c) + ")";
}

}  // namespace

bool would_be_singular(const Theory& th, const DecayState& s, int x) {
  ZValue a = vertex_phase(th, s.v[x]);
  ZValue b = th.ray_phase(Region::Minus, s.v[x].c);
  if (cross(a, b) == 0) return false;
  for (auto [w, is_parent] : neighbours(s, x))
    if (cross(vertex_phase(th, s.v[w]), b) == 0) return true;
  return false;
}

std::vector<DecayState> move_vertex(const Theory& th, const DecayState& s, int x, bool record) {
  if (x < 0 || x >= static_cast<int>(s.v.size()) || !s.v[x].alive)
    throw std::invalid_argument("move of a vertex that does not exist");
  const DecayVertex& vx = s.v[x];
  ZValue a = vertex_phase(th, vx);
  ZValue b = th.ray_phase(Region::Minus, vx.c);
  std::vector<DecayState> out;
  DecayState prin = s;
  prin.v[x].ray = vx.c;
  prin.v[x].reg = Region::Minus;
  Q ab = cross(a, b);
  std::string what = record ? "move " + vertex_name(th, s, x) + " " + annotation_name(s.annotation(x)) : "";
  if (ab == 0) {
    if (record) prin.trail.push_back(what + ": no sweep");
    out.push_back(std::move(prin));
    return out;
  }
  bool ccw = ab > 0;
  int dir = ccw ? 1 : -1;
  std::vector<DecayState> residues;
  for (auto [w, is_parent] : neighbours(s, x)) {
    ZValue p = vertex_phase(th, s.v[w]);
    Sweep sw = sweep_over(a, b, p);
    if (sw != Sweep::None) {
      DecayState r = s;
      // direction sign times kernel orientation: + when the crossed ray is the parent's
      r.eps *= dir * (is_parent ? 1 : -1);
      if (record)
        r.trail.push_back(what + ": residue into " + vertex_name(th, s, w) + " " + sweep_name(sw) + " " +
                          (is_parent ? "parent" : "child") + " eps " + (r.eps > 0 ? "+1" : "-1"));
      merge(r, x, w);
      residues.push_back(std::move(r));
    } else if (cross(p, b) == 0 && cross(a, p) != 0) {
      prin.sing.push_back(SingularTag{x, w, ccw ? "below" : "above", is_parent});
      if (record)
        prin.trail.push_back(what + ": target ray coincides with " + vertex_name(th, s, w) + " from " +
                             (ccw ? "below" : "above"));
    }
  }
  if (record) prin.trail.push_back(what + ": principal");
  out.push_back(std::move(prin));
  for (auto& r : residues) out.push_back(std::move(r));
  return out;
}

bool promote_hits_child(const Theory& th, const DecayState& s, int x) {
  ZValue a = vertex_phase(th, s.v[x]);
  ZValue b = th.ray_phase(Region::Minus, s.v[x].c);
  for (int c : s.kids[x])
    if (sweep_over(a, b, vertex_phase(th, s.v[c])) != Sweep::None) return true;
  return false;
}

std::vector<DecayState> promote(const Theory& th, const DecayState& s, int x, bool record, bool strict) {
  if (s.annotation(x) != Annotation::Plus) throw OrderingError("promote needs a plus-annotated vertex");
  for (int y = s.parent[x]; y >= 0; y = s.parent[y])
    if (s.annotation(y) == Annotation::Plus) throw OrderingError("promote before an ancestor was promoted");
  if (strict && promote_hits_child(th, s, x))
    throw OrderingError("a plus-annotated vertex would interact with a vertex farther from the root");
  return move_vertex(th, s, x, record);
}

std::vector<DecayState> rebalance(const Theory& th, const DecayState& s, int x, bool record) {
  if (s.annotation(x) != Annotation::Unbalanced) throw OrderingError("rebalance needs an unbalanced vertex");
  return move_vertex(th, s, x, record);
}

int next_vertex(const Theory& th, const DecayState& s, Schedule sched) {
  int r = s.root();
  std::vector<int> order;
  std::function<void(int)> dfs = [&](int x) {
    order.push_back(x);
    for (int c : s.kids[x]) dfs(c);
  };
  dfs(r);
  int best = -1, best_singular = -1;
  std::pair<int, int> key_best, key_sing;
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    int x = order[pos];
    if (s.settled(x)) continue;
    // a plus vertex waits for all of its ancestors
    bool blocked = false;
    if (s.annotation(x) == Annotation::Plus)
      for (int y = s.parent[x]; y >= 0 && !blocked; y = s.parent[y]) blocked = s.annotation(y) == Annotation::Plus;
    if (blocked) continue;
    int d = s.depth(x);
    std::pair<int, int> key{sched == Schedule::RootFirst ? d : -d, static_cast<int>(pos)};
    // singular moves wait until nothing else can move
    if (would_be_singular(th, s, x)) {
      if (best_singular < 0 || key < key_sing) best_singular = x, key_sing = key;
    } else if (best < 0 || key < key_best) {
      best = x, key_best = key;
    }
  }
  return best >= 0 ? best : best_singular;
}

int DecayResult::eps_sum() const {
  int t = 0;
  for (int e : singletons) t += e;
  return t;
}

DecayResult run_decay(const Theory& th, const RootedDiagram& d, Schedule sched, bool record, long step_bound) {
  DecayResult res;
  std::vector<DecayState> stack{initial_state(d)};
  Charge total = d.total();
  ZValue ztot = th.ray_phase(Region::Minus, total);
  while (!stack.empty()) {
    DecayState st = std::move(stack.back());
    stack.pop_back();
    if (++res.steps > step_bound) throw DecayDiagnostics("decay step bound exceeded");
    for (int x : st.alive())
      if (!st.v[x].c.is_effective() || !st.v[x].ray.is_effective()) res.effective = false;
    int x = next_vertex(th, st, sched);
    if (x >= 0) {
      bool plus = st.annotation(x) == Annotation::Plus;
      if (plus && promote_hits_child(th, st, x)) ++res.child_crossings;
      auto next = plus ? promote(th, st, x, record) : rebalance(th, st, x, record);
      for (auto& n : next) stack.push_back(std::move(n));
      continue;
    }
    // terminal
    if (st.size() == 1 && st.sing.empty()) {
      res.singletons.push_back(st.eps);
      res.singleton_states.push_back(std::move(st));
      continue;
    }
    bool aligned = !st.sing.empty();
    for (int y : st.alive())
      if (cross(vertex_phase(th, st.v[y]), ztot) != 0) aligned = false;
    if (!aligned) {
      ++res.discarded;
      continue;
    }
    SingularTerm t;
    t.key = canon_unrooted(st.as_tree(), true);
    t.side = st.sing.front().side;
    t.kappa = st.sing.front().other_is_parent ? 1 : -1;
    t.vertices = static_cast<int>(st.size());
    t.eps = st.eps;
    t.residual = st.str(th);
    res.singular.push_back(std::move(t));
  }
  return res;
}

std::string singular_symbol(const std::string& key, const std::string& side) {
  return "J" + side + key;
}

SymbolicRational GmnContribution::value() const {
  SymbolicRational out = SymbolicRational::unit(twisted, regular);
  for (const auto& s : singular) out += SymbolicRational::term(singular_symbol(s.term.key, s.term.side), s.coef);
  return out;
}

GmnContribution gmn_contribution(const Theory& th, const SpectrumTable& strong, const RootedDiagram& d,
                                 Schedule sched, bool record) {
  GmnContribution g;
  g.twisted = !th.sigma_trivial;
  g.weight = weight_W(th, strong, d);
  Charge total = d.total();
  std::size_t ri = th.root_index;
  if (total[ri] <= 0) throw std::invalid_argument("diagram total has no positive root-direction coefficient");
  if (g.weight.direction[ri] == 0) throw std::invalid_argument("weight direction is not along the root");
  // target = p * (root direction) + ...
  g.p = Q(total[ri], g.weight.direction[ri]);
  g.p.canonicalize();
  g.decay = run_decay(th, d, sched, record);
  Q scale = -g.weight.coef / g.p;
  g.regular = scale * g.decay.eps_sum();
  for (const auto& t : g.decay.singular) g.singular.push_back({t, scale * t.eps});
  return g;
}

}  // namespace wc
