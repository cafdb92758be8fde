#include "wc/ks.hpp"

#include <algorithm>

namespace wc {

int degree(const Monomial& m) {
  int d = 0;
  for (int x : m) d += x;
  return d;
}

Monomial to_monomial(const Charge& g) {
  Monomial m(g.rank());
  for (std::size_t i = 0; i < g.rank(); ++i) {
    if (g[i] < 0) throw InvalidCharge("torus monomials need effective charges");
    m[i] = static_cast<int>(g[i]);
  }
  return m;
}

TruncatedSeries TruncatedSeries::one(std::size_t rank, int N) {
  TruncatedSeries s(rank, N);
  s.c_[Monomial(rank, 0)] = 1;
  return s;
}

TruncatedSeries TruncatedSeries::monomial(const Monomial& m, const Q& c, int N) {
  TruncatedSeries s(m.size(), N);
  s.add(m, c);
  return s;
}

Q TruncatedSeries::coeff(const Monomial& m) const {
  auto it = c_.find(m);
  return it == c_.end() ? Q(0) : it->second;
}

void TruncatedSeries::add(const Monomial& m, const Q& c) {
  if (c == 0 || degree(m) > N_) return;
  Q& slot = c_[m];
  slot += c;
  if (slot == 0) c_.erase(m);
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
  int N = std::min(N_, o.N_);
  TruncatedSeries r(rank_, N);
  // bucket the right factor by degree so the truncation prunes early
  std::vector<std::vector<const std::pair<const Monomial, Q>*>> by_deg(o.N_ + 1);
  for (const auto& t : o.c_) by_deg[degree(t.first)].push_back(&t);
  Monomial m(rank_);
  for (const auto& [ma, ca] : c_) {
    int da = degree(ma);
    for (int db = 0; da + db <= N && db <= o.N_; ++db) {
      for (const auto* t : by_deg[db]) {
        for (std::size_t i = 0; i < rank_; ++i) m[i] = ma[i] + t->first[i];
        Q& slot = r.c_[m];
        slot += ca * t->second;
      }
    }
  }
  for (auto it = r.c_.begin(); it != r.c_.end();) {
    if (it->second == 0) it = r.c_.erase(it);
    else ++it;
  }
  return r;
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
  TruncatedSeries r(rank_, std::min(N_, o.N_));
  for (const auto& [m, c] : c_) r.add(m, c);
  for (const auto& [m, c] : o.c_) r.add(m, c);
  return r;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const { return *this + o.scaled(-1); }

TruncatedSeries TruncatedSeries::scaled(const Q& q) const {
  TruncatedSeries r(rank_, N_);
  for (const auto& [m, c] : c_) r.add(m, c * q);
  return r;
}

TruncatedSeries TruncatedSeries::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative power of a general series");
  TruncatedSeries r = one(rank_, N_);
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

TruncatedSeries TruncatedSeries::binomial(const TruncatedSeries& u, long e) {
  if (u.coeff(Monomial(u.rank(), 0)) != 0) throw std::invalid_argument("binomial series needs u(0) = 0");
  TruncatedSeries r = one(u.rank(), u.truncation());
  TruncatedSeries term = one(u.rank(), u.truncation());
  Q c = 1;
  for (int k = 1; k <= u.truncation(); ++k) {
    term = term * u;
    if (term.terms().empty()) break;
    c = c * Q(e - k + 1) / Q(k);
    if (c == 0) break;
    r = r + term.scaled(c);
  }
  return r;
}

int TruncatedSeries::lowest_degree() const {
  int best = -1;
  for (const auto& [m, c] : c_) {
    int d = degree(m);
    if (best < 0 || d < best) best = d;
  }
  return best;
}

Automorphism Automorphism::identity(std::size_t rank, int N) {
  Automorphism a;
  a.factor.assign(rank, TruncatedSeries::one(rank, N));
  return a;
}

namespace {

// prod factor_i^(m_i), relative to the shift x^m
TruncatedSeries factor_power(const Automorphism& a, const Monomial& m) {
  std::size_t rank = a.factor.size();
  int N = a.factor.front().truncation();
  TruncatedSeries r = TruncatedSeries::one(rank, N);
  for (std::size_t i = 0; i < rank; ++i)
    for (int k = 0; k < m[i]; ++k) r = r * a.factor[i];
  return r;
}

Monomial shift(const Monomial& a, const Monomial& b) {
  Monomial m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i] = a[i] + b[i];
  return m;
}

}  // namespace

TruncatedSeries Automorphism::apply(const Monomial& m) const {
  TruncatedSeries rel = factor_power(*this, m);
  TruncatedSeries out(m.size(), rel.truncation() + degree(m));
  for (const auto& [k, c] : rel.terms()) out.add(shift(m, k), c);
  return out;
}

Automorphism compose(const Automorphism& phi, const Automorphism& psi) {
  std::size_t rank = phi.factor.size();
  int N = phi.factor.front().truncation();
  Automorphism out;
  for (std::size_t b = 0; b < rank; ++b) {
    TruncatedSeries img(rank, N);
    for (const auto& [k, c] : psi.factor[b].terms()) {
      TruncatedSeries t = factor_power(phi, k);
      for (const auto& [m, v] : t.terms()) img.add(shift(k, m), c * v);
    }
    out.factor.push_back(phi.factor[b] * img);
  }
  return out;
}

int ks_sigma(const Theory& th, const Charge& g) {
  if (th.sigma_trivial) return 1;
  std::vector<Charge> parts;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    long n = g[i] < 0 ? -g[i] : g[i];
    Charge u = Charge::unit(g.rank(), i);
    if (g[i] < 0) u = -u;
    for (long k = 0; k < n; ++k) parts.push_back(u);
  }
  return th.sigma_sign(parts);
}

namespace {

TruncatedSeries ks_factor(const Theory& th, const Charge& g, long omega, int sigma_sign, std::size_t mu, int N) {
  std::size_t rank = th.rank();
  long e = omega * th.pair(g, Charge::unit(rank, mu));
  if (e == 0) return TruncatedSeries::one(rank, N);
  TruncatedSeries u = TruncatedSeries::monomial(to_monomial(g), Q(-sigma_sign), N);
  return TruncatedSeries::binomial(u, e);
}

}  // namespace

TruncatedSeries ks_apply(const Theory& th, const Charge& g, long omega, int sigma_sign, std::size_t mu, int N) {
  if (mu >= th.rank()) throw std::out_of_range("basis index out of range");
  TruncatedSeries f = ks_factor(th, g, omega, sigma_sign, mu, N);
  Monomial xm(th.rank(), 0);
  xm[mu] = 1;
  TruncatedSeries out(th.rank(), N + 1);
  for (const auto& [k, c] : f.terms()) out.add(shift(xm, k), c);
  return out;
}

Automorphism ks_operator(const Theory& th, const Charge& g, long omega, int sigma_sign, int N) {
  Automorphism a;
  for (std::size_t mu = 0; mu < th.rank(); ++mu) a.factor.push_back(ks_factor(th, g, omega, sigma_sign, mu, N));
  return a;
}

Automorphism compose_ks(const Theory& th, const Automorphism& phi, const Charge& g, long omega, int N) {
  std::size_t rank = th.rank();
  Monomial mg = to_monomial(g);
  int dg = degree(mg);
  if (omega == 0 || dg > N) return phi;
  // phi(x_g) relative factor, then u = -sigma x_g phi_g
  TruncatedSeries y = factor_power(phi, mg);
  TruncatedSeries u(rank, N);
  int s = ks_sigma(th, g);
  for (const auto& [m, c] : y.terms()) u.add(shift(mg, m), -s * c);
  std::vector<TruncatedSeries> powers{TruncatedSeries::one(rank, N)};
  for (int k = 1; k * dg <= N; ++k) powers.push_back(powers.back() * u);
  Automorphism out;
  for (std::size_t b = 0; b < rank; ++b) {
    long e = omega * th.pair(g, Charge::unit(rank, b));
    if (e == 0) {
      out.factor.push_back(phi.factor[b]);
      continue;
    }
    TruncatedSeries bin = TruncatedSeries::one(rank, N);
    Q c = 1;
    for (std::size_t k = 1; k < powers.size(); ++k) {
      c = c * Q(e - static_cast<long>(k) + 1) / Q(static_cast<long>(k));
      if (c == 0) break;
      bin = bin + powers[k].scaled(c);
    }
    out.factor.push_back(phi.factor[b] * bin);
  }
  return out;
}

Automorphism ks_product(const Theory& th, const std::vector<std::pair<Charge, long>>& spectrum, Region region,
                        int N) {
  std::vector<std::pair<Charge, long>> items;
  for (const auto& [g, om] : spectrum)
    if (om != 0 && g.is_effective() && g.degree() <= N) items.emplace_back(g, om);
  std::stable_sort(items.begin(), items.end(), [&](const auto& a, const auto& b) {
    return phase_cmp(th.ray_phase(region, a.first), th.ray_phase(region, b.first)) > 0;
  });
  for (std::size_t i = 0; i + 1 < items.size(); ++i) {
    for (std::size_t j = i + 1; j < items.size(); ++j) {
      if (phase_cmp(th.ray_phase(region, items[i].first), th.ray_phase(region, items[j].first)) != 0) break;
      if (th.pair(items[i].first, items[j].first) != 0)
        throw FactorizationFailure("non-commuting states share a ray: " + th.format(items[i].first) + ", " +
                                   th.format(items[j].first));
    }
  }
  Automorphism acc = Automorphism::identity(th.rank(), N);
  for (const auto& [g, om] : items) acc = compose_ks(th, acc, g, om, N);
  return acc;
}

std::vector<std::pair<Charge, long>> truncated_support(const SpectrumTable& t, int N) {
  SpectrumTable copy = t;
  copy.K = std::max(copy.K, N);
  std::vector<std::pair<Charge, long>> out;
  for (const auto& [g, om] : copy.support())
    if (om != 0 && g.is_effective() && g.degree() <= N) out.emplace_back(g, om);
  return out;
}

namespace {

void effective_of_degree(std::size_t rank, int d, Monomial& cur, std::size_t i, std::vector<Charge>& out) {
  if (i + 1 == rank) {
    cur[i] = d;
    std::vector<long> v(cur.begin(), cur.end());
    out.emplace_back(v);
    return;
  }
  for (int k = d; k >= 0; --k) {
    cur[i] = k;
    effective_of_degree(rank, d - k, cur, i + 1, out);
  }
}

}  // namespace

WallIdentity verify_wall_identity(const Theory& th, const SpectrumTable& strong, const SpectrumTable& weak, int N) {
  for (const SpectrumTable* t : {&strong, &weak})
    if (!t->complete)
      throw UnknownSpectrum("the " + t->theory + " " + coupling_name(t->coupling) +
                            " spectrum is only partially known; the wall identity cannot be checked");
  Automorphism a = ks_product(th, truncated_support(strong, N), Region::Plus, N);
  Automorphism b = ks_product(th, truncated_support(weak, N), Region::Minus, N);
  WallIdentity w;
  w.agree_degree = N;
  for (std::size_t mu = 0; mu < th.rank(); ++mu) {
    int low = (a.factor[mu] - b.factor[mu]).lowest_degree();
    if (low >= 0 && low - 1 < w.agree_degree) {
      w.agree_degree = low - 1;
      w.mismatch = "x_" + th.basis[mu] + " differs at degree " + std::to_string(low);
    }
  }
  w.equal = w.agree_degree == N;
  return w;
}

Theory pentagon_theory() {
  Theory th;
  th.name = "pentagon";
  th.basis = {"g1", "g2"};
  th.pairing = {{0, 1}, {-1, 0}};
  th.model.plus = {{make_q(-1), make_q(10)}, {make_q(1), make_q(10)}};
  th.model.minus = {{make_q(1), make_q(10)}, {make_q(-1), make_q(10)}};
  th.sigma_trivial = false;
  th.validate();
  return th;
}

WallIdentity pentagon_check(int N) {
  Theory th = pentagon_theory();
  SpectrumTable two = strong_table(th);
  SpectrumTable three = two;
  three.coupling = Coupling::Weak;
  three.entries[Charge({1, 1})] = 1;
  return verify_wall_identity(th, two, three, N);
}

SpectrumTable infer_weak_spectrum(const Theory& th, const SpectrumTable& strong, int N) {
  if (!strong.complete) throw UnknownSpectrum("strong spectrum is not complete");
  std::size_t rank = th.rank();
  Automorphism target = ks_product(th, truncated_support(strong, N), Region::Plus, N);
  std::vector<std::pair<Charge, long>> known;
  for (int d = 1; d <= N; ++d) {
    Automorphism cur = ks_product(th, known, Region::Minus, N);
    std::vector<Charge> charges;
    Monomial tmp(rank);
    effective_of_degree(rank, d, tmp, 0, charges);
    for (const auto& g : charges) {
      Monomial mg = to_monomial(g);
      int s = ks_sigma(th, g);
      bool have = false;
      Q om = 0;
      for (std::size_t mu = 0; mu < rank; ++mu) {
        Q diff = target.factor[mu].coeff(mg) - cur.factor[mu].coeff(mg);
        long p = th.pair(g, Charge::unit(rank, mu));
        if (p == 0) {
          if (diff != 0)
            throw FactorizationFailure("discrepancy at " + th.format(g) + " cannot be absorbed");
          continue;
        }
        // linear term of x_mu (1 - s x_g)^(om p) is -s om p x_g
        Q v = -diff / Q(s * p);
        if (have && v != om)
          throw FactorizationFailure("inconsistent exponent for " + th.format(g));
        om = v;
        have = true;
      }
      if (!is_integer(om)) throw FactorizationFailure("non-integral index for " + th.format(g));
      if (om != 0) known.emplace_back(g, to_long(om));
    }
  }
  SpectrumTable out;
  out.theory = th.name;
  out.coupling = Coupling::Weak;
  out.K = 0;
  for (const auto& [g, om] : known) out.entries[g] = om;
  Automorphism check = ks_product(th, known, Region::Minus, N);
  for (std::size_t mu = 0; mu < rank; ++mu)
    if (!(check.factor[mu] == target.factor[mu]))
      throw FactorizationFailure("inferred spectrum does not reproduce the strong product");
  return out;
}

}  // namespace wc
