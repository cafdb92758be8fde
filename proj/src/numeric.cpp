#include "wc/numeric.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

namespace wc {

namespace {

constexpr double kPi = std::numbers::pi;
const cd kI{0.0, 1.0};

double qd(const Q& q) { return q.get_d(); }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

// angle in [0, pi] between the directions of a and b
double angle_between(cd a, cd b) { return std::abs(std::arg(a / b)); }

const std::vector<std::pair<double, double>>& gl20() {
  static const std::vector<std::pair<double, double>> rule = [] {
    using G = boost::math::quadrature::gauss<double, 20>;
    std::vector<std::pair<double, double>> r;
    const auto& x = G::abscissa();
    const auto& w = G::weights();
    for (std::size_t i = 0; i < x.size(); ++i) {
      r.emplace_back(-x[i], w[i]);
      if (x[i] != 0) r.emplace_back(x[i], w[i]);
    }
    std::sort(r.begin(), r.end());
    return r;
  }();
  return rule;
}

// decay rate c of |X| ~ exp(-2 pi R c cosh t) along direction d for central charge Z
double decay_rate(cd Z, cd d) { return -(Z / d).real(); }

}  // namespace

cd ZContext::Z(const Charge& g) const {
  cd s = 0;
  for (std::size_t i = 0; i < g.rank(); ++i) s += static_cast<double>(g[i]) * z.at(i);
  return s;
}

double ZContext::Theta(const Charge& g) const {
  double s = 0;
  for (std::size_t i = 0; i < g.rank() && i < theta.size(); ++i) s += static_cast<double>(g[i]) * theta[i];
  return s;
}

ZContext zcontext_from_model(const Theory& th, Region r, double scale, std::vector<double> theta) {
  ZContext ctx;
  const auto& zs = r == Region::Plus ? th.model.plus : th.model.minus;
  for (const auto& z : zs) ctx.z.emplace_back(scale * qd(z.re), scale * qd(z.im));
  if (theta.empty())
    for (std::size_t i = 0; i < th.rank(); ++i) theta.push_back(0.25 * static_cast<double>(i + 1));
  ctx.theta = std::move(theta);
  return ctx;
}

cd x_sf(const ZContext& ctx, const Charge& g, double R, cd zeta) {
  if (zeta == 0.0) throw PoleError("semiflat coordinate at zeta = 0");
  cd Z = ctx.Z(g);
  return std::exp(kPi * R * Z / zeta + kI * ctx.Theta(g) + kPi * R * zeta * std::conj(Z));
}

cd rho(cd s, cd t) {
  if (t == 0.0) throw PoleError("rho kernel at tau = 0");
  if (t == s) throw PoleError("rho kernel at tau = sigma");
  return (t + s) / (t * (t - s));
}

int QuadratureSpec::panels() const { return std::max(1, nodes / 20); }

double QuadratureSpec::cutoff(double R, double absZ) const {
  if (R <= 0 || absZ <= 0) throw IllConditioned("ray cutoff needs R > 0 and a decaying integrand");
  return std::acosh(1.0 + std::log(1.0 / tolerance) / (2 * kPi * R * absZ));
}

RayGrid ray_grid(cd Z, double T, const QuadratureSpec& q) {
  if (Z == 0.0) throw IllConditioned("ray of a vanishing central charge");
  RayGrid g;
  g.direction = -Z / std::abs(Z);
  int np = q.panels();
  double h = 2 * T / np;
  for (int p = 0; p < np; ++p) {
    double mid = -T + (p + 0.5) * h;
    for (auto [x, w] : gl20()) {
      double t = mid + 0.5 * h * x;
      cd z = g.direction * std::exp(t);
      g.zeta.push_back(z);
      g.w.push_back(0.5 * h * w * z);
    }
  }
  return g;
}

cd propagator(const RootedDiagram& d, cd zeta, const ZContext& ctx, const ZContext& rays, double R,
              const QuadratureSpec& q) {
  if (d.size() == 0) return 1.0;
  auto kids = d.children();
  std::function<std::vector<cd>(int, const std::vector<cd>&)> eval = [&](int v, const std::vector<cd>& at) {
    const Charge& g = d.labels[v];
    cd dir = -rays.Z(g) / std::abs(rays.Z(g));
    double c = decay_rate(ctx.Z(g), dir);
    if (c <= 0) throw IllConditioned("integrand of " + coords_string(g) + " grows along its contour");
    RayGrid grid = ray_grid(rays.Z(g), q.cutoff(R, c), q);
    std::vector<cd> H(grid.zeta.size());
    for (std::size_t j = 0; j < H.size(); ++j) H[j] = x_sf(ctx, g, R, grid.zeta[j]);
    for (int k : kids[v]) {
      auto Gk = eval(k, grid.zeta);
      for (std::size_t j = 0; j < H.size(); ++j) H[j] *= Gk[j];
    }
    std::vector<cd> out(at.size());
    for (std::size_t i = 0; i < at.size(); ++i) {
      if (angle_between(at[i], dir) < q.margin)
        throw IllConditioned("evaluation point within the angular margin of the ray of " + coords_string(g));
      cd s = 0;
      for (std::size_t j = 0; j < H.size(); ++j) s += grid.w[j] * rho(at[i], grid.zeta[j]) * H[j];
      out[i] = s / (4 * kPi * kI);
    }
    return out;
  };
  return eval(d.root, {zeta})[0];
}

cd propagator(const RootedDiagram& d, cd zeta, const ZContext& ctx, double R, const QuadratureSpec& q) {
  return propagator(d, zeta, ctx, ctx, R, q);
}

cd OVModel::Zm() const {
  return static_cast<double>(q * q) / (2 * kPi * kI) * (a * std::log(a / Lambda) - a);
}

cd OVModel::tau() const { return static_cast<double>(q * q) / (2 * kPi * kI) * std::log(a / Lambda); }

void OVModel::validate() const {
  if (q < 1) throw std::invalid_argument("OV charge q must be positive");
  if (R <= 0) throw std::invalid_argument("OV radius R must be positive");
  if (a == 0.0 || std::abs(a) >= std::abs(Lambda)) throw std::invalid_argument("OV modulus needs 0 < |a| < |Lambda|");
}

namespace {

cd xsf_raw(cd Z, double theta, double R, cd zeta) {
  if (zeta == 0.0) throw PoleError("semiflat coordinate at zeta = 0");
  return std::exp(kPi * R * Z / zeta + kI * theta + kPi * R * zeta * std::conj(Z));
}

// sum over the nodes of l_{s * gamma_e} of w rho(zeta, .) f(X_e^(s q))
cd ov_ray_sum(const OVModel& m, cd zeta, int s, const QuadratureSpec& q, const std::function<cd(cd)>& f) {
  cd Z = static_cast<double>(s * m.q) * m.a;
  RayGrid grid = ray_grid(Z, q.cutoff(m.R, std::abs(Z)), q);
  if (angle_between(zeta, grid.direction) < q.margin)
    throw IllConditioned("zeta within the angular margin of an electric ray");
  cd acc = 0;
  for (std::size_t j = 0; j < grid.zeta.size(); ++j) {
    cd x = xsf_raw(Z, s * m.q * m.theta_e, m.R, grid.zeta[j]);
    if (std::abs(x) >= 1) throw IllConditioned("|X_e^q| >= 1 on its ray; the logarithm would cross its cut");
    acc += grid.w[j] * rho(zeta, grid.zeta[j]) * f(x);
  }
  return acc;
}

}  // namespace

cd ov_electric(const OVModel& m, cd zeta) { return xsf_raw(m.Ze(), m.theta_e, m.R, zeta); }

cd ov_magnetic(const OVModel& m, cd zeta, const QuadratureSpec& q) {
  m.validate();
  auto lg = [](cd x) { return std::log(1.0 - x); };
  cd e = kI * static_cast<double>(m.q) / (4 * kPi) * (ov_ray_sum(m, zeta, 1, q, lg) - ov_ray_sum(m, zeta, -1, q, lg));
  return xsf_raw(m.Zm(), m.theta_m, m.R, zeta) * std::exp(e);
}

cd ov_magnetic_series(const OVModel& m, cd zeta, const QuadratureSpec& q) {
  m.validate();
  double peak = std::exp(-2 * kPi * m.R * std::abs(m.a) * m.q);
  int K = std::max(1, static_cast<int>(std::ceil(std::log(q.tolerance * 1e-3) / std::log(peak))));
  auto series = [K](cd x) {
    cd s = 0, p = 1;
    for (int k = 1; k <= K; ++k) {
      p *= x;
      s += p / static_cast<double>(k);
    }
    return s;
  };
  // log(1 - x) = -sum_k x^k / k on both rays
  cd e = -kI * static_cast<double>(m.q) / (4 * kPi) *
         (ov_ray_sum(m, zeta, 1, q, series) - ov_ray_sum(m, zeta, -1, q, series));
  return xsf_raw(m.Zm(), m.theta_m, m.R, zeta) * std::exp(e);
}

CheckResult tba_fixed_point_check(const OVModel& m, cd zeta, const QuadratureSpec& q) {
  CheckResult r;
  r.name = "tba_fixed_point";
  cd x = ov_magnetic(m, zeta, q);
  QuadratureSpec fine = q;
  fine.nodes = 2 * q.nodes;
  cd y = ov_magnetic_series(m, zeta, fine);
  // X_e is semiflat exactly, so one substitution closes the system
  cd xe = ov_electric(m, zeta);
  r.value = std::abs(x - y) / std::abs(x);
  r.threshold = 10 * q.tolerance;
  r.pass = r.value < r.threshold;
  std::ostringstream os;
  os << "X_m=" << x << " rhs=" << y << " X_e=" << xe << " |X_m/X_sf_m - 1|="
     << fmt(std::abs(x / xsf_raw(m.Zm(), m.theta_m, m.R, zeta) - 1.0));
  r.detail = os.str();
  return r;
}

CheckResult scale_invariance_check(const OVModel& m, cd zeta, double h, const QuadratureSpec& q, bool electric) {
  auto f = [&](const OVModel& mm, cd z) { return electric ? ov_electric(mm, z) : ov_magnetic(mm, z, q); };
  cd lhs = (f(m, zeta * std::exp(h)) - f(m, zeta * std::exp(-h))) / (2 * h);
  OVModel up = m, dn = m;
  cd ru = std::polar(1.0, h), rd = std::polar(1.0, -h);
  up.Lambda *= ru;
  up.a *= ru;
  dn.Lambda *= rd;
  dn.a *= rd;
  cd rhs = kI * (f(up, zeta) - f(dn, zeta)) / (2 * h);
  CheckResult r;
  r.name = std::string("scale_invariance") + (electric ? "_electric" : "") + "_q" + std::to_string(m.q);
  r.value = std::abs(lhs - rhs) / std::abs(lhs);
  r.threshold = 1e-6;
  r.pass = r.value < r.threshold;
  std::ostringstream os;
  os << "lhs=" << lhs << " rhs=" << rhs;
  r.detail = os.str();
  return r;
}

NearWall NearWall::from_theory(const Theory& th, double scale) {
  NearWall nw;
  nw.plus = zcontext_from_model(th, Region::Plus, scale);
  nw.minus = zcontext_from_model(th, Region::Minus, scale);
  Charge d = Charge::unit(th.rank(), 0), m = Charge::unit(th.rank(), 1);
  nw.pairing = static_cast<int>(th.pair(d, m));
  auto mix = [&](double l) {
    ZContext c = nw.plus;
    for (std::size_t i = 0; i < c.z.size(); ++i) c.z[i] = (1 - l) * nw.plus.z[i] + l * nw.minus.z[i];
    return c;
  };
  auto side = [&](double l) {
    ZContext c = mix(l);
    return (std::conj(c.Z(d)) * c.Z(m)).imag();
  };
  double lo = 0, hi = 1, slo = side(lo);
  if (slo * side(hi) >= 0) throw IllConditioned("the phase model has no wall between the two regions");
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if ((side(mid) > 0) == (slo > 0)) lo = mid;
    else hi = mid;
  }
  nw.wall = mix(0.5 * (lo + hi));
  return nw;
}

NearWall NearWall::rotated(double phi) const {
  NearWall r = *this;
  cd u = std::polar(1.0, phi);
  for (ZContext* c : {&r.plus, &r.minus, &r.wall})
    for (auto& z : c->z) z *= u;
  return r;
}

namespace {

RootedDiagram chain(const std::vector<Charge>& labels) {
  RootedDiagram d;
  d.labels = labels;
  d.root = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) d.parent.push_back(static_cast<int>(i) - 1);
  return d;
}

}  // namespace

ResidueMove residue_move(const NearWall& nw, double R, cd zeta, const QuadratureSpec& q, bool coupled) {
  std::size_t rank = nw.wall.z.size();
  Charge d = Charge::unit(rank, 0), m = Charge::unit(rank, 1);
  RootedDiagram two = coupled ? chain({d, m}) : chain({d});
  double k = nw.pairing;
  ResidueMove r;
  r.lhs = k * (propagator(two, zeta, nw.wall, nw.plus, R, q) - propagator(two, zeta, nw.wall, nw.minus, R, q));
  r.rhs = coupled ? k * propagator(chain({d + m}), zeta, nw.wall, nw.wall, R, q) : cd(0);
  r.abs_err = std::abs(r.lhs - r.rhs);
  r.rel_err = std::abs(r.rhs) > 0 ? r.abs_err / std::abs(r.rhs) : r.abs_err;
  return r;
}

CheckResult residue_move_check(const Theory& th, double R, int nodes, cd zeta) {
  QuadratureSpec q;
  q.nodes = nodes;
  ResidueMove rm = residue_move(NearWall::from_theory(th), R, zeta, q);
  CheckResult r;
  r.name = "residue_move";
  // relative: both sides are of order exp(-2 pi R |Z|), so an absolute residual passes trivially
  r.value = rm.rel_err;
  r.threshold = 1e-8;
  r.pass = r.value < r.threshold;
  std::ostringstream os;
  os << "lhs=" << rm.lhs << " rhs=" << rm.rhs << " abs=" << fmt(rm.abs_err);
  r.detail = os.str();
  return r;
}

DecayFit decay_fit(const Theory& th, double R, int n_max, cd zeta, const QuadratureSpec& q) {
  ZContext ctx = zcontext_from_model(th, Region::Plus, 0.1);
  Charge d = Charge::unit(th.rank(), 0), m = Charge::unit(th.rank(), 1);
  DecayFit fit;
  std::vector<Charge> labels;
  for (int n = 1; n <= n_max; ++n) {
    labels.push_back(n % 2 ? d : m);
    fit.points.push_back({n, R, std::abs(propagator(chain(labels), zeta, ctx, R, q))});
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0, N = static_cast<double>(fit.points.size());
  for (const auto& p : fit.points) {
    double y = std::log(p.abs_g);
    sx += p.n;
    sy += y;
    sxx += p.n * p.n;
    sxy += p.n * y;
  }
  fit.slope = N > 1 ? (N * sxy - sx * sy) / (N * sxx - sx * sx) : 0;
  return fit;
}

CheckResult decay_fit_check(const Theory& th, double R, double bound) {
  DecayFit f = decay_fit(th, R);
  CheckResult r;
  r.name = "decay_fit";
  r.value = f.slope;
  r.threshold = bound;
  r.pass = f.slope <= bound;
  std::ostringstream os;
  for (const auto& p : f.points) os << "n=" << p.n << " |G|=" << fmt(p.abs_g) << " ";
  r.detail = os.str();
  return r;
}

std::pair<double, double> wallcross_residuals(const Theory& th, double R, cd zeta, const QuadratureSpec& q) {
  NearWall nw = NearWall::from_theory(th);
  std::size_t rank = th.rank();
  auto strong = strong_table(th);
  auto weak = builtin_spectrum(th.name, Coupling::Weak);
  Charge d = Charge::unit(rank, 0), m = Charge::unit(rank, 1);
  // charges of L1 size <= 2 in the (d, gm) plane
  std::vector<Charge> box;
  for (long i = -2; i <= 2; ++i)
    for (long j = -2; j <= 2; ++j)
      if ((i || j) && std::abs(i) + std::abs(j) <= 2) box.push_back(i * d + j * m);
  auto om = [](const SpectrumTable& t, const Charge& g) {
    try {
      return omega(t, g);
    } catch (const UnknownSpectrum&) {
      return 0L;
    }
  };
  // <g, sum W_T G_T> with W_T = (-1)^n f^root prod <parent, f^child> and f^g = Omega(g) g
  auto total = [&](const SpectrumTable& t, const ZContext& rays, const Charge& probe, const Charge* skip) {
    cd s = 0;
    for (const auto& g1 : box) {
      long o1 = om(t, g1);
      if (!o1 || (skip && g1 == *skip)) continue;
      s += -static_cast<double>(o1 * th.pair(probe, g1)) * propagator(chain({g1}), zeta, nw.wall, rays, R, q);
      for (const auto& g2 : box) {
        long o2 = om(t, g2);
        if (!o2 || (skip && g2 == *skip)) continue;
        if (std::abs(g1[0]) + std::abs(g1[1]) + std::abs(g2[0]) + std::abs(g2[1]) > 2) continue;
        long e = th.pair(g1, g2);
        if (!e) continue;
        s += static_cast<double>(o1 * o2 * e * th.pair(probe, g1)) *
             propagator(chain({g1, g2}), zeta, nw.wall, rays, R, q);
      }
    }
    return s;
  };
  Charge bound = d + m;
  double with = 0, without = 0;
  for (const auto& probe : {d, m}) {
    cd sp = total(strong, nw.plus, probe, nullptr);
    with = std::max(with, std::abs(sp - total(weak, nw.minus, probe, nullptr)));
    without = std::max(without, std::abs(sp - total(weak, nw.minus, probe, &bound)));
  }
  return {with, without};
}

CheckResult wallcross_check(const Theory& th, double R) {
  auto [with, without] = wallcross_residuals(th, R, std::polar(1.0, 0.3));
  CheckResult r;
  r.name = "wallcross_residual";
  r.value = without > 0 ? with / without : 1;
  r.threshold = 0.1;
  r.pass = r.value <= r.threshold;
  r.detail = "with bound state " + fmt(with) + ", without " + fmt(without);
  return r;
}

}  // namespace wc
