#pragma once
// Floating-point layer: semiflat coordinates, the rho kernel, ray quadrature of tree
// propagators and the Ooguri-Vafa magnetic coordinate, plus identity checks.

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "wc/gmn.hpp"
#include "wc/lattice.hpp"
#include "wc/spectrum.hpp"

namespace wc {

using cd = std::complex<double>;

struct PoleError : std::domain_error {
  using std::domain_error::domain_error;
};
struct IllConditioned : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Z and theta, linear in the charge.
struct ZContext {
  std::vector<cd> z;
  std::vector<double> theta;
  cd Z(const Charge& g) const;
  double Theta(const Charge& g) const;
};

// Exact phase-model rationals at `r`, scaled by `scale`.
ZContext zcontext_from_model(const Theory& th, Region r, double scale, std::vector<double> theta = {});

cd x_sf(const ZContext& ctx, const Charge& g, double R, cd zeta);
cd rho(cd s, cd t);

struct QuadratureSpec {
  int nodes = 200;
  double tolerance = 1e-10;
  // minimum angle in radians between an evaluation point and an integration ray
  double margin = 0.02;
  int panels() const;
  // half-length T of the t-interval for a ray of central charge modulus |Z|
  double cutoff(double R, double absZ) const;
};

// Nodes of the ray l_Z = -(Z/|Z|) e^t, t in [-T, T], with dzeta = zeta dt folded into w.
struct RayGrid {
  cd direction;
  std::vector<cd> zeta;
  std::vector<cd> w;
};
RayGrid ray_grid(cd Z, double T, const QuadratureSpec& q);

// Propagator of a rooted diagram. The integrand uses `ctx`; contour directions use `rays`.
cd propagator(const RootedDiagram& d, cd zeta, const ZContext& ctx, const ZContext& rays, double R,
              const QuadratureSpec& q);
cd propagator(const RootedDiagram& d, cd zeta, const ZContext& ctx, double R, const QuadratureSpec& q);

struct OVModel {
  cd Lambda{2.0, 0.0};
  int q = 1;
  double R = 3.0;
  cd a{0.3, 0.2};
  double theta_e = 0.4, theta_m = -0.7;

  cd Ze() const { return a; }
  cd Zm() const;
  cd tau() const;
  void validate() const;
};

cd ov_electric(const OVModel& m, cd zeta);
cd ov_magnetic(const OVModel& m, cd zeta, const QuadratureSpec& q = {});
// Same coordinate from the instanton sum over k != 0 (truncated once |X_e|^(qk) drops below tolerance).
cd ov_magnetic_series(const OVModel& m, cd zeta, const QuadratureSpec& q = {});

struct CheckResult {
  std::string name;
  double value = 0;
  double threshold = 0;
  bool pass = false;
  std::string detail;
};

CheckResult tba_fixed_point_check(const OVModel& m, cd zeta, const QuadratureSpec& q = {});
// zeta d/dzeta X vs the rotation of (Lambda, a), by central differences of step h
CheckResult scale_invariance_check(const OVModel& m, cd zeta, double h = 1e-5, const QuadratureSpec& q = {},
                                   bool electric = false);

// Two-vertex d -> gm system near the wall.
struct NearWall {
  ZContext plus, minus, wall;
  int pairing = 2;
  static NearWall from_theory(const Theory& th, double scale = 0.1);
  NearWall rotated(double phi) const;
};

struct ResidueMove {
  cd lhs, rhs;
  double abs_err = 0, rel_err = 0;
};
// lhs: double integral on the u+ rays minus the one on the u- rays, integrand at the wall;
// rhs: single integral along the ray of the merged charge.
ResidueMove residue_move(const NearWall& nw, double R, cd zeta, const QuadratureSpec& q, bool coupled = true);
CheckResult residue_move_check(const Theory& th, double R = 3.0, int nodes = 400, cd zeta = std::polar(1.0, 0.3));

struct DecayPoint {
  int n = 0;
  double R = 0;
  double abs_g = 0;
};
struct DecayFit {
  std::vector<DecayPoint> points;
  double slope = 0;
};
// Chains d -> gm -> d -> ... of n = 1..n_max vertices with Plus-side Z scaled to |Z| ~ 1.
DecayFit decay_fit(const Theory& th, double R, int n_max = 4, cd zeta = std::polar(1.0, 0.3),
                   const QuadratureSpec& q = {});
CheckResult decay_fit_check(const Theory& th, double R = 3.0, double bound = -1.5);

// Jump of <g, sum_T W_T G_T> across the wall for trees of at most two vertices and total charge
// of degree at most two. Returns (residual with the new weak-side state, residual without it).
std::pair<double, double> wallcross_residuals(const Theory& th, double R, cd zeta, const QuadratureSpec& q = {});
CheckResult wallcross_check(const Theory& th, double R = 3.0);

}  // namespace wc
