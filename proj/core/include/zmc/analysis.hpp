#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "zmc/extension.hpp"
#include "zmc/lorentz.hpp"

// Closed-form derivatives of f~_n, immersion and embeddedness certificates,
// contour lines x~_0 = h, properness probes and the numerical zero mean
// curvature check.

namespace zmc::analysis {

// (x~_0)_u = -U_{n-1}(u) sin(n theta) / (T_n(u) - cos n theta)^2.
double x0_u(int n, double u, double theta);
double x1_u(int n, double u, double theta);
double x2_u(int n, double u, double theta);

// det of the (t,x) and (t,y) rows of (f~_u, f~_theta).
double jacobian01(int n, double u, double theta);
double jacobian02(int n, double u, double theta);

// Tensor grid over Omega_n. Column j sits at theta_j = theta_min + (j + 1/2) dtheta.
// Each column runs from max(u_min, omega_lower_bound(theta_j) + boundary_offset)
// to u_max in nu equal steps (both ends included).
struct GridSpec {
  double u_min = 1.01;
  double u_max = 5.0;
  int nu = 200;
  int ntheta = 200;
  double boundary_offset = 0.0;
  double theta_min = 0.0;
  double theta_max = 6.283185307179586;
};

struct GridNode {
  double u;
  double theta;
};

std::vector<GridNode> grid_nodes(int n, const GridSpec& grid);

struct ImmersionReport {
  int n = 0;
  std::size_t nodes = 0;
  double min_certified_bound = 0.0;  // min of U_{n-2}/(sqrt 2 (T_n - cos n theta)^2)
  double min_jacobian = 0.0;         // min of max(|J01|, |J02|)
  GridNode worst{};
  bool bound_dominated = true;       // max(|J01|,|J02|) >= bound at every node
  bool pass = false;
};

ImmersionReport immersion_certificate(int n, const GridSpec& grid);

// u_h(theta) = T_n^{-1}(cos n theta + sin(n theta) / (n h)) for h > 0, theta in (0, pi/n).
double contour_u(int n, double h, double theta);

// Extrapolated boundary values of u_h and x~_1(u_h(theta), theta). u_h is analytic in
// theta at 0 and in sqrt(pi/n - theta) at pi/n; Neville tables in those variables.
struct ContourLimits {
  double u_at_zero = 0.0;      // expected 1
  double u_at_edge = 0.0;      // expected cos(pi/n)
  double x1_at_zero = 0.0;     // expected -h
};
ContourLimits contour_endpoint_limits(int n, double h);

// Chebyshev-clustered interior nodes of (0, pi/n).
std::vector<double> chebyshev_theta_grid(int n, int samples);

enum class CurveKind { arc, ray };

struct LevelSample {
  double param;  // fundamental-arc theta for arcs, u for rays
  DomainPoint domain;
  LorentzVec3 point;
};

// One connected piece of Lambda_h: for h != 0 the copy S^{[h<0]} R^k Lambda_|h|^0,
// for h = 0 the half-line B_k (theta = k pi / n).
struct LevelCurve {
  double h = 0.0;
  int n = 0;
  int copy_index = 0;
  CurveKind kind = CurveKind::arc;
  std::vector<LevelSample> samples;
};

struct LevelCurveOptions {
  double ray_u_max = 10.0;
};

std::vector<LevelCurve> level_curve(int n, double h, int samples, const LevelCurveOptions& opts = {});

struct MonotonicityReport {
  int n = 0;
  double h = 0.0;
  int grid = 0;
  bool x1_decreasing = false;
  double x1_max = 0.0;  // must stay below -h
  bool x2_unimodal = false;
  double theta_argmax = 0.0;
  double theta_peak = 0.0;  // pi / (2 (n - 1))
  double argmax_cells = 0.0;
  double max_dx1_error = 0.0;  // relative, formula vs finite differences, inner 96% of (0, pi/n)
  double max_dx2_error = 0.0;
  double dx2_at_peak = 0.0;
  bool pass = false;
};

// Derivatives of x~_1, x~_2 along the contour, by the closed forms.
double dx1_dtheta_on_contour(int n, double u, double theta);
double dx2_dtheta_on_contour(int n, double u, double theta);

MonotonicityReport curve_monotonicity_report(int n, double h, int grid = 1000, double derivative_tolerance = 1e-6);

// phi_h(x, y) = x cos(2pi/n) - y sin(2pi/n) + h.
double phi_h(int n, double h, double x, double y);
bool in_region_Dh(int n, double h, double x, double y);

// (1 + U_{2n-2}(u) + 2 U_{n-1}(u)) / (2 U_{n-1}(u)).
double upsilon(int n, double u);

// theta_0 = (n - 2) pi / ((n - 1) n), where phi_h along the arc is minimal.
double phi_minimizer(int n);

struct RegionReport {
  int n = 0;
  double h = 0.0;
  int samples = 0;
  int outside_x = 0;    // samples with x >= -h
  int outside_phi = 0;  // samples with phi_h <= 0
  double min_phi = 0.0;
  double theta_argmin = 0.0;
  double theta0 = 0.0;
  double argmin_cells = 0.0;
  double Phi = 0.0;  // phi_h at theta_0 on the contour
  double upsilon_min = 0.0;
  double upsilon_cap = 1e3;
  bool sectors_disjoint = false;  // D_h against R^k D_h, k = 1..n-1
  bool pass = false;
};

RegionReport region_Dh_certificate(int n, double h, int samples = 2048);

// True when D_h and R^k D_h have empty (open) intersection for all k != 0.
bool sectors_disjoint(int n, double h);

struct HeightScan {
  double h = 0.0;
  int curves = 0;
  std::size_t self_intersections = 0;
  std::size_t cross_intersections = 0;
  bool region_ok = true;          // h != 0: D_h certificate
  bool rays_ok = true;            // h == 0: collinearity, distinct directions, V > 0
  double min_ray_speed = 0.0;     // h == 0: min V(u) over samples
  double max_ray_offaxis = 0.0;   // h == 0: max distance from the ray's line
  bool pass = false;
};

struct EmbeddednessReport {
  int n = 0;
  int samples = 0;
  double tolerance = 1e-9;
  std::vector<HeightScan> heights;
  bool pass = false;
};

// V(u) = U_{n-2}(u) / (T_n(u) - (-1)^k), the speed of the h = 0 half-line B_k.
double ray_speed(int n, int k, double u);

EmbeddednessReport embeddedness_scan(int n, std::span<const double> heights, int samples = 2048,
                                     double tolerance = 1e-9);

struct ProperProbeReport {
  int n = 0;
  double theta_target = 0.0;
  bool edge_case = false;  // theta_target = pi/n: x~_1 is probed, else x~_2
  std::string coordinate;
  std::vector<double> deltas;  // u - cos(theta_target)
  std::vector<double> values;
  double threshold = -1e3;
  bool crossed_threshold = false;
  double crossing_delta = 0.0;
  bool monotone_tail = false;
  double log_slope = 0.0;  // least-squares slope of the coordinate against log(delta), last half
  bool pass = false;
};

ProperProbeReport properness_probe(int n, double theta_target, int approach_samples = 120);

// |E g - 2 F f + G e| / (|EG - F^2| + 1) from central differences with the given step.
// Throws FoldProximityError when |EG - F^2| <= 1e-6.
double mean_curvature_residual(int n, double u, double theta, double step = 1e-3);

// min_{j=2..n-1} (u - cos(theta - 2 pi j / n)) - 2 sin^2(pi/n); nonnegative on the
// fundamental domain. +inf for n = 2 (no such j).
double fundamental_separation_margin(int n, double u, double theta);

}  // namespace zmc::analysis
