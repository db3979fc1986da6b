#include "zmc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "zmc/chebyshev.hpp"
#include "zmc/errors.hpp"
#include "zmc/parallel.hpp"
#include "zmc/polyline.hpp"

namespace zmc::analysis {
namespace {

using chebyshev::eval_T;
using chebyshev::eval_U;
using std::numbers::pi;

constexpr double kTwoPi = 2.0 * pi;

void require_n(int n, int minimum = 2) {
  if (n < minimum) throw InvalidArgument("n must be >= " + std::to_string(minimum) + ", got " + std::to_string(n));
}

std::string point_text(double u, double theta) {
  return "(u=" + std::to_string(u) + ", theta=" + std::to_string(theta) + ")";
}

// T_n(u) - cos(n theta), checked to lie in Omega_n.
double psi_checked(int n, double u, double theta, const char* who) {
  require_n(n);
  if (!in_omega(n, DomainPoint::finite(u, theta))) {
    throw DomainError(std::string(who) + ": " + point_text(u, theta) + " is outside Omega_n");
  }
  return chebyshev::psi_product(n, u, theta);
}

LorentzVec3 contour_point(int n, double h, double theta, double u) {
  LorentzVec3 p = eval_extended(n, u, theta);
  p.t = h;
  return p;
}

}  // namespace

double x0_u(int n, double u, double theta) {
  const double a = psi_checked(n, u, theta, "x0_u");
  return -eval_U(n - 1, u) * std::sin(n * theta) / (a * a);
}

double x1_u(int n, double u, double theta) {
  const double a = psi_checked(n, u, theta, "x1_u");
  const double num = std::sin((2 * n - 1) * theta) + 2.0 * eval_U(n - 2, u) * std::sin((n - 1) * theta) +
                     eval_U(2 * n - 2, u) * std::sin(theta);
  return num / (2.0 * a * a);
}

double x2_u(int n, double u, double theta) {
  const double a = psi_checked(n, u, theta, "x2_u");
  const double num = -std::cos((2 * n - 1) * theta) - 2.0 * eval_U(n - 2, u) * std::cos((n - 1) * theta) +
                     eval_U(2 * n - 2, u) * std::cos(theta);
  return num / (2.0 * a * a);
}

double jacobian01(int n, double u, double theta) {
  const double a = psi_checked(n, u, theta, "jacobian01");
  return eval_U(n - 2, u) * std::sin((n - 1) * theta) / (a * a);
}

double jacobian02(int n, double u, double theta) {
  const double a = psi_checked(n, u, theta, "jacobian02");
  return -eval_U(n - 2, u) * std::cos((n - 1) * theta) / (a * a);
}

std::vector<GridNode> grid_nodes(int n, const GridSpec& g) {
  require_n(n);
  if (g.nu < 2 || g.ntheta < 1) throw InvalidArgument("grid_nodes: need nu >= 2 and ntheta >= 1");
  if (!(g.theta_max > g.theta_min)) throw InvalidArgument("grid_nodes: empty theta range");
  std::vector<GridNode> out;
  out.reserve(static_cast<std::size_t>(g.nu) * g.ntheta);
  const double dth = (g.theta_max - g.theta_min) / g.ntheta;
  for (int j = 0; j < g.ntheta; ++j) {
    const double th = g.theta_min + (j + 0.5) * dth;
    const double lower = omega_lower_bound(n, th);
    const double start = std::max(g.u_min, lower + g.boundary_offset);
    if (!(start > lower)) throw InvalidArgument("grid_nodes: column at theta=" + std::to_string(th) + " touches the boundary");
    if (!(g.u_max > start)) throw InvalidArgument("grid_nodes: u_max below the column start");
    for (int i = 0; i < g.nu; ++i) {
      out.push_back({start + (g.u_max - start) * i / (g.nu - 1), th});
    }
  }
  return out;
}

ImmersionReport immersion_certificate(int n, const GridSpec& grid) {
  const std::vector<GridNode> nodes = grid_nodes(n, grid);
  std::vector<double> bound(nodes.size());
  std::vector<double> value(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t i) {
    const double u = nodes[i].u;
    const double th = nodes[i].theta;
    const double a = psi_checked(n, u, th, "immersion_certificate");
    bound[i] = eval_U(n - 2, u) / (std::numbers::sqrt2 * a * a);
    value[i] = std::max(std::abs(jacobian01(n, u, th)), std::abs(jacobian02(n, u, th)));
  });
  ImmersionReport r;
  r.n = n;
  r.nodes = nodes.size();
  r.min_certified_bound = std::numeric_limits<double>::infinity();
  r.min_jacobian = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (bound[i] < r.min_certified_bound) {
      r.min_certified_bound = bound[i];
      r.worst = nodes[i];
    }
    r.min_jacobian = std::min(r.min_jacobian, value[i]);
    if (value[i] < bound[i] * (1.0 - 1e-12)) r.bound_dominated = false;
  }
  r.pass = r.min_certified_bound > 0.0 && r.bound_dominated;
  return r;
}

double contour_u(int n, double h, double theta) {
  require_n(n);
  if (!(h > 0.0)) throw InvalidArgument("contour_u: h must be positive");
  if (!(theta > 0.0 && theta < pi / n)) throw InvalidArgument("contour_u: theta must lie in (0, pi/n)");
  const double s = std::sin(n * theta) / (n * h);
  double u = chebyshev::invert_T(n, std::cos(n * theta) + s);
  // Polish on the factored form, which keeps full relative accuracy near the roots.
  double g = chebyshev::psi_product(n, u, theta) - s;
  for (int it = 0; it < 3 && g != 0.0; ++it) {
    const double slope = n * eval_U(n - 1, u);
    if (!(slope > 0.0)) break;
    const double cand = u - g / slope;
    if (!(cand > omega_lower_bound(n, theta))) break;
    const double gc = chebyshev::psi_product(n, cand, theta) - s;
    if (!(std::abs(gc) < std::abs(g))) break;
    u = cand;
    g = gc;
  }
  return u;
}

namespace {

// Value at 0 of the polynomial through (x_i, y_i), by Neville's scheme.
double neville_at_zero(std::vector<double> x, std::vector<double> y) {
  const std::size_t m = x.size();
  for (std::size_t k = 1; k < m; ++k) {
    for (std::size_t i = 0; i + k < m; ++i) {
      y[i] = (x[i + k] * y[i] - x[i] * y[i + 1]) / (x[i + k] - x[i]);
    }
  }
  return y[0];
}

}  // namespace

ContourLimits contour_endpoint_limits(int n, double h) {
  constexpr int kLevels = 4;
  const double edge = pi / n;
  std::vector<double> t0, u0, x10, s1, u1;
  for (int k = 0; k < kLevels; ++k) {
    const double th = 1e-3 * edge / std::ldexp(1.0, k);
    const double u = contour_u(n, h, th);
    t0.push_back(th);
    u0.push_back(u);
    x10.push_back(eval_extended(n, u, th).x);
    const double phi = 1e-4 * edge / std::ldexp(1.0, 2 * k);
    s1.push_back(std::sqrt(phi));
    u1.push_back(contour_u(n, h, edge - phi));
  }
  ContourLimits r;
  r.u_at_zero = neville_at_zero(t0, u0);
  r.x1_at_zero = neville_at_zero(t0, x10);
  r.u_at_edge = neville_at_zero(s1, u1);
  return r;
}

std::vector<double> chebyshev_theta_grid(int n, int samples) {
  require_n(n);
  if (samples < 1) throw InvalidArgument("chebyshev_theta_grid: samples must be positive");
  std::vector<double> th(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    th[k] = (pi / n) * 0.5 * (1.0 - std::cos(pi * (k + 0.5) / samples));
  }
  return th;
}

std::vector<LevelCurve> level_curve(int n, double h, int samples, const LevelCurveOptions& opts) {
  require_n(n);
  if (samples < 16) throw InvalidArgument("level_curve: samples must be >= 16");
  if (!std::isfinite(h)) throw InvalidArgument("level_curve: h must be finite");

  if (h < 0.0) {
    std::vector<LevelCurve> curves = level_curve(n, -h, samples, opts);
    const Mat3 s = reflection_s();
    for (LevelCurve& c : curves) {
      c.h = h;
      for (LevelSample& smp : c.samples) {
        smp.point = s * smp.point;
        smp.point.t = h;
        smp.domain = DomainPoint::finite(smp.domain.u(), -smp.domain.theta());
      }
    }
    return curves;
  }

  std::vector<LevelCurve> curves;
  if (h == 0.0) {
    if (!(opts.ray_u_max > 1.0)) throw InvalidArgument("level_curve: ray_u_max must exceed 1");
    curves.resize(static_cast<std::size_t>(2 * n));
    parallel_for(curves.size(), [&](std::size_t idx) {
      const int k = static_cast<int>(idx);
      const double th = k * pi / n;
      const double lo = (k % 2 == 0) ? 1.0 : std::cos(pi / n);
      LevelCurve& c = curves[idx];
      c.h = 0.0;
      c.n = n;
      c.copy_index = k;
      c.kind = CurveKind::ray;
      c.samples.reserve(static_cast<std::size_t>(samples));
      for (int i = 0; i < samples; ++i) {
        const double u = lo + (opts.ray_u_max - lo) * (1.0 - std::cos(pi * (i + 1) / (2.0 * samples)));
        LorentzVec3 p = eval_extended(n, u, th);
        p.t = 0.0;
        c.samples.push_back({u, DomainPoint::finite(u, th), p});
      }
    });
    return curves;
  }

  const std::vector<double> thetas = chebyshev_theta_grid(n, samples);
  std::vector<double> us(thetas.size());
  std::vector<LorentzVec3> base(thetas.size());
  parallel_for(thetas.size(), [&](std::size_t i) {
    us[i] = contour_u(n, h, thetas[i]);
    base[i] = contour_point(n, h, thetas[i], us[i]);
  });
  curves.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const Mat3 rk = rotation_r_power(n, k);
    LevelCurve& c = curves[k];
    c.h = h;
    c.n = n;
    c.copy_index = k;
    c.kind = CurveKind::arc;
    c.samples.reserve(thetas.size());
    for (std::size_t i = 0; i < thetas.size(); ++i) {
      LorentzVec3 p = rk * base[i];
      p.t = h;
      c.samples.push_back({thetas[i], DomainPoint::finite(us[i], thetas[i] + kTwoPi * k / n), p});
    }
  }
  return curves;
}

double dx1_dtheta_on_contour(int n, double u, double theta) {
  return -(eval_U(n - 2, u) / eval_U(n - 1, u)) * std::sin((n - 1) * theta) / std::sin(n * theta);
}

double dx2_dtheta_on_contour(int n, double u, double theta) {
  return (eval_U(n - 2, u) / eval_U(n - 1, u)) * std::cos((n - 1) * theta) / std::sin(n * theta);
}

namespace {

// Central differences at d, d/2, d/4 combined by two Richardson steps (sixth order).
template <class G>
double richardson_derivative(const G& g, double x, double d) {
  double t[3][3];
  for (int i = 0; i < 3; ++i) {
    const double s = d / (1 << i);
    t[i][0] = (g(x + s) - g(x - s)) / (2.0 * s);
  }
  for (int k = 1; k < 3; ++k) {
    const double w = k == 1 ? 4.0 : 16.0;
    for (int i = 2; i >= k; --i) t[i][k] = (w * t[i][k - 1] - t[i - 1][k - 1]) / (w - 1.0);
  }
  return t[2][2];
}

constexpr double kFdBand = 0.02;

std::vector<double> uniform_interior(int n, int count) {
  std::vector<double> th(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) th[i] = (i + 1) * pi / (n * (count + 1.0));
  return th;
}

}  // namespace

MonotonicityReport curve_monotonicity_report(int n, double h, int grid, double derivative_tolerance) {
  require_n(n, 3);
  if (!(h > 0.0)) throw InvalidArgument("curve_monotonicity_report: h must be positive");
  if (grid < 16) throw InvalidArgument("curve_monotonicity_report: grid must be >= 16");

  const std::vector<double> th = uniform_interior(n, grid);
  const double cell = pi / (n * (grid + 1.0));
  std::vector<double> x1(th.size());
  std::vector<double> x2(th.size());
  std::vector<double> e1(th.size());
  std::vector<double> e2(th.size());

  auto along = [&](int coord) {
    return [n, h, coord](double t) {
      const LorentzVec3 p = eval_extended(n, contour_u(n, h, t), t);
      return coord == 1 ? p.x : p.y;
    };
  };
  const auto g1 = along(1);
  const auto g2 = along(2);

  parallel_for(th.size(), [&](std::size_t i) {
    const double t = th[i];
    const double u = contour_u(n, h, t);
    const LorentzVec3 p = eval_extended(n, u, t);
    x1[i] = p.x;
    x2[i] = p.y;
    e1[i] = e2[i] = 0.0;
    // Near either end the composite is ill-conditioned in double precision (u - cos theta
    // underflows relative accuracy), so the finite-difference comparison uses the inner band.
    if (t < kFdBand * pi / n || t > (1.0 - kFdBand) * pi / n) return;
    // The arc is analytic in theta at 0 but only in sqrt(pi/n - theta) at pi/n.
    const double d = std::min(1e-1 * t, 1e-2 * (pi / n - t));
    const double f1 = dx1_dtheta_on_contour(n, u, t);
    const double f2 = dx2_dtheta_on_contour(n, u, t);
    e1[i] = std::abs(richardson_derivative(g1, t, d) - f1) / std::max(1.0, std::abs(f1));
    e2[i] = std::abs(richardson_derivative(g2, t, d) - f2) / std::max(1.0, std::abs(f2));
  });

  MonotonicityReport r;
  r.n = n;
  r.h = h;
  r.grid = grid;
  r.theta_peak = pi / (2.0 * (n - 1));
  r.x1_decreasing = true;
  r.x1_max = *std::max_element(x1.begin(), x1.end());
  for (std::size_t i = 1; i < x1.size(); ++i) {
    if (!(x1[i] < x1[i - 1])) r.x1_decreasing = false;
  }
  const std::size_t m = static_cast<std::size_t>(std::max_element(x2.begin(), x2.end()) - x2.begin());
  r.theta_argmax = th[m];
  r.argmax_cells = std::abs(r.theta_argmax - r.theta_peak) / cell;
  r.x2_unimodal = true;
  for (std::size_t i = 1; i < x2.size(); ++i) {
    if (i <= m && !(x2[i] > x2[i - 1])) r.x2_unimodal = false;
    if (i > m && !(x2[i] < x2[i - 1])) r.x2_unimodal = false;
  }
  r.max_dx1_error = *std::max_element(e1.begin(), e1.end());
  r.max_dx2_error = *std::max_element(e2.begin(), e2.end());
  r.dx2_at_peak = dx2_dtheta_on_contour(n, contour_u(n, h, r.theta_peak), r.theta_peak);
  r.pass = r.x1_decreasing && r.x1_max < -h && r.x2_unimodal && r.argmax_cells <= 2.0 &&
           r.max_dx1_error <= derivative_tolerance && r.max_dx2_error <= derivative_tolerance;
  return r;
}

double phi_h(int n, double h, double x, double y) {
  require_n(n);
  return x * std::cos(kTwoPi / n) - y * std::sin(kTwoPi / n) + h;
}

bool in_region_Dh(int n, double h, double x, double y) { return x < -h && phi_h(n, h, x, y) > 0.0; }

double upsilon(int n, double u) {
  require_n(n);
  const double un1 = eval_U(n - 1, u);
  return (1.0 + eval_U(2 * n - 2, u) + 2.0 * un1) / (2.0 * un1);
}

double phi_minimizer(int n) {
  require_n(n, 3);
  return (n - 2) * pi / ((n - 1.0) * n);
}

bool sectors_disjoint(int n, double h) {
  require_n(n, 3);
  if (!(h > 0.0)) throw InvalidArgument("sectors_disjoint: h must be positive");
  const double half = 1e3 * std::max(1.0, h);
  const double limit = 1e-8 * std::min(1.0, h * h) + 64.0 * std::numeric_limits<double>::epsilon() * half * half;
  const geom::HalfPlane base_x{-1.0, 0.0, -h};
  const geom::HalfPlane base_phi{std::cos(kTwoPi / n), -std::sin(kTwoPi / n), h};
  for (int k = 1; k < n; ++k) {
    const double ck = std::cos(kTwoPi * k / n);
    const double sk = std::sin(kTwoPi * k / n);
    const double ck1 = std::cos(kTwoPi * (k + 1) / n);
    const double sk1 = std::sin(kTwoPi * (k + 1) / n);
    // q in R^k D_h  <=>  R^{-k} q in D_h.
    const geom::HalfPlane planes[] = {base_x, base_phi, {-ck, sk, -h}, {ck1, -sk1, h}};
    if (geom::clipped_area(planes, half) > limit) return false;
  }
  return true;
}

RegionReport region_Dh_certificate(int n, double h, int samples) {
  require_n(n, 3);
  if (!(h > 0.0)) throw InvalidArgument("region_Dh_certificate: h must be positive");
  if (samples < 16) throw InvalidArgument("region_Dh_certificate: samples must be >= 16");
  const std::vector<double> th = uniform_interior(n, samples);
  const double cell = pi / (n * (samples + 1.0));
  std::vector<LorentzVec3> pts(th.size());
  parallel_for(th.size(), [&](std::size_t i) { pts[i] = contour_point(n, h, th[i], contour_u(n, h, th[i])); });

  RegionReport r;
  r.n = n;
  r.h = h;
  r.samples = samples;
  r.theta0 = phi_minimizer(n);
  r.min_phi = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!(pts[i].x < -h)) ++r.outside_x;
    const double ph = phi_h(n, h, pts[i].x, pts[i].y);
    if (!(ph > 0.0)) ++r.outside_phi;
    if (ph < r.min_phi) {
      r.min_phi = ph;
      r.theta_argmin = th[i];
    }
  }
  r.argmin_cells = std::abs(r.theta_argmin - r.theta0) / cell;
  const LorentzVec3 p0 = contour_point(n, h, r.theta0, contour_u(n, h, r.theta0));
  r.Phi = phi_h(n, h, p0.x, p0.y);

  const double lo = std::cos(r.theta0);
  constexpr int kUpsilonNodes = 4096;
  r.upsilon_min = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kUpsilonNodes; ++i) {
    const double s = (i + 1.0) / kUpsilonNodes;
    r.upsilon_min = std::min(r.upsilon_min, upsilon(n, lo + (r.upsilon_cap - lo) * s * s));
  }
  r.sectors_disjoint = sectors_disjoint(n, h);
  r.pass = r.outside_x == 0 && r.outside_phi == 0 && r.argmin_cells <= 2.0 && r.upsilon_min > 0.0 && r.Phi > 0.0 &&
           r.sectors_disjoint;
  return r;
}

double ray_speed(int n, int k, double u) {
  require_n(n);
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  return eval_U(n - 2, u) / (eval_T(n, u) - sign);
}

namespace {

std::vector<std::vector<geom::Point2>> planar(const std::vector<LevelCurve>& curves) {
  std::vector<std::vector<geom::Point2>> out(curves.size());
  for (std::size_t c = 0; c < curves.size(); ++c) {
    out[c].reserve(curves[c].samples.size());
    for (const LevelSample& s : curves[c].samples) out[c].push_back({s.point.x, s.point.y});
  }
  return out;
}

HeightScan scan_height(int n, double h, int samples, double tol) {
  HeightScan hs;
  hs.h = h;
  const std::vector<LevelCurve> curves = level_curve(n, h, samples);
  hs.curves = static_cast<int>(curves.size());
  const auto poly = planar(curves);
  const std::vector<geom::SegmentHit> hits = geom::find_close_segments(poly, tol, h != 0.0, true);
  for (const geom::SegmentHit& hit : hits) {
    if (hit.curve_a == hit.curve_b) {
      ++hs.self_intersections;
    } else {
      ++hs.cross_intersections;
    }
  }
  if (h != 0.0) {
    hs.region_ok = region_Dh_certificate(n, std::abs(h), samples).pass;
  } else {
    hs.min_ray_speed = std::numeric_limits<double>::infinity();
    for (const LevelCurve& c : curves) {
      const double dx = std::sin(c.copy_index * pi / n);
      const double dy = std::cos(c.copy_index * pi / n);
      double prev_s = std::numeric_limits<double>::infinity();
      for (const LevelSample& s : c.samples) {
        const double along = -(s.point.x * dx + s.point.y * dy);
        const double off = std::abs(s.point.x * dy - s.point.y * dx);
        hs.max_ray_offaxis = std::max(hs.max_ray_offaxis, off / std::max(1.0, std::abs(along)));
        if (!(along > 0.0) || !(along < prev_s)) hs.rays_ok = false;
        prev_s = along;
        hs.min_ray_speed = std::min(hs.min_ray_speed, ray_speed(n, c.copy_index, s.param));
      }
    }
    if (!(hs.min_ray_speed > 0.0) || hs.max_ray_offaxis > 1e-9) hs.rays_ok = false;
  }
  hs.pass = hs.self_intersections == 0 && hs.cross_intersections == 0 && hs.region_ok && hs.rays_ok;
  return hs;
}

}  // namespace

EmbeddednessReport embeddedness_scan(int n, std::span<const double> heights, int samples, double tolerance) {
  require_n(n, 3);
  if (samples < 16) throw InvalidArgument("embeddedness_scan: samples must be >= 16");
  EmbeddednessReport r;
  r.n = n;
  r.samples = samples;
  r.tolerance = tolerance;
  r.heights.reserve(heights.size());
  for (const double h : heights) r.heights.push_back(scan_height(n, h, samples, tolerance));
  r.pass = std::all_of(r.heights.begin(), r.heights.end(), [](const HeightScan& s) { return s.pass; });
  return r;
}

ProperProbeReport properness_probe(int n, double theta_target, int approach_samples) {
  require_n(n);
  if (!(theta_target >= 0.0 && theta_target <= pi / n + 1e-12)) {
    throw InvalidArgument("properness_probe: theta must lie in [0, pi/n]");
  }
  if (approach_samples < 20) throw InvalidArgument("properness_probe: approach_samples must be >= 20");
  ProperProbeReport r;
  r.n = n;
  r.edge_case = theta_target >= pi / n - 1e-12;
  r.theta_target = r.edge_case ? pi / n : theta_target;
  r.coordinate = r.edge_case ? "x1" : "x2";
  const double base = std::cos(r.theta_target);
  for (int i = 0; i < approach_samples; ++i) {
    const double delta = 1e-1 * std::pow(10.0, -11.0 * i / (approach_samples - 1));
    const LorentzVec3 p = eval_extended(n, base + delta, r.theta_target);
    r.deltas.push_back(delta);
    r.values.push_back(r.edge_case ? p.x : p.y);
  }
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    if (r.values[i] < r.threshold) {
      r.crossed_threshold = true;
      r.crossing_delta = r.deltas[i];
      break;
    }
  }
  r.monotone_tail = true;
  for (std::size_t i = r.values.size() - 9; i < r.values.size(); ++i) {
    if (!(r.values[i] < r.values[i - 1])) r.monotone_tail = false;
  }
  // Least squares over the second half of the approach.
  const std::size_t first = r.values.size() / 2;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double cnt = static_cast<double>(r.values.size() - first);
  for (std::size_t i = first; i < r.values.size(); ++i) {
    const double lx = std::log(r.deltas[i]);
    sx += lx;
    sy += r.values[i];
    sxx += lx * lx;
    sxy += lx * r.values[i];
  }
  r.log_slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  r.pass = r.crossed_threshold && r.monotone_tail;
  return r;
}

double mean_curvature_residual(int n, double u, double theta, double step) {
  require_n(n);
  if (!(step > 0.0)) throw InvalidArgument("mean_curvature_residual: step must be positive");
  const double s = step;
  auto f = [n, u, theta, s](int i, int j) { return eval_extended(n, u + i * s, theta + j * s); };
  // Fourth-order central stencils.
  constexpr int kOff[4] = {-2, -1, 1, 2};
  constexpr double kD1[4] = {1.0, -8.0, 8.0, -1.0};
  constexpr double kD2[4] = {-1.0, 16.0, 16.0, -1.0};
  const LorentzVec3 f0 = f(0, 0);
  LorentzVec3 fu, ft, fuu, ftt, fut;
  for (int a = 0; a < 4; ++a) {
    const LorentzVec3 pu = f(kOff[a], 0);
    const LorentzVec3 pt = f(0, kOff[a]);
    fu += pu * kD1[a];
    ft += pt * kD1[a];
    fuu += pu * kD2[a];
    ftt += pt * kD2[a];
    for (int b = 0; b < 4; ++b) fut += f(kOff[a], kOff[b]) * (kD1[a] * kD1[b]);
  }
  fu = fu / (12.0 * s);
  ft = ft / (12.0 * s);
  fuu = (fuu - f0 * 30.0) / (12.0 * s * s);
  ftt = (ftt - f0 * 30.0) / (12.0 * s * s);
  fut = fut / (144.0 * s * s);

  const double E = lorentz_inner(fu, fu);
  const double F = lorentz_inner(fu, ft);
  const double G = lorentz_inner(ft, ft);
  const double det = E * G - F * F;
  if (!(std::abs(det) > 1e-6)) {
    throw FoldProximityError("mean_curvature_residual: " + point_text(u, theta) + " is too close to the fold set");
  }
  const LorentzVec3 nrm = lorentz_cross(fu, ft);
  const double e = lorentz_inner(fuu, nrm);
  const double ff = lorentz_inner(fut, nrm);
  const double g = lorentz_inner(ftt, nrm);
  return std::abs(E * g - 2.0 * F * ff + G * e) / (std::abs(det) + 1.0);
}

double fundamental_separation_margin(int n, double u, double theta) {
  require_n(n);
  double m = std::numeric_limits<double>::infinity();
  for (int j = 2; j < n; ++j) m = std::min(m, u - std::cos(theta - kTwoPi * j / n));
  return m - 2.0 * std::sin(pi / n) * std::sin(pi / n);
}

}  // namespace zmc::analysis
