#include "zmc/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "zmc/analysis.hpp"
#include "zmc/chebyshev.hpp"
#include "zmc/errors.hpp"
#include "zmc/extension.hpp"
#include "zmc/lorentz.hpp"
#include "zmc/parallel.hpp"
#include "zmc/weierstrass.hpp"

namespace zmc::verify {

SampleRng::SampleRng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t SampleRng::next() { return engine_(); }

double SampleRng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double SampleRng::uniform(double a, double b) { return a + (b - a) * uniform(); }

int SampleRng::integer(int lo, int hi) {
  const double span = static_cast<double>(hi) - lo + 1.0;
  return std::min(hi, lo + static_cast<int>(std::floor(uniform() * span)));
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (const unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

using std::numbers::pi;
constexpr double kTwoPi = 2.0 * pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

using Params = std::map<std::string, double>;

CheckRecord at_most(const CheckContext& ctx, double measured, Params params = {}, int n = -1) {
  CheckRecord r;
  r.n = n < 0 ? ctx.n : n;
  r.parameters = std::move(params);
  r.measured = measured;
  r.tolerance = ctx.tolerance;
  r.pass = std::isfinite(measured) && measured <= ctx.tolerance;
  return r;
}

CheckRecord above(const CheckContext& ctx, double measured, Params params = {}, int n = -1) {
  CheckRecord r = at_most(ctx, measured, std::move(params), n);
  r.pass = std::isfinite(measured) && measured > ctx.tolerance;
  return r;
}

double rel(double a, double b, double scale) { return std::abs(a - b) / std::max(1.0, scale); }

// Random (u, theta) with u in [lower + margin, u_hi].
struct Sample {
  double u;
  double theta;
};

Sample domain_sample(int n, SampleRng& rng, double margin, double u_hi) {
  const double th = rng.uniform(0.0, kTwoPi);
  const double lo = omega_lower_bound(n, th) + margin;
  return {rng.uniform(lo, u_hi), th};
}

// Fourth-order central difference.
template <class G>
double d4(const G& g, double x, double h) {
  return (-g(x + 2 * h) + 8 * g(x + h) - 8 * g(x - h) + g(x - 2 * h)) / (12 * h);
}

// ---------------------------------------------------------------- chebyshev

std::vector<CheckRecord> cheb_trig_T(CheckContext& ctx) {
  double worst = 0;
  for (int n = 0; n <= 12; ++n)
    for (int i = 0; i < 1000; ++i) {
      const double phi = ctx.rng.uniform(0.0, kTwoPi);
      worst = std::max(worst, std::abs(chebyshev::eval_T(n, std::cos(phi)) - std::cos(n * phi)));
    }
  return {at_most(ctx, worst, {{"n_max", 12}, {"samples", 1000}}, 0)};
}

std::vector<CheckRecord> cheb_trig_U(CheckContext& ctx) {
  double worst = 0;
  for (int n = 0; n <= 12; ++n)
    for (int i = 0; i < 1000; ++i) {
      const double phi = ctx.rng.uniform(0.0, kTwoPi);
      worst = std::max(worst, std::abs(chebyshev::eval_U(n, std::cos(phi)) * std::sin(phi) - std::sin((n + 1) * phi)));
    }
  return {at_most(ctx, worst, {{"n_max", 12}, {"samples", 1000}}, 0)};
}

std::vector<CheckRecord> cheb_psi(CheckContext& ctx) {
  double worst = 0;
  for (int n = 1; n <= 12; ++n)
    for (int i = 0; i < 1000; ++i) {
      const double u = ctx.rng.uniform(-2.0, 2.0);
      const double th = ctx.rng.uniform(0.0, kTwoPi);
      const double scale = std::abs(chebyshev::eval_T(n, u)) + 1.0;
      worst = std::max(worst, chebyshev::psi_factorization_residual(n, u, th) / scale);
    }
  return {at_most(ctx, worst, {{"n_max", 12}, {"u_abs_max", 2}}, 0)};
}

std::vector<CheckRecord> cheb_kaw(CheckContext& ctx) {
  double worst = 0;
  for (int m = 1; m <= 12; ++m)
    for (int i = 0; i < 1000; ++i) {
      const double x = ctx.rng.uniform(-2.0, 2.0);
      const double scale = std::max(1.0, std::abs(chebyshev::eval_U(2 * m, x)));
      worst = std::max(worst, chebyshev::kaw_identity_residual(m, x) / scale);
    }
  return {at_most(ctx, worst, {{"m_max", 12}, {"x_abs_max", 2}}, 0)};
}

std::vector<CheckRecord> cheb_derivative(CheckContext& ctx) {
  // Oracle: d/dx cos(n phi) = n sin(n phi) / sin(phi) at x = cos(phi).
  double worst = 0;
  for (int n = 1; n <= 12; ++n)
    for (int i = 0; i < 1000; ++i) {
      const double phi = ctx.rng.uniform(0.05, pi - 0.05);
      const double exact = n * std::sin(n * phi) / std::sin(phi);
      worst = std::max(worst, rel(chebyshev::eval_T_derivative(n, std::cos(phi)), exact, std::abs(exact)));
    }
  return {at_most(ctx, worst, {{"n_max", 12}}, 0)};
}

std::vector<CheckRecord> cheb_invert(CheckContext& ctx) {
  double worst = 0;
  for (int n = 2; n <= 12; ++n)
    for (int i = 0; i < 1000; ++i) {
      // y = -1 + 10^s spans [-1 + 1e-6, 1e3].
      const double y = -1.0 + std::pow(10.0, ctx.rng.uniform(-6.0, std::log10(1001.0)));
      const double u = chebyshev::invert_T(n, y);
      worst = std::max(worst, std::abs(chebyshev::eval_T(n, u) - y) / std::max(1.0, std::abs(y)));
    }
  return {at_most(ctx, worst, {{"n_max", 12}, {"y_max", 1e3}}, 0)};
}

std::vector<CheckRecord> cheb_monotone(CheckContext& ctx) {
  double violations = 0;
  for (int n = 2; n <= 12; ++n) {
    const double a = std::cos(pi / n);
    const double b = std::cos(pi / (n - 1));
    double prev_t = -kInf, prev_u = -kInf;
    for (int i = 0; i < 1000; ++i) {
      const double x = a + (4.0 - a) * i / 999.0;
      const double t = chebyshev::eval_T(n, x);
      if (!(t > prev_t)) ++violations;
      prev_t = t;
      const double xu = b + (4.0 - b) * i / 999.0;
      const double uu = chebyshev::eval_U(n - 1, xu);
      if (!(uu > prev_u)) ++violations;
      prev_u = uu;
    }
  }
  return {at_most(ctx, violations, {{"grid", 1000}, {"n_max", 12}}, 0)};
}

std::vector<CheckRecord> cheb_positive(CheckContext& ctx) {
  double min_value = kInf;
  for (int n = 2; n <= 12; ++n) {
    const double a = std::cos(pi / n) + 1e-9;
    for (int m = 0; m <= n - 1; ++m)
      for (int i = 0; i < 1000; ++i) {
        const double x = a + (4.0 - a) * i / 999.0;
        min_value = std::min(min_value, chebyshev::eval_U(m, x));
      }
  }
  return {above(ctx, min_value, {{"grid", 1000}, {"n_max", 12}}, 0)};
}

// ---------------------------------------------------------------- weierstrass

Complex z_off_rays(int n, SampleRng& rng) {
  const bool inner = rng.uniform() < 0.5;
  const double r = inner ? rng.uniform(0.05, 0.95) : rng.uniform(1.05, 3.0);
  double phi = 0.0;
  for (;;) {
    phi = rng.uniform(0.0, kTwoPi);
    const double sector = kTwoPi / n;
    const double off = std::abs(phi - sector * std::round(phi / sector));
    if (off >= 0.1) break;
  }
  return std::polar(r, phi);
}

std::vector<CheckRecord> w_null(CheckContext& ctx) {
  const JorgeMeeksData data(ctx.n);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const Complex z = z_off_rays(ctx.n, ctx.rng);
    const ComplexTriple a = alpha(data, z);
    const double scale = std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]);
    worst = std::max(worst, std::abs(-a[0] * a[0] + a[1] * a[1] + a[2] * a[2]) / scale);
  }
  return {at_most(ctx, worst, {{"samples", 1000}})};
}

std::vector<CheckRecord> w_quadrature(CheckContext& ctx) {
  const JorgeMeeksData data(ctx.n);
  std::vector<Complex> zs(100);
  for (Complex& z : zs) z = z_off_rays(ctx.n, ctx.rng);
  std::vector<double> err(zs.size());
  parallel_for(zs.size(), [&](std::size_t i) {
    const LorentzVec3 a = lift_closed_form(data, zs[i]).real_part();
    const LorentzVec3 b = integrate_lift_numeric(data, zs[i]).real_part();
    err[i] = coord_norm(a - b);
  });
  return {at_most(ctx, *std::max_element(err.begin(), err.end()), {{"samples", 100}})};
}

std::vector<CheckRecord> w_period(CheckContext& ctx) {
  const JorgeMeeksData data(ctx.n);
  const double radius = 0.5 * std::sin(pi / ctx.n);
  double worst = 0;
  for (int j = 0; j < ctx.n; ++j) worst = std::max(worst, period_residual(data, j, radius, 512));
  return {at_most(ctx, worst, {{"radius", radius}})};
}

std::vector<CheckRecord> w_loop_imag(CheckContext& ctx) {
  // a0 dz = dX0 is exact; the log terms give Im loop(a1) = 4 pi c sin(2 pi j/n), Im loop(a2) = 4 pi c cos(2 pi j/n).
  const int n = ctx.n;
  const JorgeMeeksData data(n);
  const double c = (n - 1.0) / (1.0 * n * n);
  const double radius = 0.5 * std::sin(pi / n);
  double worst = 0;
  for (int j = 0; j < n; ++j) {
    const ComplexTriple l = loop_integral(data, j, radius, 512);
    const double ph = kTwoPi * j / n;
    worst = std::max({worst, std::abs(l[0]), std::abs(l[1].imag() - 4 * pi * c * std::sin(ph)),
                      std::abs(l[2].imag() - 4 * pi * c * std::cos(ph))});
  }
  return {at_most(ctx, worst, {{"radius", radius}})};
}

double polar_radius(SampleRng& rng) {
  return rng.uniform() < 0.5 ? rng.uniform(0.05, 0.95) : rng.uniform(1.05, 3.0);
}

std::vector<CheckRecord> w_symmetry(CheckContext& ctx) {
  const JorgeMeeksData data(ctx.n);
  const Mat3 s = reflection_s();
  const Mat3 r = rotation_r(ctx.n);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const double rad = polar_radius(ctx.rng);
    const double th = ctx.rng.uniform(0.0, kTwoPi);
    if (data.puncture_distance(std::polar(rad, th)) < 0.05) continue;
    const LorentzVec3 f = f_polar(data, rad, th);
    const double scale = coord_norm(f);
    worst = std::max(worst, coord_norm(f_polar(data, rad, -th) - s * f) / std::max(1.0, scale));
    worst = std::max(worst, coord_norm(f_polar(data, rad, th + kTwoPi / ctx.n) - r * f) / std::max(1.0, scale));
  }
  return {at_most(ctx, worst, {{"samples", 1000}})};
}

std::vector<CheckRecord> w_fold(CheckContext& ctx) {
  const JorgeMeeksData data(ctx.n);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const double rad = ctx.rng.uniform(0.05, 0.95);
    const double th = ctx.rng.uniform(0.0, kTwoPi);
    const LorentzVec3 f = f_polar(data, rad, th);
    worst = std::max(worst, coord_norm(f_polar(data, 1.0 / rad, th) - f) / std::max(1.0, coord_norm(f)));
  }
  return {at_most(ctx, worst, {{"samples", 1000}})};
}

std::vector<CheckRecord> w_polar_closed(CheckContext& ctx) {
  const JorgeMeeksData data(ctx.n);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const double rad = polar_radius(ctx.rng);
    const double th = ctx.rng.uniform(0.0, kTwoPi);
    const Complex z = std::polar(rad, th);
    if (data.puncture_distance(z) < 0.05) continue;
    const LorentzVec3 a = f_polar(data, rad, th);
    worst = std::max(worst, coord_norm(a - lift_closed_form(data, z).real_part()) / std::max(1.0, coord_norm(a)));
  }
  return {at_most(ctx, worst, {{"samples", 1000}})};
}

// ---------------------------------------------------------------- extension

std::vector<CheckRecord> e_psi_positive(CheckContext& ctx) {
  double min_value = kInf;
  for (int i = 0; i < 10000; ++i) {
    const Sample s = domain_sample(ctx.n, ctx.rng, 1e-6, 5.0);
    min_value = std::min(min_value, chebyshev::eval_T(ctx.n, s.u) - std::cos(ctx.n * s.theta));
  }
  return {above(ctx, min_value, {{"samples", 10000}})};
}

std::vector<CheckRecord> e_cross(CheckContext& ctx) {
  const JorgeMeeksData data(ctx.n);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    // One in ten samples sits on the fold |z| = 1.
    const double rad = (i % 10 == 0) ? 1.0 : ctx.rng.uniform(0.02, 1.0);
    const double th = ctx.rng.uniform(0.0, kTwoPi);
    if (data.puncture_distance(std::polar(rad, th)) < 0.05) continue;
    const LorentzVec3 a = f_polar(data, rad, th);
    const LorentzVec3 b = eval_extended(ctx.n, iota(rad, th));
    worst = std::max(worst, coord_norm(a - b) / std::max(1.0, coord_norm(a)));
  }
  return {at_most(ctx, worst, {{"samples", 1000}})};
}

std::vector<CheckRecord> e_symmetry(CheckContext& ctx) {
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const Sample s = domain_sample(ctx.n, ctx.rng, 1e-3, 5.0);
    const double scale = coord_norm(eval_extended(ctx.n, s.u, s.theta));
    worst = std::max(worst, symmetry_residual(ctx.n, s.u, s.theta) / std::max(1.0, scale));
  }
  return {at_most(ctx, worst, {{"samples", 1000}})};
}

std::vector<CheckRecord> e_decomposition(CheckContext& ctx) {
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const Sample s = domain_sample(ctx.n, ctx.rng, 1e-3, 5.0);
    const FundamentalFold fold = fold_to_fundamental(ctx.n, s.theta);
    const LorentzVec3 f = eval_extended(ctx.n, s.u, s.theta);
    const LorentzVec3 g = fold.element.matrix * eval_extended(ctx.n, s.u, fold.theta0);
    worst = std::max(worst, coord_norm(f - g) / std::max(1.0, coord_norm(f)));
  }
  return {at_most(ctx, worst, {{"samples", 1000}})};
}

std::vector<CheckRecord> e_decay(CheckContext& ctx) {
  constexpr int kAngles = 64;
  double C = 0;
  for (int k = 0; k < kAngles; ++k) {
    C = std::max(C, 1e2 * coord_norm(eval_extended(ctx.n, 1e2, kTwoPi * (k + 0.5) / kAngles)));
  }
  double ratio = 0;
  for (const double u : {1e3, 1e4}) {
    for (int k = 0; k < kAngles; ++k) {
      ratio = std::max(ratio, u * coord_norm(eval_extended(ctx.n, u, kTwoPi * (k + 0.5) / kAngles)) / C);
    }
  }
  // p_inf maps to the origin.
  if (coord_norm(eval_extended(ctx.n, DomainPoint::infinity())) != 0.0) ratio = kInf;
  return {at_most(ctx, ratio, {{"C", C}, {"angles", kAngles}})};
}

std::vector<CheckRecord> e_lorentz(CheckContext& ctx) {
  double worst = 0;
  for (const IsometryG& g : group_elements(ctx.n)) {
    for (int i = 0; i < 100; ++i) {
      const LorentzVec3 v{ctx.rng.uniform(-1, 1), ctx.rng.uniform(-1, 1), ctx.rng.uniform(-1, 1)};
      const LorentzVec3 w{ctx.rng.uniform(-1, 1), ctx.rng.uniform(-1, 1), ctx.rng.uniform(-1, 1)};
      worst = std::max(worst, std::abs(lorentz_inner(g.matrix * v, g.matrix * w) - lorentz_inner(v, w)));
    }
  }
  return {at_most(ctx, worst, {{"elements", 2.0 * ctx.n}})};
}

std::vector<CheckRecord> e_graph(CheckContext& ctx) {
  double worst = 0;
  double timelike = 0;
  for (int i = 0; i < 1000; ++i) {
    const Sample s = domain_sample(2, ctx.rng, 1e-2, 5.0);
    if (s.u < 1.0) ++timelike;
    const LorentzVec3 p = eval_extended(2, s.u, s.theta);
    worst = std::max(worst, std::abs(p.t - p.x * std::tanh(2.0 * p.y)));
  }
  CheckRecord r = at_most(ctx, worst, {{"samples", 1000}, {"timelike_samples", timelike}}, 2);
  if (timelike == 0) r.pass = false;
  return {r};
}

std::vector<CheckRecord> e_banding(CheckContext& ctx) {
  double mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    const Sample s = domain_sample(ctx.n, ctx.rng, 1e-3, 5.0);
    if (std::abs(s.u - 1.0) <= 1e-3) continue;
    const CausalType c = causal_type(ctx.n, DomainPoint::finite(s.u, s.theta));
    const CausalType expect = s.u > 1.0 ? CausalType::spacelike : CausalType::timelike;
    if (c != expect) ++mismatches;
  }
  return {at_most(ctx, mismatches, {{"samples", 1000}})};
}

// ---------------------------------------------------------------- analysis

std::vector<CheckRecord> a_derivatives(CheckContext& ctx) {
  const int n = ctx.n;
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const Sample s = domain_sample(n, ctx.rng, 0.05, 4.0);
    const double h = 1e-4 * std::max(1.0, s.u);
    auto fu = [&](double u) { return eval_extended(n, u, s.theta); };
    auto ft = [&](double t) { return eval_extended(n, s.u, t); };
    std::array<double, 3> du{}, dt{};
    for (int c = 0; c < 3; ++c) {
      du[c] = d4([&](double u) { return fu(u)[c]; }, s.u, h);
      dt[c] = d4([&](double t) { return ft(t)[c]; }, s.theta, h);
    }
    const std::array<double, 3> formula = {analysis::x0_u(n, s.u, s.theta), analysis::x1_u(n, s.u, s.theta),
                                           analysis::x2_u(n, s.u, s.theta)};
    for (int c = 0; c < 3; ++c) {
      const double scale = std::max(std::abs(formula[c]), std::hypot(du[c], dt[c]));
      worst = std::max(worst, std::abs(du[c] - formula[c]) / scale);
    }
    const double j01 = du[0] * dt[1] - dt[0] * du[1];
    const double j02 = du[0] * dt[2] - dt[0] * du[2];
    worst = std::max(worst, std::abs(j01 - analysis::jacobian01(n, s.u, s.theta)) /
                                (std::abs(du[0] * dt[1]) + std::abs(dt[0] * du[1])));
    worst = std::max(worst, std::abs(j02 - analysis::jacobian02(n, s.u, s.theta)) /
                                (std::abs(du[0] * dt[2]) + std::abs(dt[0] * du[2])));
  }
  return {at_most(ctx, worst, {{"samples", 1000}})};
}

std::vector<CheckRecord> a_jacobian_sum(CheckContext& ctx) {
  const int n = ctx.n;
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const Sample s = domain_sample(n, ctx.rng, 1e-3, 5.0);
    const double a = chebyshev::psi_product(n, s.u, s.theta);
    const double expect = std::pow(chebyshev::eval_U(n - 2, s.u), 2) / std::pow(a, 4);
    const double j1 = analysis::jacobian01(n, s.u, s.theta);
    const double j2 = analysis::jacobian02(n, s.u, s.theta);
    worst = std::max(worst, std::abs(j1 * j1 + j2 * j2 - expect) / expect);
  }
  return {at_most(ctx, worst, {{"samples", 1000}})};
}

std::vector<CheckRecord> a_immersion(CheckContext& ctx) {
  analysis::GridSpec space;  // u in [1.01, 5], full circle, 200 x 200
  const analysis::ImmersionReport a = analysis::immersion_certificate(ctx.n, space);
  analysis::GridSpec mixed;
  mixed.u_min = 0.0;
  mixed.boundary_offset = 1e-2;
  const analysis::ImmersionReport b = analysis::immersion_certificate(ctx.n, mixed);
  CheckRecord r1 = above(ctx, a.min_certified_bound, {{"u_min", space.u_min}, {"u_max", space.u_max}});
  r1.pass = r1.pass && a.pass;
  CheckRecord r2 = above(ctx, b.min_certified_bound, {{"boundary_offset", 1e-2}, {"u_max", mixed.u_max}});
  r2.pass = r2.pass && b.pass;
  r2.note = "grid includes the time-like strip";
  return {r1, r2};
}

const double kHeights[] = {0.01, 0.1, 0.5, 1.0, 2.0};

std::vector<CheckRecord> a_contour_roundtrip(CheckContext& ctx) {
  const int n = ctx.n;
  double worst = 0;
  for (const double h : kHeights) {
    for (int i = 0; i < 200; ++i) {
      const double th = (i + 1) * pi / (n * 201.0);
      const double x0 = eval_extended(n, analysis::contour_u(n, h, th), th).t;
      worst = std::max(worst, std::abs(x0 - h) / std::max(1.0, h));
    }
  }
  return {at_most(ctx, worst, {{"theta_nodes", 200}})};
}

std::vector<CheckRecord> a_contour_order(CheckContext& ctx) {
  // u_h > cos(theta) and h -> u_h(theta) decreasing.
  const int n = ctx.n;
  double violations = 0;
  for (int i = 0; i < 1000; ++i) {
    const double th = ctx.rng.uniform(1e-3, 1.0 - 1e-3) * pi / n;
    const double h1 = std::pow(10.0, ctx.rng.uniform(-2.0, 1.0));
    const double h2 = h1 * ctx.rng.uniform(1.01, 2.0);
    const double u1 = analysis::contour_u(n, h1, th);
    const double u2 = analysis::contour_u(n, h2, th);
    if (!(u1 > std::cos(th)) || !(u2 < u1)) ++violations;
  }
  return {at_most(ctx, violations, {{"samples", 1000}})};
}

std::vector<CheckRecord> a_contour_limits(CheckContext& ctx) {
  const int n = ctx.n;
  std::vector<CheckRecord> out;
  for (const double h : {0.01, 0.5, 1.0, 10.0}) {
    const analysis::ContourLimits l = analysis::contour_endpoint_limits(n, h);
    const double e = std::max({std::abs(l.u_at_zero - 1.0), std::abs(l.u_at_edge - std::cos(pi / n)),
                               std::abs(l.x1_at_zero + h)});
    out.push_back(at_most(ctx, e, {{"h", h}}));
  }
  return out;
}

std::vector<CheckRecord> a_nonnegative(CheckContext& ctx) {
  const int n = ctx.n;
  double min_value = kInf;
  for (int i = 0; i < 10000; ++i) {
    const double th = ctx.rng.uniform(0.0, pi / n);
    const double u = ctx.rng.uniform(std::cos(th) + 1e-9, 5.0);
    min_value = std::min(min_value, eval_extended(n, u, th).t);
  }
  // Tolerance is a floor: pass when min x~_0 >= -tol.
  CheckRecord r = at_most(ctx, -min_value, {{"samples", 10000}});
  r.note = "measured is -min x0 over the fundamental domain";
  return {r};
}

std::vector<CheckRecord> a_level_symmetry(CheckContext& ctx) {
  const int n = ctx.n;
  const Mat3 s = reflection_s();
  double worst = 0;
  for (const double h : kHeights) {
    for (const analysis::LevelCurve& c : analysis::level_curve(n, h, 64)) {
      for (const analysis::LevelSample& smp : c.samples) {
        const LorentzVec3 mirrored = s * smp.point;
        const LorentzVec3 there = eval_extended(n, smp.domain.u(), -smp.domain.theta());
        LorentzVec3 diff = mirrored - there;
        diff.t = mirrored.t + h;  // height of Lambda_{-h}
        worst = std::max(worst, coord_norm(diff) / std::max(1.0, coord_norm(there)));
      }
    }
  }
  return {at_most(ctx, worst, {{"samples_per_curve", 64}})};
}

std::vector<CheckRecord> a_level_invariants(CheckContext& ctx) {
  double worst = 0;
  for (const double h : {-1.0, -0.01, 0.0, 0.01, 1.0}) {
    for (const analysis::LevelCurve& c : analysis::level_curve(ctx.n, h, 256)) {
      double prev = -kInf;
      for (const analysis::LevelSample& s : c.samples) {
        worst = std::max(worst, std::abs(s.point.t - h));
        if (!(s.param > prev)) worst = kInf;
        prev = s.param;
      }
    }
  }
  return {at_most(ctx, worst, {{"samples_per_curve", 256}})};
}

std::vector<CheckRecord> a_monotonicity(CheckContext& ctx) {
  std::vector<CheckRecord> out;
  for (const double h : {0.01, 0.5, 1.0, 10.0}) {
    const analysis::MonotonicityReport m = analysis::curve_monotonicity_report(ctx.n, h, 1000, ctx.tolerance);
    CheckRecord r = at_most(ctx, std::max(m.max_dx1_error, m.max_dx2_error),
                            {{"h", h}, {"argmax_cells", m.argmax_cells}, {"x1_max", m.x1_max}});
    r.pass = r.pass && m.pass;
    out.push_back(r);
  }
  return out;
}

std::vector<CheckRecord> a_region(CheckContext& ctx) {
  std::vector<CheckRecord> out;
  for (const double h : {1e-4, 0.01, 1.0, 10.0}) {
    const analysis::RegionReport g = analysis::region_Dh_certificate(ctx.n, h);
    CheckRecord r = above(ctx, g.min_phi, {{"h", h}, {"Phi", g.Phi}, {"argmin_cells", g.argmin_cells}, {"upsilon_min", g.upsilon_min}});
    r.pass = r.pass && g.pass;
    out.push_back(r);
  }
  return out;
}

std::vector<CheckRecord> a_embedded(CheckContext& ctx) {
  const double heights[] = {-10, -1, -0.1, -0.01, 0, 0.01, 0.1, 1, 10};
  const analysis::EmbeddednessReport e = analysis::embeddedness_scan(ctx.n, heights, 2048, ctx.tolerance);
  std::vector<CheckRecord> out;
  for (const analysis::HeightScan& s : e.heights) {
    CheckRecord r = at_most(ctx, static_cast<double>(s.self_intersections + s.cross_intersections), {{"h", s.h}});
    r.tolerance = ctx.tolerance;
    r.pass = s.pass;
    r.note = "measured counts segment pairs closer than the tolerance";
    out.push_back(r);
  }
  return out;
}

std::vector<CheckRecord> a_ray_speed(CheckContext& ctx) {
  // FD speed along B_k against V(u) (0, sin(k pi/n), cos(k pi/n)).
  const int n = ctx.n;
  double worst = 0;
  for (int k = 0; k < 2 * n; ++k) {
    const double th = k * pi / n;
    const double lo = (k % 2 == 0) ? 1.0 : std::cos(pi / n);
    for (int i = 0; i < 50; ++i) {
      const double u = ctx.rng.uniform(lo + 0.05, 6.0);
      const double h = 1e-4 * std::max(1.0, u);
      const double vx = d4([&](double a) { return eval_extended(n, a, th).x; }, u, h);
      const double vy = d4([&](double a) { return eval_extended(n, a, th).y; }, u, h);
      const double v = analysis::ray_speed(n, k, u);
      const double e = std::hypot(vx - v * std::sin(th), vy - v * std::cos(th)) / std::abs(v);
      worst = std::max(worst, v > 0 ? e : kInf);
    }
  }
  return {at_most(ctx, worst, {{"rays", 2.0 * n}})};
}

std::vector<CheckRecord> a_proper_edge(CheckContext& ctx) {
  const analysis::ProperProbeReport p = analysis::properness_probe(ctx.n, pi / ctx.n);
  CheckRecord r = at_most(ctx, p.values.back(), {{"crossing_delta", p.crossing_delta}});
  r.pass = p.pass && p.values.back() <= ctx.tolerance;
  r.note = "x1 along u -> cos(pi/n) at theta = pi/n; measured is the last value";
  return {r};
}

std::vector<CheckRecord> a_proper_rate(CheckContext& ctx) {
  // Divergence of x~_2 toward the boundary point (cos theta, theta), theta in [0, pi/n), is
  // logarithmic with coefficient (n-1)/n^2; certified through the fitted slope.
  const int n = ctx.n;
  const double c = (n - 1.0) / (1.0 * n * n);
  std::vector<CheckRecord> out;
  for (const double frac : {0.0, 0.3, 0.6}) {
    const analysis::ProperProbeReport p = analysis::properness_probe(n, frac * pi / n);
    CheckRecord r = at_most(ctx, std::abs(p.log_slope / c - 1.0), {{"theta", p.theta_target}, {"slope", p.log_slope}});
    r.pass = r.pass && p.monotone_tail;
    out.push_back(r);
  }
  return out;
}

std::vector<CheckRecord> a_zmc(CheckContext& ctx) {
  const int n = ctx.n;
  constexpr int kNu = 40, kNt = 120;
  constexpr double kOffset = 0.05, kUMax = 5.0, kFoldBand = 0.05;
  std::vector<double> worst(kNt, 0.0);
  std::vector<int> used(kNt, 0);
  parallel_for(kNt, [&](std::size_t j) {
    const double th = kTwoPi * (j + 0.5) / kNt;
    const double lo = omega_lower_bound(n, th) + kOffset;
    for (int i = 0; i < kNu; ++i) {
      const double u = lo + (kUMax - lo) * i / (kNu - 1.0);
      if (std::abs(u - 1.0) < kFoldBand) continue;
      worst[j] = std::max(worst[j], analysis::mean_curvature_residual(n, u, th, 1e-3));
      ++used[j];
    }
  });
  double nodes = 0;
  for (const int k : used) nodes += k;
  return {at_most(ctx, *std::max_element(worst.begin(), worst.end()),
                  {{"boundary_offset", kOffset}, {"fold_band", kFoldBand}, {"nodes", nodes}, {"step", 1e-3}})};
}

std::vector<CheckRecord> a_separation(CheckContext& ctx) {
  const int n = ctx.n;
  double min_margin = kInf;
  for (int i = 0; i < 10000; ++i) {
    const double th = ctx.rng.uniform(0.0, pi / n);
    const double u = ctx.rng.uniform(std::cos(th), 5.0);
    min_margin = std::min(min_margin, analysis::fundamental_separation_margin(n, u, th));
  }
  CheckRecord r = at_most(ctx, -min_margin, {{"samples", 10000}});
  r.note = "measured is -min over j of u - cos(theta - 2 pi j/n) - 2 sin^2(pi/n)";
  return {r};
}

std::vector<CheckSpec> build_registry() {
  return {
      {"chebyshev.trig_identity_T", "chebyshev", 1e-11, 2, cheb_trig_T},
      {"chebyshev.trig_identity_U", "chebyshev", 1e-11, 2, cheb_trig_U},
      {"chebyshev.psi_factorization", "chebyshev", 1e-10, 2, cheb_psi},
      {"chebyshev.kaw_identity", "chebyshev", 1e-10, 2, cheb_kaw},
      {"chebyshev.derivative", "chebyshev", 1e-10, 2, cheb_derivative},
      {"chebyshev.invert_roundtrip", "chebyshev", 1e-9, 2, cheb_invert},
      {"chebyshev.monotone", "chebyshev", 0.0, 2, cheb_monotone},
      {"chebyshev.positive_U", "chebyshev", 0.0, 2, cheb_positive},
      {"weierstrass.null_lift", "weierstrass", 1e-12, 2, w_null},
      {"weierstrass.closed_vs_quadrature", "weierstrass", 1e-8, 2, w_quadrature},
      {"weierstrass.period_condition", "weierstrass", 1e-8, 2, w_period},
      {"weierstrass.loop_imaginary_parts", "weierstrass", 1e-9, 2, w_loop_imag},
      {"weierstrass.symmetry", "weierstrass", 1e-11, 2, w_symmetry},
      {"weierstrass.fold_symmetry", "weierstrass", 1e-11, 2, w_fold},
      {"weierstrass.polar_vs_closed", "weierstrass", 1e-10, 2, w_polar_closed},
      {"extension.psi_positive", "extension", 0.0, 2, e_psi_positive},
      {"extension.cross_representation", "extension", 1e-11, 2, e_cross},
      {"extension.symmetry", "extension", 1e-10, 2, e_symmetry},
      {"extension.decomposition", "extension", 1e-9, 2, e_decomposition},
      {"extension.decay_at_infinity", "extension", 1.05, 2, e_decay},
      {"extension.lorentz_invariance", "extension", 1e-12, 2, e_lorentz},
      {"extension.graph_n2", "extension", 1e-10, 2, e_graph},
      {"extension.causal_banding", "extension", 0.0, 2, e_banding},
      {"analysis.derivative_formulas", "analysis", 1e-6, 2, a_derivatives},
      {"analysis.jacobian_sum_identity", "analysis", 1e-10, 2, a_jacobian_sum},
      {"analysis.immersion", "analysis", 0.0, 2, a_immersion},
      {"analysis.contour_roundtrip", "analysis", 1e-10, 2, a_contour_roundtrip},
      {"analysis.contour_order", "analysis", 0.0, 2, a_contour_order},
      {"analysis.contour_limits", "analysis", 1e-6, 2, a_contour_limits},
      {"analysis.nonnegativity", "analysis", 1e-12, 2, a_nonnegative},
      {"analysis.level_curve_symmetry", "analysis", 1e-10, 2, a_level_symmetry},
      {"analysis.level_curve_invariants", "analysis", 1e-10, 2, a_level_invariants},
      {"analysis.monotonicity", "analysis", 1e-6, 3, a_monotonicity},
      {"analysis.region_Dh", "analysis", 0.0, 3, a_region},
      {"analysis.embeddedness", "analysis", 1e-9, 3, a_embedded},
      {"analysis.ray_speed", "analysis", 1e-6, 2, a_ray_speed},
      {"analysis.properness_edge", "analysis", -1e3, 2, a_proper_edge},
      {"analysis.properness_log_rate", "analysis", 0.05, 2, a_proper_rate},
      {"analysis.zero_mean_curvature", "analysis", 1e-4, 2, a_zmc},
      {"analysis.fundamental_separation", "analysis", 1e-12, 3, a_separation},
  };
}

}  // namespace

const std::vector<CheckSpec>& registry() {
  static const std::vector<CheckSpec> r = build_registry();
  return r;
}

const CheckSpec* find_check(const std::string& name) {
  for (const CheckSpec& s : registry())
    if (s.name == name) return &s;
  return nullptr;
}

std::vector<CheckRecord> run_check(const CheckSpec& spec, const VerifyConfig& cfg) {
  if (cfg.n < 2) throw InvalidArgument("verify: n must be >= 2");
  const auto it = cfg.tolerance_overrides.find(spec.name);
  const double tol = it == cfg.tolerance_overrides.end() ? spec.default_tolerance : it->second;
  if (cfg.n < spec.min_n) {
    CheckRecord r;
    r.name = spec.name;
    r.module = spec.module;
    r.n = cfg.n;
    r.tolerance = tol;
    r.measured = 0.0;
    r.pass = true;
    r.note = "skipped: requires n >= " + std::to_string(spec.min_n);
    return {r};
  }
  SampleRng rng(cfg.seed ^ fnv1a(spec.name));
  CheckContext ctx{cfg.n, tol, rng};
  std::vector<CheckRecord> out = spec.run(ctx);
  for (CheckRecord& r : out) {
    r.name = spec.name;
    r.module = spec.module;
  }
  return out;
}

VerificationReport run_verify(const VerifyConfig& cfg) {
  for (const auto& [name, value] : cfg.tolerance_overrides) {
    if (find_check(name) == nullptr) throw InvalidArgument("unknown check name in tolerance override: " + name);
    (void)value;
  }
  VerificationReport rep;
  rep.suite = "zmc-noid verify";
  rep.metadata["n"] = std::to_string(cfg.n);
  rep.metadata["prng"] = kPrngName;
  rep.metadata["seed"] = std::to_string(cfg.seed);
  for (const CheckSpec& spec : registry()) {
    std::vector<CheckRecord> recs = run_check(spec, cfg);
    rep.checks.insert(rep.checks.end(), recs.begin(), recs.end());
  }
  return rep;
}

}  // namespace zmc::verify
