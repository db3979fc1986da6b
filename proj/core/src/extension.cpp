#include "zmc/extension.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "zmc/chebyshev.hpp"
#include "zmc/errors.hpp"

namespace zmc {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_n(int n) {
  if (n < 2) throw InvalidArgument("n must be >= 2, got " + std::to_string(n));
}

std::string point_text(double u, double theta) {
  return "(u=" + std::to_string(u) + ", theta=" + std::to_string(theta) + ")";
}

}  // namespace

double reduce_angle(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

DomainPoint DomainPoint::finite(double u, double theta) { return {Kind::finite, u, reduce_angle(theta)}; }

DomainPoint DomainPoint::infinity() { return {Kind::infinity, 0.0, 0.0}; }

bool DomainPoint::operator==(const DomainPoint& o) const {
  if (kind_ != o.kind_) return false;
  if (kind_ == Kind::infinity) return true;
  return u_ == o.u_ && theta_ == o.theta_;
}

double omega_lower_bound(int n, double theta) {
  require_n(n);
  double m = -1.0;
  for (int j = 0; j < n; ++j) m = std::max(m, std::cos(theta - kTwoPi * j / n));
  return m;
}

bool in_omega(int n, const DomainPoint& p) {
  if (p.is_infinity()) return true;
  return p.u() > omega_lower_bound(n, p.theta());
}

LorentzVec3 eval_extended(int n, const DomainPoint& p) {
  require_n(n);
  if (p.is_infinity()) return {0.0, 0.0, 0.0};
  const double u = p.u();
  const double theta = p.theta();
  if (!in_omega(n, p)) throw DomainError("eval_extended: " + point_text(u, theta) + " is outside Omega_n");

  const double nd = static_cast<double>(n);
  const double c = (nd - 1.0) / (nd * nd);

  // T_n(u) - cos(n theta) via its root factorization; the log terms need the same factors.
  double denom = std::ldexp(1.0, n - 1);
  double log_sin = 0.0;
  double log_cos = 0.0;
  for (int j = 0; j < n; ++j) {
    const double phase = kTwoPi * j / n;
    const double factor = u - std::cos(theta - phase);
    if (!(factor > kBoundaryFloor)) {
      throw BoundaryError("eval_extended: " + point_text(u, theta) + " is within " + std::to_string(kBoundaryFloor) +
                          " of the boundary of Omega_n");
    }
    denom *= factor;
    const double lg = std::log(factor);
    if (j > 0) log_sin += lg * std::sin(phase);
    log_cos += lg * std::cos(phase);
  }

  const double tn1 = chebyshev::eval_T(n - 1, u);
  const double nden = nd * denom;
  LorentzVec3 f;
  f.t = std::sin(n * theta) / nden;
  f.x = -(tn1 * std::sin(theta) + u * std::sin((n - 1) * theta)) / nden + c * log_sin;
  f.y = (-tn1 * std::cos(theta) + u * std::cos((n - 1) * theta)) / nden + c * log_cos;
  return f;
}

LorentzVec3 eval_extended(int n, double u, double theta) { return eval_extended(n, DomainPoint::finite(u, theta)); }

DomainPoint iota(double r, double theta) {
  if (r == 0.0) return DomainPoint::infinity();
  if (!(r > 0.0)) throw InvalidArgument("iota: r must be non-negative");
  return DomainPoint::finite(0.5 * (r + 1.0 / r), theta);
}

std::string to_string(CausalType c) {
  switch (c) {
    case CausalType::spacelike:
      return "spacelike";
    case CausalType::lightlike:
      return "lightlike";
    case CausalType::timelike:
      return "timelike";
  }
  return "unknown";
}

double default_fd_step(double u) { return 1e-5 * std::max(1.0, std::abs(u)); }

InducedMetric induced_metric_fd(int n, double u, double theta, double fd_step) {
  const LorentzVec3 fu = (eval_extended(n, u + fd_step, theta) - eval_extended(n, u - fd_step, theta)) / (2.0 * fd_step);
  const LorentzVec3 ft = (eval_extended(n, u, theta + fd_step) - eval_extended(n, u, theta - fd_step)) / (2.0 * fd_step);
  return {lorentz_inner(fu, fu), lorentz_inner(fu, ft), lorentz_inner(ft, ft)};
}

CausalType causal_type(int n, const DomainPoint& p, double fd_step) {
  require_n(n);
  if (p.is_infinity()) throw DomainError("causal_type: p_inf has no finite-difference neighbourhood");
  const double u = p.u();
  const double theta = p.theta();
  const double h = fd_step > 0.0 ? fd_step : default_fd_step(u);
  if (!(u - omega_lower_bound(n, theta) > 2.0 * h)) {
    throw DomainError("causal_type: " + point_text(u, theta) + " is not inside Omega_n with margin " +
                      std::to_string(2.0 * h));
  }
  const InducedMetric g = induced_metric_fd(n, u, theta, h);
  const double tau = 1e-6 * (g.E * g.E + g.G * g.G + 1.0);
  const double d = g.det();
  if (d > tau) return CausalType::spacelike;
  if (d < -tau) return CausalType::timelike;
  return CausalType::lightlike;
}

std::string IsometryG::word() const {
  std::string w;
  if (reflect) w = "S";
  if (rotations != 0) {
    if (!w.empty()) w += " ";
    w += "R^" + std::to_string(rotations);
  }
  return w.empty() ? "e" : w;
}

std::vector<IsometryG> group_elements(int n) {
  require_n(n);
  std::vector<IsometryG> out;
  out.reserve(static_cast<std::size_t>(2 * n));
  const Mat3 s = reflection_s();
  for (int k = 0; k < n; ++k) out.push_back({rotation_r_power(n, k), false, k});
  for (int k = 0; k < n; ++k) out.push_back({s * rotation_r_power(n, k), true, k});
  return out;
}

double symmetry_residual(int n, double u, double theta) {
  require_n(n);
  if (!in_omega(n, DomainPoint::finite(u, theta))) {
    throw DomainError("symmetry_residual: " + point_text(u, theta) + " is outside Omega_n");
  }
  const LorentzVec3 f = eval_extended(n, u, theta);
  const LorentzVec3 refl = eval_extended(n, u, -theta) - reflection_s() * f;
  const LorentzVec3 rot = eval_extended(n, u, theta + kTwoPi / n) - rotation_r(n) * f;
  return std::max(coord_norm(refl), coord_norm(rot));
}

bool fundamental_domain_contains(int n, double u, double theta) {
  require_n(n);
  return u > std::cos(theta) && theta >= 0.0 && theta <= std::numbers::pi / n;
}

FundamentalFold fold_to_fundamental(int n, double theta) {
  require_n(n);
  const double sector = kTwoPi / n;
  const double t = reduce_angle(theta);
  int k = static_cast<int>(std::lround(t / sector));
  const double offset = t - sector * k;
  k %= n;
  if (offset >= 0.0) {
    return {std::min(offset, std::numbers::pi / n), {rotation_r_power(n, k), false, k}};
  }
  // R^k S = S R^{-k}.
  const int rot = (n - k) % n;
  return {std::min(-offset, std::numbers::pi / n), {reflection_s() * rotation_r_power(n, rot), true, rot}};
}

}  // namespace zmc
