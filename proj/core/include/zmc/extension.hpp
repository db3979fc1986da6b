#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zmc/lorentz.hpp"

// The real (u, theta) model of f_n: u = (r + 1/r)/2, the extended domain
//   Omega_n = { u > max_j cos(theta - 2 pi j / n) } u { p_inf },
// the map f~_n written with Chebyshev polynomials, causal types, and the
// finite isometry group G = <S, R>.

namespace zmc {

class DomainPoint {
 public:
  enum class Kind : std::uint8_t { finite, infinity };

  // theta is reduced to [0, 2 pi).
  static DomainPoint finite(double u, double theta);
  static DomainPoint infinity();

  Kind kind() const { return kind_; }
  bool is_infinity() const { return kind_ == Kind::infinity; }
  // Only meaningful for finite points.
  double u() const { return u_; }
  double theta() const { return theta_; }

  bool operator==(const DomainPoint& o) const;

 private:
  DomainPoint(Kind k, double u, double theta) : kind_(k), u_(u), theta_(theta) {}

  Kind kind_;
  double u_;
  double theta_;
};

// Reduce an angle to [0, 2 pi).
double reduce_angle(double theta);

// max_j cos(theta - 2 pi j / n): the lower boundary of Omega_n above theta.
double omega_lower_bound(int n, double theta);

bool in_omega(int n, const DomainPoint& p);

// Minimum log-factor argument accepted by eval_extended.
inline constexpr double kBoundaryFloor = 1e-14;

// f~_n(p). Throws DomainError outside Omega_n and BoundaryError when some
// factor u - cos(theta - 2 pi j / n) is <= kBoundaryFloor.
LorentzVec3 eval_extended(int n, const DomainPoint& p);
LorentzVec3 eval_extended(int n, double u, double theta);

// iota(z) = ((r + 1/r)/2, arg z); iota(0) = p_inf.
DomainPoint iota(double r, double theta);

enum class CausalType : std::uint8_t { spacelike = 0, lightlike = 1, timelike = 2 };

std::string to_string(CausalType c);

// Default central-difference step 1e-5 * max(1, |u|).
double default_fd_step(double u);

struct InducedMetric {
  double E;
  double F;
  double G;

  double det() const { return E * G - F * F; }
};

// First fundamental form in (u, theta) by central differences.
InducedMetric induced_metric_fd(int n, double u, double theta, double fd_step);

// Causal type from the sign of det of the induced metric, with threshold
// 1e-6 (E^2 + G^2 + 1). fd_step <= 0 selects default_fd_step(u).
CausalType causal_type(int n, const DomainPoint& p, double fd_step = 0.0);

// An element of G written as S^reflect R^rotations.
struct IsometryG {
  Mat3 matrix;
  bool reflect = false;
  int rotations = 0;

  std::string word() const;
};

// All 2n elements: R^k and S R^k for k = 0..n-1.
std::vector<IsometryG> group_elements(int n);

// max(|f~(u,-theta) - S f~(u,theta)|, |f~(u,theta + 2pi/n) - R f~(u,theta)|).
double symmetry_residual(int n, double u, double theta);

// u > cos(theta) and 0 <= theta <= pi/n.
bool fundamental_domain_contains(int n, double u, double theta);

// theta = +-theta0 + 2 pi k / n with theta0 in [0, pi/n], so that
// f~(u, theta) = element.matrix * f~(u, theta0).
struct FundamentalFold {
  double theta0;
  IsometryG element;
};

FundamentalFold fold_to_fundamental(int n, double theta);

}  // namespace zmc
