#pragma once

#include <array>
#include <span>
#include <vector>

#include "zmc/lorentz.hpp"

// Complex-coordinate description of the maximal n-noid f_n:
// Weierstrass data g = z^{n-1}, omega = i dz / (z^n - 1)^2, the null 1-form
// alpha, its closed-form primitive F = (X0, X1, X2), the integration-free polar
// formulas for f_n = Re F, and a quadrature oracle for all of the above.

namespace zmc {

// Denominator floor |z^n - 1| below which closed forms refuse to evaluate.
inline constexpr double kPunctureFloor = 1e-12;

// Minimum distance from every puncture kept by quadrature paths.
inline constexpr double kPathExclusionRadius = 0.05;

// Immutable Weierstrass data for one n >= 2.
class JorgeMeeksData {
 public:
  explicit JorgeMeeksData(int n);

  int n() const { return n_; }
  Complex zeta() const { return zeta_; }

  // zeta^j for j = 0..n-1.
  std::span<const Complex> punctures() const { return punctures_; }
  Complex puncture(int j) const;

  // Distance from z to the nearest puncture.
  double puncture_distance(Complex z) const;

 private:
  int n_;
  Complex zeta_;
  std::vector<Complex> punctures_;
};

using ComplexTriple = std::array<Complex, 3>;

// Holomorphic lift F = (X0, X1, X2). Only the real parts carry meaning; the
// imaginary parts depend on the log branch and on the integration path.
struct HolomorphicLiftValue {
  Complex X0;
  Complex X1;
  Complex X2;

  LorentzVec3 real_part() const { return {X0.real(), X1.real(), X2.real()}; }
};

// Coefficients (a0, a1, a2) of alpha = a(z) dz.
ComplexTriple alpha(const JorgeMeeksData& data, Complex z);

// Closed-form F with principal-branch logs. Re F(0) = 0.
HolomorphicLiftValue lift_closed_form(const JorgeMeeksData& data, Complex z);

struct QuadratureOptions {
  double abs_tolerance = 1e-11;  // per component, real and imaginary part
  int max_depth = 40;
};

// F(z_end) = int_0^{z_end} alpha along the polyline 0 -> waypoints... -> z_end,
// by adaptive Gauss-Kronrod 7-15 on every segment.
HolomorphicLiftValue integrate_lift_numeric(const JorgeMeeksData& data, Complex z_end,
                                            std::span<const Complex> waypoints = {},
                                            const QuadratureOptions& opts = {});

// Closed loop integral of alpha around the circle |z - zeta^j| = radius, by the
// trapezoid rule refined until two successive node counts agree.
ComplexTriple loop_integral(const JorgeMeeksData& data, int j, double radius, int samples);

// max over components of |Re of the loop integral|. Requires radius < sin(pi/n).
double period_residual(const JorgeMeeksData& data, int j, double radius, int samples);

// f_n(r e^{i theta}) from the integration-free polar formulas.
LorentzVec3 f_polar(const JorgeMeeksData& data, double r, double theta);

// Euclidean companion f_E = (Re X1, Re X2, -Im X0).
EuclideanVec3 companion_minimal(const JorgeMeeksData& data, Complex z);

struct ConformalFactors {
  double ds2;   // (1 - |g|^2)^2 |omega/dz|^2, the maximal surface
  double ds2E;  // (1 + |g|^2)^2 |omega/dz|^2, the companion
};

ConformalFactors metrics(const JorgeMeeksData& data, Complex z);

}  // namespace zmc
