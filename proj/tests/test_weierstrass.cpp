#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "zmc/errors.hpp"
#include "zmc/weierstrass.hpp"

using namespace zmc;
using std::numbers::pi;
using namespace std::complex_literals;

namespace {

double dist(const LorentzVec3& a, const LorentzVec3& b) { return coord_norm(a - b); }

// Independent evaluation of alpha with Horner-form powers.
ComplexTriple alpha_horner(int n, Complex z) {
  Complex zn1 = 1.0;
  for (int k = 0; k < n - 1; ++k) zn1 = zn1 * z;
  const Complex zn = zn1 * z;
  const Complex d = (zn - 1.0) * (zn - 1.0);
  const Complex g2 = zn1 * zn1;
  return {-2.0i * zn1 / d, 1.0i * (1.0 + g2) / d, -(1.0 - g2) / d};
}

}  // namespace

TEST(Weierstrass, DataInvariants) {
  for (int n = 2; n <= 12; ++n) {
    const JorgeMeeksData d(n);
    EXPECT_NEAR(std::abs(d.zeta()), 1.0, 1e-14);
    EXPECT_LT(std::abs(std::pow(d.zeta(), n) - 1.0), 1e-14);
    ASSERT_EQ(d.punctures().size(), static_cast<std::size_t>(n));
    EXPECT_EQ(d.puncture(0), Complex(1.0, 0.0));
    for (int j = 0; j < n; ++j) {
      EXPECT_LT(std::abs(std::pow(d.puncture(j), n) - 1.0), 1e-14);
      EXPECT_LT(std::abs(d.puncture((n - j) % n) - std::conj(d.puncture(j))), 1e-14);
    }
  }
  EXPECT_THROW(JorgeMeeksData(1), InvalidArgument);
}

TEST(Weierstrass, AlphaExamples) {
  const ComplexTriple a = alpha(JorgeMeeksData(2), 0.0);
  EXPECT_EQ(a[0], Complex(0.0));
  EXPECT_NEAR(std::abs(a[1] - 1.0i), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(a[2] + 1.0), 0.0, 1e-15);

  const ComplexTriple b = alpha(JorgeMeeksData(3), 0.5i);
  EXPECT_LT(std::abs(-b[0] * b[0] + b[1] * b[1] + b[2] * b[2]), 1e-12);

  const Complex z = 0.3 + 0.4i;
  const ComplexTriple c = alpha(JorgeMeeksData(4), z);
  const ComplexTriple h = alpha_horner(4, z);
  for (int k = 0; k < 3; ++k) EXPECT_LT(std::abs(c[k] - h[k]), 1e-13 * std::abs(h[k]) + 1e-15);
}

TEST(Weierstrass, PunctureProximity) {
  const JorgeMeeksData d(3);
  EXPECT_THROW(alpha(d, d.puncture(1)), PunctureError);
  EXPECT_THROW(lift_closed_form(d, 1.0), PunctureError);
  EXPECT_THROW(f_polar(d, 1.0, 2 * pi / 3), PunctureError);
  EXPECT_THROW(metrics(d, d.puncture(2)), PunctureError);
}

TEST(Weierstrass, LiftAtOrigin) {
  for (int n = 2; n <= 8; ++n) {
    const LorentzVec3 f = lift_closed_form(JorgeMeeksData(n), 0.0).real_part();
    EXPECT_NEAR(coord_norm(f), 0.0, 1e-15) << n;
  }
}

TEST(Weierstrass, LiftN2MatchesPolar) {
  const JorgeMeeksData d(2);
  EXPECT_LT(dist(lift_closed_form(d, 0.5).real_part(), f_polar(d, 0.5, 0.0)), 1e-14);
}

TEST(Weierstrass, LiftMatchesQuadrature) {
  const JorgeMeeksData d(3);
  const Complex z = 0.3 + 0.2i;
  EXPECT_LT(dist(lift_closed_form(d, z).real_part(), integrate_lift_numeric(d, z).real_part()), 1e-9);
  EXPECT_LT(dist(lift_closed_form(d, 0.5).real_part(), integrate_lift_numeric(d, 0.5).real_part()), 1e-9);
}

TEST(Weierstrass, QuadratureEmptyPathAndPathIndependence) {
  const HolomorphicLiftValue zero = integrate_lift_numeric(JorgeMeeksData(2), 0.0);
  EXPECT_EQ(zero.X0, Complex(0.0));
  EXPECT_EQ(zero.X1, Complex(0.0));
  EXPECT_EQ(zero.X2, Complex(0.0));

  const JorgeMeeksData d(3);
  const std::vector<Complex> via = {0.3i};
  const LorentzVec3 a = integrate_lift_numeric(d, 0.5).real_part();
  const LorentzVec3 b = integrate_lift_numeric(d, 0.5, via).real_part();
  EXPECT_LT(dist(a, b), 1e-9);
}

TEST(Weierstrass, QuadratureAroundPunctureKeepsRealPart) {
  // Loop once around zeta^1 on the way to the end point: only imaginary parts change.
  const JorgeMeeksData d(3);
  const Complex p = d.puncture(1);
  std::vector<Complex> way;
  for (int k = 0; k <= 8; ++k) way.push_back(p + 0.3 * std::polar(1.0, -pi / 2 + 2 * pi * k / 8));
  const Complex end = p + 0.3 * std::polar(1.0, -pi / 2);
  const HolomorphicLiftValue looped = integrate_lift_numeric(d, end, way);
  const HolomorphicLiftValue direct = integrate_lift_numeric(d, end, std::vector<Complex>{way.front()});
  EXPECT_LT(dist(looped.real_part(), direct.real_part()), 1e-9);
  EXPECT_GT(std::abs(looped.X2.imag() - direct.X2.imag()), 1e-3);
}

TEST(Weierstrass, QuadraturePathTooClose) {
  const JorgeMeeksData d(3);
  EXPECT_THROW(integrate_lift_numeric(d, 0.97), PathError);
  EXPECT_THROW(integrate_lift_numeric(d, 1.5), PathError);
}

TEST(Weierstrass, QuadratureDepthExhausted) {
  QuadratureOptions opts;
  opts.abs_tolerance = 1e-30;
  opts.max_depth = 2;
  EXPECT_THROW(integrate_lift_numeric(JorgeMeeksData(3), 0.5, {}, opts), QuadratureError);
}

TEST(Weierstrass, PeriodCondition) {
  EXPECT_LT(period_residual(JorgeMeeksData(2), 0, 0.3, 512), 1e-8);
  EXPECT_LT(period_residual(JorgeMeeksData(5), 3, 0.2, 512), 1e-8);
  for (int n = 2; n <= 8; ++n) {
    const JorgeMeeksData d(n);
    for (int j = 0; j < n; ++j) EXPECT_LT(period_residual(d, j, 0.5 * std::sin(pi / n), 512), 1e-8);
  }
}

TEST(Weierstrass, LoopIntegralImaginaryParts) {
  // a0 dz is exact; a1 and a2 pick up 2 pi i times their log coefficients.
  const JorgeMeeksData d(3);
  const double c = 2.0 / 9.0;
  const ComplexTriple l = loop_integral(d, 1, 0.1, 512);
  EXPECT_LT(std::abs(l[0].real()), 1e-8);
  EXPECT_LT(std::abs(l[0].imag()), 1e-8);
  EXPECT_NEAR(l[1].imag(), 4 * pi * c * std::sin(2 * pi / 3), 1e-10);
  EXPECT_NEAR(l[2].imag(), 4 * pi * c * std::cos(2 * pi / 3), 1e-10);
}

TEST(Weierstrass, LoopIntegralContract) {
  const JorgeMeeksData d(3);
  EXPECT_THROW(loop_integral(d, 0, std::sin(pi / 3), 512), InvalidArgument);
  EXPECT_THROW(loop_integral(d, 0, 0.0, 512), InvalidArgument);
  EXPECT_THROW(loop_integral(d, 0, 0.1, 32), InvalidArgument);
}

TEST(Weierstrass, PolarExamples) {
  for (int n = 2; n <= 6; ++n) {
    const JorgeMeeksData d(n);
    for (double r : {0.2, 0.5, 0.8, 1.3})
      for (double th : {0.1, 0.7, 2.0}) {
        EXPECT_LT(dist(f_polar(d, r, th), f_polar(d, 1.0 / r, th)), 1e-11);
      }
  }
  const JorgeMeeksData d3(3);
  EXPECT_LT(dist(f_polar(d3, 0.5, 0.7), lift_closed_form(d3, std::polar(0.5, 0.7)).real_part()), 1e-11);
  const LorentzVec3 g = f_polar(JorgeMeeksData(2), 0.5, pi / 3);
  EXPECT_NEAR(g.t, g.x * std::tanh(2 * g.y), 1e-11);
}

TEST(Weierstrass, PolarSymmetries) {
  for (int n = 2; n <= 8; ++n) {
    const JorgeMeeksData d(n);
    const Mat3 s = reflection_s();
    const Mat3 r = rotation_r(n);
    for (double rad : {0.3, 0.9, 1.7})
      for (double th = 0.05; th < 2 * pi; th += 0.41) {
        const LorentzVec3 f = f_polar(d, rad, th);
        EXPECT_LT(dist(f_polar(d, rad, -th), s * f), 1e-11 * std::max(1.0, coord_norm(f)));
        EXPECT_LT(dist(f_polar(d, rad, th + 2 * pi / n), r * f), 1e-11 * std::max(1.0, coord_norm(f)));
      }
  }
}

TEST(Weierstrass, Companion) {
  const JorgeMeeksData d(3);
  const HolomorphicLiftValue f0 = lift_closed_form(d, 0.0);
  const EuclideanVec3 c0 = companion_minimal(d, 0.0);
  EXPECT_NEAR(c0.x, 0.0, 1e-15);
  EXPECT_NEAR(c0.y, 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(c0.z, -f0.X0.imag());
  const EuclideanVec3 on_circle = companion_minimal(d, std::polar(1.0, pi / 3));
  EXPECT_TRUE(std::isfinite(on_circle.norm()));
  // Growth toward the end at zeta is like 1 / (1 - s); the oracle gives 2.8 at s = 0.9.
  double prev = 0.0;
  for (double s : {0.9, 0.99, 0.999}) {
    const double norm = companion_minimal(d, s * d.zeta()).norm();
    EXPECT_GT(norm, 5.0 * prev);
    prev = norm;
  }
  EXPECT_GT(companion_minimal(d, 0.99 * d.zeta()).norm(), 10.0);
}

TEST(Weierstrass, Metrics) {
  for (int n = 2; n <= 6; ++n) {
    const ConformalFactors m = metrics(JorgeMeeksData(n), std::polar(1.0, 0.3));
    EXPECT_NEAR(m.ds2, 0.0, 1e-14);
    EXPECT_GT(m.ds2E, 0.0);
  }
  const ConformalFactors m0 = metrics(JorgeMeeksData(2), 0.0);
  EXPECT_DOUBLE_EQ(m0.ds2, 1.0);
  EXPECT_DOUBLE_EQ(m0.ds2E, 1.0);
  const ConformalFactors m4 = metrics(JorgeMeeksData(4), std::polar(0.5, 1.0));
  EXPECT_LT(m4.ds2, m4.ds2E);
}

TEST(Weierstrass, CompanionIsConformalWithDs2E) {
  // |d f_E / dx|^2 = ds2E at z (x the real coordinate), checked by central differences.
  const JorgeMeeksData d(4);
  const Complex z = 0.4 + 0.25i;
  const double h = 1e-5;
  const EuclideanVec3 a = companion_minimal(d, z + h);
  const EuclideanVec3 b = companion_minimal(d, z - h);
  const double dx = (a - b).norm() / (2 * h);
  EXPECT_NEAR(dx * dx / metrics(d, z).ds2E, 1.0, 1e-8);
}
