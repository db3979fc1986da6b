#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "zmc/chebyshev.hpp"
#include "zmc/errors.hpp"

using namespace zmc::chebyshev;
using std::numbers::pi;

TEST(Chebyshev, SpecExamplesT) {
  EXPECT_DOUBLE_EQ(eval_T(1, 0.7), 0.7);
  for (int n = 0; n <= kMaxTestedDegree; ++n) EXPECT_EQ(eval_T(n, 1.0), 1.0) << n;
  EXPECT_NEAR(eval_T(3, 0.3), std::cos(3 * std::acos(0.3)), 1e-15);
}

TEST(Chebyshev, SpecExamplesU) {
  EXPECT_EQ(eval_U(0, -3.7), 1.0);
  for (int n = 1; n <= kMaxTestedDegree; ++n) {
    EXPECT_EQ(eval_U(n - 1, 1.0), n) << n;
    if (n >= 2) EXPECT_NEAR(eval_U(n - 1, std::cos(pi / n)), 0.0, 1e-15 * n * n) << n;
  }
}

TEST(Chebyshev, NegativeDegreeRejected) {
  EXPECT_THROW(eval_T(-1, 0.5), zmc::InvalidArgument);
  EXPECT_THROW(eval_U(-2, 0.5), zmc::InvalidArgument);
  EXPECT_THROW(eval_T_derivative(0, 0.5), zmc::InvalidArgument);
}

TEST(Chebyshev, Derivative) {
  EXPECT_DOUBLE_EQ(eval_T_derivative(1, 0.4), 1.0);
  EXPECT_DOUBLE_EQ(eval_T_derivative(2, 1.0), 4.0);
  const double h = 1e-6;
  const double fd = (eval_T(5, 0.9 + h) - eval_T(5, 0.9 - h)) / (2 * h);
  EXPECT_NEAR(eval_T_derivative(5, 0.9), fd, 1e-8);
}

TEST(Chebyshev, TrigIdentitiesProperty) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> phi(0.0, 2 * pi);
  for (int n = 0; n <= 12; ++n) {
    for (int i = 0; i < 1000; ++i) {
      const double p = phi(rng);
      ASSERT_NEAR(eval_T(n, std::cos(p)), std::cos(n * p), 1e-12);
      ASSERT_NEAR(eval_U(n, std::cos(p)) * std::sin(p), std::sin((n + 1) * p), 1e-12);
    }
  }
}

TEST(Chebyshev, InvertSpecExamples) {
  for (int n = 2; n <= 12; ++n) {
    EXPECT_EQ(invert_T(n, 1.0), 1.0);
    EXPECT_NEAR(invert_T(n, -1.0), std::cos(pi / n), 1e-10);
  }
  const double u = invert_T(4, 7.25);
  EXPECT_LT(std::abs(eval_T(4, u) - 7.25), 1e-11);
}

TEST(Chebyshev, InvertRejectsOutOfRange) {
  EXPECT_THROW(invert_T(3, -1.0000001), zmc::InvalidArgument);
  EXPECT_THROW(invert_T(1, 0.5), zmc::InvalidArgument);
  EXPECT_THROW(invert_T(3, std::nan("")), zmc::InvalidArgument);
}

TEST(Chebyshev, InvertRoundTripLogSampled) {
  for (int n = 2; n <= 12; ++n) {
    for (int i = 0; i <= 400; ++i) {
      const double y = -1.0 + std::pow(10.0, -8.0 + 11.0 * i / 400.0);
      const double u = invert_T(n, y);
      ASSERT_GE(u, std::cos(pi / n));
      ASSERT_LT(std::abs(eval_T(n, u) - y), 1e-9 * std::max(1.0, std::abs(y))) << n << " " << y;
    }
  }
}

TEST(Chebyshev, InvertHugeArgument) {
  const double u = invert_T(3, 1e12);
  EXPECT_NEAR(eval_T(3, u) / 1e12, 1.0, 1e-12);
}

TEST(Chebyshev, PsiFactorizationExamples) {
  EXPECT_LT(psi_factorization_residual(2, 1.0, 0.0), 1e-12);
  EXPECT_LT(psi_factorization_residual(3, 1.7, 0.9), 1e-10);
  const double th = 0.3;
  const double u = std::cos(th - 2 * pi * 2 / 6);
  EXPECT_LT(psi_factorization_residual(6, u, th), 1e-10);
  EXPECT_NEAR(psi_product(6, u, th), 0.0, 1e-14);
}

TEST(Chebyshev, PsiFactorizationGrid) {
  for (int n = 2; n <= 12; ++n)
    for (double u = -4.0; u <= 4.0; u += 0.25)
      for (double th = 0.0; th < 2 * pi; th += 0.37) {
        const double scale = std::max(1.0, std::abs(eval_T(n, u)));
        ASSERT_LT(psi_factorization_residual(n, u, th) / scale, 1e-12) << n << " " << u << " " << th;
      }
}

TEST(Chebyshev, KawIdentity) {
  EXPECT_EQ(kaw_identity_residual(1, 1.0), 0.0);
  EXPECT_LT(kaw_identity_residual(2, 0.6), 1e-12);
  EXPECT_LT(kaw_identity_residual(3, -0.2), 1e-12);
  for (int m = 1; m <= 10; ++m)
    for (double x = -4.0; x <= 4.0; x += 0.125) {
      ASSERT_LT(kaw_identity_residual(m, x) / std::max(1.0, std::abs(eval_U(2 * m, x))), 1e-13);
    }
  EXPECT_THROW(kaw_identity_residual(0, 0.5), zmc::InvalidArgument);
}

TEST(Chebyshev, MonotoneOnBranch) {
  for (int n = 2; n <= 12; ++n) {
    double prev = -INFINITY;
    const double a = std::cos(pi / n);
    for (int i = 0; i < 1000; ++i) {
      const double v = eval_T(n, a + (4.0 - a) * i / 999.0);
      ASSERT_GT(v, prev);
      prev = v;
    }
  }
}

TEST(Chebyshev, PositiveUAboveLargestRoot) {
  for (int n = 2; n <= 12; ++n)
    for (int m = 0; m <= n - 1; ++m)
      for (int i = 0; i < 200; ++i) {
        const double x = std::cos(pi / n) + 1e-9 + (4.0 - std::cos(pi / n)) * i / 199.0;
        ASSERT_GT(eval_U(m, x), 0.0) << n << " " << m << " " << x;
      }
}
