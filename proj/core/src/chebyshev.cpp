#include "zmc/chebyshev.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "zmc/errors.hpp"

namespace zmc::chebyshev {
namespace {

void require_degree(int n, int min_degree, const char* what) {
  if (n < min_degree) {
    throw InvalidArgument(std::string(what) + ": degree " + std::to_string(n) + " below minimum " +
                          std::to_string(min_degree));
  }
}

}  // namespace

double eval_T(int n, double x) {
  require_degree(n, 0, "eval_T");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double eval_U(int n, double x) {
  require_degree(n, 0, "eval_U");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double eval_T_derivative(int n, double x) {
  require_degree(n, 1, "eval_T_derivative");
  return static_cast<double>(n) * eval_U(n - 1, x);
}

double invert_T(int n, double y) {
  require_degree(n, 2, "invert_T");
  if (!(y >= -1.0)) {
    throw InvalidArgument("invert_T: y = " + std::to_string(y) + " is below -1, outside the monotone branch");
  }
  if (std::isinf(y)) return y;

  // On [-1, 1] the branch is u = cos(phi), phi in [0, pi/n], and T_n(u) = cos(n phi).
  // Newton is ill-conditioned next to the extremum at y = -1, so use the angle directly.
  if (y <= 1.0) return y == 1.0 ? 1.0 : std::cos(std::acos(y) / n);

  double lo = 1.0;

  double hi = 1.0;
  if (y > 0.0) hi = std::max(1.0, std::pow(2.0 * y, 1.0 / n) + 1.0);
  while (eval_T(n, hi) < y) {
    lo = hi;
    hi *= 2.0;
  }

  // Newton from the upper end; T_n is convex and increasing on the branch, so
  // iterates from above stay in the bracket. Bisection covers the remaining cases.
  double u = hi;
  for (int iter = 0; iter < 200; ++iter) {
    const double f = eval_T(n, u) - y;
    if (f == 0.0) return u;
    if (f > 0.0) {
      hi = u;
    } else {
      lo = u;
    }
    const double d = eval_T_derivative(n, u);
    double next = (d > 0.0) ? u - f / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - u);
    u = next;
    if (step <= 2.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(u))) break;
    if (hi - lo <= 2.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(u))) break;
  }
  return u;
}

double psi_product(int n, double u, double theta) {
  require_degree(n, 1, "psi_product");
  double p = std::ldexp(1.0, n - 1);
  for (int j = 0; j < n; ++j) {
    p *= u - std::cos(theta - 2.0 * std::numbers::pi * j / n);
  }
  return p;
}

double psi_factorization_residual(int n, double u, double theta) {
  require_degree(n, 1, "psi_factorization_residual");
  const double lhs = eval_T(n, u) - std::cos(n * theta);
  return std::abs(lhs - psi_product(n, u, theta));
}

double kaw_identity_residual(int m, double x) {
  require_degree(m, 1, "kaw_identity_residual");
  return std::abs(eval_U(2 * m, x) - 1.0 - 2.0 * eval_T(m + 1, x) * eval_U(m - 1, x));
}

}  // namespace zmc::chebyshev
