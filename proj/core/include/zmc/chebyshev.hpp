#pragma once

// Chebyshev polynomials of the first and second kind, evaluated by the
// three-term recurrence so that arguments outside [-1, 1] behave uniformly.
//
// Degrees up to kMaxTestedDegree are covered by the identity tests; larger
// degrees evaluate fine but recurrence error growth is not contract-tested.

namespace zmc::chebyshev {

inline constexpr int kMaxTestedDegree = 64;

// Absolute tolerance used for polynomial identities.
inline constexpr double kIdentityTolerance = 1e-12;

// T_n(x).
double eval_T(int n, double x);

// U_n(x).
double eval_U(int n, double x);

// d/dx T_n(x) = n U_{n-1}(x). Requires n >= 1.
double eval_T_derivative(int n, double x);

// Inverse of T_n restricted to its monotone branch [cos(pi/n), inf).
// Requires n >= 2 and y >= -1; throws InvalidArgument otherwise.
double invert_T(int n, double y);

// |T_n(u) - cos(n theta) - 2^{n-1} prod_j (u - cos(theta - 2 pi j / n))|.
double psi_factorization_residual(int n, double u, double theta);

// 2^{n-1} prod_{j=0}^{n-1} (u - cos(theta - 2 pi j / n)); equals T_n(u) - cos(n theta)
// but without the cancellation near the roots.
double psi_product(int n, double u, double theta);

// |U_{2m}(x) - 1 - 2 T_{m+1}(x) U_{m-1}(x)|, m >= 1.
double kaw_identity_residual(int m, double x);

}  // namespace zmc::chebyshev
