#include "zmc/lorentz.hpp"

#include <algorithm>
#include <numbers>

namespace zmc {

std::ostream& operator<<(std::ostream& os, const LorentzVec3& v) {
  return os << "(" << v.t << ", " << v.x << ", " << v.y << ")";
}

double Mat3::max_abs_diff(const Mat3& o) const {
  double d = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) d = std::max(d, std::abs(m[i][j] - o.m[i][j]));
  return d;
}

Mat3 rotation_r(int n) { return rotation_r_power(n, 1); }

Mat3 rotation_r_power(int n, int k) {
  const double a = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
  const double c = std::cos(a);
  const double s = std::sin(a);
  Mat3 r;
  r.m[0][0] = 1.0;
  r.m[1][1] = c;
  r.m[1][2] = s;
  r.m[2][1] = -s;
  r.m[2][2] = c;
  return r;
}

}  // namespace zmc
