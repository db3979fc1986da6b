#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <ostream>

namespace zmc {

using Complex = std::complex<double>;

// Point or vector of R^3_1 with coordinates (t, x, y), signature (-,+,+).
struct LorentzVec3 {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;

  constexpr LorentzVec3 operator+(const LorentzVec3& o) const { return {t + o.t, x + o.x, y + o.y}; }
  constexpr LorentzVec3 operator-(const LorentzVec3& o) const { return {t - o.t, x - o.x, y - o.y}; }
  constexpr LorentzVec3 operator-() const { return {-t, -x, -y}; }
  constexpr LorentzVec3 operator*(double s) const { return {t * s, x * s, y * s}; }
  constexpr LorentzVec3 operator/(double s) const { return {t / s, x / s, y / s}; }
  constexpr LorentzVec3& operator+=(const LorentzVec3& o) {
    t += o.t;
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr bool operator==(const LorentzVec3&) const = default;

  constexpr double operator[](int i) const { return i == 0 ? t : (i == 1 ? x : y); }
};

constexpr LorentzVec3 operator*(double s, const LorentzVec3& v) { return v * s; }

// <v, w>_L = -v_t w_t + v_x w_x + v_y w_y.
constexpr double lorentz_inner(const LorentzVec3& v, const LorentzVec3& w) {
  return -v.t * w.t + v.x * w.x + v.y * w.y;
}

// Euclidean length of the coordinate triple; used for numerical residuals only.
inline double coord_norm(const LorentzVec3& v) { return std::hypot(v.t, v.x, v.y); }

// N with <N, v>_L = det(v, a, b) for all v; orthogonal to a and b in the Lorentz sense.
constexpr LorentzVec3 lorentz_cross(const LorentzVec3& a, const LorentzVec3& b) {
  return {-(a.x * b.y - a.y * b.x), a.y * b.t - a.t * b.y, a.t * b.x - a.x * b.t};
}

std::ostream& operator<<(std::ostream& os, const LorentzVec3& v);

// Plain Euclidean triple (companion minimal surface lives in R^3).
struct EuclideanVec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const { return std::hypot(x, y, z); }
  constexpr EuclideanVec3 operator-(const EuclideanVec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
};

// Row-major 3x3 real matrix acting on (t, x, y) column vectors.
struct Mat3 {
  std::array<std::array<double, 3>, 3> m{};

  static constexpr Mat3 identity() {
    Mat3 r;
    r.m[0][0] = r.m[1][1] = r.m[2][2] = 1.0;
    return r;
  }

  constexpr Mat3 operator*(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) s += m[i][k] * o.m[k][j];
        r.m[i][j] = s;
      }
    return r;
  }

  constexpr LorentzVec3 operator*(const LorentzVec3& v) const {
    return {m[0][0] * v.t + m[0][1] * v.x + m[0][2] * v.y,
            m[1][0] * v.t + m[1][1] * v.x + m[1][2] * v.y,
            m[2][0] * v.t + m[2][1] * v.x + m[2][2] * v.y};
  }

  constexpr Mat3 transposed() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[i][j] = m[j][i];
    return r;
  }

  // Largest absolute entry difference.
  double max_abs_diff(const Mat3& o) const;
};

// diag(-1, 1, 1).
constexpr Mat3 lorentz_metric() {
  Mat3 r;
  r.m[0][0] = -1.0;
  r.m[1][1] = 1.0;
  r.m[2][2] = 1.0;
  return r;
}

// Reflection S = diag(-1, -1, 1).
constexpr Mat3 reflection_s() {
  Mat3 r;
  r.m[0][0] = -1.0;
  r.m[1][1] = -1.0;
  r.m[2][2] = 1.0;
  return r;
}

// Rotation R by 2*pi/n about the t-axis; fixes the first coordinate.
Mat3 rotation_r(int n);

// Rotation R^k computed directly from the angle 2*pi*k/n.
Mat3 rotation_r_power(int n, int k);

}  // namespace zmc
