#include "zmc/weierstrass.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>

#include "zmc/errors.hpp"

namespace zmc {
namespace {

constexpr Complex kI{0.0, 1.0};

Complex ipow(Complex z, int k) {
  Complex r{1.0, 0.0};
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

double ipow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

// Returns z^n - 1, throwing when it is within the puncture floor.
Complex checked_zn_minus_one(const JorgeMeeksData& data, Complex z, const char* what) {
  const Complex w = ipow(z, data.n()) - 1.0;
  if (!(std::abs(w) > kPunctureFloor)) {
    throw PunctureError(std::string(what) + ": z = (" + std::to_string(z.real()) + ", " +
                        std::to_string(z.imag()) + ") is at a puncture");
  }
  return w;
}

double segment_distance(Complex p, Complex a, Complex b) {
  const Complex d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(p - a);
  const double s = std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + s * d));
}

// Gauss-Kronrod 7-15 abscissae and weights on [-1, 1].
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the nodes kXgk[1], kXgk[3], kXgk[5], kXgk[7].
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  int depth;
  ComplexTriple value;
  double error;

  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gk15(const F& f, double a, double b, int depth) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  ComplexTriple kron{};
  ComplexTriple gauss{};
  const ComplexTriple fc = f(c);
  for (int k = 0; k < 3; ++k) {
    kron[k] = kWgk[7] * fc[k];
    gauss[k] = kWg[3] * fc[k];
  }
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kXgk[i];
    const ComplexTriple f1 = f(c - dx);
    const ComplexTriple f2 = f(c + dx);
    for (int k = 0; k < 3; ++k) {
      kron[k] += kWgk[i] * (f1[k] + f2[k]);
      if (i % 2 == 1) gauss[k] += kWg[i / 2] * (f1[k] + f2[k]);
    }
  }
  Panel p{a, b, depth, {}, 0.0};
  for (int k = 0; k < 3; ++k) {
    p.value[k] = kron[k] * h;
    const Complex diff = (kron[k] - gauss[k]) * h;
    p.error = std::max({p.error, std::abs(diff.real()), std::abs(diff.imag())});
  }
  return p;
}

}  // namespace

JorgeMeeksData::JorgeMeeksData(int n) : n_(n) {
  if (n < 2) throw InvalidArgument("JorgeMeeksData: n must be >= 2, got " + std::to_string(n));
  punctures_.resize(static_cast<std::size_t>(n));
  punctures_[0] = Complex{1.0, 0.0};
  for (int j = 1; 2 * j <= n; ++j) {
    Complex p = std::polar(1.0, 2.0 * std::numbers::pi * j / n);
    if (2 * j == n) p = Complex{-1.0, 0.0};
    punctures_[static_cast<std::size_t>(j)] = p;
    punctures_[static_cast<std::size_t>(n - j)] = std::conj(p);
  }
  zeta_ = punctures_[n > 1 ? 1 : 0];
}

Complex JorgeMeeksData::puncture(int j) const {
  if (j < 0 || j >= n_) throw InvalidArgument("puncture index " + std::to_string(j) + " out of range");
  return punctures_[static_cast<std::size_t>(j)];
}

double JorgeMeeksData::puncture_distance(Complex z) const {
  double d = std::numeric_limits<double>::infinity();
  for (const Complex& p : punctures_) d = std::min(d, std::abs(z - p));
  return d;
}

ComplexTriple alpha(const JorgeMeeksData& data, Complex z) {
  const int n = data.n();
  const Complex w = checked_zn_minus_one(data, z, "alpha");
  const Complex w2 = w * w;
  const Complex g = ipow(z, n - 1);
  const Complex g2 = g * g;
  return {-2.0 * kI * g / w2, kI * (1.0 + g2) / w2, -(1.0 - g2) / w2};
}

HolomorphicLiftValue lift_closed_form(const JorgeMeeksData& data, Complex z) {
  const int n = data.n();
  const double nd = static_cast<double>(n);
  const Complex den = nd * checked_zn_minus_one(data, z, "lift_closed_form");
  const Complex zn2 = ipow(z, n - 2);
  const double c = (nd - 1.0) / (nd * nd);

  Complex sum1{0.0, 0.0};
  Complex sum2{0.0, 0.0};
  for (int j = 0; j < n; ++j) {
    const Complex p = data.puncture(j);
    const Complex lg = std::log(z - p);
    if (j > 0) sum1 += (p - std::conj(p)) * lg;
    sum2 += (p + std::conj(p)) * lg;
  }

  HolomorphicLiftValue F;
  F.X0 = 2.0 * kI / den;
  F.X1 = -kI * (z * (zn2 + 1.0) / den + c * sum1);
  F.X2 = -z * (zn2 - 1.0) / den + c * sum2;
  return F;
}

HolomorphicLiftValue integrate_lift_numeric(const JorgeMeeksData& data, Complex z_end,
                                            std::span<const Complex> waypoints, const QuadratureOptions& opts) {
  std::vector<Complex> path;
  path.reserve(waypoints.size() + 2);
  path.push_back(Complex{0.0, 0.0});
  path.insert(path.end(), waypoints.begin(), waypoints.end());
  path.push_back(z_end);

  const std::size_t segments = path.size() - 1;
  for (std::size_t s = 0; s < segments; ++s) {
    for (const Complex& p : data.punctures()) {
      if (!(segment_distance(p, path[s], path[s + 1]) > kPathExclusionRadius)) {
        throw PathError("integrate_lift_numeric: segment " + std::to_string(s) + " passes within " +
                        std::to_string(kPathExclusionRadius) + " of a puncture");
      }
    }
  }

  ComplexTriple total{};
  const double seg_tol = opts.abs_tolerance / static_cast<double>(segments);
  for (std::size_t s = 0; s < segments; ++s) {
    const Complex a = path[s];
    const Complex d = path[s + 1] - a;
    if (d == Complex{0.0, 0.0}) continue;
    auto integrand = [&](double t) {
      ComplexTriple v = alpha(data, a + t * d);
      for (Complex& c : v) c *= d;
      return v;
    };

    std::priority_queue<Panel> panels;
    Panel first = gk15(integrand, 0.0, 1.0, 0);
    double err = first.error;
    panels.push(first);
    while (err > seg_tol) {
      Panel worst = panels.top();
      if (worst.depth >= opts.max_depth) {
        throw QuadratureError("integrate_lift_numeric: tolerance " + std::to_string(opts.abs_tolerance) +
                              " not met at refinement depth " + std::to_string(opts.max_depth));
      }
      panels.pop();
      const double mid = 0.5 * (worst.a + worst.b);
      Panel left = gk15(integrand, worst.a, mid, worst.depth + 1);
      Panel right = gk15(integrand, mid, worst.b, worst.depth + 1);
      err += left.error + right.error - worst.error;
      panels.push(left);
      panels.push(right);
    }
    // Sum panels in a fixed (position) order so the result does not depend on heap layout.
    std::vector<Panel> done;
    done.reserve(panels.size());
    while (!panels.empty()) {
      done.push_back(panels.top());
      panels.pop();
    }
    std::sort(done.begin(), done.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
    for (const Panel& p : done)
      for (int k = 0; k < 3; ++k) total[k] += p.value[k];
  }
  return {total[0], total[1], total[2]};
}

ComplexTriple loop_integral(const JorgeMeeksData& data, int j, double radius, int samples) {
  const int n = data.n();
  if (!(radius > 0.0 && radius < std::sin(std::numbers::pi / n))) {
    throw InvalidArgument("loop_integral: radius " + std::to_string(radius) +
                          " must lie in (0, sin(pi/n)) so only one puncture is enclosed");
  }
  if (samples < 64) throw InvalidArgument("loop_integral: need at least 64 samples");
  const Complex centre = data.puncture(j);

  auto trapezoid = [&](int nodes) {
    ComplexTriple acc{};
    for (int k = 0; k < nodes; ++k) {
      const double phi = 2.0 * std::numbers::pi * k / nodes;
      const Complex e = std::polar(1.0, phi);
      const Complex dz = kI * radius * e;
      const ComplexTriple a = alpha(data, centre + radius * e);
      for (int c = 0; c < 3; ++c) acc[c] += a[c] * dz;
    }
    for (Complex& c : acc) c *= 2.0 * std::numbers::pi / nodes;
    return acc;
  };

  int nodes = std::max(samples, 512);
  ComplexTriple coarse = trapezoid(nodes);
  for (;;) {
    const ComplexTriple fine = trapezoid(2 * nodes);
    double diff = 0.0;
    double scale = 1.0;
    for (int c = 0; c < 3; ++c) {
      diff = std::max(diff, std::abs(fine[c] - coarse[c]));
      scale = std::max(scale, std::abs(fine[c]));
    }
    nodes *= 2;
    if (diff <= 1e-13 * scale || nodes >= (1 << 20)) return fine;
    coarse = fine;
  }
}

double period_residual(const JorgeMeeksData& data, int j, double radius, int samples) {
  const ComplexTriple loop = loop_integral(data, j, radius, samples);
  double worst = 0.0;
  for (const Complex& c : loop) worst = std::max(worst, std::abs(c.real()));
  return worst;
}

LorentzVec3 f_polar(const JorgeMeeksData& data, double r, double theta) {
  const int n = data.n();
  const double nd = static_cast<double>(n);
  if (!(r > 0.0)) throw InvalidArgument("f_polar: r must be positive");
  const double rn = ipow(r, n);
  const double denom = rn * rn - 2.0 * rn * std::cos(n * theta) + 1.0;
  if (!(denom > 1e-14)) throw PunctureError("f_polar: (r, theta) is at a puncture");

  const double a = ipow(r, 2 * n - 1) + r;
  const double b = ipow(r, n + 1) + ipow(r, n - 1);
  const double c = (nd - 1.0) / (nd * nd);

  double log_sin = 0.0;
  double log_cos = 0.0;
  for (int j = 0; j < n; ++j) {
    const double phase = 2.0 * std::numbers::pi * j / n;
    const double ct = std::cos(theta - phase);
    const double st = std::sin(theta - phase);
    const double arg = (r - ct) * (r - ct) + st * st;
    const double lg = std::log(arg);
    if (j > 0) log_sin += lg * std::sin(phase);
    log_cos += lg * std::cos(phase);
  }

  LorentzVec3 f;
  f.t = 2.0 * rn * std::sin(n * theta) / (nd * denom);
  f.x = -(a * std::sin(theta) + b * std::sin((n - 1) * theta)) / (nd * denom) + c * log_sin;
  f.y = (-a * std::cos(theta) + b * std::cos((n - 1) * theta)) / (nd * denom) + c * log_cos;
  return f;
}

EuclideanVec3 companion_minimal(const JorgeMeeksData& data, Complex z) {
  const HolomorphicLiftValue F = lift_closed_form(data, z);
  return {F.X1.real(), F.X2.real(), -F.X0.imag()};
}

ConformalFactors metrics(const JorgeMeeksData& data, Complex z) {
  const Complex w = checked_zn_minus_one(data, z, "metrics");
  const double g2 = std::pow(std::abs(z), 2 * (data.n() - 1));
  const double omega2 = 1.0 / std::norm(w * w);
  return {(1.0 - g2) * (1.0 - g2) * omega2, (1.0 + g2) * (1.0 + g2) * omega2};
}

}  // namespace zmc
