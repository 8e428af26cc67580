#pragma once
// Test-side reference computations. None of these call into the library, so
// agreement with it is a real cross-check.

#include <cmath>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

namespace oracle {

constexpr double pi = std::numbers::pi;

/// Gauss curvature of the ellipsoid with semi-axes (a, b, c) at the point
/// (a cos t, b sin t, 0), from K = 1 / (a^2 b^2 c^2 |x / a^2|^4).
inline double section_curvature(double a, double b, double c, double t) {
  const double x = a * std::cos(t), y = b * std::sin(t);
  const double s = x * x / (a * a * a * a) + y * y / (b * b * b * b);
  return 1.0 / (a * a * b * b * c * c * s * s);
}

inline double section_speed(double a, double b, double t) { return std::hypot(a * std::sin(t), b * std::cos(t)); }

/// Perimeter of the ellipse with semi-axes a, b via the complete elliptic
/// integral of the second kind.
inline double ellipse_perimeter(double a, double b) {
  const double big = std::max(a, b), small = std::min(a, b);
  const double e = std::sqrt(1.0 - (small / big) * (small / big));
  return 4.0 * big * std::comp_ellint_2(e);
}

/// Rotation number of y'' + K y = 0 written in a parameter t with ds/dt = v(t):
/// the Pruefer angle obeys theta' = v (cos^2 theta + K sin^2 theta). Returns
/// theta(T_total) / (pi * arclength), integrated by classical RK4.
inline double pruefer_frequency(const std::function<double(double)>& K, const std::function<double(double)>& v,
                                double t_period, double s_period, int periods, int steps_per_period) {
  auto f = [&](double t, double th) {
    const double c = std::cos(th), s = std::sin(th);
    return v(t) * (c * c + K(t) * s * s);
  };
  const double h = t_period / steps_per_period;
  double th = 0.0, t = 0.0;
  for (long i = 0; i < static_cast<long>(periods) * steps_per_period; ++i) {
    const double k1 = f(t, th), k2 = f(t + h / 2, th + h / 2 * k1), k3 = f(t + h / 2, th + h / 2 * k2),
                 k4 = f(t + h, th + h * k3);
    th += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    t += h;
  }
  return th / (pi * s_period * periods);
}

/// Mean frequency of one coordinate-plane section (a, b, c).
inline double section_frequency(double a, double b, double c, int periods = 2000) {
  return pruefer_frequency([=](double t) { return section_curvature(a, b, c, t); },
                           [=](double t) { return section_speed(a, b, t); }, 2 * pi, ellipse_perimeter(a, b),
                           periods, 400);
}

/// 2x2 propagator of y'' + k y = 0 over a length h, acting on (y, y').
struct M2 {
  double a, b, c, d;
  M2 operator*(const M2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
};

inline M2 constant_propagator(double k, double h) {
  if (k > 0) {
    const double w = std::sqrt(k);
    return {std::cos(w * h), std::sin(w * h) / w, -w * std::sin(w * h), std::cos(w * h)};
  }
  if (k < 0) {
    const double w = std::sqrt(-k);
    return {std::cosh(w * h), std::sinh(w * h) / w, w * std::sinh(w * h), std::cosh(w * h)};
  }
  return {1.0, h, 0.0, 1.0};
}

/// Monodromy of a piecewise-constant curvature given as (k, length) pieces.
inline M2 piecewise_monodromy(const std::vector<std::pair<double, double>>& pieces) {
  M2 m{1, 0, 0, 1};
  for (const auto& [k, h] : pieces) m = constant_propagator(k, h) * m;
  return m;
}

}  // namespace oracle
