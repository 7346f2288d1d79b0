#pragma once

// Reference computations that share no code with the library: plain
// std::complex arithmetic, Girard's theorem, and explicit time stepping.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <utility>

namespace oracle {

using cd = std::complex<double>;
using Vec = std::array<double, 3>;
using Spinor = std::array<cd, 2>;

inline constexpr double pi = std::numbers::pi;

inline double wrap(double x) {
  double y = std::remainder(x, 2 * pi);
  if (y <= -pi) y += 2 * pi;
  return y;
}

inline double phase_gap(double a, double b) { return std::abs(wrap(a - b)); }

inline Vec direction(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

inline double dot(const Vec& a, const Vec& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

inline Vec cross(const Vec& a, const Vec& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline Spinor spinor(double theta, double phi) {
  return {cd(std::cos(theta / 2), 0), std::polar(std::sin(theta / 2), phi)};
}

inline cd braket(const Spinor& a, const Spinor& b) { return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1]; }

// Interior angle at vertex a of the geodesic triangle (a, b, c).
inline double vertex_angle(const Vec& a, const Vec& b, const Vec& c) {
  Vec tb, tc;
  for (int i = 0; i < 3; ++i) {
    tb[i] = b[i] - dot(a, b) * a[i];
    tc[i] = c[i] - dot(a, c) * a[i];
  }
  const double nb = std::sqrt(dot(tb, tb));
  const double nc = std::sqrt(dot(tc, tc));
  return std::acos(std::clamp(dot(tb, tc) / (nb * nc), -1.0, 1.0));
}

// Girard: area = angle sum - pi; sign from the orientation of (a, b, c).
inline double girard_solid_angle(const Vec& a, const Vec& b, const Vec& c) {
  const double excess = vertex_angle(a, b, c) + vertex_angle(b, c, a) + vertex_angle(c, a, b) - pi;
  return dot(a, cross(b, c)) >= 0 ? excess : -excess;
}

// exp(-i angle/2 n.sigma) applied to a spinor, n a unit vector.
inline Spinor rotate(const Vec& n, double angle, const Spinor& s) {
  const double c = std::cos(angle / 2);
  const double si = std::sin(angle / 2);
  const cd i(0, 1);
  const cd m00 = c - i * si * n[2];
  const cd m01 = -i * si * cd(n[0], -n[1]);
  const cd m10 = -i * si * cd(n[0], n[1]);
  const cd m11 = c + i * si * n[2];
  return {m00 * s[0] + m01 * s[1], m10 * s[0] + m11 * s[1]};
}

// Pancharatnam phase of spin precession: |+z> evolved under
// H = (1/2)(sin t sigma_x + cos t sigma_z) for time phi with classical RK4,
// minus the accumulated expected energy.
inline double precession_by_stepping(double theta, double phi, int steps) {
  const cd i(0, 1);
  const double hx = std::sin(theta) / 2;
  const double hz = std::cos(theta) / 2;
  auto deriv = [&](const Spinor& s) -> Spinor {
    return {-i * (hz * s[0] + hx * s[1]), -i * (hx * s[0] - hz * s[1])};
  };
  Spinor s{cd(1, 0), cd(0, 0)};
  const double dt = phi / steps;
  double energy_integral = 0;
  auto energy = [&](const Spinor& v) {
    return std::real(std::conj(v[0]) * (hz * v[0] + hx * v[1]) + std::conj(v[1]) * (hx * v[0] - hz * v[1]));
  };
  for (int k = 0; k < steps; ++k) {
    const double e0 = energy(s);
    Spinor k1 = deriv(s), t;
    for (int j = 0; j < 2; ++j) t[j] = s[j] + dt / 2 * k1[j];
    Spinor k2 = deriv(t);
    for (int j = 0; j < 2; ++j) t[j] = s[j] + dt / 2 * k2[j];
    Spinor k3 = deriv(t);
    for (int j = 0; j < 2; ++j) t[j] = s[j] + dt * k3[j];
    Spinor k4 = deriv(t);
    for (int j = 0; j < 2; ++j) s[j] += dt / 6 * (k1[j] + 2. * k2[j] + 2. * k3[j] + k4[j]);
    energy_integral += dt / 2 * (e0 + energy(s));
  }
  return wrap(std::arg(s[0]) + energy_integral);
}

// Least squares by normal equations (3x3, Cramer's rule) for
// I = c0 + c1 cos chi + c2 sin chi; returns (phase, visibility).
template <class Chis, class Ys>
std::pair<double, double> harmonic_fit(const Chis& chis, const Ys& ys) {
  double m[3][3] = {}, v[3] = {};
  for (std::size_t k = 0; k < chis.size(); ++k) {
    const double f[3] = {1, std::cos(chis[k]), std::sin(chis[k])};
    for (int r = 0; r < 3; ++r) {
      v[r] += f[r] * ys[k];
      for (int c = 0; c < 3; ++c) m[r][c] += f[r] * f[c];
    }
  }
  auto det = [](double a[3][3]) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  };
  const double d = det(m);
  double c[3];
  for (int col = 0; col < 3; ++col) {
    double t[3][3];
    for (int r = 0; r < 3; ++r)
      for (int q = 0; q < 3; ++q) t[r][q] = q == col ? v[r] : m[r][q];
    c[col] = det(t) / d;
  }
  return {std::atan2(c[2], c[1]), std::hypot(c[1], c[2]) / c[0]};
}

}  // namespace oracle
