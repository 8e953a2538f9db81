#ifndef EXQ_NUMERIC_HPP
#define EXQ_NUMERIC_HPP

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace exq {

using cplx = std::complex<double>;

inline constexpr double two_pi = 6.283185307179586476925286766559;

// Trapezoid rule for a 2pi-periodic integrand sampled uniformly.
inline double periodic_trapezoid(const std::vector<double>& f) {
  double s = 0.0;
  for (double v : f) s += v;
  return s * two_pi / static_cast<double>(f.size());
}

inline cplx periodic_trapezoid(const std::vector<cplx>& f) {
  cplx s = 0.0;
  for (cplx v : f) s += v;
  return s * (two_pi / static_cast<double>(f.size()));
}

// Spectral derivative of a 2pi-periodic sample vector (direct DFT).
std::vector<cplx> spectral_derivative(const std::vector<cplx>& f);
std::vector<double> spectral_derivative(const std::vector<double>& f);

// Dormand-Prince 5(4) adaptive step integrator for small complex systems.
// Integrates y' = f(x, y) from x0 to x1 with real parameter x.
template <std::size_t K>
using state_t = std::array<cplx, K>;

template <std::size_t K>
state_t<K> axpy(const state_t<K>& y, double h, const state_t<K>& d) {
  state_t<K> r;
  for (std::size_t i = 0; i < K; ++i) r[i] = y[i] + h * d[i];
  return r;
}

template <std::size_t K, class F>
state_t<K> integrate_rk45(F&& f, double x0, double x1, state_t<K> y,
                          double rel_tol, double abs_tol, double max_step,
                          int max_steps = 2'000'000) {
  // Dormand-Prince tableau
  static const double c[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
  static const double a[7][6] = {
      {0, 0, 0, 0, 0, 0},
      {1.0 / 5, 0, 0, 0, 0, 0},
      {3.0 / 40, 9.0 / 40, 0, 0, 0, 0},
      {44.0 / 45, -56.0 / 15, 32.0 / 9, 0, 0, 0},
      {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729, 0, 0},
      {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656, 0},
      {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
  static const double b5[7] = {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192,
                               -2187.0 / 6784, 11.0 / 84, 0};
  static const double b4[7] = {5179.0 / 57600,  0,           7571.0 / 16695,
                               393.0 / 640,     -92097.0 / 339200,
                               187.0 / 2100,    1.0 / 40};

  const double dir = (x1 >= x0) ? 1.0 : -1.0;
  double x = x0;
  double h = dir * std::min(max_step, std::abs(x1 - x0));
  if (h == 0.0) return y;
  int steps = 0;
  while (dir * (x1 - x) > 0.0) {
    if (++steps > max_steps) throw std::runtime_error("integrate_rk45: step budget exhausted");
    if (dir * (x + h - x1) > 0.0) h = x1 - x;
    state_t<K> k[7];
    k[0] = f(x, y);
    for (int s = 1; s < 7; ++s) {
      state_t<K> ys = y;
      for (int j = 0; j < s; ++j)
        for (std::size_t i = 0; i < K; ++i) ys[i] += h * a[s][j] * k[j][i];
      k[s] = f(x + c[s] * h, ys);
    }
    state_t<K> y5 = y, y4 = y;
    for (int s = 0; s < 7; ++s)
      for (std::size_t i = 0; i < K; ++i) {
        y5[i] += h * b5[s] * k[s][i];
        y4[i] += h * b4[s] * k[s][i];
      }
    double err = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < K; ++i) {
      err = std::max(err, std::abs(y5[i] - y4[i]));
      scale = std::max(scale, std::max(std::abs(y[i]), std::abs(y5[i])));
    }
    const double tol = abs_tol + rel_tol * scale;
    if (err <= tol || std::abs(h) <= 1e-14 * std::abs(x1 - x0)) {
      x += h;
      y = y5;
    }
    double factor = (err > 0.0) ? 0.9 * std::pow(tol / err, 0.2) : 5.0;
    factor = std::clamp(factor, 0.2, 5.0);
    h *= factor;
    if (std::abs(h) > max_step) h = dir * max_step;
    if (std::abs(h) < 1e-300) throw std::runtime_error("integrate_rk45: step size collapse");
  }
  return y;
}

}  // namespace exq

#endif
