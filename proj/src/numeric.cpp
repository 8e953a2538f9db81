#include "exq/numeric.hpp"

namespace exq {

std::vector<cplx> spectral_derivative(const std::vector<cplx>& f) {
  const int n = static_cast<int>(f.size());
  // Forward DFT (direct; desk-scale grids only).
  std::vector<cplx> c(n);
  for (int k = 0; k < n; ++k) {
    cplx s = 0.0;
    for (int j = 0; j < n; ++j) {
      double ang = -two_pi * k * j / n;
      s += f[j] * cplx(std::cos(ang), std::sin(ang));
    }
    c[k] = s / static_cast<double>(n);
  }
  // Multiply by i*m with wavenumbers in [-n/2, n/2); the Nyquist mode is dropped.
  std::vector<cplx> d(n, cplx(0.0, 0.0));
  for (int k = 0; k < n; ++k) {
    int m = (k <= n / 2) ? k : k - n;
    if (2 * std::abs(m) == n) continue;
    cplx ck = c[k] * cplx(0.0, static_cast<double>(m));
    for (int j = 0; j < n; ++j) {
      double ang = two_pi * k * j / n;
      d[j] += ck * cplx(std::cos(ang), std::sin(ang));
    }
  }
  return d;
}

std::vector<double> spectral_derivative(const std::vector<double>& f) {
  std::vector<cplx> fc(f.begin(), f.end());
  auto dc = spectral_derivative(fc);
  std::vector<double> d(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) d[i] = dc[i].real();
  return d;
}

}  // namespace exq
