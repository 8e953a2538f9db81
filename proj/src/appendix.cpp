#include "exq/appendix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace exq {

cplx AnnulusOracle::v1(cplx z) const {
  return std::exp((r1 / lambda) * std::log(z / r1));
}

cplx AnnulusOracle::v2(cplx z) const {
  return std::exp((-r2 / lambda) * std::log(z / r2));
}

AnnulusOracle annulus_oracle(double r1, double r2) {
  if (!(r1 > r2 && r2 > 0.0)) throw std::invalid_argument("annulus_oracle: need R1 > R2 > 0");
  if (r1 - r2 < 1e-9 * r1)
    throw std::invalid_argument("annulus_oracle: degenerate radii (R1 - R2 too small)");
  AnnulusOracle o;
  o.r1 = r1;
  o.r2 = r2;
  o.lambda = r1 - r2;
  o.phi = RationalFunction::simple_pole(r1 * r2, 0.0);
  return o;
}

ConformalMap identity_map() {
  return {[](cplx z) { return z; }, [](cplx w) { return w; },
          [](cplx) { return cplx(1.0); }};
}

ConformalMap mobius_precomposed_map(const MobiusMap& m) {
  return {[m](cplx z) { return m(z); }, [m](cplx w) { return m.inverse(w); },
          [m](cplx z) { return m.derivative(z); }};
}

holomorphic_fn quaddiff_from_map(const ConformalMap& map, cplx C) {
  return [map, C](cplx z) {
    cplx h = map.h(z), hp = map.h_prime(z);
    if (std::abs(h) < 1e-300) throw std::domain_error("quaddiff_from_map: h vanishes");
    cplx q = hp / h;
    return C * q * q;
  };
}

cplx MuMap::operator()(cplx z) const { return map.h_inv((r1 / r2) * map.h(z)); }

cplx MuMap::derivative(cplx z, double r) const {
  auto d = cauchy_derivatives([this](cplx w) { return (*this)(w); }, z, 1, r);
  return d[1];
}

double invariance_check(const holomorphic_fn& phi_prime, const MuMap& mu,
                        const std::vector<cplx>& inner_samples, double deriv_radius) {
  double worst = 0.0;
  for (cplx z : inner_samples) {
    cplx mp = mu.derivative(z, deriv_radius);
    worst = std::max(worst, std::abs(phi_prime(z) - phi_prime(mu(z)) * mp * mp));
  }
  return worst;
}

std::vector<double> polar_curvature(const std::vector<double>& r_samples) {
  for (double r : r_samples)
    if (r <= 0.0) throw std::invalid_argument("polar_curvature: r must stay positive");
  auto r1 = spectral_derivative(r_samples);
  auto r2 = spectral_derivative(r1);
  std::vector<double> kappa(r_samples.size());
  for (std::size_t i = 0; i < r_samples.size(); ++i) {
    double r = r_samples[i], rp = r1[i], rpp = r2[i];
    kappa[i] = (r * r + 2.0 * rp * rp - r * rpp) /
               std::pow(r * r + rp * rp, 1.5);
  }
  return kappa;
}

CurvaturePairResiduals curvature_pair_checks(const Contour& inner,
                                             const Contour& outer_image_of_inner,
                                             double lambda, cplx center1, cplx center2) {
  const Contour& g2 = inner;
  const Contour& g1 = outer_image_of_inner;
  if (g1.grid_size() != g2.grid_size())
    throw std::invalid_argument("curvature_pair_checks: grids must match");
  const int n = g1.grid_size();

  std::vector<double> k1(n), k2(n), ds1(n), ds2(n), r1(n), r2(n);
  for (int i = 0; i < n; ++i) {
    double t = g1.grid_t(i);
    k1[i] = g1.curvature(t);
    k2[i] = g2.curvature(t);
    ds1[i] = g1.speed(t);
    ds2[i] = g2.speed(t);
    r1[i] = std::abs(g1.eval(t) - center1);
    r2[i] = std::abs(g2.eval(t) - center2);
  }
  auto dk1 = spectral_derivative(k1);
  auto dk2 = spectral_derivative(k2);

  CurvaturePairResiduals res;
  double id_scale = 0.0, id2_scale = 0.0;
  for (int i = 0; i < n; ++i) {
    double lhs = (1.0 - lambda * k1[i]) * ds1[i] * ds1[i];
    double rhs = (1.0 + lambda * k2[i]) * ds2[i] * ds2[i];
    res.id = std::max(res.id, std::abs(lhs - rhs));
    id_scale = std::max(id_scale, std::abs(rhs));
    double l2 = dk1[i] / ds2[i], r2v = dk2[i] / ds1[i];
    res.id2 = std::max(res.id2, std::abs(l2 - r2v));
    id2_scale = std::max(id2_scale, std::max(std::abs(l2), std::abs(r2v)));
  }
  res.id /= std::max(id_scale, 1e-300);
  if (id2_scale > 1e-9) res.id2 /= id2_scale;

  // Pointwise K from 1 - lambda k1 = K r2/r1; test its constancy.
  std::vector<double> K(n);
  for (int i = 0; i < n; ++i) K[i] = (1.0 - lambda * k1[i]) * r1[i] / r2[i];
  double k_mean = std::accumulate(K.begin(), K.end(), 0.0) / n;
  res.k_value = k_mean;
  for (int i = 0; i < n; ++i) {
    res.k_spread = std::max(res.k_spread, std::abs(K[i] - k_mean));
    res.rw = std::max(res.rw, std::abs((1.0 - lambda * k1[i]) - k_mean * r2[i] / r1[i]));
    res.oh = std::max(res.oh, std::abs((1.0 - lambda * k1[i]) * r1[i] - r2[i]));
    res.oh = std::max(res.oh, std::abs((1.0 + lambda * k2[i]) * r2[i] - r1[i]));
    res.po = std::max(res.po, std::abs(k2[i] * r2[i] - k1[i] * r1[i]));
  }
  const double pi = 0.5 * two_pi;
  double l1 = g1.length(), l2len = g2.length();
  res.q1 = std::abs(2.0 * pi * lambda - (l1 - k_mean * l2len)) / l1;
  res.q2 = std::abs(k_mean * l1 - (l2len + 2.0 * pi * lambda)) / l1;
  return res;
}

CurvaturePairResiduals concentric_curvature_pair_checks(double r1, double r2) {
  if (!(r1 > r2 && r2 > 0.0))
    throw std::invalid_argument("concentric_curvature_pair_checks: need R1 > R2 > 0");
  Contour inner = circle_contour(r2);
  Contour outer = circle_contour(r1);  // mu(z) = (R1/R2) z maps grids pointwise
  return curvature_pair_checks(inner, outer, r1 - r2, 0.0, 0.0);
}

MobiusPairResiduals mobius_pair_identities(const MobiusMap& mu, const Contour& source) {
  if (mu.is_affine())
    throw std::invalid_argument("mobius_pair_identities: map must be non-affine");
  const cplx a = mu.a(), b = mu.b(), c = mu.c();
  if (source.distance(c) < 1e-6 * source.diameter())
    throw std::invalid_argument("mobius_pair_identities: source passes through the pole");
  const int n = source.grid_size();

  std::vector<double> g1(n), g2(n), dg1(n), dg2(n), k1(n), k2(n), r1(n), r2(n);
  std::vector<double> area1_res(n), dphi2(n);

  struct Polar {
    double r, dlogr, d2logr, dphi, d2phi;
  };
  auto polar = [](cplx w, cplx wp, cplx wpp) -> Polar {
    double D = std::norm(w);
    double M = std::real(std::conj(w) * wp);
    double N = std::imag(std::conj(w) * wp);
    double Mp = std::real(std::conj(w) * wpp) + std::norm(wp);
    double Np = std::imag(std::conj(w) * wpp);
    double Dp = 2.0 * M;
    Polar p;
    p.r = std::sqrt(D);
    p.dlogr = M / D;
    p.d2logr = (Mp * D - M * Dp) / (D * D);
    p.dphi = N / D;
    p.d2phi = (Np * D - N * Dp) / (D * D);
    return p;
  };

  std::vector<cplx> z1v(n);
  for (int i = 0; i < n; ++i) {
    double t = source.grid_t(i);
    cplx z2 = source.eval(t), z2p = source.deriv(t, 1), z2pp = source.deriv(t, 2);
    cplx d = z2 - c;
    cplx mup = -b / (d * d), mupp = 2.0 * b / (d * d * d);
    cplx z1 = mu(z2);
    cplx z1p = mup * z2p;
    cplx z1pp = mupp * z2p * z2p + mup * z2pp;
    z1v[i] = z1;

    Polar p1 = polar(z1 - a, z1p, z1pp);
    Polar p2 = polar(z2 - c, z2p, z2pp);
    r1[i] = p1.r;
    r2[i] = p2.r;
    dphi2[i] = p2.dphi;
    g1[i] = p1.dlogr / p1.dphi;
    g2[i] = p2.dlogr / p2.dphi;
    dg1[i] = (p1.d2logr * p1.dphi - p1.dlogr * p1.d2phi) / (p1.dphi * p1.dphi * p1.dphi);
    dg2[i] = (p2.d2logr * p2.dphi - p2.dlogr * p2.d2phi) / (p2.dphi * p2.dphi * p2.dphi);
    // Curvatures in each curve's own polar orientation (phi increasing),
    // the convention under which the polar curvature formula holds.
    double s1 = p1.dphi >= 0.0 ? 1.0 : -1.0;
    double s2 = p2.dphi >= 0.0 ? 1.0 : -1.0;
    k2[i] = s2 * source.curvature(t);
    k1[i] = s1 * std::imag(std::conj(z1p) * z1pp) / std::pow(std::abs(z1p), 3.0);
    area1_res[i] = std::abs(std::abs(z1p) / std::abs(z2p) - p1.r / p2.r);
  }

  // The logarithmic-derivative identities divide by dphi/dt; skip the grid
  // points where the polar angle turns around (they carry no information
  // in this parameterization).
  double dphi_max = 0.0;
  for (double d : dphi2) dphi_max = std::max(dphi_max, std::abs(d));

  MobiusPairResiduals res;
  for (int i = 0; i < n; ++i) {
    res.eqa_radius = std::max(res.eqa_radius, std::abs(r1[i] * r2[i] - std::abs(b)) / std::abs(b));
    res.area1 = std::max(res.area1, area1_res[i] / (r1[i] / r2[i]));
    if (std::abs(dphi2[i]) < 0.2 * dphi_max) continue;
    res.ew1_first = std::max(res.ew1_first, std::abs(g1[i] - g2[i]));
    res.ew1_second = std::max(res.ew1_second, std::abs(dg1[i] + dg2[i]));
    res.dif = std::max(
        res.dif, std::abs(k1[i] * r1[i] - k2[i] * r2[i] +
                          2.0 * dg1[i] / std::pow(1.0 + g1[i] * g1[i], 1.5)));
  }
  // phi1 + phi2 constant: compare pointwise arguments up to winding.
  double ref = std::arg(z1v[0] - a) + std::arg(source.grid_point(0) - c);
  for (int i = 0; i < n; ++i) {
    double s = std::arg(z1v[i] - a) + std::arg(source.grid_point(i) - c);
    double d = std::remainder(s - ref, two_pi);
    res.eqa_angle = std::max(res.eqa_angle, std::abs(d));
  }
  return res;
}

}  // namespace exq
