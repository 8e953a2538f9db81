#include "exq/odewkb.hpp"

#include <cmath>
#include <stdexcept>

namespace exq {

namespace {

std::vector<cplx> subdivide_path(const std::vector<cplx>& path, int nodes_per_segment) {
  if (path.size() < 2) throw std::invalid_argument("path needs at least two nodes");
  std::vector<cplx> out;
  out.push_back(path[0]);
  for (std::size_t s = 0; s + 1 < path.size(); ++s)
    for (int i = 1; i <= nodes_per_segment; ++i)
      out.push_back(path[s] + (path[s + 1] - path[s]) *
                                  (static_cast<double>(i) / nodes_per_segment));
  return out;
}

// Branch-tracked Gauss quadrature of sqrt(phi') over a chord, with the
// reference value carried across calls; subdivides until stable.
cplx tracked_chord_phase(const RationalFunction& fp, cplx a, cplx b, cplx& s_ref) {
  static const double xg[4] = {-0.8611363115940526, -0.3399810435848563,
                               0.3399810435848563, 0.8611363115940526};
  static const double wg[4] = {0.3478548451374538, 0.6521451548625461,
                               0.6521451548625461, 0.3478548451374538};
  for (int pieces = 1; pieces <= 64; pieces *= 2) {
    cplx ref = s_ref, acc = 0.0;
    bool ok = true;
    for (int p = 0; p < pieces && ok; ++p) {
      cplx pa = a + (b - a) * (static_cast<double>(p) / pieces);
      cplx pb = a + (b - a) * (static_cast<double>(p + 1) / pieces);
      cplx mid = 0.5 * (pa + pb), half = 0.5 * (pb - pa);
      for (int i = 0; i < 4; ++i) {
        cplx s = std::sqrt(fp(mid + xg[i] * half));
        if (std::abs(s - ref) > std::abs(s + ref)) s = -s;
        if (std::real(s * std::conj(ref)) <= 0.0) ok = false;
        ref = s;
        acc += wg[i] * s * half;
      }
    }
    if (ok) {
      // Accept once a doubled subdivision agrees.
      cplx ref2 = s_ref, acc2 = 0.0;
      bool ok2 = true;
      int pieces2 = pieces * 2;
      for (int p = 0; p < pieces2 && ok2; ++p) {
        cplx pa = a + (b - a) * (static_cast<double>(p) / pieces2);
        cplx pb = a + (b - a) * (static_cast<double>(p + 1) / pieces2);
        cplx mid = 0.5 * (pa + pb), half = 0.5 * (pb - pa);
        for (int i = 0; i < 4; ++i) {
          cplx s = std::sqrt(fp(mid + xg[i] * half));
          if (std::abs(s - ref2) > std::abs(s + ref2)) s = -s;
          if (std::real(s * std::conj(ref2)) <= 0.0) ok2 = false;
          ref2 = s;
          acc2 += wg[i] * s * half;
        }
      }
      if (ok2 && std::abs(acc - acc2) <= 1e-13 * (std::abs(acc2) + 1e-300) + 1e-15) {
        s_ref = ref2;
        return acc2;
      }
    }
  }
  throw std::runtime_error("wkb phase: branch tracking failed (path through a zero?)");
}

}  // namespace

PathSolution solve_ode(const RationalFunction& phi_prime, double lambda,
                       const std::vector<cplx>& path, cplx v0, cplx w0,
                       int nodes_per_segment, double rel_tol) {
  if (lambda <= 0.0) throw std::invalid_argument("solve_ode: lambda must be positive");
  PathSolution sol;
  sol.lambda = lambda;
  sol.path = subdivide_path(path, nodes_per_segment);
  sol.v.push_back(v0);
  sol.w.push_back(w0);
  state_t<2> y{v0, w0};
  for (std::size_t i = 0; i + 1 < sol.path.size(); ++i) {
    cplx a = sol.path[i], b = sol.path[i + 1];
    cplx dz = b - a;
    auto rhs = [&](double sigma, const state_t<2>& s) -> state_t<2> {
      cplx z = a + sigma * dz;
      return {dz * s[1] / lambda, dz * (-phi_prime(z) / lambda) * s[0]};
    };
    y = integrate_rk45<2>(rhs, 0.0, 1.0, y, rel_tol, 1e-300, 0.25);
    sol.v.push_back(y[0]);
    sol.w.push_back(y[1]);
  }
  return sol;
}

WKBSamples wkb_eval(const RationalFunction& phi_prime, double lambda, double eps,
                    cplx c1, cplx c2, const std::vector<cplx>& path,
                    int nodes_per_segment) {
  if (lambda <= 0.0 || eps <= 0.0)
    throw std::invalid_argument("wkb_eval: lambda and eps must be positive");
  WKBSamples out;
  out.path = subdivide_path(path, nodes_per_segment);

  cplx q_ref = std::exp(0.25 * std::log(phi_prime(out.path[0])));  // phi'^{1/4}
  cplx s_ref = q_ref * q_ref;
  cplx phase = 0.0;
  const cplx ik = cplx(0.0, 1.0) / (lambda * eps);
  const double sl = std::sqrt(lambda);
  for (std::size_t i = 0; i < out.path.size(); ++i) {
    if (i > 0) phase += tracked_chord_phase(phi_prime, out.path[i - 1], out.path[i], s_ref);
    // Quarter-root continuous with the tracked square root.
    cplx q = std::sqrt(s_ref);
    if (std::abs(q - q_ref) > std::abs(q + q_ref)) q = -q;
    q_ref = q;
    out.phase.push_back(phase);
    out.v.push_back(sl / q * (c1 * std::exp(ik * phase) + c2 * std::exp(-ik * phase)));
  }
  return out;
}

std::vector<WKBErrorRow> wkb_error_scaling(const RationalFunction& phi_prime,
                                           double lambda,
                                           const std::vector<cplx>& path,
                                           const std::vector<double>& eps_list) {
  RationalFunction fpp = phi_prime.derivative();
  std::vector<WKBErrorRow> rows;
  for (double eps : eps_list) {
    const double lam_eff = lambda * eps;
    // Exact solution with generic initial data.
    cplx v0 = 1.0, dv0 = 0.0;
    PathSolution exact = solve_ode(phi_prime, lam_eff, path, v0, lam_eff * dv0, 32, 1e-13);

    // Match C1, C2 at the path start: value and derivative of the
    // Liouville-Green approximant.
    cplx z0 = path[0];
    cplx q0 = std::exp(0.25 * std::log(phi_prime(z0)));  // phi'^{1/4}
    cplx s0 = q0 * q0;
    const cplx ik = cplx(0.0, 1.0) / lam_eff;
    const double sl = std::sqrt(lambda);
    cplx amp = sl / q0;
    cplx damp = sl * (-0.25) * fpp(z0) / (q0 * q0 * q0 * q0 * q0);  // d/dz [phi'^{-1/4}] term
    cplx a_plus = amp, a_minus = amp;
    cplx d_plus = damp + amp * ik * s0;
    cplx d_minus = damp - amp * ik * s0;
    cplx det = a_plus * d_minus - a_minus * d_plus;
    if (std::abs(det) < 1e-300) throw std::runtime_error("wkb_error_scaling: singular match");
    cplx c1 = (v0 * d_minus - a_minus * dv0) / det;
    cplx c2 = (a_plus * dv0 - v0 * d_plus) / det;

    WKBSamples approx = wkb_eval(phi_prime, lambda, eps, c1, c2, path, 32);
    double vmax = 0.0, err = 0.0;
    for (cplx v : exact.v) vmax = std::max(vmax, std::abs(v));
    for (std::size_t i = 0; i < exact.v.size(); ++i)
      err = std::max(err, std::abs(exact.v[i] - approx.v[i]));
    rows.push_back({eps, err / (vmax + 1e-300)});
  }
  return rows;
}

LocalSeries local_series(const RationalFunction& phi_prime, cplx z0, int order_m,
                         double lambda, cplx v0, cplx w0) {
  // Verify the stated order of the zero.
  auto fder = cauchy_derivatives([&](cplx z) { return phi_prime(z); }, z0,
                                 order_m, 0.25, 64);
  double fscale = 0.0;
  for (cplx d : fder) fscale = std::max(fscale, std::abs(d));
  for (int j = 0; j < order_m; ++j)
    if (std::abs(fder[j]) > 1e-7 * std::max(fscale, 1e-300))
      throw std::invalid_argument("local_series: z0 is not a zero of the stated order");

  const double r = 0.3;
  auto v_at = [&](cplx zeta) -> cplx {
    if (std::abs(zeta - z0) < 1e-14) return v0;
    PathSolution s = solve_ode(phi_prime, lambda, {z0, zeta}, v0, w0, 8, 1e-13);
    return s.v.back();
  };
  auto vder = cauchy_derivatives(v_at, z0, order_m + 2, r, 64);

  LocalSeries ls;
  double fact = 1.0;
  double scale = 0.0;
  for (int j = 0; j <= order_m + 2; ++j) {
    if (j > 0) fact *= j;
    ls.taylor.push_back(vder[j] / fact);
    scale = std::max(scale, std::abs(ls.taylor.back()) * std::pow(r, j));
  }
  ls.c1 = ls.taylor[0];
  ls.c2 = ls.taylor[1];
  ls.c_top = ls.taylor[order_m + 2];
  if (scale > 0.0)
    for (int j = 2; j <= order_m + 1; ++j)
      ls.vanishing_residual = std::max(
          ls.vanishing_residual, std::abs(ls.taylor[j]) * std::pow(r, j) / scale);
  return ls;
}

}  // namespace exq
