#ifndef EXQ_APPENDIX_HPP
#define EXQ_APPENDIX_HPP

#include <functional>
#include <vector>

#include "exq/analytic.hpp"
#include "exq/geometry.hpp"

namespace exq {

/// Closed-form data for the extremal annulus R2 < |z| < R1:
/// lambda = R1 - R2, phi = R1 R2 / z, and the vacuum powers
/// v1 = (z/R1)^{R1/lambda}, v2 = (z/R2)^{-R2/lambda}.
struct AnnulusOracle {
  double r1 = 0.0, r2 = 0.0;
  double lambda = 0.0;
  RationalFunction phi;

  cplx v1(cplx z) const;
  cplx v2(cplx z) const;
};

AnnulusOracle annulus_oracle(double r1, double r2);

/// Conformal map callables: z -> w onto a round annulus R2 < |w| < R1.
struct ConformalMap {
  holomorphic_fn h, h_inv, h_prime;
};

ConformalMap identity_map();
/// h = w o m for a Mobius m (synthetic test family).
ConformalMap mobius_precomposed_map(const MobiusMap& m);

/// phi'(z) = C (h'(z)/h(z))^2 from the conformal map (quadratic-differential
/// form on a doubly-connected extremal domain).
holomorphic_fn quaddiff_from_map(const ConformalMap& map, cplx C);

/// Boundary correspondence mu(z) = h^{-1}((R1/R2) h(z)) from the inner to
/// the outer boundary component.
struct MuMap {
  ConformalMap map;
  double r1 = 0.0, r2 = 0.0;
  cplx operator()(cplx z) const;
  /// Numerical derivative via a Cauchy circle of radius r.
  cplx derivative(cplx z, double r) const;
};

/// max |phi'(z2) - phi'(mu(z2)) mu'(z2)^2| over the samples.
double invariance_check(const holomorphic_fn& phi_prime, const MuMap& mu,
                        const std::vector<cplx>& inner_samples, double deriv_radius);

/// Curvature samples for a curve r(phi) given on a uniform polar-angle grid
/// (spectral differentiation): kappa = (r^2 + 2 r'^2 - r r'') / (r^2 + r'^2)^{3/2}.
std::vector<double> polar_curvature(const std::vector<double>& r_samples);

struct CurvaturePairResiduals {
  double id = 0.0;    // (1 - l k1) ds1^2 = (1 + l k2) ds2^2
  double id2 = 0.0;   // d k1/ds2 = d k2/ds1
  double rw = 0.0;    // 1 - l k1 = K r2/r1 (constancy of the fitted K)
  double oh = 0.0;    // (1 - l k1) r1 = r2 and (1 + l k2) r2 = r1
  double po = 0.0;    // k2 r2 - k1 r1 = 0
  double q1 = 0.0;    // 2 pi l = L1 - K L2
  double q2 = 0.0;    // K L1 = L2 + 2 pi l
  double k_value = 0.0;
  double k_spread = 0.0;
};

/// Verifies the curvature-pair identity chain on a doubly-connected domain
/// under the correspondence z1(t) = mu(gamma_2(t)); polar radii are measured
/// from the given centers.
CurvaturePairResiduals curvature_pair_checks(const Contour& inner, const Contour& outer_image_of_inner,
                                             double lambda, cplx center1, cplx center2);

/// Convenience: concentric-annulus correspondence (mu(z) = (R1/R2) z).
CurvaturePairResiduals concentric_curvature_pair_checks(double r1, double r2);

struct MobiusPairResiduals {
  double eqa_radius = 0.0;  // r1 r2 = |b|
  double eqa_angle = 0.0;   // phi1 + phi2 = const
  double area1 = 0.0;       // ds1/ds2 = r1/r2
  double ew1_first = 0.0;   // d log r1/d phi1 = d log r2/d phi2
  double ew1_second = 0.0;  // (log r1)''_{phi1} = -(log r2)''_{phi2}
  double dif = 0.0;         // k1 r1 - k2 r2 + 2 (d g1/d phi1)/(1+g1^2)^{3/2} = 0
};

/// Unconditional identities for the image pair z1 = mu(z2) of an analytic
/// curve under a non-affine Mobius map; polar data measured from a (image)
/// and c (source). The source curve must stay away from the pole c.
MobiusPairResiduals mobius_pair_identities(const MobiusMap& mu, const Contour& source);

}  // namespace exq

#endif
