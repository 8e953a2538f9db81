#ifndef EXQ_GEOMETRY_HPP
#define EXQ_GEOMETRY_HPP

#include <map>
#include <optional>
#include <vector>

#include "exq/numeric.hpp"

namespace exq {

/// Closed analytic curve given by a truncated complex Fourier series
/// gamma(t) = sum_{j=-M}^{M} c_j e^{i j t}, t in [0, 2pi).
/// Construction validates immersion, (sampled) simplicity and
/// counterclockwise orientation.
class Contour {
 public:
  explicit Contour(const std::map<int, cplx>& coeffs, int samples = 512);

  cplx eval(double t) const;
  cplx deriv(double t, int order = 1) const;
  cplx tangent(double t) const;        // gamma'/|gamma'|
  double speed(double t) const;        // |gamma'|
  double curvature(double t) const;    // Im(conj(g')g'')/|g'|^3

  // u = |gamma'|/gamma' = 1/tangent, and its t-derivative (closed form).
  cplx u(double t) const;
  cplx u_deriv(double t) const;

  double length() const { return length_; }
  double signed_area() const { return signed_area_; }
  double diameter() const { return diameter_; }

  int grid_size() const { return n_; }
  double grid_t(int i) const { return two_pi * i / n_; }
  cplx grid_point(int i) const { return grid_[i]; }

  // Winding number about z (adaptive argument accumulation).
  int winding(cplx z) const;
  // Distance from z to the sampled curve.
  double distance(cplx z) const;

  const std::map<int, cplx>& coeffs() const { return coeffs_; }

 private:
  std::map<int, cplx> coeffs_;
  int n_;
  std::vector<cplx> grid_;
  double length_ = 0.0, signed_area_ = 0.0, diameter_ = 0.0;

  void validate() const;
};

/// Bounded multiply-connected domain: outer contour plus inner contours,
/// all stored counterclockwise; alpha carries orientation relative to the
/// domain (-1 for the outer component, +1 for the inner ones).
class Domain {
 public:
  Domain(Contour outer, std::vector<Contour> inners,
         std::vector<cplx> hole_centers = {});

  int num_contours() const { return 1 + static_cast<int>(inners_.size()); }
  const Contour& contour(int k) const;  // k = 0 is the outer contour
  int alpha(int k) const { return k == 0 ? -1 : 1; }
  const std::vector<cplx>& hole_centers() const { return hole_centers_; }
  double diameter() const { return contour(0).diameter(); }

 private:
  Contour outer_;
  std::vector<Contour> inners_;
  std::vector<cplx> hole_centers_;
};

struct GeometricSummary {
  double area = 0.0;
  double perimeter = 0.0;
  std::vector<double> component_lengths;
  double lambda_min = 0.0;  // 2A/P
};

GeometricSummary geometric_summary(const Domain& dom);

/// Strict membership test. Throws std::domain_error for points within
/// 1e-8 * diameter of any contour (indeterminate).
bool contains(const Domain& dom, cplx z);
/// Winding-only membership, no proximity guard (trajectory clipping).
bool contains_unchecked(const Domain& dom, cplx z);

/// Integral over the contour of (1 + alpha*lambda*kappa) ds.
double curvature_integral(const Contour& c, double lambda, int alpha);

/// L_1 - 4*pi*A/P; nonnegative for valid domains.
double isoperimetric_slack(const Domain& dom);

// Circle and annulus builders used throughout the test fixtures.
Contour circle_contour(double radius, cplx center = 0.0, int samples = 512);
Domain annulus_domain(double r1, double r2, int samples = 512);

}  // namespace exq

#endif
