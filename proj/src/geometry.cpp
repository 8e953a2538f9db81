#include "exq/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace exq {

Contour::Contour(const std::map<int, cplx>& coeffs, int samples)
    : coeffs_(coeffs), n_(samples) {
  if (n_ < 16) throw std::invalid_argument("Contour: need at least 16 samples");
  for (const auto& [j, c] : coeffs_)
    if (std::abs(j) > 64) throw std::invalid_argument("Contour: Fourier degree exceeds 64");
  grid_.resize(n_);
  std::vector<double> speed_grid(n_), area_grid(n_);
  for (int i = 0; i < n_; ++i) {
    double t = grid_t(i);
    grid_[i] = eval(t);
    cplx d = deriv(t);
    speed_grid[i] = std::abs(d);
    area_grid[i] = 0.5 * std::imag(std::conj(grid_[i]) * d);
  }
  length_ = periodic_trapezoid(speed_grid);
  signed_area_ = periodic_trapezoid(area_grid);
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      diameter_ = std::max(diameter_, std::abs(grid_[i] - grid_[j]));
  validate();
}

void Contour::validate() const {
  double min_speed = 1e300, max_speed = 0.0;
  for (int i = 0; i < n_; ++i) {
    double s = std::abs(deriv(grid_t(i)));
    min_speed = std::min(min_speed, s);
    max_speed = std::max(max_speed, s);
  }
  if (min_speed <= 1e-9 * max_speed)
    throw std::invalid_argument("Contour: not an immersion (|gamma'| degenerates)");
  if (signed_area_ <= 0.0)
    throw std::invalid_argument("Contour: orientation must be counterclockwise");
  // Sampled simplicity heuristic: distant parameters, close points.
  const double sep = two_pi / 16.0;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) {
      double dt = grid_t(j) - grid_t(i);
      dt = std::min(dt, two_pi - dt);
      if (dt > sep && std::abs(grid_[i] - grid_[j]) < 1e-8 * diameter_)
        throw std::invalid_argument("Contour: self-intersection detected");
    }
}

cplx Contour::eval(double t) const {
  cplx s = 0.0;
  for (const auto& [j, c] : coeffs_) s += c * std::polar(1.0, j * t);
  return s;
}

cplx Contour::deriv(double t, int order) const {
  cplx s = 0.0;
  for (const auto& [j, c] : coeffs_) {
    cplx f = std::pow(cplx(0.0, static_cast<double>(j)), order);
    s += c * f * std::polar(1.0, j * t);
  }
  return s;
}

cplx Contour::tangent(double t) const {
  cplx d = deriv(t);
  double a = std::abs(d);
  if (a < 1e-300) throw std::domain_error("Contour::tangent: degenerate derivative");
  return d / a;
}

double Contour::speed(double t) const { return std::abs(deriv(t)); }

double Contour::curvature(double t) const {
  cplx d1 = deriv(t, 1), d2 = deriv(t, 2);
  double a = std::abs(d1);
  if (a < 1e-300) throw std::domain_error("Contour::curvature: degenerate derivative");
  return std::imag(std::conj(d1) * d2) / (a * a * a);
}

cplx Contour::u(double t) const {
  cplx d = deriv(t);
  double a = std::abs(d);
  if (a < 1e-300) throw std::domain_error("Contour::u: degenerate derivative");
  return a / d;
}

cplx Contour::u_deriv(double t) const {
  // d/dt [ |g'|/g' ] = u * ( Re(conj(g')g'')/|g'|^2 - g''/g' )
  cplx d1 = deriv(t, 1), d2 = deriv(t, 2);
  double a2 = std::norm(d1);
  return u(t) * (std::real(std::conj(d1) * d2) / a2 - d2 / d1);
}

int Contour::winding(cplx z) const {
  double total = 0.0;
  // Accumulate argument increments, bisecting any step that turns too fast.
  std::function<double(double, double, cplx, cplx, int)> seg =
      [&](double t0, double t1, cplx w0, cplx w1, int depth) -> double {
    double d = std::arg(w1 / w0);
    if (std::abs(d) < 1.5 || depth > 48) {
      if (depth > 48) throw std::runtime_error("Contour::winding: refinement failed (point on curve?)");
      return d;
    }
    double tm = 0.5 * (t0 + t1);
    cplx wm = eval(tm) - z;
    return seg(t0, tm, w0, wm, depth + 1) + seg(tm, t1, wm, w1, depth + 1);
  };
  for (int i = 0; i < n_; ++i) {
    double t0 = grid_t(i), t1 = grid_t(i + 1 == n_ ? 0 : i + 1);
    if (i + 1 == n_) t1 = two_pi;
    cplx w0 = grid_[i] - z, w1 = grid_[(i + 1) % n_] - z;
    if (std::abs(w0) < 1e-300 || std::abs(w1) < 1e-300)
      throw std::runtime_error("Contour::winding: point on curve");
    total += seg(t0, t1, w0, w1, 0);
  }
  return static_cast<int>(std::lround(total / two_pi));
}

double Contour::distance(cplx z) const {
  double d = 1e300;
  for (const cplx& p : grid_) d = std::min(d, std::abs(p - z));
  return d;
}

Domain::Domain(Contour outer, std::vector<Contour> inners,
               std::vector<cplx> hole_centers)
    : outer_(std::move(outer)), inners_(std::move(inners)),
      hole_centers_(std::move(hole_centers)) {
  for (std::size_t a = 0; a < inners_.size(); ++a) {
    // Inner contour strictly inside the outer one.
    for (int i = 0; i < inners_[a].grid_size(); ++i)
      if (outer_.winding(inners_[a].grid_point(i)) != 1)
        throw std::invalid_argument("Domain: inner contour not inside outer contour");
    // Pairwise disjoint (and non-nested) inner contours.
    for (std::size_t b = a + 1; b < inners_.size(); ++b)
      for (int i = 0; i < inners_[b].grid_size(); ++i)
        if (inners_[a].winding(inners_[b].grid_point(i)) != 0)
          throw std::invalid_argument("Domain: inner contours overlap");
  }
  if (hole_centers_.empty()) {
    for (const Contour& c : inners_) {
      cplx s = 0.0;
      for (int i = 0; i < c.grid_size(); ++i) s += c.grid_point(i);
      hole_centers_.push_back(s / static_cast<double>(c.grid_size()));
    }
  }
  if (hole_centers_.size() != inners_.size())
    throw std::invalid_argument("Domain: one hole center per inner contour required");
  for (std::size_t a = 0; a < inners_.size(); ++a)
    if (inners_[a].winding(hole_centers_[a]) != 1)
      throw std::invalid_argument("Domain: hole center not inside its contour");
}

const Contour& Domain::contour(int k) const {
  if (k == 0) return outer_;
  return inners_.at(k - 1);
}

GeometricSummary geometric_summary(const Domain& dom) {
  GeometricSummary g;
  g.area = dom.contour(0).signed_area();
  for (int k = 0; k < dom.num_contours(); ++k) {
    if (k > 0) g.area -= dom.contour(k).signed_area();
    g.component_lengths.push_back(dom.contour(k).length());
    g.perimeter += dom.contour(k).length();
  }
  if (g.area <= 0.0) throw std::invalid_argument("geometric_summary: nonpositive area");
  g.lambda_min = 2.0 * g.area / g.perimeter;
  return g;
}

bool contains(const Domain& dom, cplx z) {
  const double guard = 1e-8 * dom.diameter();
  for (int k = 0; k < dom.num_contours(); ++k)
    if (dom.contour(k).distance(z) < guard)
      throw std::domain_error("contains: point indeterminate (too close to boundary)");
  return contains_unchecked(dom, z);
}

bool contains_unchecked(const Domain& dom, cplx z) {
  if (dom.contour(0).winding(z) != 1) return false;
  for (int k = 1; k < dom.num_contours(); ++k)
    if (dom.contour(k).winding(z) != 0) return false;
  return true;
}

double curvature_integral(const Contour& c, double lambda, int alpha) {
  const int n = c.grid_size();
  std::vector<double> f(n);
  for (int i = 0; i < n; ++i) {
    double t = c.grid_t(i);
    f[i] = (1.0 + alpha * lambda * c.curvature(t)) * c.speed(t);
  }
  return periodic_trapezoid(f);
}

double isoperimetric_slack(const Domain& dom) {
  GeometricSummary g = geometric_summary(dom);
  return g.component_lengths[0] - 4.0 * 3.14159265358979323846 * g.area / g.perimeter;
}

Contour circle_contour(double radius, cplx center, int samples) {
  if (radius <= 0.0) throw std::invalid_argument("circle_contour: radius must be positive");
  std::map<int, cplx> c;
  c[1] = radius;
  if (center != cplx(0.0)) c[0] = center;
  return Contour(c, samples);
}

Domain annulus_domain(double r1, double r2, int samples) {
  if (!(r1 > r2 && r2 > 0.0)) throw std::invalid_argument("annulus_domain: need R1 > R2 > 0");
  return Domain(circle_contour(r1, 0.0, samples), {circle_contour(r2, 0.0, samples)},
                {cplx(0.0)});
}

}  // namespace exq
