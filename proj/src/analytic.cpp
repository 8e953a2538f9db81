#include "exq/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace exq {

RationalFunction::RationalFunction(std::vector<cplx> poly, std::vector<PoleGroup> poles)
    : poly_(std::move(poly)), poles_(std::move(poles)) {}

cplx RationalFunction::operator()(cplx z) const {
  cplx s = 0.0, zp = 1.0;
  for (cplx a : poly_) {
    s += a * zp;
    zp *= z;
  }
  for (const PoleGroup& g : poles_) {
    cplx d = z - g.center;
    if (std::abs(d) < 1e-300)
      throw std::domain_error("RationalFunction: evaluation at a pole");
    cplx dp = 1.0;
    for (cplx b : g.coeffs) {
      dp /= d;
      s += b * dp;
    }
  }
  return s;
}

RationalFunction RationalFunction::derivative() const {
  std::vector<cplx> dp;
  for (std::size_t n = 1; n < poly_.size(); ++n)
    dp.push_back(static_cast<double>(n) * poly_[n]);
  std::vector<PoleGroup> dg;
  for (const PoleGroup& g : poles_) {
    PoleGroup h;
    h.center = g.center;
    h.coeffs.assign(g.coeffs.size() + 1, cplx(0.0));
    for (std::size_t j = 1; j <= g.coeffs.size(); ++j)
      h.coeffs[j] = -static_cast<double>(j) * g.coeffs[j - 1];  // -> (z-c)^{-(j+1)}
    dg.push_back(std::move(h));
  }
  return RationalFunction(std::move(dp), std::move(dg));
}

RationalFunction RationalFunction::monomial(int degree, cplx coeff) {
  std::vector<cplx> p(degree + 1, cplx(0.0));
  p[degree] = coeff;
  return RationalFunction(std::move(p));
}

RationalFunction RationalFunction::simple_pole(cplx b, cplx center) {
  return RationalFunction({}, {PoleGroup{center, {b}}});
}

static std::vector<cplx> cauchy_pass(const holomorphic_fn& g, cplx z0, int m,
                                     double r, int nodes) {
  std::vector<cplx> out(m + 1, cplx(0.0));
  for (int i = 0; i < nodes; ++i) {
    double th = two_pi * i / nodes;
    cplx w = std::polar(r, th);
    cplx val = g(z0 + w);
    cplx wp = 1.0;
    for (int j = 0; j <= m; ++j) {
      out[j] += val / wp;
      wp *= w;
    }
  }
  double fact = 1.0;
  for (int j = 0; j <= m; ++j) {
    out[j] *= fact / nodes;
    fact *= (j + 1);
  }
  return out;
}

std::vector<cplx> cauchy_derivatives(const holomorphic_fn& g, cplx z0, int m,
                                     double r, int nodes) {
  if (m < 0 || r <= 0.0) throw std::invalid_argument("cauchy_derivatives: bad arguments");
  auto a = cauchy_pass(g, z0, m, r, nodes);
  auto b = cauchy_pass(g, z0, m, r, 2 * nodes);
  double scale = 0.0;
  for (cplx v : b) scale = std::max(scale, std::abs(v));
  for (int j = 0; j <= m; ++j)
    if (std::abs(a[j] - b[j]) > 1e-8 * std::max(scale, 1e-300))
      throw std::runtime_error("cauchy_derivatives: node doubling did not converge "
                               "(radius too large?)");
  return b;
}

cplx schwarzian(const holomorphic_fn& f, cplx z, double r) {
  auto d = cauchy_derivatives(f, z, 3, r);
  if (std::abs(d[1]) < 1e-12 * std::max(1.0, std::abs(d[0])))
    throw std::domain_error("schwarzian: f' vanishes at expansion point");
  cplx q = d[2] / d[1];
  return d[3] / d[1] - 1.5 * q * q;
}

MobiusMap MobiusMap::standard(cplx a, cplx b, cplx c) {
  if (std::abs(b) == 0.0) throw std::invalid_argument("MobiusMap: b must be nonzero");
  MobiusMap m;
  m.affine_ = false;
  m.a_ = a;
  m.b_ = b;
  m.c_ = c;
  return m;
}

MobiusMap MobiusMap::affine(cplx p, cplx q) {
  if (std::abs(p) == 0.0) throw std::invalid_argument("MobiusMap: p must be nonzero");
  MobiusMap m;
  m.affine_ = true;
  m.b_ = p;
  m.a_ = q;
  return m;
}

cplx MobiusMap::operator()(cplx z) const {
  if (affine_) return b_ * z + a_;
  cplx d = z - c_;
  if (std::abs(d) < 1e-300) throw std::domain_error("MobiusMap: evaluation at the pole");
  return a_ + b_ / d;
}

cplx MobiusMap::derivative(cplx z) const {
  if (affine_) return b_;
  cplx d = z - c_;
  return -b_ / (d * d);
}

cplx MobiusMap::inverse(cplx w) const {
  if (affine_) return (w - a_) / b_;
  cplx d = w - a_;
  if (std::abs(d) < 1e-300) throw std::domain_error("MobiusMap: inverse at the pole");
  return c_ + b_ / d;
}

double MobiusMap::pole_distance(cplx z) const {
  if (affine_) return 1e300;
  return std::abs(z - c_);
}

double mobius_compose_schwarzian_check(const holomorphic_fn& f, const MobiusMap& m,
                                       cplx z, double r) {
  holomorphic_fn g = [&](cplx w) { return m(f(w)); };
  return std::abs(schwarzian(g, z, r) - schwarzian(f, z, r));
}

double mobius_right_covariance_check(const holomorphic_fn& f, const MobiusMap& m,
                                     cplx z, double r) {
  holomorphic_fn g = [&](cplx w) { return f(m(w)); };
  cplx mp = m.derivative(z);
  return std::abs(schwarzian(g, z, r) - schwarzian(f, m(z), r) * mp * mp);
}

}  // namespace exq
