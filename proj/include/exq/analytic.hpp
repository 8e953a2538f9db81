#ifndef EXQ_ANALYTIC_HPP
#define EXQ_ANALYTIC_HPP

#include <functional>
#include <vector>

#include "exq/numeric.hpp"

namespace exq {

using holomorphic_fn = std::function<cplx(cplx)>;

/// Polynomial part plus pole parts at designated centers:
/// f(z) = sum_n a_n z^n + sum_k sum_j b_{k,j} (z - c_k)^{-j}.
class RationalFunction {
 public:
  struct PoleGroup {
    cplx center;
    std::vector<cplx> coeffs;  // coeffs[j-1] multiplies (z-c)^{-j}
  };

  RationalFunction() = default;
  RationalFunction(std::vector<cplx> poly, std::vector<PoleGroup> poles = {});

  cplx operator()(cplx z) const;
  RationalFunction derivative() const;

  const std::vector<cplx>& poly() const { return poly_; }
  const std::vector<PoleGroup>& poles() const { return poles_; }

  static RationalFunction monomial(int degree, cplx coeff = 1.0);
  /// b / (z - center)
  static RationalFunction simple_pole(cplx b, cplx center = 0.0);

 private:
  std::vector<cplx> poly_;
  std::vector<PoleGroup> poles_;
};

/// Taylor derivatives g^(0..m)(z0) of a black-box holomorphic evaluator via
/// the Cauchy integral on a circle of radius r (64-node trapezoid, verified
/// by node doubling).
std::vector<cplx> cauchy_derivatives(const holomorphic_fn& g, cplx z0, int m,
                                     double r, int nodes = 64);

/// Schwarzian derivative S(f) = f'''/f' - (3/2)(f''/f')^2 at z, with the
/// derivatives taken on a Cauchy circle of radius r.
cplx schwarzian(const holomorphic_fn& f, cplx z, double r);

/// Mobius map, either z -> a + b/(z-c) or the affine variant z -> p z + q.
class MobiusMap {
 public:
  static MobiusMap standard(cplx a, cplx b, cplx c);
  static MobiusMap affine(cplx p, cplx q);

  cplx operator()(cplx z) const;
  cplx derivative(cplx z) const;
  cplx inverse(cplx w) const;

  bool is_affine() const { return affine_; }
  cplx a() const { return a_; }
  cplx b() const { return b_; }
  cplx c() const { return c_; }
  /// Distance from z to the pole (infinite for the affine branch).
  double pole_distance(cplx z) const;

 private:
  bool affine_ = false;
  cplx a_, b_, c_;  // affine branch stores p in b_, q in a_
};

/// |S(m o f)(z) - S(f)(z)|; Schwarzians are invariant under left
/// composition with a Mobius map.
double mobius_compose_schwarzian_check(const holomorphic_fn& f, const MobiusMap& m,
                                       cplx z, double r);

/// |S(f o m)(z) - S(f)(m(z)) m'(z)^2| (right-composition covariance).
double mobius_right_covariance_check(const holomorphic_fn& f, const MobiusMap& m,
                                     cplx z, double r);

}  // namespace exq

#endif
