#ifndef EXQ_ODEWKB_HPP
#define EXQ_ODEWKB_HPP

#include <vector>

#include "exq/analytic.hpp"

namespace exq {

/// Solution samples of v'' = -(phi'/lambda^2) v along a polyline, as the
/// first-order pair (v, w = lambda v').
struct PathSolution {
  std::vector<cplx> path;  // sample points (polyline nodes, subdivided)
  std::vector<cplx> v, w;
  double lambda = 0.0;
};

/// Integrates the first-order system v' = w/lambda, w' = -(phi'/lambda) v
/// along the polyline (arclength parameterization, adaptive stepping).
/// nodes_per_segment controls the output sampling density.
PathSolution solve_ode(const RationalFunction& phi_prime, double lambda,
                       const std::vector<cplx>& path, cplx v0, cplx w0,
                       int nodes_per_segment = 32, double rel_tol = 1e-12);

/// Liouville-Green approximant along a path from its first node:
/// (sqrt(lambda)/phi'^{1/4}) [C1 e^{(i/(lambda eps)) Phi} + C2 e^{-...}],
/// with Phi the branch-tracked accumulated sqrt(phi') phase. Returns samples
/// at the same nodes as solve_ode with the same nodes_per_segment.
struct WKBSamples {
  std::vector<cplx> path;
  std::vector<cplx> v;
  std::vector<cplx> phase;  // accumulated int sqrt(phi') dz
};

WKBSamples wkb_eval(const RationalFunction& phi_prime, double lambda, double eps,
                    cplx c1, cplx c2, const std::vector<cplx>& path,
                    int nodes_per_segment = 32);

struct WKBErrorRow {
  double eps = 0.0;
  double sup_error = 0.0;  // relative to max |v_exact|
};

/// For each eps, matches C1, C2 of the LG approximant to the exact solution
/// of v'' = -(phi'/(lambda eps)^2) v at the path start (value and derivative)
/// and reports the sup-norm relative error along the path.
std::vector<WKBErrorRow> wkb_error_scaling(const RationalFunction& phi_prime,
                                           double lambda,
                                           const std::vector<cplx>& path,
                                           const std::vector<double>& eps_list);

struct LocalSeries {
  cplx c1, c2, c_top;                // v(z0), v'(z0), coefficient of (z-z0)^{m+2}
  std::vector<cplx> taylor;          // coefficients 0..m+2
  double vanishing_residual = 0.0;   // max relative size of orders 2..m+1
};

/// Taylor structure of an ODE solution near a zero z0 of phi' of order m:
/// orders 2..m+1 vanish; the leading correction enters at order m+2.
LocalSeries local_series(const RationalFunction& phi_prime, cplx z0, int order_m,
                         double lambda, cplx v0, cplx w0);

}  // namespace exq

#endif
