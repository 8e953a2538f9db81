#ifndef EXQ_EXTREMAL_HPP
#define EXQ_EXTREMAL_HPP

#include <string>
#include <vector>

#include "exq/analytic.hpp"
#include "exq/geometry.hpp"

namespace exq {

/// Boundary data of the vacuum pair on each contour: the phase function
/// v_k(s) = exp(-i alpha s / lambda) together with w_k = lambda dv_k/dz.
struct VacuumSolution {
  struct ContourData {
    std::vector<cplx> v, w;
    double winding = 0.0;  // total change of Arg(v) over the contour, in radians
  };
  double lambda = 0.0;
  std::vector<ContourData> contours;
};

VacuumSolution vacuum_boundary_data(const Domain& dom, double lambda);

/// conj(gamma_k(t)) + i alpha_k lambda u_k(t) - phi(gamma_k(t)); vanishes
/// identically iff (domain, phi, lambda) satisfies the extremality system.
cplx boundary_residual(const Domain& dom, const RationalFunction& phi,
                       double lambda, int k, double t);

/// u_k^2 + i alpha_k lambda (du_k/dt)/gamma_k'(t) - phi'(gamma_k(t)).
cplx riccati_residual(const Domain& dom, const RationalFunction& phi_prime,
                      double lambda, int k, double t);

/// (L_1 - sum_{k>=2} L_k) / (2 pi lambda); the monodromy condition holds
/// iff the value is an integer.
double monodromy_sum(const Domain& dom, double lambda);

struct BasisConfig {
  int n_poly = 6;   // polynomial degrees 0..n_poly
  int m_pole = 4;   // pole orders 1..m_pole at each hole center
  int samples_per_contour = 512;
};

struct FitResult {
  RationalFunction phi;
  double achieved_norm = 0.0;
  double condition_estimate = 0.0;
};

/// Discrete minimax fit of phi to conj(z) over boundary samples:
/// p-norm homotopy (p = 1, 2, 4, ..., 64) followed by a Lawson polish.
FitResult fit_best_phi(const Domain& dom, const BasisConfig& basis);

enum class Verdict { Extremal, NotExtremal, Indeterminate };
std::string to_string(Verdict v);

struct ExtremalityReport {
  double lambda_min = 0.0;
  RationalFunction fitted_phi;
  double achieved_norm = 0.0;
  std::vector<std::vector<double>> residual_profiles;  // |boundary_residual| per contour
  double max_residual = 0.0;
  double monodromy_sum_over_2pi = 0.0;
  Verdict verdict = Verdict::Indeterminate;
  double extremal_threshold = 0.0;       // 1e-6 * diameter
  double indeterminate_threshold = 0.0;  // 1e-4 * diameter
};

ExtremalityReport extremality_report(const Domain& dom, const BasisConfig& basis);

}  // namespace exq

#endif
