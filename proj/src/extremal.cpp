#include "exq/extremal.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace exq {

VacuumSolution vacuum_boundary_data(const Domain& dom, double lambda) {
  if (lambda <= 0.0) throw std::invalid_argument("vacuum_boundary_data: lambda must be positive");
  VacuumSolution sol;
  sol.lambda = lambda;
  for (int k = 0; k < dom.num_contours(); ++k) {
    const Contour& c = dom.contour(k);
    const int n = c.grid_size();
    const double alpha = dom.alpha(k);
    VacuumSolution::ContourData data;
    data.v.resize(n);
    data.w.resize(n);
    // Arclength along the grid by trapezoid accumulation.
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      double t = c.grid_t(i);
      data.v[i] = std::polar(1.0, -alpha * s / lambda);
      // w = lambda dv/dz = -i alpha v u on the contour
      data.w[i] = cplx(0.0, -alpha) * data.v[i] * c.u(t);
      double t2 = c.grid_t((i + 1) % n);
      double h = two_pi / n;
      s += 0.5 * h * (c.speed(t) + c.speed(t2));
    }
    data.winding = -alpha * c.length() / lambda;
    sol.contours.push_back(std::move(data));
  }
  return sol;
}

cplx boundary_residual(const Domain& dom, const RationalFunction& phi,
                       double lambda, int k, double t) {
  const Contour& c = dom.contour(k);
  cplx z = c.eval(t);
  return std::conj(z) + cplx(0.0, dom.alpha(k) * lambda) * c.u(t) - phi(z);
}

cplx riccati_residual(const Domain& dom, const RationalFunction& phi_prime,
                      double lambda, int k, double t) {
  const Contour& c = dom.contour(k);
  cplx uk = c.u(t);
  cplx du_dz = c.u_deriv(t) / c.deriv(t);
  return uk * uk + cplx(0.0, dom.alpha(k) * lambda) * du_dz - phi_prime(c.eval(t));
}

double monodromy_sum(const Domain& dom, double lambda) {
  if (lambda <= 0.0) throw std::invalid_argument("monodromy_sum: lambda must be positive");
  double s = dom.contour(0).length();
  for (int k = 1; k < dom.num_contours(); ++k) s -= dom.contour(k).length();
  return s / (two_pi * lambda);
}

namespace {

struct FitProblem {
  Eigen::MatrixXcd A;       // column-scaled basis values at boundary samples
  Eigen::VectorXcd d;       // conj(z) at the samples
  Eigen::VectorXd col_scale;
  std::vector<cplx> sample_z;
};

FitProblem assemble(const Domain& dom, const BasisConfig& basis) {
  if (basis.n_poly < 1 || basis.m_pole < 1)
    throw std::invalid_argument("fit_best_phi: basis degrees must be >= 1");
  if (basis.samples_per_contour < 256)
    throw std::invalid_argument("fit_best_phi: need at least 256 samples per contour");
  const auto& centers = dom.hole_centers();
  const int n_cols = basis.n_poly + 1 + basis.m_pole * static_cast<int>(centers.size());
  const int rows = basis.samples_per_contour * dom.num_contours();

  FitProblem p;
  p.A.resize(rows, n_cols);
  p.d.resize(rows);
  p.sample_z.reserve(rows);
  int r = 0;
  for (int k = 0; k < dom.num_contours(); ++k) {
    const Contour& c = dom.contour(k);
    for (int i = 0; i < basis.samples_per_contour; ++i, ++r) {
      double t = two_pi * i / basis.samples_per_contour;
      cplx z = c.eval(t);
      p.sample_z.push_back(z);
      p.d(r) = std::conj(z);
      int col = 0;
      cplx zp = 1.0;
      for (int n = 0; n <= basis.n_poly; ++n) {
        p.A(r, col++) = zp;
        zp *= z;
      }
      for (cplx ctr : centers) {
        cplx dp = 1.0;
        for (int j = 1; j <= basis.m_pole; ++j) {
          dp /= (z - ctr);
          p.A(r, col++) = dp;
        }
      }
    }
  }
  p.col_scale.resize(n_cols);
  for (int j = 0; j < n_cols; ++j) {
    double s = p.A.col(j).norm() / std::sqrt(static_cast<double>(rows));
    p.col_scale(j) = (s > 0.0) ? s : 1.0;
    p.A.col(j) /= p.col_scale(j);
  }
  return p;
}

Eigen::VectorXcd weighted_solve(const FitProblem& p, const Eigen::VectorXd& w) {
  const Eigen::ArrayXd sw = w.array().sqrt();
  Eigen::MatrixXcd Aw = p.A.array().colwise() * sw.cast<cplx>();
  Eigen::VectorXcd dw = p.d.array() * sw.cast<cplx>();
  return Aw.colPivHouseholderQr().solve(dw);
}

Eigen::VectorXd residual_mags(const FitProblem& p, const Eigen::VectorXcd& x) {
  Eigen::VectorXcd r = p.d - p.A * x;
  return r.cwiseAbs();
}

}  // namespace

FitResult fit_best_phi(const Domain& dom, const BasisConfig& basis) {
  FitProblem p = assemble(dom, basis);
  const int rows = static_cast<int>(p.A.rows());

  // Stage 0: plain least squares.
  Eigen::VectorXd w = Eigen::VectorXd::Ones(rows);
  Eigen::VectorXcd x = weighted_solve(p, w);

  // p-norm homotopy: minimize sum |r|^{2p} by reweighted least squares,
  // doubling p and warm-starting each stage.
  for (int pexp = 2; pexp <= 64; pexp *= 2) {
    for (int it = 0; it < 6; ++it) {
      Eigen::VectorXd rm = residual_mags(p, x);
      double floor = 1e-14 * rm.maxCoeff() + 1e-300;
      for (int i = 0; i < rows; ++i)
        w(i) = std::pow(std::max(rm(i), floor), 2.0 * (pexp - 1));
      w /= w.maxCoeff();
      Eigen::VectorXcd x_new = weighted_solve(p, w);
      Eigen::VectorXcd x_damped = 0.5 * x + 0.5 * x_new;
      // Keep the damped iterate only if it does not increase the sup norm.
      x = (residual_mags(p, x_damped).maxCoeff() <= residual_mags(p, x_new).maxCoeff())
              ? x_damped
              : x_new;
    }
  }

  // Lawson polish: w <- w * |r|, renormalized; drives the weighted LS
  // solution toward the discrete minimax point.
  w = residual_mags(p, x);
  if (w.maxCoeff() > 0.0) w /= w.maxCoeff();
  double best_norm = residual_mags(p, x).maxCoeff();
  Eigen::VectorXcd best_x = x;
  int stall = 0;
  for (int it = 0; it < 4000 && stall < 60; ++it) {
    x = weighted_solve(p, w);
    Eigen::VectorXd rm = residual_mags(p, x);
    double norm = rm.maxCoeff();
    if (norm < best_norm - 1e-15 * std::max(1.0, best_norm)) {
      best_norm = norm;
      best_x = x;
      stall = 0;
    } else {
      ++stall;
    }
    w = w.cwiseProduct(rm);
    double wmax = w.maxCoeff();
    if (wmax <= 0.0) break;
    w /= wmax;
  }
  x = best_x;

  // Unscale and package as a RationalFunction.
  FitResult out;
  const auto& centers = dom.hole_centers();
  std::vector<cplx> poly(basis.n_poly + 1);
  int col = 0;
  for (int n = 0; n <= basis.n_poly; ++n, ++col) poly[n] = x(col) / p.col_scale(col);
  std::vector<RationalFunction::PoleGroup> groups;
  for (cplx ctr : centers) {
    RationalFunction::PoleGroup g;
    g.center = ctr;
    for (int j = 1; j <= basis.m_pole; ++j, ++col)
      g.coeffs.push_back(x(col) / p.col_scale(col));
    groups.push_back(std::move(g));
  }
  out.phi = RationalFunction(std::move(poly), std::move(groups));
  out.achieved_norm = best_norm;
  {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(p.A);
    const auto& sv = svd.singularValues();
    out.condition_estimate = sv(0) / sv(sv.size() - 1);
  }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Extremal: return "Extremal";
    case Verdict::NotExtremal: return "NotExtremal";
    default: return "Indeterminate";
  }
}

ExtremalityReport extremality_report(const Domain& dom, const BasisConfig& basis) {
  GeometricSummary g = geometric_summary(dom);
  const double diam = dom.diameter();
  if (g.lambda_min < 1e-8 * diam)
    throw std::invalid_argument("extremality_report: numerically degenerate domain "
                                "(lambda_min below 1e-8 * diameter)");
  ExtremalityReport rep;
  rep.lambda_min = g.lambda_min;
  FitResult fit = fit_best_phi(dom, basis);
  rep.fitted_phi = fit.phi;
  rep.achieved_norm = fit.achieved_norm;
  rep.monodromy_sum_over_2pi = monodromy_sum(dom, g.lambda_min);
  rep.extremal_threshold = 1e-6 * diam;
  rep.indeterminate_threshold = 1e-4 * diam;

  for (int k = 0; k < dom.num_contours(); ++k) {
    std::vector<double> prof(basis.samples_per_contour);
    for (int i = 0; i < basis.samples_per_contour; ++i) {
      double t = two_pi * i / basis.samples_per_contour;
      prof[i] = std::abs(boundary_residual(dom, fit.phi, g.lambda_min, k, t));
      rep.max_residual = std::max(rep.max_residual, prof[i]);
    }
    rep.residual_profiles.push_back(std::move(prof));
  }
  if (rep.max_residual < rep.extremal_threshold)
    rep.verdict = Verdict::Extremal;
  else if (rep.max_residual > rep.indeterminate_threshold)
    rep.verdict = Verdict::NotExtremal;
  else
    rep.verdict = Verdict::Indeterminate;
  return rep;
}

}  // namespace exq
