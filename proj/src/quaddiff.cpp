#include "exq/quaddiff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace exq {

namespace {

// Argument change of f along the straight segment [a, b], by adaptive
// bisection until each sub-step turns by less than ~0.8 rad.
double arg_change(const RationalFunction& f, cplx a, cplx b, cplx fa, cplx fb,
                  int depth) {
  double d = std::arg(fb / fa);
  if (std::abs(d) < 0.8) return d;
  if (depth > 48)
    throw std::runtime_error("find_zeros: argument tracking failed (zero on contour?)");
  cplx m = 0.5 * (a + b);
  cplx fm = f(m);
  if (std::abs(fm) == 0.0)
    throw std::runtime_error("find_zeros: exact zero on counting contour");
  return arg_change(f, a, m, fa, fm, depth + 1) + arg_change(f, m, b, fm, fb, depth + 1);
}

double arg_change_edge(const RationalFunction& f, cplx a, cplx b, int coarse = 16) {
  double total = 0.0;
  cplx prev = a, fprev = f(a);
  for (int i = 1; i <= coarse; ++i) {
    cplx p = a + (b - a) * (static_cast<double>(i) / coarse);
    cplx fp = f(p);
    total += arg_change(f, prev, p, fprev, fp, 0);
    prev = p;
    fprev = fp;
  }
  return total;
}

int pole_order_of(const RationalFunction::PoleGroup& g) {
  for (int j = static_cast<int>(g.coeffs.size()); j >= 1; --j)
    if (std::abs(g.coeffs[j - 1]) > 0.0) return j;
  return 0;
}

// Zeros-minus-poles winding over the rectangle; pole orders of the rational
// function are known exactly, so the zero count follows.
int rect_zero_count(const RationalFunction& f, cplx lo, cplx hi) {
  const double diag = std::abs(hi - lo);
  // Grow the rectangle slightly if f nearly vanishes on an edge sample.
  for (int attempt = 0; attempt < 8; ++attempt) {
    double eps = (attempt == 0) ? 0.0 : diag * 1e-6 * std::pow(4.0, attempt - 1);
    cplx l = lo - cplx(eps, eps), h = hi + cplx(eps, eps);
    cplx corners[5] = {l, cplx(h.real(), l.imag()), h, cplx(l.real(), h.imag()), l};
    double scale = 0.0, min_abs = 1e300;
    double w = 0.0;
    try {
      for (int e = 0; e < 4; ++e)
        for (int i = 0; i < 16; ++i) {
          cplx p = corners[e] + (corners[e + 1] - corners[e]) * (i / 16.0);
          double v = std::abs(f(p));
          scale = std::max(scale, v);
          min_abs = std::min(min_abs, v);
        }
      if (min_abs <= 1e-12 * scale && attempt < 7) continue;
      for (int e = 0; e < 4; ++e) w += arg_change_edge(f, corners[e], corners[e + 1]);
    } catch (const std::exception&) {
      // Edge ran through a zero or pole; retry on the grown rectangle.
      if (attempt < 7) continue;
      throw;
    }
    int net = static_cast<int>(std::lround(w / two_pi));
    int poles = 0;
    for (const auto& g : f.poles()) {
      cplx c = g.center;
      if (c.real() > l.real() && c.real() < h.real() && c.imag() > l.imag() &&
          c.imag() < h.imag())
        poles += pole_order_of(g);
    }
    return net + poles;
  }
  throw std::runtime_error("find_zeros: could not perturb counting rectangle off a zero");
}

cplx newton_polish(const RationalFunction& f, const RationalFunction& fp,
                   const RationalFunction& fpp, cplx z0) {
  // Newton on h = f/f', which has a simple zero for any multiplicity.
  for (int it = 0; it < 60; ++it) {
    cplx fv = f(z0), fpv = fp(z0);
    if (std::abs(fpv) == 0.0) break;
    cplx h = fv / fpv;
    cplx hp = 1.0 - fv * fpp(z0) / (fpv * fpv);
    if (std::abs(hp) < 1e-14) break;
    cplx step = h / hp;
    z0 -= step;
    if (std::abs(step) < 1e-16 * (1.0 + std::abs(z0))) break;
  }
  return z0;
}

void subdivide(const RationalFunction& f, const RationalFunction& fp,
               const RationalFunction& fpp, cplx lo, cplx hi, int count,
               double scale0, int depth, std::vector<ZeroOfPhiPrime>& out) {
  if (count == 0) return;
  if (depth > 40) throw std::runtime_error("find_zeros: bisection depth exceeded");
  if (std::abs(hi - lo) < 1e-6 * scale0) {
    cplx z = newton_polish(f, fp, fpp, 0.5 * (lo + hi));
    out.push_back({z, count});
    return;
  }
  // Split into quadrants; retry with an offset center if counts disagree
  // (zero sitting on a split line).
  for (int attempt = 0; attempt < 6; ++attempt) {
    cplx c = 0.5 * (lo + hi) +
             std::abs(hi - lo) * 0.013 * static_cast<double>(attempt) * cplx(1.0, 0.7);
    cplx q_lo[4] = {lo, cplx(c.real(), lo.imag()), cplx(lo.real(), c.imag()), c};
    cplx q_hi[4] = {c, cplx(hi.real(), c.imag()), cplx(c.real(), hi.imag()), hi};
    int counts[4] = {0, 0, 0, 0}, total = 0;
    bool ok = true;
    for (int q = 0; q < 4 && ok; ++q) {
      try {
        counts[q] = rect_zero_count(f, q_lo[q], q_hi[q]);
        total += counts[q];
      } catch (const std::exception&) {
        ok = false;
      }
    }
    if (ok && total == count) {
      for (int q = 0; q < 4; ++q)
        subdivide(f, fp, fpp, q_lo[q], q_hi[q], counts[q], scale0, depth + 1, out);
      return;
    }
  }
  throw std::runtime_error("find_zeros: could not isolate zeros by subdivision");
}

}  // namespace

int zero_count(const RationalFunction& phi_prime, cplx lo, cplx hi) {
  return rect_zero_count(phi_prime, lo, hi);
}

std::vector<ZeroOfPhiPrime> find_zeros(const RationalFunction& phi_prime, cplx lo,
                                       cplx hi) {
  RationalFunction fp = phi_prime.derivative();
  RationalFunction fpp = fp.derivative();
  int count = rect_zero_count(phi_prime, lo, hi);
  std::vector<ZeroOfPhiPrime> out;
  subdivide(phi_prime, fp, fpp, lo, hi, count, std::abs(hi - lo), 0, out);
  // Merge polished duplicates (the same zero isolated through adjacent cells).
  std::vector<ZeroOfPhiPrime> merged;
  for (const auto& z : out) {
    bool dup = false;
    for (auto& m : merged)
      if (std::abs(m.location - z.location) < 1e-8 * std::abs(hi - lo)) {
        dup = true;
        break;
      }
    if (!dup) merged.push_back(z);
  }
  return merged;
}

std::vector<cplx> sqrt_tracked(const RationalFunction& phi_prime,
                               const std::vector<cplx>& path, int initial_sign) {
  if (path.empty()) return {};
  std::vector<cplx> out;
  out.reserve(path.size());
  cplx s = std::sqrt(phi_prime(path[0]));
  if (initial_sign < 0) s = -s;
  out.push_back(s);
  for (std::size_t i = 1; i < path.size(); ++i) {
    // Refine the segment until consecutive branch picks stay within pi/2.
    cplx prev = out.back();
    cplx a = path[i - 1], b = path[i];
    std::size_t pieces = 1;
    for (;;) {
      cplx ref = prev, val = prev;
      bool ok = true;
      for (std::size_t p = 1; p <= pieces; ++p) {
        cplx z = a + (b - a) * (static_cast<double>(p) / pieces);
        cplx r = std::sqrt(phi_prime(z));
        if (std::abs(r - ref) > std::abs(r + ref)) r = -r;
        if (std::real(r * std::conj(ref)) <= 0.0) {
          ok = false;
          break;
        }
        ref = r;
        val = r;
      }
      if (ok) {
        out.push_back(val);
        break;
      }
      pieces *= 2;
      if (pieces > 4096)
        throw std::runtime_error("sqrt_tracked: branch ambiguity (path through a zero?)");
    }
  }
  return out;
}

namespace {

// Right-hand side of the trajectory ODE with nearest-value branch selection.
struct TrajectoryField {
  const RationalFunction& fp;
  ArcKind kind;
  cplx s_ref;
  bool ambiguous = false;

  cplx operator()(cplx z) {
    cplx s = std::sqrt(fp(z));
    if (std::abs(s - s_ref) > std::abs(s + s_ref)) s = -s;
    if (std::real(s * std::conj(s_ref)) <= 0.0) ambiguous = true;
    double a = std::abs(s);
    if (a < 1e-300) {
      ambiguous = true;
      return 0.0;
    }
    cplx dir = std::conj(s) / a;
    return (kind == ArcKind::Plus) ? dir : cplx(0.0, 1.0) * dir;
  }
};

// One Dormand-Prince 5(4) step of z' = field(z); returns (z_next, error).
std::pair<cplx, double> dp45_step(TrajectoryField& field, cplx z, double h) {
  static const double a[7][6] = {
      {0, 0, 0, 0, 0, 0},
      {1.0 / 5, 0, 0, 0, 0, 0},
      {3.0 / 40, 9.0 / 40, 0, 0, 0, 0},
      {44.0 / 45, -56.0 / 15, 32.0 / 9, 0, 0, 0},
      {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729, 0, 0},
      {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656, 0},
      {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
  static const double b5[7] = {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192,
                               -2187.0 / 6784, 11.0 / 84, 0};
  static const double b4[7] = {5179.0 / 57600, 0, 7571.0 / 16695, 393.0 / 640,
                               -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};
  cplx k[7];
  k[0] = field(z);
  for (int s = 1; s < 7; ++s) {
    cplx zs = z;
    for (int j = 0; j < s; ++j) zs += h * a[s][j] * k[j];
    k[s] = field(zs);
  }
  cplx z5 = z, z4 = z;
  for (int s = 0; s < 7; ++s) {
    z5 += h * b5[s] * k[s];
    z4 += h * b4[s] * k[s];
  }
  return {z5, std::abs(z5 - z4)};
}

// Gauss-Legendre 4-point quadrature of the tracked sqrt(phi') over a chord.
cplx chord_phase(const RationalFunction& fp, cplx a, cplx b, cplx& s_ref) {
  static const double xg[4] = {-0.8611363115940526, -0.3399810435848563,
                               0.3399810435848563, 0.8611363115940526};
  static const double wg[4] = {0.3478548451374538, 0.6521451548625461,
                               0.6521451548625461, 0.3478548451374538};
  cplx mid = 0.5 * (a + b), half = 0.5 * (b - a);
  cplx acc = 0.0, ref = s_ref;
  for (int i = 0; i < 4; ++i) {
    cplx s = std::sqrt(fp(mid + xg[i] * half));
    if (std::abs(s - ref) > std::abs(s + ref)) s = -s;
    ref = s;
    acc += wg[i] * s;
  }
  s_ref = ref;
  return acc * half;
}

double drift_part(cplx phase, ArcKind kind) {
  return (kind == ArcKind::Plus) ? phase.imag() : phase.real();
}

Arc trace_impl(const RationalFunction& phi_prime, cplx start, ArcKind kind,
               const TraceOptions& opts, const cplx* seed_dir) {
  Arc arc;
  arc.kind = kind;
  const double scale = opts.scale;
  const double max_step = (opts.max_step > 0.0) ? opts.max_step : 1e-2 * scale;
  const double closure_eps = 1e-6 * scale;
  const double zero_capture = 1e-4 * scale;
  const double capture_radius = 10.0 * max_step;

  cplx s0 = std::sqrt(phi_prime(start));
  if (seed_dir) {
    // Pick the branch whose induced direction aligns with the seed.
    cplx d_plus = std::conj(s0) / std::abs(s0);
    cplx dir = (kind == ArcKind::Plus) ? d_plus : cplx(0.0, 1.0) * d_plus;
    if (std::real(dir * std::conj(*seed_dir)) < 0.0) s0 = -s0;
  }
  TrajectoryField field{phi_prime, kind, s0, false};
  cplx z = start;
  arc.points.push_back(z);
  cplx dir_start = field(z);
  field.ambiguous = false;

  double h = max_step;
  double drift_acc = 0.0;
  bool in_fine_mode = false;
  bool fine_mode_spent = false;  // one closest-approach pass per capture entry
  int steps = 0;

  auto near_a_zero = [&](cplx p) {
    if (!opts.zeros) return false;
    for (const auto& zr : *opts.zeros)
      if (std::abs(p - zr.location) < 2.0 * zero_capture) return true;
    return false;
  };
  bool left_start_zero = !near_a_zero(start);

  while (arc.length < opts.max_length) {
    if (++steps > 4'000'000)
      throw std::runtime_error("trace_trajectory: step budget exhausted");

    if (in_fine_mode) {
      // Fixed small steps through the neighborhood of the start point,
      // looking for the closest approach.
      const double hf = std::max(1e-5 * scale, closure_eps);
      double best = 1e300;
      cplx best_dir = 0.0;
      int fine_steps = 0;
      while (fine_steps < 300000) {
        ++fine_steps;
        cplx z_old = z;
        auto [z_new, err] = dp45_step(field, z, hf);
        (void)err;
        if (field.ambiguous)
          throw std::runtime_error("trace_trajectory: branch collapse near start");
        cplx s_new = std::sqrt(phi_prime(z_new));
        if (std::abs(s_new - field.s_ref) > std::abs(s_new + field.s_ref)) s_new = -s_new;
        cplx ref = field.s_ref;
        drift_acc += drift_part(chord_phase(phi_prime, z_old, z_new, ref), kind);
        field.s_ref = s_new;
        arc.length += std::abs(z_new - z_old);
        // Perpendicular distance from the start point to this chord.
        cplx seg = z_new - z_old;
        double tproj = std::clamp(
            std::real(std::conj(seg) * (start - z_old)) / std::norm(seg), 0.0, 1.0);
        double dseg = std::abs(start - (z_old + tproj * seg));
        if (dseg < best) {
          best = dseg;
          best_dir = seg / std::abs(seg);
        }
        z = z_new;
        if ((fine_steps % 64) == 0) arc.points.push_back(z);
        if (std::abs(z - start) > capture_radius) break;  // passed through
      }
      in_fine_mode = false;
      fine_mode_spent = true;
      if (best < closure_eps && std::real(best_dir * std::conj(dir_start)) > 0.999) {
        arc.points.push_back(start);
        arc.end = ArcEnd::Closed;
        arc.drift = std::abs(drift_acc);
        return arc;
      }
      continue;
    }

    cplx z_old = z;
    auto [z_new, err] = dp45_step(field, z, h);
    double tol = opts.rel_tol * std::max(scale, std::abs(z)) + 1e-15 * scale;
    if (field.ambiguous || err > tol) {
      bool amb = field.ambiguous;
      field.ambiguous = false;
      if (amb)
        h *= 0.5;
      else
        h *= std::clamp(0.9 * std::pow(tol / (err + 1e-300), 0.2), 0.1, 1.0);
      if (h < 1e-12 * scale)
        throw std::runtime_error("trace_trajectory: step size collapse near singularity");
      continue;
    }
    // Accept the step.
    cplx s_new = std::sqrt(phi_prime(z_new));
    if (std::abs(s_new - field.s_ref) > std::abs(s_new + field.s_ref)) s_new = -s_new;
    cplx ref = field.s_ref;
    drift_acc += drift_part(chord_phase(phi_prime, z_old, z_new, ref), kind);
    field.s_ref = s_new;
    arc.length += std::abs(z_new - z_old);
    z = z_new;
    arc.points.push_back(z);
    h = std::min(max_step, h * std::clamp(0.9 * std::pow(tol / (err + 1e-300), 0.2), 0.2, 5.0));

    if (!left_start_zero) left_start_zero = !near_a_zero(z);

    // Boundary exit: clip to the crossing by bisection on the membership test.
    if (opts.domain && !contains_unchecked(*opts.domain, z)) {
      cplx inside = z_old, outside = z;
      // Stop well short of machine precision: the winding test degrades for
      // points essentially on the contour.
      while (std::abs(outside - inside) > 1e-9 * opts.scale) {
        cplx mid = 0.5 * (inside + outside);
        (contains_unchecked(*opts.domain, mid) ? inside : outside) = mid;
      }
      arc.points.back() = 0.5 * (inside + outside);
      arc.end = ArcEnd::Boundary;
      arc.drift = std::abs(drift_acc);
      return arc;
    }
    // Capture by a zero.
    if (opts.zeros && left_start_zero) {
      for (std::size_t j = 0; j < opts.zeros->size(); ++j)
        if (std::abs(z - (*opts.zeros)[j].location) < zero_capture) {
          arc.end = ArcEnd::Zero;
          arc.end_zero = static_cast<int>(j);
          arc.points.push_back((*opts.zeros)[j].location);
          arc.drift = std::abs(drift_acc);
          return arc;
        }
    }
    // Closure detection.
    double d = std::abs(z - start);
    if (d > capture_radius) fine_mode_spent = false;
    if (!fine_mode_spent && d < capture_radius && arc.length > 4.0 * capture_radius &&
        std::real(field(z) * std::conj(dir_start)) > 0.9) {
      field.ambiguous = false;
      in_fine_mode = true;
    }
  }
  arc.end = ArcEnd::MaxLength;
  arc.drift = std::abs(drift_acc);
  return arc;
}

}  // namespace

Arc trace_trajectory(const RationalFunction& phi_prime, cplx start, ArcKind kind,
                     const TraceOptions& opts) {
  return trace_impl(phi_prime, start, kind, opts, nullptr);
}

std::vector<double> departure_angles(const RationalFunction& phi_prime,
                                     const ZeroOfPhiPrime& zero, ArcKind kind) {
  const int m = zero.order;
  std::vector<cplx> der;
  double r = 0.05;
  for (int attempt = 0;; ++attempt) {
    try {
      der = cauchy_derivatives([&](cplx z) { return phi_prime(z); }, zero.location, m, r);
      break;
    } catch (const std::runtime_error&) {
      r *= 0.25;
      if (attempt >= 6) throw;
    }
  }
  double fact = 1.0;
  for (int j = 2; j <= m; ++j) fact *= j;
  cplx a = der[m] / fact;
  double arg_a = std::arg(a);
  std::vector<double> out;
  for (int j = 0; j < m + 2; ++j) {
    double th = (two_pi * j - arg_a) / (m + 2);
    if (kind == ArcKind::Minus) th += two_pi / (2.0 * (m + 2));  // bisectors
    out.push_back(th);
  }
  return out;
}

Arc trace_from_zero(const RationalFunction& phi_prime,
                    const std::vector<ZeroOfPhiPrime>& zeros, int zero_index,
                    ArcKind kind, int direction_index, const TraceOptions& opts) {
  const ZeroOfPhiPrime& z0 = zeros[zero_index];
  auto angles = departure_angles(phi_prime, z0, kind);
  double th = angles.at(direction_index);
  cplx seed_dir = std::polar(1.0, th);
  cplx start = z0.location + std::polar(5e-4 * opts.scale, th);

  TraceOptions local = opts;
  local.zeros = &zeros;
  Arc arc = trace_impl(phi_prime, start, kind, local, &seed_dir);
  arc.start_zero = zero_index;
  arc.departure_angle = th;
  arc.points.insert(arc.points.begin(), z0.location);
  return arc;
}

StokesGraph stokes_graph(const RationalFunction& phi_prime, const Domain& dom,
                         TraceOptions opts) {
  const Contour& outer = dom.contour(0);
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (int i = 0; i < outer.grid_size(); ++i) {
    cplx p = outer.grid_point(i);
    xmin = std::min(xmin, p.real());
    xmax = std::max(xmax, p.real());
    ymin = std::min(ymin, p.imag());
    ymax = std::max(ymax, p.imag());
  }
  double pad = 1e-3 * (xmax - xmin);
  StokesGraph g;
  auto all =
      find_zeros(phi_prime, cplx(xmin - pad, ymin - pad), cplx(xmax + pad, ymax + pad));
  for (const auto& z : all) {
    bool on_boundary = false;
    for (int k = 0; k < dom.num_contours(); ++k)
      if (dom.contour(k).distance(z.location) < 1e-6 * dom.diameter()) on_boundary = true;
    if (on_boundary || contains_unchecked(dom, z.location)) g.zeros.push_back(z);
  }
  if (opts.scale == 1.0) opts.scale = dom.diameter();
  opts.domain = &dom;
  for (int zi = 0; zi < static_cast<int>(g.zeros.size()); ++zi) {
    const int m = g.zeros[zi].order;
    for (ArcKind kind : {ArcKind::Plus, ArcKind::Minus})
      for (int j = 0; j < m + 2; ++j)
        g.arcs.push_back(trace_from_zero(phi_prime, g.zeros, zi, kind, j, opts));
  }
  return g;
}

std::vector<double> boundary_metric_check(const Domain& dom, const RationalFunction& phi,
                                          double lambda) {
  RationalFunction fp = phi.derivative();
  std::vector<double> out;
  for (int k = 0; k < dom.num_contours(); ++k) {
    const Contour& c = dom.contour(k);
    double worst = 0.0;
    for (int i = 0; i < c.grid_size(); ++i) {
      double t = c.grid_t(i);
      cplx tau = c.tangent(t);
      double lhs = 1.0 + lambda * dom.alpha(k) * c.curvature(t);
      worst = std::max(worst, std::abs(fp(c.eval(t)) * tau * tau - lhs));
    }
    out.push_back(worst);
  }
  return out;
}

TrajectoryClassification classify(const StokesGraph& graph, const Domain& dom,
                                  const RationalFunction& phi_prime,
                                  TraceOptions opts) {
  TrajectoryClassification cls;
  bool graph_clean = true;
  for (const Arc& a : graph.arcs)
    if (a.kind == ArcKind::Plus &&
        (a.end == ArcEnd::Boundary || a.end == ArcEnd::MaxLength))
      graph_clean = false;

  if (opts.scale == 1.0) opts.scale = dom.diameter();
  opts.domain = &dom;
  opts.zeros = &graph.zeros;

  // Generic seed points between boundary components.
  std::vector<cplx> seeds;
  auto push_seed = [&](cplx p) {
    for (const auto& z : graph.zeros)
      if (std::abs(p - z.location) < 5e-2 * opts.scale) return;
    if (!contains_unchecked(dom, p)) return;
    seeds.push_back(p);
  };
  const Contour& outer = dom.contour(0);
  if (dom.num_contours() > 1) {
    for (int k = 1; k < dom.num_contours(); ++k)
      for (double t : {0.0, 1.7, 3.9})
        for (double s : {0.35, 0.5, 0.65})
          push_seed(outer.eval(t) * (1.0 - s) + dom.contour(k).eval(t) * s);
  } else {
    cplx centroid = 0.0;
    for (int i = 0; i < outer.grid_size(); ++i) centroid += outer.grid_point(i);
    centroid /= static_cast<double>(outer.grid_size());
    for (double t : {0.0, 1.7, 3.9})
      for (double s : {0.4, 0.6}) push_seed(centroid + s * (outer.eval(t) - centroid));
  }
  for (cplx s : seeds) {
    Arc a = trace_trajectory(phi_prime, s, ArcKind::Plus, opts);
    if (a.end == ArcEnd::Closed)
      ++cls.closed_count;
    else if (a.end == ArcEnd::Boundary)
      ++cls.boundary_ending_count;
    else
      ++cls.indeterminate_count;
  }
  cls.maximal = graph_clean && cls.boundary_ending_count == 0 &&
                cls.indeterminate_count == 0 && !seeds.empty();
  return cls;
}

}  // namespace exq
