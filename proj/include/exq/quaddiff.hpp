#ifndef EXQ_QUADDIFF_HPP
#define EXQ_QUADDIFF_HPP

#include <vector>

#include "exq/analytic.hpp"
#include "exq/geometry.hpp"

namespace exq {

struct ZeroOfPhiPrime {
  cplx location;
  int order = 1;
};

/// All zeros of phi' (with multiplicities) inside the axis-aligned rectangle
/// [lo.re, hi.re] x [lo.im, hi.im], by recursive argument-principle
/// subdivision plus Newton polish on phi'/phi''.
std::vector<ZeroOfPhiPrime> find_zeros(const RationalFunction& phi_prime,
                                       cplx lo, cplx hi);

/// Total zero count (with multiplicity) over the rectangle from one global
/// argument-principle contour integral.
int zero_count(const RationalFunction& phi_prime, cplx lo, cplx hi);

/// Continuous branch of sqrt(phi') along a polyline; squares back to phi'.
std::vector<cplx> sqrt_tracked(const RationalFunction& phi_prime,
                               const std::vector<cplx>& path, int initial_sign);

enum class ArcKind { Plus, Minus };
enum class ArcEnd { Zero, Boundary, Closed, MaxLength };

struct Arc {
  ArcKind kind = ArcKind::Plus;
  std::vector<cplx> points;
  ArcEnd end = ArcEnd::MaxLength;
  int start_zero = -1;   // index into the zeros list, or -1
  int end_zero = -1;
  double length = 0.0;
  double drift = 0.0;          // |Im or Re of int sqrt(phi') dz| along the polyline
  double departure_angle = 0.0;  // only for arcs emitted from a zero
};

struct TraceOptions {
  double max_length = 50.0;
  double max_step = 0.0;       // default: 1e-2 * scale
  double rel_tol = 1e-12;
  double scale = 1.0;          // characteristic domain scale
  const Domain* domain = nullptr;                 // boundary clipping
  const std::vector<ZeroOfPhiPrime>* zeros = nullptr;  // zero capture
};

Arc trace_trajectory(const RationalFunction& phi_prime, cplx start, ArcKind kind,
                     const TraceOptions& opts);

/// Trace the direction_index-th arc (0..m+1) of the given family out of a zero.
Arc trace_from_zero(const RationalFunction& phi_prime,
                    const std::vector<ZeroOfPhiPrime>& zeros, int zero_index,
                    ArcKind kind, int direction_index, const TraceOptions& opts);

/// Departure angles of the plus/minus arcs at a zero, from the leading
/// Taylor coefficient of phi'.
std::vector<double> departure_angles(const RationalFunction& phi_prime,
                                     const ZeroOfPhiPrime& zero, ArcKind kind);

struct StokesGraph {
  std::vector<ZeroOfPhiPrime> zeros;
  std::vector<Arc> arcs;
};

StokesGraph stokes_graph(const RationalFunction& phi_prime, const Domain& dom,
                         TraceOptions opts = {});

/// max over the boundary grid of |phi'(gamma) tau^2 - (1 + lambda alpha kappa)|,
/// one entry per contour.
std::vector<double> boundary_metric_check(const Domain& dom, const RationalFunction& phi,
                                          double lambda);

struct TrajectoryClassification {
  int closed_count = 0;
  int boundary_ending_count = 0;
  int indeterminate_count = 0;
  bool maximal = false;
};

/// Numerical evidence for maximality: no plus-arc of the graph ends on the
/// boundary and sampled generic trajectories all close up.
TrajectoryClassification classify(const StokesGraph& graph, const Domain& dom,
                                  const RationalFunction& phi_prime,
                                  TraceOptions opts = {});

}  // namespace exq

#endif
