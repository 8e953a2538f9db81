#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "exq/appendix.hpp"
#include "exq/odewkb.hpp"

using namespace exq;

namespace {
RationalFunction poly(std::vector<cplx> c) { return RationalFunction(std::move(c)); }
const cplx I(0, 1);
}  // namespace

TEST_CASE("constant phi' reproduces the exponential") {
  double lambda = 0.7;
  RationalFunction pp = poly({lambda * lambda});
  PathSolution s = solve_ode(pp, lambda, {cplx(0.0), cplx(2.0)}, 1.0, I * lambda);
  for (std::size_t i = 0; i < s.path.size(); ++i)
    CHECK(std::abs(s.v[i] - std::exp(I * s.path[i])) < 1e-10);
}

TEST_CASE("phi' = 0 gives linear solutions") {
  PathSolution s = solve_ode(RationalFunction(), 2.0, {cplx(0.0), cplx(1.0, 1.0)},
                             cplx(0.3, 0.1), cplx(1.0, -0.5));
  for (std::size_t i = 0; i < s.path.size(); ++i)
    CHECK(std::abs(s.v[i] - (cplx(0.3, 0.1) + cplx(1.0, -0.5) * s.path[i] / 2.0)) < 1e-11);
}

TEST_CASE("annulus vacuum powers along radial and circular paths") {
  AnnulusOracle o = annulus_oracle(2.0, 1.0);
  RationalFunction pp = o.phi.derivative();

  // v1 = (z/2)^2, w = lambda v1' = z/2.
  cplx z0 = 2.0;
  PathSolution rad = solve_ode(pp, o.lambda, {z0, cplx(1.0)}, o.v1(z0), z0 / 2.0);
  for (std::size_t i = 0; i < rad.path.size(); ++i)
    CHECK(std::abs(rad.v[i] - o.v1(rad.path[i])) < 1e-9);

  std::vector<cplx> arcpath;
  for (int i = 0; i <= 16; ++i)
    arcpath.push_back(1.5 * std::exp(I * (two_pi / 2 * i / 16.0)));
  PathSolution circ =
      solve_ode(pp, o.lambda, arcpath, o.v1(arcpath[0]), arcpath[0] / 2.0);
  for (std::size_t i = 0; i < circ.path.size(); ++i)
    CHECK(std::abs(circ.v[i] - o.v1(circ.path[i])) < 1e-9);

  // Second power v2 = (z/1)^{-1}; w = lambda v2' = -1/z^2.
  PathSolution rad2 = solve_ode(pp, o.lambda, {z0, cplx(1.0)}, o.v2(z0),
                                -1.0 / (z0 * z0));
  for (std::size_t i = 0; i < rad2.path.size(); ++i)
    CHECK(std::abs(rad2.v[i] - o.v2(rad2.path[i])) < 1e-9);
}

TEST_CASE("wronskian is constant") {
  RationalFunction pp = poly({0.5, cplx(1.0, 0.3)});
  double lambda = 0.8;
  std::vector<cplx> path = {cplx(0.0), cplx(1.0, 0.5), cplx(2.0, 0.2)};
  PathSolution a = solve_ode(pp, lambda, path, 1.0, 0.0);
  PathSolution b = solve_ode(pp, lambda, path, 0.0, 1.0);
  cplx w0 = a.v[0] * b.w[0] - b.v[0] * a.w[0];
  for (std::size_t i = 0; i < a.v.size(); ++i) {
    cplx w = a.v[i] * b.w[i] - b.v[i] * a.w[i];
    CHECK(std::abs(w - w0) < 1e-9 * std::abs(w0));
  }
}

TEST_CASE("modulus constant along the boundary circles") {
  AnnulusOracle o = annulus_oracle(2.0, 1.0);
  RationalFunction pp = o.phi.derivative();
  for (double r : {2.0, 1.0}) {
    std::vector<cplx> loop;
    for (int i = 0; i <= 32; ++i) loop.push_back(r * std::exp(I * (two_pi * i / 32.0)));
    cplx v0 = o.v1(loop[0]), w0 = loop[0] / 2.0;
    PathSolution s = solve_ode(pp, o.lambda, loop, v0, w0);
    // Interior nodes sit on the polygon chords, so check the circle vertices.
    for (std::size_t i = 0; i < s.v.size(); i += 32)
      CHECK(std::abs(std::abs(s.v[i]) - std::abs(v0)) < 1e-8 * std::abs(v0));
  }
}

TEST_CASE("liouville-green is exact for constant phi'") {
  RationalFunction pp = poly({cplx(2.0, 0.5)});
  auto rows = wkb_error_scaling(pp, 1.0, {cplx(0.0), cplx(1.5)}, {0.2, 0.1});
  for (const auto& r : rows) CHECK(r.sup_error < 1e-9);
}

TEST_CASE("lg phase has the analytic antiderivative on the annulus") {
  RationalFunction pp = RationalFunction::simple_pole(2.0).derivative();  // -2/z^2
  WKBSamples s = wkb_eval(pp, 1.0, 1.0, 1.0, 0.0, {cplx(1.0), cplx(2.0)}, 64);
  // int sqrt(-2/z^2) dz = +-i sqrt(2) log z; compare against the branch taken.
  cplx expect = I * std::sqrt(2.0) * std::log(2.0);
  double err = std::min(std::abs(s.phase.back() - expect),
                        std::abs(s.phase.back() + expect));
  CHECK(err < 1e-10);
}

TEST_CASE("wkb error halves with eps") {
  RationalFunction pp = poly({1.0, 1.0});  // 1 + z, zero-free on [0.5, 1.5]
  auto rows = wkb_error_scaling(pp, 1.0, {cplx(0.5), cplx(1.5)}, {0.1, 0.05, 0.025});
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    double ratio = rows[i].sup_error / rows[i - 1].sup_error;
    CHECK(ratio > 0.3);
    CHECK(ratio < 0.7);
  }
}

TEST_CASE("local series at a simple zero") {
  RationalFunction pp = poly({0.0, 1.0});  // phi' = z, zero of order 1 at 0
  double lambda = 1.0;
  LocalSeries ls = local_series(pp, 0.0, 1, lambda, 1.0, 0.4 * lambda);
  CHECK(ls.vanishing_residual < 1e-8);
  CHECK(std::abs(ls.c1 - cplx(1, 0)) < 1e-9);
  CHECK(std::abs(ls.c2 - cplx(0.4, 0)) < 1e-9);
  // a = 1: coefficient of (z-z0)^3 is -a C1 / (lambda^2 * 2 * 3).
  CHECK(std::abs(ls.c_top - (-1.0 / 6.0)) < 1e-8);
}

TEST_CASE("local series at a double zero") {
  RationalFunction pp = poly({0.0, 0.0, 1.0});  // phi' = z^2
  LocalSeries ls = local_series(pp, 0.0, 2, 1.0, cplx(0.7, 0.2), 0.3);
  CHECK(ls.vanishing_residual < 1e-8);
  CHECK(std::abs(ls.c_top - (-cplx(0.7, 0.2) / 12.0)) < 1e-8);
}

TEST_CASE("zero initial data stays zero") {
  RationalFunction pp = poly({0.0, 1.0});
  LocalSeries ls = local_series(pp, 0.0, 1, 1.0, 0.0, 0.0);
  for (cplx c : ls.taylor) CHECK(std::abs(c) < 1e-12);
}

TEST_CASE("wrong zero order is rejected") {
  RationalFunction pp = poly({0.0, 1.0});
  CHECK_THROWS_AS((void)local_series(pp, 0.0, 2, 1.0, 1.0, 0.0), std::invalid_argument);
}
