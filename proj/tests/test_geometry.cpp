#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "exq/geometry.hpp"

using namespace exq;

namespace {
const double pi = 0.5 * two_pi;

Contour ellipse(double a, double b, int samples = 512) {
  // a cos t + i b sin t
  return Contour({{1, 0.5 * (a + b)}, {-1, 0.5 * (a - b)}}, samples);
}
}  // namespace

TEST_CASE("contour evaluation") {
  Contour circ({{1, 1.0}});
  CHECK(std::abs(circ.eval(0.0) - cplx(1, 0)) < 1e-14);
  CHECK(std::abs(circ.eval(pi / 2) - cplx(0, 1)) < 1e-14);
  Contour ell = ellipse(2.0, 1.0);
  CHECK(std::abs(ell.eval(0.0) - cplx(2, 0)) < 1e-14);
}

TEST_CASE("tangent is the normalized derivative") {
  Contour circ({{1, 1.0}});
  CHECK(std::abs(circ.tangent(0.0) - cplx(0, 1)) < 1e-14);
  CHECK(std::abs(circ.tangent(pi) - cplx(0, -1)) < 1e-13);
  Contour big({{1, 2.0}});
  for (double t : {0.3, 1.1, 4.0})
    CHECK(std::abs(big.tangent(t) - cplx(0, 1) * std::exp(cplx(0, t))) < 1e-13);
}

TEST_CASE("curvature") {
  Contour r2({{1, 2.0}});
  CHECK(r2.curvature(0.7) == doctest::Approx(0.5).epsilon(1e-12));
  Contour unit({{1, 1.0}});
  CHECK(unit.curvature(2.2) == doctest::Approx(1.0).epsilon(1e-12));
  Contour ell = ellipse(2.0, 1.0);
  CHECK(ell.curvature(0.0) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("geometric summary of annuli") {
  auto s = geometric_summary(annulus_domain(2.0, 1.0));
  CHECK(s.area == doctest::Approx(3 * pi).epsilon(1e-12));
  CHECK(s.perimeter == doctest::Approx(6 * pi).epsilon(1e-12));
  CHECK(s.lambda_min == doctest::Approx(1.0).epsilon(1e-12));

  CHECK(geometric_summary(annulus_domain(3.0, 1.0)).lambda_min ==
        doctest::Approx(2.0).epsilon(1e-12));

  auto h = geometric_summary(annulus_domain(1.0, 0.5));
  CHECK(h.area == doctest::Approx(0.75 * pi).epsilon(1e-12));
  CHECK(h.perimeter == doctest::Approx(3 * pi).epsilon(1e-12));
  CHECK(h.lambda_min == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("membership") {
  Domain ann = annulus_domain(2.0, 1.0);
  CHECK(contains(ann, cplx(1.5, 0)));
  CHECK_FALSE(contains(ann, cplx(0.5, 0)));
  CHECK_FALSE(contains(ann, cplx(3.0, 0)));
  CHECK_THROWS_AS((void)contains(ann, cplx(2.0, 0)), std::domain_error);
}

TEST_CASE("curvature integral") {
  Contour unit({{1, 1.0}});
  CHECK(curvature_integral(unit, 1.0, +1) == doctest::Approx(4 * pi).epsilon(1e-10));
  Contour r2({{1, 2.0}});
  CHECK(curvature_integral(r2, 1.0, -1) == doctest::Approx(2 * pi).epsilon(1e-10));
  Contour ell = ellipse(2.0, 1.0);
  CHECK(curvature_integral(ell, 0.0, +1) == doctest::Approx(ell.length()).epsilon(1e-12));
}

TEST_CASE("isoperimetric slack") {
  CHECK(isoperimetric_slack(annulus_domain(2.0, 1.0)) ==
        doctest::Approx(2 * pi).epsilon(1e-10));
  CHECK(isoperimetric_slack(annulus_domain(3.0, 2.0)) ==
        doctest::Approx(4 * pi).epsilon(1e-10));
  // Slack shrinks linearly with the hole radius in the small-hole limit.
  CHECK(isoperimetric_slack(annulus_domain(1.0, 1e-3)) < 1e-2);
  CHECK(isoperimetric_slack(annulus_domain(1.0, 1e-6)) < 1e-5);
}

TEST_CASE("u squared equals conj(g')/g'") {
  Contour ell = ellipse(1.7, 0.9);
  double worst = 0.0;
  for (int i = 0; i < ell.grid_size(); ++i) {
    double t = ell.grid_t(i);
    cplx gp = ell.deriv(t);
    worst = std::max(worst, std::abs(ell.u(t) * ell.u(t) - std::conj(gp) / gp));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("u derivative matches finite differences") {
  Contour ell = ellipse(1.7, 0.9);
  const double h = 1e-5;
  for (double t : {0.1, 1.0, 2.5, 5.0}) {
    cplx fd = (ell.u(t + h) - ell.u(t - h)) / (2 * h);
    CHECK(std::abs(ell.u_deriv(t) - fd) < 1e-8);
  }
}

TEST_CASE("total turning is 2 pi") {
  for (const Contour& c : {Contour({{1, 1.0}}), ellipse(2.0, 1.0),
                           Contour({{1, 1.0}, {3, 0.1}, {-2, 0.05}})}) {
    std::vector<double> f(c.grid_size());
    for (int i = 0; i < c.grid_size(); ++i) {
      double t = c.grid_t(i);
      f[i] = c.curvature(t) * c.speed(t);
    }
    CHECK(periodic_trapezoid(f) == doctest::Approx(two_pi).epsilon(1e-8));
  }
}

TEST_CASE("spectral convergence of area and perimeter") {
  std::map<int, cplx> cf{{1, 2.0}, {3, cplx(0.08, 0.02)}, {-2, 0.05}};
  Contour c256(cf, 256), c512(cf, 512);
  CHECK(std::abs(c256.signed_area() - c512.signed_area()) <
        1e-10 * std::abs(c512.signed_area()));
  CHECK(std::abs(c256.length() - c512.length()) < 1e-10 * c512.length());
}

TEST_CASE("randomized perturbed annuli stay isoperimetrically slack-positive") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::map<int, cplx> outer{{1, 2.0 + 0.2 * U(rng)}};
    outer[2] = cplx(0.03 * U(rng), 0.03 * U(rng));
    outer[-3] = cplx(0.03 * U(rng), 0.03 * U(rng));
    std::map<int, cplx> inner{{1, 0.8 + 0.1 * U(rng)}};
    inner[2] = cplx(0.02 * U(rng), 0.02 * U(rng));
    Domain dom(Contour(outer), {Contour(inner)}, {cplx(0.0)});
    double p = geometric_summary(dom).perimeter;
    CHECK(isoperimetric_slack(dom) >= -1e-9 * p);
  }
}

TEST_CASE("validation rejects bad input") {
  // Clockwise orientation.
  CHECK_THROWS_AS(Contour({{-1, 1.0}}), std::invalid_argument);
  // Degenerate (not an immersion anywhere useful).
  CHECK_THROWS_AS(Contour({{0, 1.0}}), std::invalid_argument);
  // Inner contour crossing the outer one.
  CHECK_THROWS_AS(Domain(Contour({{1, 2.0}}), {Contour({{0, 1.5}, {1, 1.0}})}),
                  std::invalid_argument);
  // Overlapping inner contours.
  CHECK_THROWS_AS(Domain(Contour({{1, 4.0}}),
                         {Contour({{0, 0.5}, {1, 1.0}}), Contour({{0, -0.5}, {1, 1.0}})}),
                  std::invalid_argument);
  // Hole center not inside its contour.
  CHECK_THROWS_AS(Domain(Contour({{1, 2.0}}), {Contour({{1, 0.5}})}, {cplx(1.5, 0)}),
                  std::invalid_argument);
}
