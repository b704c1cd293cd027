#include <doctest.h>

#include "contractive/disc.hpp"
#include "contractive/errors.hpp"
#include "contractive/trig_poly.hpp"
#include "support.hpp"

using namespace contractive;

TEST_CASE("pseudo-hyperbolic distance") {
  CHECK(pseudo_hyperbolic(0.0, 0.0) == 0.0);
  CHECK(pseudo_hyperbolic(0.0, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
  // |(0.5 + 0.5) / (1 + 0.25)| = 0.8
  CHECK(pseudo_hyperbolic(0.5, -0.5) == doctest::Approx(0.8).epsilon(1e-15));
  CHECK_THROWS_AS(pseudo_hyperbolic(Complex(1.0, 0.0), 0.0), DomainError);
}

TEST_CASE("hyperbolic distance normalization") {
  CHECK(hyperbolic_distance(0.0, 0.0) == 0.0);
  CHECK(hyperbolic_distance(0.0, 0.5) == doctest::Approx(0.5 * std::log(1.25 / 0.75)).epsilon(1e-14));
  CHECK(geodesic_distance(0.0, 0.5) == doctest::Approx(std::atanh(0.5)).epsilon(1e-14));
  CHECK(pseudo_from_geodesic(geodesic_from_pseudo(0.37)) == doctest::Approx(0.37).epsilon(1e-14));
}

TEST_CASE("Mobius invariance of d_h") {
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const Complex a = test::random_point(0.9), z = test::random_point(0.9), w = test::random_point(0.9);
    worst = std::max(worst, std::abs(hyperbolic_distance(automorphism(a, z), automorphism(a, w)) -
                                     hyperbolic_distance(z, w)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("d_h is not a metric but the geodesic distance is") {
  // Three collinear points: d_h(0, 0.2) + d_h(0.2, 0.4) < d_h(0, 0.4).
  const double a = hyperbolic_distance(0.0, 0.2), b = hyperbolic_distance(0.2, 0.4), c = hyperbolic_distance(0.0, 0.4);
  CHECK(a + b < c);
  CHECK(geodesic_distance(0.0, 0.2) + geodesic_distance(0.2, 0.4) == doctest::Approx(geodesic_distance(0.0, 0.4)));
}

TEST_CASE("automorphism") {
  CHECK(std::abs(automorphism(0.0, Complex(0.3, 0.4)) - Complex(-0.3, -0.4)) < 1e-15);
  CHECK(std::abs(automorphism(0.5, 0.5)) < 1e-15);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Complex a = test::random_point(0.99), w = test::random_point(1.0);
    worst = std::max(worst, std::abs(automorphism(a, automorphism(a, w)) - w));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("Poisson kernel") {
  CHECK(poisson_kernel(0.0, 0.3) == doctest::Approx(1.0));
  CHECK(poisson_kernel(0.5, 0.0) == doctest::Approx(3.0).epsilon(1e-14));
  const int n = 4096;
  double s = 0.0;
  for (int k = 0; k < n; ++k) s += poisson_kernel(Complex(0.9, 0.0), static_cast<double>(k) / n);
  CHECK(std::abs(s / n - 1.0) < 1e-10);
}

TEST_CASE("arc of a point and anchors") {
  const Arc a = arc_of_point(0.5);
  CHECK(a.center() == doctest::Approx(0.0));
  CHECK(a.length == doctest::Approx(0.5));
  for (int i = 0; i < 100; ++i) {
    const Complex z = test::random_point(0.999);
    CHECK(std::abs(anchor_point(arc_of_point(z)) - z) < 1e-12);
  }
  // (1 - 2^-n) exp(2πi(k + 1/2) 2^-n) sits over the dyadic arc (n, k).
  const int n = 5;
  const Complex z = std::polar(1.0 - std::ldexp(1.0, -n), kTwoPi * (3.5 * std::ldexp(1.0, -n)));
  const Arc d = arc_of_point(z);
  CHECK(d.start == doctest::Approx(DyadicArc(n, 3).start()).epsilon(1e-12));
  CHECK(d.length == doctest::Approx(DyadicArc(n, 3).length()).epsilon(1e-12));
}

TEST_CASE("arc integral closed forms agree with Riemann sums") {
  const Complex z(0.5, 0.0);
  const Arc a(-0.25, 0.5);
  const int n = 1000000;
  double s = 0.0;
  for (int k = 0; k < n; ++k) s += poisson_kernel(z, a.start + (k + 0.5) * a.length / n);
  CHECK(std::abs(poisson_arc_integral(z, a) - s * a.length / n) < 1e-9);
  const Complex h = herglotz_arc_integral(z, Arc(0.0, 1.0));
  CHECK(std::abs(h - Complex(1.0, 0.0)) < 1e-13);
}

TEST_CASE("dyadic arcs") {
  const DyadicArc a(3, 5);
  CHECK(a.start() == 5.0 / 8.0);
  CHECK(a.left() == DyadicArc(4, 10));
  CHECK(a.parent() == DyadicArc(2, 2));
  CHECK(a.contains(DyadicArc(5, 21)));
  CHECK(a.disjoint(DyadicArc(3, 4)));
  CHECK(a.shifted(3) == DyadicArc(3, 0));
}

TEST_CASE("trigonometric polynomials") {
  const TrigPoly g({1.0, 0.5}, {0.0, 0.25});
  CHECK(g(0.0) == doctest::Approx(1.5));
  CHECK(g.integral(Arc(0.0, 1.0)) == doctest::Approx(1.0));
  CHECK(g.min_lower_bound() <= g(0.5));
  // g.rotated(dt)(t) = g(t - dt)
  CHECK(g.rotated(0.1)(0.3) == doctest::Approx(g(0.2)));
}
