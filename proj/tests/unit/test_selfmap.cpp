#include <doctest.h>

#include "contractive/errors.hpp"
#include "contractive/hyperbolic_grid.hpp"
#include "contractive/selfmap.hpp"
#include "contractive/verify.hpp"
#include "support.hpp"

using namespace contractive;

TEST_CASE("evaluation of the basic pieces") {
  CHECK(std::abs(evaluate(SelfMap::scaled_rotation(1.0, 0.0), 0.3) - Complex(0.3, 0.0)) < 1e-15);
  const SelfMap z2 = SelfMap::blaschke({0.0, 0.0});
  CHECK(std::abs(evaluate(z2, Complex(0.0, 0.5)) - Complex(-0.25, 0.0)) < 1e-15);
  const SelfMap s = SelfMap::singular({{0.0, 1.0}});
  CHECK(std::abs(evaluate(s, 0.0) - std::exp(-1.0)) < 1e-15);
  CHECK(std::abs(derivative(z2, 0.5) - Complex(1.0, 0.0)) < 1e-15);
  const SelfMap rot = SelfMap::scaled_rotation(0.6, 0.125);
  CHECK(std::abs(derivative(rot, Complex(0.2, -0.4)) - 0.6 * boundary_point(0.125)) < 1e-15);
}

TEST_CASE("invalid pieces are rejected") {
  CHECK_THROWS_AS(SelfMap::blaschke({Complex(1.0, 0.0)}), ArgumentError);
  CHECK_THROWS_AS(SelfMap::singular({{0.0, -1.0}}), ArgumentError);
  CHECK_THROWS_AS(SelfMap::outer(TrigPoly({0.1}, {})), PreconditionError);
  CHECK_THROWS_AS(SelfMap::scaled_rotation(1.5, 0.0), ArgumentError);
  CHECK_THROWS_AS(SelfMap::constant(Complex(1.0, 0.0)), ArgumentError);
  CHECK_THROWS_AS(evaluate(SelfMap::identity(), Complex(1.5, 0.0)), DomainError);
}

TEST_CASE("derivatives agree with finite differences") {
  const SelfMap f = test::random_blaschke(5, 0.9);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const Complex z = test::random_point(0.9);
    const double h = 1e-4 * (1.0 - std::abs(z));
    const Complex fd = (-f(z + 2.0 * h) + 8.0 * f(z + h) - 8.0 * f(z - h) + f(z - 2.0 * h)) / (12.0 * h);
    worst = std::max(worst, std::abs(derivative(f, z) - fd) / std::abs(fd));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("products, composition and Herglotz maps stay in the disc") {
  const SelfMap p = SelfMap::product({SelfMap::blaschke({0.5}), SelfMap::singular({{0.25, 0.3}}),
                                      SelfMap::outer(TrigPoly({-1.0, 0.5}, {}))});
  const SelfMap c = SelfMap::compose(SelfMap::blaschke({Complex(0.2, 0.1), Complex(0.0, -0.4)}),
                                     SelfMap::scaled_rotation(0.8, 0.1));
  const SelfMap h = SelfMap::herglotz(bernoulli_alternating_measure(0.3, 8), 0.2, 0.5);
  for (const SelfMap* f : {&p, &c, &h})
    for (int i = 0; i < 200; ++i) CHECK(std::abs((*f)(test::random_point(0.999))) <= 1.0);
  const Complex z(0.3, -0.2);
  CHECK(std::abs(c(z) - SelfMap::blaschke({Complex(0.2, 0.1), Complex(0.0, -0.4)})(0.8 * boundary_point(0.1) * z)) <
        1e-15);
}

TEST_CASE("Herglotz maps satisfy the Clark representation") {
  const BoundaryMeasure sigma = BoundaryMeasure::from_atoms({{0.1, 0.4}, {0.6, 0.7}});
  const double alpha = 0.2, C = 0.3;
  const SelfMap f = map_from_clark_measure(sigma, alpha, C);
  const Complex a = boundary_point(alpha);
  for (int i = 0; i < 100; ++i) {
    const Complex z = test::random_point(0.95);
    const Complex lhs = (a + f(z)) / (a - f(z));
    const Complex rhs = sigma.herglotz(z) + Complex(0.0, C);
    CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("map_from_clark_measure special cases") {
  const SelfMap zero = map_from_clark_measure(BoundaryMeasure::lebesgue(), 0.0, 0.0);
  CHECK(std::abs(zero(Complex(0.4, 0.3))) < 1e-15);
  const SelfMap id = map_from_clark_measure(BoundaryMeasure::dirac(0.0), 0.0, 0.0);
  CHECK(std::abs(id(Complex(0.4, 0.3)) - Complex(0.4, 0.3)) < 1e-14);
  CHECK(id.is_automorphism());
}

TEST_CASE("hyperbolic derivative") {
  const SelfMap m = SelfMap::mobius(Complex(0.3, 0.4), 0.1);
  for (int i = 0; i < 50; ++i) CHECK(hyperbolic_derivative(m, test::random_point(0.99)).value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(hyperbolic_derivative(SelfMap::scaled_rotation(0.5, 0.0), 0.0).value == doctest::Approx(0.5));
  CHECK(hyperbolic_derivative(SelfMap::blaschke({0.0, 0.0}), 0.9).value == doctest::Approx(1.8 / 1.81).epsilon(1e-14));
}

TEST_CASE("sup of the hyperbolic derivative") {
  const auto rot = sup_hyperbolic_derivative(SelfMap::scaled_rotation(0.7, 0.0), {});
  CHECK(std::abs(rot.lower - 0.7) < 1e-9);
  CHECK(std::abs(rot.argmax) < 1e-15);
  CHECK(rot.certified_upper >= 0.7);
  const auto aut = sup_hyperbolic_derivative(SelfMap::mobius(Complex(0.5, 0.0)), {});
  CHECK(aut.lower == 1.0);
  HyperbolicGridSpec deep;
  deep.J = 12;
  CHECK(sup_hyperbolic_derivative(SelfMap::blaschke({0.0, 0.0}), deep).lower >= 0.999);
  const auto bern = sup_hyperbolic_derivative(map_from_clark_measure(bernoulli_alternating_measure(0.35, 12), 0.0, 0.0), {});
  CHECK(bern.lower < 1.0 - 1e-3);
}

TEST_CASE("grid mesh covers the disc") {
  const HyperbolicGrid g({6, 0.25, 1.0});
  CHECK(g.covered_radius() == doctest::Approx(1.0 - 1.0 / 64.0));
  // Every random point in the covered disc lies within the mesh of some node.
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const Complex z = test::random_point(g.covered_radius());
    double best = 1e300;
    for (std::size_t r = 0; r < g.rings().size(); ++r)
      for (std::size_t j = 0; j < g.rings()[r].nodes; ++j) best = std::min(best, geodesic_distance(z, g.node(r, j)));
    worst = std::max(worst, best);
  }
  CHECK(worst <= g.mesh());
}

TEST_CASE("essential norm tables") {
  const auto rot = essential_norm_estimate(SelfMap::scaled_rotation(0.7, 0.0), {0.5, 0.7, 0.9}, {});
  CHECK(rot[0].sup > 0.0);
  CHECK(rot[1].sup == 0.0);
  CHECK(rot[2].sup == 0.0);
  const auto aut = essential_norm_estimate(SelfMap::mobius(Complex(0.2, 0.1)), {0.0, 0.5, 0.9}, {});
  for (const auto& r : aut) CHECK(r.sup == 1.0);
  const auto z2 = essential_norm_estimate(SelfMap::blaschke({0.0, 0.0}), {0.9, 0.99}, {10, 0.25, 1.0});
  for (const auto& r : z2) CHECK(r.sup > 0.99);
}

TEST_CASE("inscribed hyperbolic radius") {
  const auto none = inscribed_hyperbolic_radius({}, {});
  CHECK(none.infinite);
  HyperbolicGridSpec small{4, 0.25, 1.0}, large{10, 0.25, 1.0};
  const auto a = inscribed_hyperbolic_radius({{0.0, 0.0}}, small);
  const auto b = inscribed_hyperbolic_radius({{0.0, 0.0}}, large);
  CHECK(b.radius > a.radius);
  // A geodesic 1-net of the radius-3 disc leaves only bounded holes inside it.
  std::vector<HyperbolicBall> net;
  for (double d = 0.0; d <= 3.0; d += 0.5) {
    const double r = pseudo_from_geodesic(d);
    const int n = d == 0.0 ? 1 : static_cast<int>(std::ceil(kTwoPi * std::sinh(2.0 * d) / 2.0 / 0.5));
    for (int k = 0; k < n; ++k) net.push_back({std::polar(r, kTwoPi * k / n), 0.0});
  }
  HyperbolicGridSpec inside{3, 0.1, 1.0};
  const auto holes = inscribed_hyperbolic_radius(net, inside);
  CHECK_FALSE(holes.infinite);
  CHECK(holes.radius < 1.0);
}
