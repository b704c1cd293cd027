#include <doctest.h>

#include "contractive/clark.hpp"
#include "contractive/measure_scans.hpp"
#include "support.hpp"

using namespace contractive;

TEST_CASE("Clark measure of the identity is a unit atom") {
  for (double a : {0.0, 0.3, 0.75}) {
    const auto s = clark_blaschke(SelfMap::identity(), a);
    REQUIRE(s.atoms.size() == 1);
    CHECK(s.atoms[0].t == doctest::Approx(a));
    CHECK(s.atoms[0].mass == doctest::Approx(1.0));
  }
}

TEST_CASE("Clark measure of z squared") {
  const auto s = clark_blaschke(SelfMap::blaschke({0.0, 0.0}), 0.0);
  REQUIRE(s.atoms.size() == 2);
  CHECK(s.atoms[0].t == doctest::Approx(0.0));
  CHECK(s.atoms[1].t == doctest::Approx(0.5));
  for (const auto& a : s.atoms) {
    CHECK(a.mass == doctest::Approx(0.5));
    CHECK(a.residual < 1e-12);
  }
}

TEST_CASE("Clark spectrum of random Blaschke products") {
  for (int trial = 0; trial < 10; ++trial) {
    const SelfMap f = test::random_blaschke(4, 0.8);
    const double alpha = test::uniform();
    const auto s = clark_blaschke(f, alpha);
    CHECK(s.atoms.size() == 4);
    const Complex a = boundary_point(alpha), f0 = f(0.0);
    CHECK(s.total_mass() == doctest::Approx(std::real((a + f0) / (a - f0))).epsilon(1e-10));
    const BoundaryMeasure m = s.measure();
    const Complex z = test::random_point(0.9);
    CHECK(m.poisson(z) == doctest::Approx(clark_poisson(f, alpha, z)).epsilon(1e-9));
  }
}

TEST_CASE("boundary phase") {
  const SelfMap f = test::random_blaschke(3, 0.7);
  const BoundaryPhase phi(f);
  CHECK(phi.degree() == 3);
  CHECK(phi.phase(1.0) - phi.phase(0.0) == doctest::Approx(3.0));
  const double t = 0.37, h = 1e-6;
  CHECK(phi.derivative(t) == doctest::Approx((phi.phase(t + h) - phi.phase(t - h)) / (2 * h)).epsilon(1e-6));
  CHECK(phi.solve(0.2).size() == 3);
}

TEST_CASE("radial Clark densities") {
  // f = z/2 at radius r: the density is the Poisson kernel of r/2.
  const SelfMap f = SelfMap::scaled_rotation(0.5, 0.0);
  const auto d = clark_radial(f, 0.0, 0.9, 512);
  CHECK(d.t.size() == 512);
  CHECK(d.arc_mass(Arc(0.0, 1.0)) == doctest::Approx(1.0).epsilon(1e-4));
  for (std::size_t k = 0; k < d.t.size(); k += 37)
    CHECK(d.density[k] == doctest::Approx(poisson_kernel(0.45, d.t[k])).epsilon(1e-12));
}

TEST_CASE("Aleksandrov disintegration") {
  const TrigPoly g({1.0, 0.0, 0.3}, {0.0, 0.2, -0.1});
  CHECK(disintegration_check(SelfMap::blaschke({0.0, 0.0}), g, 256).defect < 1e-10);
  CHECK(disintegration_check(test::random_blaschke(3, 0.6), g, 512).defect < 1e-8);
}

TEST_CASE("inner approximation and conversion to zeros") {
  const BoundaryMeasure a = inner_approximation(BoundaryMeasure::lebesgue(), 4);
  CHECK(a.atoms().size() == 16);
  CHECK(a.total_mass() == doctest::Approx(1.0));
  const SelfMap h = SelfMap::herglotz(BoundaryMeasure::from_atoms({{0.0, 0.5}, {0.5, 0.5}}), 0.0, 0.0);
  const auto conv = blaschke_from_atomic(h);
  CHECK(conv.max_residual < 1e-7);
  CHECK(conv.map.inner_degree() == 2);
  CHECK(std::abs(conv.map(Complex(0.3, 0.2)) - Complex(0.3, 0.2) * Complex(0.3, 0.2)) < 1e-8);
}
