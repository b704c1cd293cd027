#include <doctest.h>

#include "contractive/zeros.hpp"
#include "support.hpp"

using namespace contractive;

TEST_CASE("zeros measure of simple maps") {
  const ZerosMeasure id = zeros_measure(SelfMap::identity());
  REQUIRE(id.interior_atoms.size() == 1);
  CHECK(std::abs(id.interior_atoms[0].z) == 0.0);
  CHECK(id.interior_atoms[0].mass == doctest::Approx(1.0));
  CHECK(id.boundary_part.total_mass() == 0.0);

  // Constant c: 2 log|c|⁻¹ dm.
  const ZerosMeasure c = zeros_measure(SelfMap::constant(0.5));
  CHECK(c.interior_atoms.empty());
  CHECK(c.boundary_part.total_mass() == doctest::Approx(2.0 * std::log(2.0)));

  // z S with S the singular function of δ_0: δ_0 plus 2δ_1.
  const ZerosMeasure zs = zeros_measure(SelfMap::product({SelfMap::identity(), SelfMap::singular({{0.0, 1.0}})}));
  CHECK(zs.total_mass() == doctest::Approx(3.0));
  CHECK(zs.boundary_part.atoms().size() == 1);
}

TEST_CASE("closed disc Poisson integral") {
  ZerosMeasure mu;
  mu.interior_atoms.push_back({0.0, 1.0});
  // P at z of δ_0 is 1 - |z|².
  CHECK(closed_disc_poisson(mu, 0.5) == doctest::Approx(0.75));
  ZerosMeasure b;
  b.boundary_part = BoundaryMeasure::dirac(0.0);
  CHECK(closed_disc_poisson(b, 0.5) == doctest::Approx(3.0));
}

TEST_CASE("log modulus identities") {
  const std::vector<Complex> samples = {0.5, Complex(0.0, 0.7), Complex(-0.3, -0.3)};
  const SelfMap id = SelfMap::identity();
  const auto r = log_modulus_checks(id, zeros_measure(id), samples);
  // f = z: log |z|⁻² against P[δ_0](z) = 1 - |z|².
  CHECK(r.rows[0].log_term == doctest::Approx(-2.0 * std::log(0.5)));
  CHECK(r.rows[0].poisson == doctest::Approx(0.75));
  CHECK(r.min_slack_a >= -1e-12);
  CHECK(r.max_residual_c < 1e-10);

  const SelfMap f = SelfMap::product({test::random_blaschke(3, 0.7), SelfMap::singular({{0.3, 0.4}}),
                                      SelfMap::outer(TrigPoly({-0.5, 0.2}, {0.1}))});
  std::vector<Complex> zs;
  for (int i = 0; i < 100; ++i) zs.push_back(test::random_point(0.95));
  const auto g = log_modulus_checks(f, zeros_measure(f), zs);
  CHECK(g.min_slack_a >= -1e-10);
  CHECK(g.max_residual_c < 1e-8);
}

TEST_CASE("sign calibration") {
  const auto [s, residual] = calibrate_log_derivative_sign();
  CHECK(s == 1);
  CHECK(residual < 1e-6);
}

TEST_CASE("box mass lower bound scan") {
  const SelfMap f = SelfMap::scaled_rotation(0.5, 0.0);
  const auto res = box_mass_scan(zeros_measure(f), {0.01, 0.1, 1.0}, 6);
  CHECK(res.candidates.size() == 3);
  CHECK(res.max_depth == 6);
  CHECK(res.candidates[0].pass);
  CHECK(res.best.has_value());
}
