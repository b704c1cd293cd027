#include <doctest.h>

#include "contractive/cantor.hpp"
#include "contractive/errors.hpp"
#include "contractive/hausdorff.hpp"
#include "contractive/zeros.hpp"

using namespace contractive;

namespace {

std::vector<ArcCollection> chain(int n) {
  std::vector<ArcCollection> gens;
  for (int g = 0; g <= n; ++g) gens.push_back({g, {DyadicArc(g, 0)}});
  return gens;
}

std::vector<ArcCollection> quarter_cantor(int n) {
  std::vector<ArcCollection> gens{{0, {DyadicArc(0, 0)}}};
  for (int g = 1; g <= n; ++g) {
    ArcCollection next{g, {}};
    for (const auto& a : gens.back().arcs) {
      next.arcs.emplace_back(a.depth + 2, 4 * a.index);
      next.arcs.emplace_back(a.depth + 2, 4 * a.index + 3);
    }
    gens.push_back(next);
  }
  return gens;
}

}  // namespace

TEST_CASE("exact dyadic lengths") {
  CHECK(dyadic_length(DyadicArc(3, 1)) == Rational(1, 8));
  CHECK(quarter_cantor(2).back().total_length() == Rational(1, 4));
}

TEST_CASE("Hausdorff content of arcs") {
  const auto one = hausdorff_content(MeasurableSet({Arc(0.1, 0.2)}), 0.5);
  CHECK(one.lower == doctest::Approx(std::sqrt(0.2)).epsilon(1e-9));
  CHECK(one.upper == doctest::Approx(std::sqrt(0.2)).epsilon(1e-9));
  const auto circle = hausdorff_content(MeasurableSet::whole(), 0.5);
  CHECK(circle.lower == doctest::Approx(1.0));
  CHECK(circle.upper == doctest::Approx(1.0));
  const auto two = hausdorff_content(MeasurableSet({Arc(0.0, 0.01), Arc(0.5, 0.01)}), 0.5);
  CHECK(two.lower <= two.upper);
  CHECK(two.upper <= 2.0 * std::sqrt(0.01) + 1e-12);
}

TEST_CASE("Frostman certificates") {
  const auto leb = frostman_certificate(BoundaryMeasure::lebesgue(), 0.5, 12);
  CHECK(leb.ok);
  CHECK(leb.constant == doctest::Approx(1.0));
  CHECK(leb.content_lower_bound(1.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(frostman_certificate(BoundaryMeasure::lebesgue(), 1.0, 12), ArgumentError);
  CHECK_FALSE(frostman_certificate(BoundaryMeasure::dirac(0.3), 0.5, 12).ok);
}

TEST_CASE("FN subcollection") {
  const DyadicArc I(0, 0);
  const std::vector<DyadicArc> all = {DyadicArc(2, 0), DyadicArc(2, 1), DyadicArc(2, 2), DyadicArc(2, 3)};
  const auto full = fn_subcollection(I, all, 1.0, 0.25);
  CHECK(full.g1.size() == 4);
  CHECK(full.coverage_holds);
  CHECK(full.density_holds);
  // One dense half and one sparse half: the sparse arc is dropped.
  const std::vector<DyadicArc> mixed = {DyadicArc(2, 0), DyadicArc(2, 1), DyadicArc(4, 12)};
  const auto thin = fn_subcollection(I, mixed, Rational(1, 2), Rational(1, 4));
  CHECK(thin.g1.size() == 2);
  CHECK(thin.g1_length == Rational(1, 2));
  CHECK(thin.coverage_holds);
  CHECK(thin.density_holds);
}

TEST_CASE("Hungerford dimension bound") {
  CHECK(hungerford_bound(chain(5), 0.5, 0.5).bound == doctest::Approx(0.0));
  const auto q = hungerford_bound(quarter_cantor(4), 0.25, 0.5);
  CHECK(q.bound == doctest::Approx(0.5));
  CHECK(q.realized_bound == doctest::Approx(0.5));
  CHECK_THROWS_AS(hungerford_bound(quarter_cantor(4), 0.1, 0.5), PreconditionError);
  CHECK_THROWS_AS(hungerford_formula(1.0, 0.5), ArgumentError);
  auto bad = quarter_cantor(2);
  bad[2].arcs.emplace_back(1, 0);
  CHECK_FALSE(check_hungerford(bad, std::nullopt, std::nullopt).ok);
}

TEST_CASE("pullback content of the identity") {
  const auto m = fp_monotonicity_check(SelfMap::identity(), MeasurableSet({Arc(0.2, 0.1)}), 0.5);
  CHECK(m.ratio == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("stopping-time construction needs a seed") {
  // P[μ] is the constant 2 log 2 for f = 1/2, so no arc has P ≤ K1.
  CHECK_THROWS_AS(cantor_builder(zeros_measure(SelfMap::constant(0.5)), Arc(0.0, 1.0)), ResolutionError);
  CantorOptions bad;
  bad.K1 = bad.K;
  CHECK_THROWS_AS(cantor_builder(zeros_measure(SelfMap::constant(0.5)), Arc(0.0, 1.0), bad), ArgumentError);
}
