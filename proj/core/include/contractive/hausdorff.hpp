#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "contractive/disc.hpp"
#include "contractive/measure.hpp"
#include "contractive/selfmap.hpp"
#include "contractive/verify.hpp"

namespace contractive {

using Rational = boost::multiprecision::cpp_rational;

/// Exact length 2^-depth.
Rational dyadic_length(const DyadicArc& arc);

/// One generation of a nested construction.
struct ArcCollection {
  int generation = 0;
  std::vector<DyadicArc> arcs;

  Rational total_length() const;
};

// Content ---------------------------------------------------------------------

struct ContentBounds {
  double lower = 0.0;
  double upper = 0.0;
  /// Cover realizing the upper bound.
  std::vector<Arc> cover;
};

/// Enclosure of the s-dimensional Hausdorff content of a finite union of arcs.
/// The upper bound is the cheaper of the best cover by hulls of consecutive
/// runs of pieces (up to 200 pieces), the optimal dyadic cover down to
/// `budget_depth`, and the whole circle. The lower bound is the
/// mass-distribution principle applied to Lebesgue measure on E.
ContentBounds hausdorff_content(const MeasurableSet& e, double s, int budget_depth = 24);

struct FrostmanCertificate {
  double s = 0.0;
  int depth = 0;
  bool ok = false;
  double constant = 0.0;            ///< max over scanned J of σ(J)/|J|^s
  DyadicArc binding;                ///< arc attaining the constant
  std::vector<double> per_depth;    ///< per_depth[n] = max over depth-n arcs
  std::optional<DyadicArc> failure; ///< attains per_depth[N] when the scan still grows
  std::string measure_id;

  /// M^s(A) ≥ σ(A)/C for σ-charged A, valid when ok.
  double content_lower_bound(double charged_mass) const { return ok ? charged_mass / constant : 0.0; }
};

/// Scans σ(J)/|J|^s over dyadic J of depth 0..N. The certificate fails when the
/// depth-N maximum exceeds the depth-⌊N/2⌋ maximum by more than the relative
/// tolerance, i.e. when the ratio is still growing at the finest scale.
FrostmanCertificate frostman_certificate(const BoundaryMeasure& sigma, double s, int max_depth,
                                         double tol = 1e-9, std::string measure_id = {});

// FN subcollection ------------------------------------------------------------

struct FnResult {
  std::vector<DyadicArc> g1;
  /// Maximal arcs J ⊆ I with Σ_{I_j ⊂ J}|I_j| ≤ (c - η)|J| that are not inside a G-arc.
  std::vector<DyadicArc> family;
  Rational g1_length;
  Rational g_length;
  bool coverage_holds = false;    ///< Σ_{G1}|I_j| ≥ η|I|
  bool density_holds = false;     ///< every dyadic L ⊆ I meeting G1 has Σ_{I_j ⊂ L}|I_j| ≥ (c - η)|L|
};

/// Thins G to G1 by removing the arcs inside maximal low-density dyadic
/// subarcs. All length arithmetic is exact. Both postconditions are
/// re-verified on the output.
FnResult fn_subcollection(const DyadicArc& I, const std::vector<DyadicArc>& g, const Rational& c, const Rational& eta);
FnResult fn_subcollection(const DyadicArc& I, const std::vector<DyadicArc>& g, double c, double eta);

// Hungerford ------------------------------------------------------------------

struct HungerfordCheck {
  bool ok = true;
  double realized_epsilon = 0.0;  ///< max |J|/|I| over child/parent pairs
  double realized_c = 1.0;        ///< min Σ_{J ⊂ I}|J|/|I| over parents
  std::string violation;          ///< names the offending pair
};

/// Verifies nesting and the two hypotheses for the consecutive generations.
/// Pass epsilon = c = nullopt to only measure the realized constants.
HungerfordCheck check_hungerford(const std::vector<ArcCollection>& generations, std::optional<double> epsilon,
                                 std::optional<double> c);

struct HungerfordBound {
  double bound = 0.0;  ///< 1 - log c / log ε
  HungerfordCheck check;
  double realized_bound = 0.0;  ///< the same formula at the realized pair
};

/// Throws PreconditionError naming the pair when a hypothesis fails.
HungerfordBound hungerford_bound(const std::vector<ArcCollection>& generations, double epsilon, double c);
double hungerford_formula(double epsilon, double c);

// Pullback content ------------------------------------------------------------

struct MonotonicityCheck {
  ContentBounds preimage;
  ContentBounds image;
  double ratio = 0.0;  ///< preimage.lower / image.upper
};

MonotonicityCheck fp_monotonicity_check(const SelfMap& f, const MeasurableSet& e, double s, int budget_depth = 24);

}  // namespace contractive
