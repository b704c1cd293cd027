#pragma once

#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "contractive/disc.hpp"
#include "contractive/hyperbolic_grid.hpp"
#include "contractive/measure_scans.hpp"
#include "contractive/selfmap.hpp"

namespace contractive {

/// Finite union of arcs, normalized into sorted disjoint pieces [a, b) ⊂ [0, 1].
class MeasurableSet {
 public:
  MeasurableSet() = default;
  explicit MeasurableSet(const std::vector<Arc>& arcs);

  static MeasurableSet whole() { return MeasurableSet({Arc(0.0, 1.0)}); }

  const std::vector<std::pair<double, double>>& pieces() const { return pieces_; }
  /// Pieces as arcs, with a piece ending at 1 joined to one starting at 0.
  std::vector<Arc> cyclic_arcs() const;

  bool empty() const { return pieces_.empty(); }
  bool is_full() const;
  double measure() const { return prefix_.empty() ? 0.0 : prefix_.back(); }
  /// m(E ∩ I) in O(log n).
  double measure_in(const Arc& arc) const;
  bool contains(double t) const;

 private:
  double cumulative(double x) const;  // m(E ∩ [0, x)), x in [0, 1]

  std::vector<std::pair<double, double>> pieces_;
  std::vector<double> prefix_;  // prefix_[i] = total length of pieces_[0..i]
};

/// ω(z, E) by closed-form Poisson antiderivatives per piece.
double harmonic_measure(Complex z, const MeasurableSet& e);

/// f⁻¹(E) on the circle for a finite Blaschke product: each piece of E pulls
/// back to one arc per winding sector of the boundary phase.
MeasurableSet boundary_preimage(const SelfMap& f, const MeasurableSet& e);

struct MixingRow {
  std::size_t arc = 0;  ///< index into the arc list
  std::size_t set = 0;  ///< index into the set list
  double preimage_density = 0.0;  ///< m(f⁻¹(E) ∩ I)/m(I)
  double omega = 0.0;             ///< ω(f(z_I), E)
  double ratio = 0.0;             ///< preimage_density / omega
  /// 1/(|I| min_I P_{z_I}), the box-kernel constant of this arc.
  double kernel_bound = 0.0;
  bool skipped = false;           ///< ω = 0
};

struct MixingReport {
  std::vector<MixingRow> rows;
  double lower_constant = std::numeric_limits<double>::infinity();  ///< min ratio
  double upper_constant = 0.0;                                      ///< max ratio
  std::size_t skipped = 0;
  /// Stated universal bound for the upper ratio and whether every row respects it.
  double stated_bound = 3.0;
  bool stated_bound_respected = true;
  /// Every row satisfies ratio ≤ kernel_bound, the bound the Loewner argument actually yields.
  bool kernel_bound_respected = true;
};

/// Ratios m(f⁻¹(E) ∩ I)/(m(I) ω(f(z_I), E)) for every pair (I, E).
MixingReport mixing_report(const SelfMap& f, const std::vector<Arc>& arcs, const std::vector<MeasurableSet>& sets,
                           double tol = 1e-9);

struct B2SetVerdict {
  std::vector<double> per_depth;   ///< min ratio at each depth 1..N
  std::vector<int> check_depths;   ///< ⌈N/4⌉, ⌈N/2⌉, N
  std::vector<double> running_min; ///< min over depths ≤ each check depth
  double floor = 0.0;
  bool stabilizes = false;
  bool trivial = false;            ///< m(E) ∈ {0, 1}
  ScannedArc worst;
};

/// min over scanned arcs of (m(I ∩ E)/m(I))/ω(z_I, E). E is reported B₂ when the
/// running minimum drops by less than `max_drop` between consecutive check
/// depths and stays above `min_floor`.
B2SetVerdict b2_set_test(const MeasurableSet& e, int max_depth, double max_drop = 0.25, double min_floor = 1e-6);

struct EssentialNormRow {
  double level = 0.0;
  double sup = 0.0;         ///< sup of D_h over nodes with |f| > level, 0 when none
  std::size_t nodes = 0;
};

std::vector<EssentialNormRow> essential_norm_estimate(const SelfMap& f, const std::vector<double>& levels,
                                                      const HyperbolicGridSpec& grid);
std::vector<EssentialNormRow> essential_norm_from_samples(const std::vector<GridSample>& samples,
                                                          const std::vector<double>& levels);

/// Closed geodesic ball; radius 0 is a puncture.
struct HyperbolicBall {
  Complex center;
  double radius = 0.0;
};

struct InscribedRadius {
  bool infinite = false;
  double radius = 0.0;     ///< geodesic distance from the best node to the obstacles
  double radius_dh = 0.0;  ///< the same separation in the d_h normalization
  Complex at;
  int J = 0;
  double covered_radius = 0.0;
  std::size_t nodes = 0;
};

/// Lower bound for the radius of the largest hyperbolic disc inside D minus
/// the obstacles: max over grid nodes of the distance to the obstacle set.
InscribedRadius inscribed_hyperbolic_radius(const std::vector<HyperbolicBall>& obstacles,
                                            const HyperbolicGridSpec& grid);

}  // namespace contractive
