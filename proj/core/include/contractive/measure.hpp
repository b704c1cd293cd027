#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "contractive/disc.hpp"
#include "contractive/trig_poly.hpp"

namespace contractive {

struct Atom {
  double t = 0.0;  ///< position in turns
  double mass = 0.0;
};

/// Masses of all dyadic arcs down to a fixed depth. Parents are always
/// recomputed as left + right, so the consistency relation holds exactly.
class DyadicMassTree {
 public:
  static constexpr int kMaxDepth = 24;

  DyadicMassTree() = default;
  static DyadicMassTree from_leaves(std::vector<double> leaves);

  bool empty() const { return levels_.empty(); }
  int depth() const { return static_cast<int>(levels_.size()) - 1; }
  double total() const { return empty() ? 0.0 : levels_[0][0]; }

  double mass(const DyadicArc& arc) const;
  const std::vector<double>& level(int n) const { return levels_.at(n); }
  const std::vector<double>& leaves() const { return levels_.back(); }
  double leaf_length() const;

  /// Mass of the leaf range [lo, hi) via the canonical dyadic decomposition.
  double leaf_range_mass(std::uint64_t lo, std::uint64_t hi) const;

  DyadicMassTree scaled(double c) const;
  /// Rotation by a whole number of leaves.
  DyadicMassTree rotated_leaves(std::int64_t steps) const;
  /// The same measure seen only down to `depth`.
  DyadicMassTree truncated(int depth) const;
  /// Leaves split uniformly into 2^extra children each.
  DyadicMassTree refined(int extra) const;

  /// True when parent == left + right at every internal node.
  bool consistent() const;
  /// Smallest positive leaf mass; flags underflow risk.
  double min_positive_leaf() const;

 private:
  std::vector<std::vector<double>> levels_;
};

/// Finite positive measure on the circle: atoms, a dyadic tree whose leaves
/// carry uniform density, and an optional trigonometric density.
class BoundaryMeasure {
 public:
  struct ArcMass {
    double value = 0.0;
    double error_bound = 0.0;
  };

  BoundaryMeasure() = default;
  BoundaryMeasure(std::vector<Atom> atoms, DyadicMassTree tree, std::optional<TrigPoly> density);

  static BoundaryMeasure lebesgue(double mass = 1.0);
  static BoundaryMeasure dirac(double t, double mass = 1.0);
  static BoundaryMeasure from_atoms(std::vector<Atom> atoms);
  static BoundaryMeasure from_tree(DyadicMassTree tree);
  static BoundaryMeasure from_density(TrigPoly density);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const DyadicMassTree& tree() const { return tree_; }
  const std::optional<TrigPoly>& density() const { return density_; }

  bool has_atoms() const { return !atoms_.empty(); }
  bool has_tree() const { return !tree_.empty(); }
  bool has_density() const { return density_.has_value(); }
  int tree_depth() const { return tree_.empty() ? -1 : tree_.depth(); }

  double total_mass() const;
  bool is_zero() const { return total_mass() <= 0.0; }

  ArcMass arc_mass(const Arc& arc) const;
  /// Same as arc_mass but atoms on either endpoint count.
  ArcMass closed_arc_mass(const Arc& arc) const;
  /// Exact for the tree when arc.depth ≤ tree depth.
  double dyadic_mass(const DyadicArc& arc) const;

  BoundaryMeasure scaled(double c) const;
  /// Pushforward under t ↦ t + shift. Tree parts need a whole number of leaves.
  BoundaryMeasure rotated(double shift) const;
  BoundaryMeasure operator+(const BoundaryMeasure& other) const;

  /// ∫ (ξ + z)/(ξ - z) dσ(ξ); tree leaves and densities integrated in closed form.
  Complex herglotz(Complex z) const;
  Complex herglotz_derivative(Complex z) const;
  /// u(z) = ∫ P_z dσ.
  double poisson(Complex z) const;

 private:
  ArcMass arc_mass_impl(const Arc& arc, bool closed) const;

  std::vector<Atom> atoms_;
  DyadicMassTree tree_;
  std::optional<TrigPoly> density_;
};

/// Alternating Bernoulli measure: the split of generation n (root n = 0) gives
/// the left child a share p when n is odd and 1 - p when n is even.
BoundaryMeasure bernoulli_alternating_measure(double p, int depth);

/// Interior point with mass for the closed-disc measures.
struct InteriorAtom {
  Complex z;
  double mass = 0.0;
};

/// μ = Σ (1 - |z_n|²) δ_{z_n} + boundary part.
struct ZerosMeasure {
  std::vector<InteriorAtom> interior_atoms;
  BoundaryMeasure boundary_part;

  double total_mass() const;
  /// μ(Q̄) for the closed Carleson box over `arc`.
  double closed_box_mass(const Arc& arc) const;
};

/// ∫ (1 - |z|²)/|1 - conj(w) z|² dμ(w).
double closed_disc_poisson(const ZerosMeasure& mu, Complex z);

}  // namespace contractive
