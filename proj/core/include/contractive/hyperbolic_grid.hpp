#pragma once

#include <cstddef>
#include <vector>

#include "contractive/selfmap.hpp"

namespace contractive {

/// Rings of equal geodesic spacing covering {|z| ≤ 1 - 2^-J}.
struct HyperbolicGridSpec {
  int J = 8;
  double step = 0.25;           ///< target geodesic spacing between rings
  double angular_factor = 1.0;  ///< node spacing along a ring, relative to step
};

struct GridRing {
  double r = 0.0;
  std::size_t nodes = 1;
};

class HyperbolicGrid {
 public:
  explicit HyperbolicGrid(const HyperbolicGridSpec& spec);

  const HyperbolicGridSpec& spec() const { return spec_; }
  const std::vector<GridRing>& rings() const { return rings_; }
  std::size_t node_count() const { return nodes_; }
  double covered_radius() const { return covered_radius_; }

  /// Every point of the covered disc lies within this geodesic distance of a node.
  double mesh() const { return mesh_; }

  Complex node(std::size_t ring, std::size_t j) const;

 private:
  HyperbolicGridSpec spec_;
  std::vector<GridRing> rings_;
  std::size_t nodes_ = 0;
  double covered_radius_ = 0.0;
  double mesh_ = 0.0;
};

/// Per-node samples used by sup estimates and essential-norm tables.
struct GridSample {
  Complex z;
  double modulus = 0.0;  ///< |f(z)|
  double dh = 0.0;       ///< D_h(f)(z)
};

std::vector<GridSample> sample_grid(const SelfMap& f, const HyperbolicGrid& grid);

struct SupEstimate {
  double lower = 0.0;
  double certified_upper = 1.0;
  Complex argmax;
  double mesh = 0.0;
  double covered_radius = 0.0;
  std::size_t nodes = 0;
  /// The annulus covered_radius < |z| < 1 is never sampled.
  bool annulus_uncovered = true;
};

/// Largest v with geodesic distance at most `radius` from m, both in [0, 1).
double certified_bound(double m, double radius);

SupEstimate sup_hyperbolic_derivative(const SelfMap& f, const HyperbolicGridSpec& spec);
SupEstimate sup_from_samples(const std::vector<GridSample>& samples, const HyperbolicGrid& grid);

}  // namespace contractive
