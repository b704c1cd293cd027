#include "contractive/hyperbolic_grid.hpp"

#include <cmath>

#include "contractive/errors.hpp"
#include "contractive/parallel.hpp"

namespace contractive {

HyperbolicGrid::HyperbolicGrid(const HyperbolicGridSpec& spec) : spec_(spec) {
  if (spec.J < 1 || spec.J > 16) throw ArgumentError("grid J must lie in [1, 16]");
  if (!(spec.step > 0.0) || !(spec.angular_factor > 0.0))
    throw ArgumentError("grid step and angular factor must be positive");
  covered_radius_ = 1.0 - std::ldexp(1.0, -spec.J);
  const double reach = std::atanh(covered_radius_);
  const auto levels = static_cast<std::size_t>(std::ceil(reach / spec.step));
  const double h = reach / static_cast<double>(levels);
  const double spacing = h * spec.angular_factor;

  double worst_arc = 0.0;
  rings_.push_back({0.0, 1});
  for (std::size_t i = 1; i <= levels; ++i) {
    const double r = (i == levels) ? covered_radius_ : std::tanh(h * static_cast<double>(i));
    const double circumference = kTwoPi * r / (1.0 - r * r);
    const auto n = static_cast<std::size_t>(std::ceil(circumference / spacing));
    rings_.push_back({r, n});
    worst_arc = std::max(worst_arc, 0.5 * circumference / static_cast<double>(n));
  }
  for (const auto& g : rings_) nodes_ += g.nodes;
  mesh_ = 0.5 * h + worst_arc;
}

Complex HyperbolicGrid::node(std::size_t ring, std::size_t j) const {
  const auto& g = rings_.at(ring);
  return std::polar(g.r, kTwoPi * static_cast<double>(j) / static_cast<double>(g.nodes));
}

std::vector<GridSample> sample_grid(const SelfMap& f, const HyperbolicGrid& grid) {
  const auto& rings = grid.rings();
  std::vector<std::size_t> offset(rings.size() + 1, 0);
  for (std::size_t i = 0; i < rings.size(); ++i) offset[i + 1] = offset[i] + rings[i].nodes;
  std::vector<GridSample> out(offset.back());
  const bool automorphism = f.is_automorphism();
  parallel_for(rings.size(), [&](std::size_t i) {
    const auto jets = f.ring(rings[i].r, 0.0, rings[i].nodes);
    for (std::size_t j = 0; j < jets.size(); ++j) {
      const Complex z = grid.node(i, j);
      GridSample& s = out[offset[i] + j];
      s.z = z;
      s.modulus = std::abs(jets[j].value);
      s.dh = automorphism ? 1.0 : hyperbolic_derivative(jets[j], z);
    }
  });
  return out;
}

double certified_bound(double m, double radius) {
  if (m >= 1.0) return 1.0;
  return std::tanh(std::atanh(std::max(m, 0.0)) + radius);
}

SupEstimate sup_from_samples(const std::vector<GridSample>& samples, const HyperbolicGrid& grid) {
  if (samples.empty()) throw ArgumentError("empty grid");
  SupEstimate e;
  e.lower = -1.0;
  for (const auto& s : samples)
    if (s.dh > e.lower) {
      e.lower = s.dh;
      e.argmax = s.z;
    }
  e.mesh = grid.mesh();
  e.covered_radius = grid.covered_radius();
  e.nodes = samples.size();
  e.certified_upper = certified_bound(e.lower, 2.0 * e.mesh);
  return e;
}

SupEstimate sup_hyperbolic_derivative(const SelfMap& f, const HyperbolicGridSpec& spec) {
  const HyperbolicGrid grid(spec);
  return sup_from_samples(sample_grid(f, grid), grid);
}

}  // namespace contractive
