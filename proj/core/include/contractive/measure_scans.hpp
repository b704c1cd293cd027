#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "contractive/measure.hpp"

namespace contractive {

/// u(z) = ∫ P_z dσ.
double poisson_integral(const BoundaryMeasure& sigma, Complex z);

/// (1 - |z|²)|∇u(z)| = 2|∫ (1 - |z|²)/(|ξ - z|² τ_z(ξ)) dσ(ξ)| with
/// τ_z(ξ) = (ξ - z)/(1 - conj(z) ξ).
double weighted_gradient(const BoundaryMeasure& sigma, Complex z);

/// One scanned arc: dyadic (rotated = false) or shifted by half its length.
struct ScannedArc {
  int depth = 0;
  std::uint64_t index = 0;
  bool rotated = false;
  Arc arc() const;
};

struct ArcRatioRow {
  ScannedArc arc;
  double density = 0.0;  ///< σ(I)/|I|
  double poisson = 0.0;  ///< u(z_I)
  double ratio = 0.0;
};

struct ConditionBResult {
  double constant = 0.0;
  std::vector<double> per_depth;  ///< per_depth[n - 1] = min at depth n
  ScannedArc worst;
};

/// min over dyadic arcs of depth 1..N and their half-step rotations of
/// (σ(I)/|I|)/u(z_I). Pass `rows` to collect every scanned arc.
ConditionBResult condition_b_constant(const BoundaryMeasure& sigma, int max_depth,
                                      std::vector<ArcRatioRow>* rows = nullptr);

struct QuadSpec {
  double p = 2.0;
  int radial_nodes = 16;    ///< Gauss-Legendre nodes per dyadic radial band
  int extra_bands = 4;      ///< bands below the finest box, as a fraction 2^-extra of its side
  int angular_exponent = 3; ///< band k gets at least 2^(k + exponent) angular nodes
  int min_angular = 64;
};

struct B2Result {
  double value = 1.0;
  bool divergent = false;
  std::vector<double> per_depth;  ///< running sup up to depth n
  ScannedArc worst;
  /// Box mean of u over u at the anchor, extremes per depth.
  std::vector<double> mean_ratio_min;
  std::vector<double> mean_ratio_max;
};

/// sup over dyadic Carleson boxes (and half-step rotations) of depth 1..N of
/// ⟨u⟩_Q ⟨u^{-1/(p-1)}⟩_Q^{p-1}, by banded tensor quadrature.
B2Result b2_characteristic(const BoundaryMeasure& sigma, int max_depth, const QuadSpec& quad = {});

struct RatioScan {
  double value = 0.0;
  bool infinite = false;
  ScannedArc worst;
};

/// sup σ(2I)/σ(I) over scanned arcs of depth 1..N.
RatioScan doubling_constant(const BoundaryMeasure& sigma, int max_depth);

/// max |σ(I)/σ(I') - 1| over adjacent depth-n dyadic pairs, both orders.
RatioScan symmetry_defect(const BoundaryMeasure& sigma, int depth);

/// Extremes of σ(I)/σ(I') over adjacent dyadic pairs at depths 1..N.
struct ContiguousRatioRange {
  double min_ratio = std::numeric_limits<double>::infinity();
  double max_ratio = 0.0;
  bool infinite = false;
};
ContiguousRatioRange contiguous_ratio_range(const BoundaryMeasure& sigma, int max_depth);

struct CompressionVerdict {
  bool pass = true;
  std::size_t heavy_arcs = 0;
  int arc_depth_limit = 0;
  /// The heavy arc with the weakest compression.
  DyadicArc worst_arc;
  double worst_ratio = 0.0;  ///< min over searched J of (σ(J)/|J|)/(σ(I)/|I|)
};

/// For every heavy dyadic arc I (σ(I)/|I| ≥ h σ(∂D)) of depth at most the
/// tree depth minus K, looks for a descendant J within K generations with
/// σ(J)/|J| ≤ ε σ(I)/|I|. Measures without a tree use `fallback_depth`.
CompressionVerdict bounded_compression_test(const BoundaryMeasure& sigma, double epsilon, int search_depth,
                                            double heavy_threshold = 1.0, int fallback_depth = 6);

}  // namespace contractive
