#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "contractive/measure.hpp"
#include "contractive/measure_scans.hpp"
#include "contractive/selfmap.hpp"

namespace contractive {

class RingEvaluator;

/// μ(f) = Σ (1 - |z_n|²) δ_{z_n} + 2ν + 2 log|f|⁻¹ dm for a map given as a
/// product of Blaschke, singular-atom, outer and scaled-rotation pieces.
/// Purely atomic Herglotz maps are first converted to their zeros.
ZerosMeasure zeros_measure(const SelfMap& f);

/// ∫ dμ(w) / (|1 - conj(w) z|² τ_z(w)) with τ_z(w) = (z - w)/(1 - conj(z) w).
Complex zeros_log_derivative_integral(const ZerosMeasure& mu, Complex z);

struct LogModulusRow {
  Complex z;
  double log_term = 0.0;   ///< log |f(z)|⁻²
  double poisson = 0.0;    ///< P[μ](z)
  double slack_a = 0.0;    ///< log_term - poisson
  double ratio_b = 0.0;    ///< log_term / poisson
  double zero_distance = 0.0;  ///< d_h(z, zero set), +inf without zeros
  double residual_c = 0.0; ///< |f'/f - s ∫ ...|
  bool skipped_c = false;  ///< z at a zero of f
};

struct LogModulusReport {
  std::vector<LogModulusRow> rows;
  int sign = 1;                     ///< calibrated sign s
  double calibration_residual = 0.0;
  double min_slack_a = 0.0;
  double max_residual_c = 0.0;
  std::size_t skipped_c = 0;
};

/// Sign of the logarithmic-derivative identity, fixed by finite differences
/// of log f at f(z) = z, z = 1/2. Returns (sign, residual).
std::pair<int, double> calibrate_log_derivative_sign();

LogModulusReport log_modulus_checks(const SelfMap& f, const ZerosMeasure& mu, const std::vector<Complex>& samples);

/// P[μ] at the anchors of the half-step arc grid, one ring per depth, cached.
/// Thread-safe.
class AnchorPoisson {
 public:
  explicit AnchorPoisson(const ZerosMeasure& mu);
  ~AnchorPoisson();

  /// P[μ](z_I) for the scanned arc (depth n, q) with q as in ScannedArc.
  double scanned(int n, std::uint64_t q) const;
  double at(const DyadicArc& arc) const { return scanned(arc.depth, 2 * arc.index); }
  double at(const ScannedArc& arc) const { return scanned(arc.depth, 2 * arc.index + (arc.rotated ? 1 : 0)); }
  const std::vector<double>& ring(int n) const;

 private:
  const ZerosMeasure* mu_;
  std::unique_ptr<RingEvaluator> boundary_;
  mutable std::mutex lock_;
  mutable std::map<int, std::shared_ptr<const std::vector<double>>> cache_;
};

struct BoxMassRow {
  ScannedArc arc;
  double box_mass = 0.0;  ///< μ(Q̄)
  double poisson = 0.0;   ///< P[μ](z_Q)
  double ratio = 0.0;     ///< μ(Q̄)/(l(Q) P[μ](z_Q))
};

struct BoxMassCandidate {
  double c = 0.0;
  double gate = 0.0;
  bool pass = true;
  std::size_t tested = 0;   ///< boxes with P[μ](z_Q) ≤ gate
  std::optional<BoxMassRow> tightest;  ///< smallest ratio among tested boxes
};

struct BoxMassResult {
  std::vector<BoxMassCandidate> candidates;
  std::optional<double> best;            ///< largest passing C
  std::optional<BoxMassRow> violation;  ///< violating box of the smallest failing C
  int max_depth = 0;
};

/// For each C: every scanned box of depth 1..N with P[μ](z_Q) ≤ gate must
/// satisfy μ(Q̄)/l(Q) ≥ C P[μ](z_Q) (relative slack 1e-12). The gate
/// defaults to C itself.
BoxMassResult box_mass_scan(const ZerosMeasure& mu, const std::vector<double>& c_grid, int max_depth,
                             std::optional<double> gate = std::nullopt);

}  // namespace contractive
