#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "contractive/hausdorff.hpp"
#include "contractive/measure.hpp"
#include "contractive/selfmap.hpp"

namespace contractive {

struct CantorOptions {
  double K = 1.0 / 16.0;
  double K1 = 1.0 / 192.0;   ///< must satisfy 0 < K1 < K/10
  /// η as a fraction of the realized stopping-arc coverage C1 of each base arc.
  double eta_fraction = 0.5;
  int generations = 3;       ///< generations after the seed to attempt
  int max_depth = 20;        ///< finest dyadic depth searched
  std::size_t witness_points = 32;
  int trace_min_j = 4;       ///< radial traces at r = 1 - 2^-j, j = min..max
  int trace_max_j = 12;
};

enum class CantorStatus {
  Complete,        ///< every requested generation is nonempty
  Truncated,       ///< some generation came out empty at this resolution
  NoStoppingArcs,  ///< the seed has no subarc with P[μ] ≥ K
};

std::string to_string(CantorStatus s);

struct RadialTrace {
  double t = 0.0;
  std::vector<double> r;
  std::vector<double> modulus;  ///< |f(r ξ)|
  double max_modulus = 0.0;     ///< limsup proxy over the sampled radii
};

struct CantorGenerationStats {
  std::size_t bases = 0;          ///< base arcs (seed or reset arcs) used
  double min_stopping_fraction = 1.0;  ///< min over bases of Σ|I_j|/|base|
  double min_kept_fraction = 1.0;      ///< min over bases of Σ_{G1}|I_j|/|base|
  double min_reset_coverage = 1.0;     ///< min over parents of Σ|J_k|/|I|
  double max_stopping_poisson = 0.0;   ///< max P[μ] over stopping arcs
};

struct CantorResult {
  CantorStatus status = CantorStatus::Complete;
  DyadicArc seed;
  double seed_poisson = 0.0;
  std::vector<ArcCollection> generations;  ///< generations[0] = {seed}
  std::vector<CantorGenerationStats> stats; ///< stats[n] describes generations[n + 1]
  HungerfordCheck check;                   ///< at the realized constants
  double dimension_bound = 0.0;            ///< 1 - log c / log ε at the realized pair
  bool hypotheses_hold = false;
  std::vector<RadialTrace> traces;
  double trace_max = 0.0;

  std::size_t nonempty_generations() const;
};

/// Desk-scale version of the nested stopping-time construction: a seed arc
/// with K1/2 ≤ P[μ] ≤ K1, maximal stopping arcs with P[μ] ≥ K thinned by
/// fn_subcollection, and recursion through maximal reset arcs with
/// P[μ] ≤ K1. Throws ResolutionError when no seed exists inside `I`.
CantorResult cantor_builder(const ZerosMeasure& mu, const Arc& I, const CantorOptions& opt = {},
                            const SelfMap* f = nullptr);

}  // namespace contractive
