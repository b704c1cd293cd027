#pragma once

#include <optional>
#include <string>
#include <vector>

#include "contractive/hyperbolic_grid.hpp"
#include "contractive/measure_scans.hpp"
#include "contractive/selfmap.hpp"
#include "contractive/zeros.hpp"

namespace contractive {

enum class Verdict { Consistent, Inconsistent, Inconclusive };
enum class Evidence { Contractive, Noncontractive, Undetermined };

std::string to_string(Verdict v);
std::string to_string(Evidence e);

struct ReportOptions {
  HyperbolicGridSpec grid;
  int max_depth = 8;             ///< condition (b) and B2 at ⌈N/4⌉, ⌈N/2⌉, N
  double alpha_turns = 0.0;      ///< Clark measure used for non-Herglotz maps
  double margin = 1e-3;          ///< D below 1 - margin counts as contractive
  double stable_change = 0.25;   ///< relative change accepted as "stabilizes"
  double floor = 1e-6;           ///< condition (b) below this counts as zero
  QuadSpec quad;
  bool box_scan = true;
  std::vector<double> c_grid = {0.01, 0.02, 0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 1.0};
  /// Tree depth used when a Clark measure must be sampled radially.
  int radial_tree_depth = 12;
};

struct ScaleRow {
  int depth = 0;
  double condition_b = 0.0;
  double b2 = 0.0;
  bool b2_divergent = false;
  std::optional<double> box_scan_best;
};

struct TheoremReport {
  std::string map_id;
  std::string map_description;
  SupEstimate sup;
  std::string clark_source;  ///< "herglotz", "blaschke" or "radial"
  int clark_tree_depth = -1;
  std::vector<ScaleRow> scales;
  double condition_b_constant = 0.0;  ///< at the finest depth
  double b2_characteristic = 0.0;     ///< at the finest depth
  bool box_scan_available = false;
  std::string box_scan_note;

  Evidence from_sup = Evidence::Undetermined;
  Evidence from_condition_b = Evidence::Undetermined;
  Evidence from_b2 = Evidence::Undetermined;
  Evidence from_box_scan = Evidence::Undetermined;
  Evidence classification = Evidence::Undetermined;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<std::string> notes;
};

/// Clark measure σ_α of f as a boundary measure: exact for Herglotz data and
/// finite Blaschke products, otherwise a dyadic tree from radial samples.
BoundaryMeasure clark_measure_of(const SelfMap& f, double alpha_turns, int radial_tree_depth, std::string* source);

/// Cross-theorem report: the sup of D_h, condition (b) and B2 of the Clark
/// measure, and the zeros-measure scan when f has a declared factorization.
TheoremReport theorem_report(const SelfMap& f, const std::string& map_id, const ReportOptions& opt = {});

}  // namespace contractive
