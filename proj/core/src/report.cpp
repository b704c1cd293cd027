#include "contractive/report.hpp"

#include <algorithm>
#include <cmath>

#include "contractive/clark.hpp"
#include "contractive/errors.hpp"

namespace contractive {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Consistent: return "consistent";
    case Verdict::Inconsistent: return "inconsistent";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

std::string to_string(Evidence e) {
  switch (e) {
    case Evidence::Contractive: return "contractive";
    case Evidence::Noncontractive: return "noncontractive";
    case Evidence::Undetermined: return "undetermined";
  }
  return "unknown";
}

BoundaryMeasure clark_measure_of(const SelfMap& f, double alpha_turns, int depth, std::string* source) {
  if (f.kind() == SelfMap::Kind::Herglotz) {
    if (source) *source = "herglotz";
    return f.as_herglotz().measure;
  }
  if (f.is_rational_inner()) {
    if (source) *source = "blaschke";
    return clark_blaschke(f, alpha_turns).measure();
  }
  if (depth < 1 || depth > 20) throw ArgumentError("clark_measure_of: radial tree depth must lie in [1, 20]");
  if (source) *source = "radial";
  // Density of σ_α at radius r, integrated over leaves by the trapezoid rule.
  constexpr int kPerLeaf = 8;
  const std::size_t leaves = std::size_t{1} << depth;
  const double r = 1.0 - std::ldexp(1.0, -(depth + 3));
  const auto d = clark_radial(f, alpha_turns, r, leaves * kPerLeaf);
  std::vector<double> mass(leaves, 0.0);
  const double h = 1.0 / static_cast<double>(leaves * kPerLeaf);
  for (std::size_t k = 0; k < leaves; ++k) {
    double s = 0.0;
    for (int i = 0; i <= kPerLeaf; ++i) {
      const double v = d.density[(k * kPerLeaf + i) % d.density.size()];
      s += (i == 0 || i == kPerLeaf) ? 0.5 * v : v;
    }
    mass[k] = s * h;
  }
  return BoundaryMeasure::from_tree(DyadicMassTree::from_leaves(std::move(mass)));
}

namespace {

std::vector<int> check_depths(int n) {
  std::vector<int> d{std::max(1, (n + 3) / 4), std::max(1, (n + 1) / 2), n};
  d.erase(std::unique(d.begin(), d.end()), d.end());
  return d;
}

// Trend of a quantity expected to stay bounded below for contractive maps:
// stable over the last doubling, or decaying over every doubling.
Evidence lower_trend(const std::vector<double>& v, double change, double floor) {
  if (v.back() < floor) return Evidence::Noncontractive;
  if (v.size() < 2) return Evidence::Undetermined;
  const std::size_t n = v.size();
  if (v[n - 1] >= (1.0 - change) * v[n - 2]) return Evidence::Contractive;
  bool decays = true;
  for (std::size_t i = 1; i < n; ++i)
    if (v[i] >= (1.0 - change) * v[i - 1]) decays = false;
  return decays ? Evidence::Noncontractive : Evidence::Undetermined;
}

Evidence upper_trend(const std::vector<double>& v, bool divergent, double change) {
  if (divergent) return Evidence::Noncontractive;
  if (v.size() < 2) return Evidence::Undetermined;
  const std::size_t n = v.size();
  if (v[n - 1] <= (1.0 + change) * v[n - 2]) return Evidence::Contractive;
  bool grows = true;
  for (std::size_t i = 1; i < n; ++i)
    if (v[i] <= (1.0 + change) * v[i - 1]) grows = false;
  return grows ? Evidence::Noncontractive : Evidence::Undetermined;
}

}  // namespace

TheoremReport theorem_report(const SelfMap& f, const std::string& map_id, const ReportOptions& opt) {
  if (opt.max_depth < 1 || opt.max_depth > 20) throw ArgumentError("theorem_report: depth must lie in [1, 20]");
  TheoremReport rep;
  rep.map_id = map_id;
  rep.map_description = f.describe();

  rep.sup = sup_hyperbolic_derivative(f, opt.grid);
  if (rep.sup.certified_upper < 1.0 - opt.margin) rep.from_sup = Evidence::Contractive;
  else if (rep.sup.lower >= 1.0 - opt.margin) rep.from_sup = Evidence::Noncontractive;
  rep.notes.push_back("sup of D_h certified only on |z| <= " + std::to_string(rep.sup.covered_radius));

  const BoundaryMeasure sigma = clark_measure_of(f, opt.alpha_turns, opt.radial_tree_depth, &rep.clark_source);
  rep.clark_tree_depth = sigma.tree_depth();
  if (sigma.has_tree()) {
    if (sigma.tree_depth() < opt.max_depth) rep.notes.push_back("Clark measure tree is shallower than the scan depth");
    rep.notes.push_back("tree truncated at depth " + std::to_string(sigma.tree_depth()) +
                        ": the truncated map has a bounded density and is contractive; "
                        "trends above that depth describe the untruncated measure");
  }

  const auto depths = check_depths(opt.max_depth);
  const auto cb = condition_b_constant(sigma, opt.max_depth);
  std::vector<double> cbv, b2v;
  bool divergent = false;
  for (int d : depths) {
    // B2 is recomputed per depth: the radial quadrature reaches 2^-(d + extra
    // bands), which is what exposes the growth for singular measures.
    const auto b2 = b2_characteristic(sigma, d, opt.quad);
    ScaleRow row;
    row.depth = d;
    row.condition_b = *std::min_element(cb.per_depth.begin(), cb.per_depth.begin() + d);
    row.b2 = b2.value;
    row.b2_divergent = b2.divergent;
    divergent = divergent || b2.divergent;
    cbv.push_back(row.condition_b);
    b2v.push_back(row.b2);
    rep.scales.push_back(row);
  }
  rep.condition_b_constant = cbv.back();
  rep.b2_characteristic = b2v.back();
  double floor = opt.floor;
  if (rep.clark_source == "radial") {
    // Radial sampling at 1 - r = 2^-(d+3) smears every atom into a Poisson bump,
    // so condition (b) cannot fall much below a multiple of 1 - r.
    floor = std::max(floor, 100.0 * std::ldexp(1.0, -(opt.radial_tree_depth + 3)));
    rep.notes.push_back("condition (b) below " + std::to_string(floor) + " counts as zero at this radial resolution");
  }
  rep.from_condition_b = lower_trend(cbv, opt.stable_change, floor);
  rep.from_b2 = upper_trend(b2v, divergent, opt.stable_change);

  if (opt.box_scan) {
    std::optional<ZerosMeasure> mu;
    try {
      mu = zeros_measure(f);
    } catch (const InputError& e) {
      rep.box_scan_note = e.what();
    }
    if (mu) {
      rep.box_scan_available = true;
      std::vector<double> best;
      for (std::size_t i = 0; i < depths.size(); ++i) {
        const auto t2 = box_mass_scan(*mu, opt.c_grid, depths[i]);
        rep.scales[i].box_scan_best = t2.best;
        best.push_back(t2.best.value_or(0.0));
      }
      rep.from_box_scan = lower_trend(best, opt.stable_change, opt.floor);
    }
  }

  std::vector<Evidence> determined;
  for (Evidence e : {rep.from_sup, rep.from_condition_b, rep.from_b2, rep.from_box_scan})
    if (e != Evidence::Undetermined) determined.push_back(e);
  const bool agree = std::all_of(determined.begin(), determined.end(),
                                 [&](Evidence e) { return e == determined.front(); });
  if (!agree) {
    rep.verdict = Verdict::Inconsistent;
    rep.notes.push_back("determined indicators disagree");
  } else if (determined.size() >= 2) {
    rep.verdict = Verdict::Consistent;
    rep.classification = determined.front();
  } else {
    rep.verdict = Verdict::Inconclusive;
    if (!determined.empty()) rep.classification = determined.front();
  }
  return rep;
}

}  // namespace contractive
