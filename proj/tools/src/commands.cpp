#include "contractive_tools/commands.hpp"

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>

#include "contractive/cantor.hpp"
#include "contractive/clark.hpp"
#include "contractive/errors.hpp"
#include "contractive/hausdorff.hpp"
#include "contractive/hyperbolic_grid.hpp"
#include "contractive/measure_scans.hpp"
#include "contractive/report.hpp"
#include "contractive/verify.hpp"
#include "contractive/zeros.hpp"
#include "contractive_tools/io.hpp"

namespace contractive::tools {

namespace {

constexpr const char* kVersion = "0.1.0";

struct Table {
  std::string name;
  std::string content;
};

struct Outcome {
  Json doc;
  std::vector<Table> tables;
  int status = kOk;
};

// CSV writer with round-trip precision.
class Csv {
 public:
  explicit Csv(std::initializer_list<const char*> header) {
    bool first = true;
    for (const char* h : header) {
      out_ << (first ? "" : ",") << h;
      first = false;
    }
    out_ << '\n';
  }
  template <class... Ts>
  void row(const Ts&... v) {
    bool first = true;
    ((out_ << (first ? "" : ",") << cell(v), first = false), ...);
    out_ << '\n';
  }
  std::string str() const { return out_.str(); }

 private:
  static std::string cell(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
  }
  static std::string cell(bool x) { return x ? "1" : "0"; }
  template <std::integral T>
  static std::string cell(T x) {
    return std::to_string(x);
  }
  static std::string cell(const std::string& s) { return s; }
  std::ostringstream out_;
};

Json cplx(Complex z) { return Json::array({number(z.real()), number(z.imag())}); }

Json grid_json(const HyperbolicGridSpec& g) {
  return {{"J", g.J}, {"step", g.step}, {"angular_factor", g.angular_factor}};
}

Json scanned_json(const ScannedArc& a) {
  const Arc arc = a.arc();
  return {{"depth", a.depth}, {"index", a.index}, {"rotated", a.rotated}, {"start", arc.start}, {"length", arc.length}};
}

Json dyadic_json(const DyadicArc& a) { return Json::array({a.depth, a.index}); }

HyperbolicGridSpec grid_of(const RunConfig& c) {
  HyperbolicGridSpec g;
  g.J = c.grid_J;
  g.angular_factor = c.angular_factor;
  return g;
}

std::vector<int> depths_or(const RunConfig& c, std::vector<int> fallback) {
  return c.depths.empty() ? fallback : c.depths;
}

int depth_or(const RunConfig& c, int fallback) { return c.depths.empty() ? fallback : c.depths.back(); }

Json meta(const RunConfig& c) {
  Json inputs = Json::object();
  if (c.map) inputs["map"] = document_id(*c.map);
  if (c.measure) inputs["measure"] = document_id(*c.measure);
  if (c.set) inputs["set"] = c.set->filename().string();
  // Commands overwrite depth and tol with the values they actually used.
  Json m = {{"command", c.command}, {"version", kVersion}, {"inputs", inputs}, {"seed", c.seed},
            {"grid_J", c.grid_J},   {"depth", nullptr},    {"tol", nullptr}};
  if (!c.depths.empty()) m["depth"] = c.depths;
  if (c.tol) m["tol"] = *c.tol;
  return m;
}

SelfMap need_map(const RunConfig& c) {
  if (!c.map) throw ArgumentError(c.command + ": --map is required");
  return load_map(*c.map);
}

BoundaryMeasure need_measure(const RunConfig& c) {
  if (!c.measure) throw ArgumentError(c.command + ": --measure is required");
  return load_measure(*c.measure);
}

Json measure_summary(const BoundaryMeasure& m) {
  Json atoms = Json::array();
  for (const auto& a : m.atoms()) atoms.push_back(Json::array({number(a.t), number(a.mass)}));
  Json j = {{"total_mass", number(m.total_mass())}, {"atoms", atoms}, {"tree_depth", m.tree_depth()}};
  if (m.has_density())
    j["density"] = {{"cos", m.density()->cos_coeffs()}, {"sin", m.density()->sin_coeffs()}};
  return j;
}

// dh ------------------------------------------------------------------------

Outcome cmd_dh(const RunConfig& c) {
  const SelfMap f = need_map(c);
  const HyperbolicGrid grid(grid_of(c));
  const auto samples = sample_grid(f, grid);
  const SupEstimate sup = sup_from_samples(samples, grid);
  const std::vector<double> levels{0.0, 0.5, 0.9, 0.99, 0.999};
  const auto ess = essential_norm_from_samples(samples, levels);

  Outcome o;
  o.doc["meta"] = meta(c);
  o.doc["map"] = f.describe();
  o.doc["grid"] = grid_json(grid.spec());
  o.doc["sup"] = {{"lower", number(sup.lower)},
                  {"certified_upper", number(sup.certified_upper)},
                  {"argmax", cplx(sup.argmax)},
                  {"mesh", number(sup.mesh)},
                  {"covered_radius", number(sup.covered_radius)},
                  {"nodes", sup.nodes},
                  {"annulus_uncovered", sup.annulus_uncovered},
                  {"automorphism", f.is_automorphism()}};
  Json rows = Json::array();
  Csv csv({"level", "sup", "nodes"});
  for (const auto& r : ess) {
    rows.push_back({{"level", r.level}, {"sup", number(r.sup)}, {"nodes", r.nodes}});
    csv.row(r.level, r.sup, r.nodes);
  }
  o.doc["essential_norm"] = {{"covered_radius", number(grid.covered_radius())}, {"rows", rows}};
  o.tables.push_back({"dh_essential_norm.csv", csv.str()});
  return o;
}

// clark ---------------------------------------------------------------------

Outcome cmd_clark(const RunConfig& c) {
  const SelfMap f = need_map(c);
  const Complex alpha = boundary_point(c.alpha);
  const Complex f0 = f(Complex(0.0, 0.0));
  const double expected = (1.0 - std::norm(f0)) / std::norm(alpha - f0);
  Outcome o;
  o.doc["meta"] = meta(c);
  o.doc["map"] = f.describe();
  o.doc["alpha"] = c.alpha;
  o.doc["expected_total_mass"] = number(expected);

  if (f.is_rational_inner()) {
    const auto spec = clark_blaschke(f, c.alpha);
    Json atoms = Json::array();
    Csv csv({"t", "mass", "residual"});
    double max_res = 0.0;
    for (const auto& a : spec.atoms) {
      atoms.push_back({{"t", number(a.t)}, {"mass", number(a.mass)}, {"residual", number(a.residual)}});
      csv.row(a.t, a.mass, a.residual);
      max_res = std::max(max_res, a.residual);
    }
    const std::size_t mesh = 512;
    Json dis = Json::array();
    for (const auto& [name, g] : std::vector<std::pair<std::string, TrigPoly>>{
             {"1", TrigPoly::constant(1.0)}, {"cos 2pi t", TrigPoly({0.0, 1.0}, {})}, {"sin 4pi t", TrigPoly({}, {0.0, 0.0, 1.0})}}) {
      const auto d = disintegration_check(f, g, mesh);
      dis.push_back({{"G", name}, {"lebesgue", number(d.lebesgue_integral)}, {"averaged", number(d.averaged_integral)},
                     {"defect", number(d.defect)}});
    }
    o.doc["kind"] = "spectrum";
    o.doc["spectrum"] = {{"degree", f.inner_degree()},
                         {"atoms", atoms},
                         {"total_mass", number(spec.total_mass())},
                         {"mass_defect", number(std::abs(spec.total_mass() - expected))},
                         {"max_residual", number(max_res)},
                         {"imaginary_constant", number(spec.imaginary_constant)}};
    o.doc["disintegration"] = {{"alpha_nodes", mesh}, {"rows", dis}};
    o.tables.push_back({"clark_atoms.csv", csv.str()});
    return o;
  }

  // Radial densities at two radii; arc masses on a coarse grid show weak-* convergence.
  const int d = depth_or(c, 10);
  if (d < 2 || d > 20) throw ArgumentError("clark: radial depth must lie in [2, 20]");
  o.doc["meta"]["depth"] = d;
  const std::size_t mesh = std::size_t{1} << (d + 3);
  const double r = 1.0 - std::ldexp(1.0, -d);
  const double r_prev = 1.0 - std::ldexp(1.0, -(d - 1));
  const auto dens = clark_radial(f, c.alpha, r, mesh);
  const auto prev = clark_radial(f, c.alpha, r_prev, mesh);
  constexpr int kCoarse = 4;
  double max_change = 0.0, total = 0.0;
  Json arcs = Json::array();
  for (std::uint64_t k = 0; k < (1u << kCoarse); ++k) {
    const Arc a = DyadicArc(kCoarse, k).arc();
    const double m1 = dens.arc_mass(a), m0 = prev.arc_mass(a);
    total += m1;
    max_change = std::max(max_change, std::abs(m1 - m0));
    arcs.push_back({{"index", k}, {"mass", number(m1)}, {"mass_previous_radius", number(m0)}});
  }
  Csv csv({"t", "density"});
  for (std::size_t i = 0; i < dens.t.size(); ++i) csv.row(dens.t[i], dens.density[i]);
  o.doc["kind"] = "radial_density";
  o.doc["density"] = {{"depth", d}, {"r", number(r)}, {"mesh", mesh}};
  o.doc["weak_star"] = {{"coarse_depth", kCoarse},
                        {"r_previous", number(r_prev)},
                        {"max_arc_mass_change", number(max_change)},
                        {"total_mass", number(total)},
                        {"total_mass_defect", number(std::abs(total - expected))},
                        {"arcs", arcs}};
  o.tables.push_back({"clark_density.csv", csv.str()});
  return o;
}

// b2 ------------------------------------------------------------------------

Outcome cmd_b2(const RunConfig& c) {
  const BoundaryMeasure sigma = need_measure(c);
  auto depths = depths_or(c, {6, 10, 14});
  std::sort(depths.begin(), depths.end());
  QuadSpec quad;
  if (c.p) quad.p = *c.p;
  const int n = depths.back();
  std::vector<ArcRatioRow> rows;
  const auto cb = condition_b_constant(sigma, n, &rows);

  Outcome o;
  o.doc["meta"] = meta(c);
  o.doc["meta"]["depth"] = depths;
  o.doc["quadrature"] = {{"p", quad.p}, {"radial_nodes", quad.radial_nodes}, {"extra_bands", quad.extra_bands},
                         {"angular_exponent", quad.angular_exponent}, {"min_angular", quad.min_angular}};
  o.doc["measure"] = measure_summary(sigma);
  Json table = Json::array();
  Csv tcsv({"depth", "condition_b", "condition_b_at_depth", "b2", "doubling", "symmetry_defect", "contiguous_min",
            "contiguous_max"});
  std::vector<double> cbv, b2v;
  for (int d : depths) {
    const double running = *std::min_element(cb.per_depth.begin(), cb.per_depth.begin() + d);
    const auto b2 = b2_characteristic(sigma, d, quad);
    const auto dbl = doubling_constant(sigma, d);
    const auto sym = symmetry_defect(sigma, d);
    const auto cr = contiguous_ratio_range(sigma, d);
    cbv.push_back(running);
    b2v.push_back(b2.value);
    table.push_back({{"depth", d},
                     {"condition_b", number(running)},
                     {"condition_b_at_depth", number(cb.per_depth[d - 1])},
                     {"b2", number(b2.value)},
                     {"b2_divergent", b2.divergent},
                     {"b2_worst", scanned_json(b2.worst)},
                     {"doubling", dbl.infinite ? Json("inf") : number(dbl.value)},
                     {"symmetry_defect", sym.infinite ? Json("inf") : number(sym.value)},
                     {"contiguous_min", number(cr.min_ratio)},
                     {"contiguous_max", cr.infinite ? Json("inf") : number(cr.max_ratio)}});
    tcsv.row(d, running, cb.per_depth[d - 1], b2.value, dbl.infinite ? INFINITY : dbl.value,
             sym.infinite ? INFINITY : sym.value, cr.min_ratio, cr.infinite ? INFINITY : cr.max_ratio);
  }
  bool decreasing = true, increasing = true;
  for (std::size_t i = 1; i < cbv.size(); ++i) {
    decreasing = decreasing && cbv[i] < cbv[i - 1];
    increasing = increasing && b2v[i] > b2v[i - 1];
  }
  o.doc["scales"] = table;
  o.doc["trend"] = {{"condition_b_strictly_decreasing", decreasing},
                    {"b2_strictly_increasing", increasing},
                    {"condition_b_ratio_first_last", number(cbv.front() / cbv.back())},
                    {"b2_ratio_last_first", number(b2v.back() / b2v.front())},
                    {"condition_b_worst", scanned_json(cb.worst)}};
  Csv acsv({"depth", "arc_index", "rotated", "density", "poisson", "ratio"});
  for (const auto& r : rows) acsv.row(r.arc.depth, r.arc.index, r.arc.rotated, r.density, r.poisson, r.ratio);
  o.tables.push_back({"b2_table.csv", tcsv.str()});
  o.tables.push_back({"b2_arcs.csv", acsv.str()});
  return o;
}

// mixing --------------------------------------------------------------------

Outcome cmd_mixing(const RunConfig& c) {
  const SelfMap f = need_map(c);
  if (!f.is_rational_inner()) throw ArgumentError("mixing: the map must be a finite Blaschke product");
  const double tol = c.tol.value_or(1e-9);
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  constexpr int kArcs = 8, kSets = 8, kProbe = 8;
  std::vector<Arc> arcs;
  for (int i = 0; i < kArcs; ++i) arcs.emplace_back(U(rng), 0.01 + 0.49 * U(rng));
  std::vector<MeasurableSet> sets;
  if (c.set) {
    sets.push_back(load_set(*c.set));
  } else {
    for (int i = 0; i < kSets; ++i) {
      std::vector<Arc> pieces;
      const int k = 1 + static_cast<int>(3.0 * U(rng));
      for (int j = 0; j < k; ++j) pieces.emplace_back(U(rng), 0.01 + 0.29 * U(rng));
      sets.emplace_back(pieces);
    }
  }
  const auto rep = mixing_report(f, arcs, sets, tol);

  // Loewner: ω(f(z), E) = ω(z, f⁻¹(E)) at random interior points.
  double loewner = 0.0;
  for (const auto& e : sets) {
    const MeasurableSet pre = boundary_preimage(f, e);
    for (int i = 0; i < kProbe; ++i) {
      const Complex z = std::polar(0.95 * std::sqrt(U(rng)), kTwoPi * U(rng));
      loewner = std::max(loewner, std::abs(harmonic_measure(f(z), e) - harmonic_measure(z, pre)));
    }
  }

  Outcome o;
  o.doc["meta"] = meta(c);
  o.doc["meta"]["tol"] = tol;
  o.doc["map"] = f.describe();
  o.doc["tol"] = tol;
  Json ja = Json::array(), js = Json::array();
  for (const auto& a : arcs) ja.push_back(Json::array({number(a.start), number(a.length)}));
  for (const auto& e : sets) {
    Json p = Json::array();
    for (const auto& [a, b] : e.pieces()) p.push_back(Json::array({number(a), number(b)}));
    js.push_back(p);
  }
  Json rows = Json::array();
  Csv csv({"arc", "set", "preimage_density", "omega", "ratio", "kernel_bound", "skipped"});
  for (const auto& r : rep.rows) {
    rows.push_back({{"arc", r.arc}, {"set", r.set}, {"preimage_density", number(r.preimage_density)},
                    {"omega", number(r.omega)}, {"ratio", number(r.ratio)}, {"kernel_bound", number(r.kernel_bound)},
                    {"skipped", r.skipped}});
    csv.row(r.arc, r.set, r.preimage_density, r.omega, r.ratio, r.kernel_bound, r.skipped);
  }
  o.doc["arcs"] = ja;
  o.doc["sets"] = js;
  o.doc["summary"] = {{"lower_constant", number(rep.lower_constant)},
                      {"upper_constant", number(rep.upper_constant)},
                      {"skipped", rep.skipped},
                      {"stated_bound", rep.stated_bound},
                      {"stated_bound_respected", rep.stated_bound_respected},
                      {"kernel_bound_respected", rep.kernel_bound_respected},
                      {"loewner_defect", number(loewner)},
                      {"loewner_probes_per_set", kProbe}};
  o.doc["rows"] = rows;
  o.tables.push_back({"mixing.csv", csv.str()});
  return o;
}

// zeros ---------------------------------------------------------------------

Outcome cmd_zeros(const RunConfig& c) {
  const SelfMap f = need_map(c);
  const ZerosMeasure mu = zeros_measure(f);
  const int n = depth_or(c, 8);
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const double rmax = 1.0 - std::ldexp(1.0, -c.grid_J);
  std::vector<Complex> samples;
  for (int i = 0; i < 200; ++i) samples.push_back(std::polar(rmax * std::sqrt(U(rng)), kTwoPi * U(rng)));
  const auto l3 = log_modulus_checks(f, mu, samples);
  const std::vector<double> grid{0.01, 0.02, 0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 1.0};
  const auto t2 = box_mass_scan(mu, grid, n);

  Outcome o;
  o.doc["meta"] = meta(c);
  o.doc["meta"]["depth"] = n;
  o.doc["map"] = f.describe();
  Json interior = Json::array();
  for (const auto& a : mu.interior_atoms) interior.push_back({{"z", cplx(a.z)}, {"mass", number(a.mass)}});
  o.doc["mu"] = {{"total_mass", number(mu.total_mass())}, {"interior_atoms", interior},
                 {"boundary", measure_summary(mu.boundary_part)}};
  Csv lcsv({"re", "im", "log_term", "poisson", "slack_a", "ratio_b", "zero_distance", "residual_c", "skipped_c"});
  for (const auto& r : l3.rows)
    lcsv.row(r.z.real(), r.z.imag(), r.log_term, r.poisson, r.slack_a, r.ratio_b, r.zero_distance, r.residual_c,
             r.skipped_c);
  o.doc["log_modulus"] = {{"samples", l3.rows.size()},
                     {"sample_radius", number(rmax)},
                     {"sign", l3.sign},
                     {"calibration_residual", number(l3.calibration_residual)},
                     {"min_slack_a", number(l3.min_slack_a)},
                     {"max_residual_c", number(l3.max_residual_c)},
                     {"skipped_c", l3.skipped_c}};
  Json cands = Json::array();
  Csv tcsv({"c", "gate", "pass", "tested", "tightest_ratio"});
  for (const auto& k : t2.candidates) {
    Json cj = {{"c", k.c}, {"gate", k.gate}, {"pass", k.pass}, {"tested", k.tested}};
    if (k.tightest) cj["tightest"] = {{"arc", scanned_json(k.tightest->arc)}, {"box_mass", number(k.tightest->box_mass)},
                                      {"poisson", number(k.tightest->poisson)}, {"ratio", number(k.tightest->ratio)}};
    cands.push_back(cj);
    tcsv.row(k.c, k.gate, k.pass, k.tested, k.tightest ? k.tightest->ratio : NAN);
  }
  Json t2j = {{"depth", t2.max_depth}, {"slack", 1e-12}, {"candidates", cands}};
  t2j["best"] = t2.best ? Json(*t2.best) : Json(nullptr);
  if (t2.violation)
    t2j["violation"] = {{"arc", scanned_json(t2.violation->arc)}, {"box_mass", number(t2.violation->box_mass)},
                        {"poisson", number(t2.violation->poisson)}, {"ratio", number(t2.violation->ratio)}};
  o.doc["box_scan"] = t2j;
  o.tables.push_back({"log_modulus.csv", lcsv.str()});
  o.tables.push_back({"box_scan.csv", tcsv.str()});
  return o;
}

// cantor --------------------------------------------------------------------

// A given nested collection: nesting, realized constants and the dimension bound.
Outcome cantor_collection(const RunConfig& c) {
  const auto gens = load_generations(*c.set);
  const auto check = check_hungerford(gens, std::nullopt, std::nullopt);
  Outcome o;
  o.doc["meta"] = meta(c);
  Json gj = Json::array();
  for (const auto& g : gens)
    gj.push_back({{"generation", g.generation}, {"count", g.arcs.size()},
                  {"total_length", number(static_cast<double>(g.total_length()))}});
  o.doc["collection"] = gj;
  Json h = {{"nested", check.ok}, {"realized_epsilon", number(check.realized_epsilon)},
            {"realized_c", number(check.realized_c)}, {"violation", check.violation}};
  if (check.ok && check.realized_epsilon > 0.0 && check.realized_epsilon < 1.0 && check.realized_c > 0.0)
    h["dimension_bound"] = number(hungerford_formula(check.realized_epsilon, check.realized_c));
  o.doc["hungerford"] = h;
  if (!check.ok) o.status = kInconsistent;
  return o;
}

Outcome cmd_cantor(const RunConfig& c) {
  if (c.set) return cantor_collection(c);
  std::optional<SelfMap> f;
  if (c.map) f = load_map(*c.map);
  ZerosMeasure mu;
  if (c.measure) mu.boundary_part = load_measure(*c.measure);
  else if (f) mu = zeros_measure(*f);
  else throw ArgumentError("cantor: --measure or --map is required");

  CantorOptions opt;
  if (c.K) opt.K = *c.K;
  opt.K1 = c.K1 ? *c.K1 : opt.K / 12.0;
  if (c.eta) opt.eta_fraction = *c.eta;
  opt.max_depth = depth_or(c, 20);
  const auto res = cantor_builder(mu, Arc(0.0, 1.0), opt, f ? &*f : nullptr);

  Outcome o;
  o.doc["meta"] = meta(c);
  o.doc["meta"]["depth"] = opt.max_depth;
  o.doc["options"] = {{"K", opt.K}, {"K1", opt.K1}, {"eta_fraction", opt.eta_fraction},
                      {"generations", opt.generations}, {"max_depth", opt.max_depth},
                      {"trace_j", Json::array({opt.trace_min_j, opt.trace_max_j})}};
  o.doc["status"] = to_string(res.status);
  o.doc["seed_arc"] = dyadic_json(res.seed);
  o.doc["seed_poisson"] = number(res.seed_poisson);
  Json gens = Json::array();
  for (const auto& g : res.generations) {
    Json arcs = Json::array();
    for (const auto& a : g.arcs) arcs.push_back(dyadic_json(a));
    gens.push_back({{"generation", g.generation}, {"count", g.arcs.size()},
                    {"total_length", number(static_cast<double>(g.total_length()))}, {"arcs", arcs}});
  }
  o.doc["generations"] = gens;
  o.doc["nonempty_generations"] = res.nonempty_generations();
  Json stats = Json::array();
  for (const auto& s : res.stats)
    stats.push_back({{"bases", s.bases}, {"min_stopping_fraction", number(s.min_stopping_fraction)},
                     {"min_kept_fraction", number(s.min_kept_fraction)},
                     {"min_reset_coverage", number(s.min_reset_coverage)},
                     {"max_stopping_poisson", number(s.max_stopping_poisson)}});
  o.doc["stats"] = stats;
  o.doc["hungerford"] = {{"realized_epsilon", number(res.check.realized_epsilon)},
                         {"realized_c", number(res.check.realized_c)},
                         {"hypotheses_hold", res.hypotheses_hold},
                         {"dimension_bound", number(res.dimension_bound)},
                         {"violation", res.check.violation}};
  o.doc["trace_max"] = number(res.trace_max);
  Csv csv({"t", "r", "modulus"});
  for (const auto& tr : res.traces)
    for (std::size_t i = 0; i < tr.r.size(); ++i) csv.row(tr.t, tr.r[i], tr.modulus[i]);
  o.tables.push_back({"cantor_traces.csv", csv.str()});
  return o;
}

// content -------------------------------------------------------------------

Json bounds_json(const ContentBounds& b) {
  Json cover = Json::array();
  for (const auto& a : b.cover) cover.push_back(Json::array({number(a.start), number(a.length)}));
  return {{"lower", number(b.lower)}, {"upper", number(b.upper)}, {"cover", cover}};
}

Outcome cmd_content(const RunConfig& c) {
  if (!c.p) throw ArgumentError("content: --p (the exponent s) is required");
  const double s = *c.p;
  if (!c.measure && !c.set) throw ArgumentError("content: --measure or --set is required");
  Outcome o;
  o.doc["meta"] = meta(c);
  o.doc["s"] = s;
  if (c.measure) {
    const BoundaryMeasure sigma = load_measure(*c.measure);
    const int n = depth_or(c, 20);
    const double tol = c.tol.value_or(1e-9);
    const auto cert = frostman_certificate(sigma, s, n, tol, document_id(*c.measure));
    o.doc["meta"]["depth"] = n;
    o.doc["meta"]["tol"] = tol;
    Json per = Json::array();
    for (double v : cert.per_depth) per.push_back(number(v));
    Json fj = {{"depth", cert.depth}, {"tol", tol}, {"ok", cert.ok}, {"constant", number(cert.constant)},
               {"binding", dyadic_json(cert.binding)}, {"per_depth", per},
               {"content_lower_bound", number(cert.content_lower_bound(sigma.total_mass()))}};
    if (cert.failure) fj["failure"] = dyadic_json(*cert.failure);
    o.doc["frostman"] = fj;
  }
  if (c.set) {
    const MeasurableSet e = load_set(*c.set);
    const int budget = std::min(24, depth_or(c, 24));
    o.doc["content"] = bounds_json(hausdorff_content(e, s, budget));
    o.doc["content"]["budget_depth"] = budget;
    if (!c.measure) o.doc["meta"]["depth"] = budget;
    if (c.map) {
      const auto mc = fp_monotonicity_check(load_map(*c.map), e, s, budget);
      o.doc["pullback"] = {{"preimage", bounds_json(mc.preimage)}, {"image", bounds_json(mc.image)},
                           {"ratio", number(mc.ratio)}, {"budget_depth", budget}};
    }
  }
  return o;
}

// report --------------------------------------------------------------------

Outcome cmd_report(const RunConfig& c) {
  const SelfMap f = need_map(c);
  ReportOptions opt;
  opt.grid = grid_of(c);
  opt.max_depth = depth_or(c, 8);
  opt.alpha_turns = c.alpha;
  if (c.tol) opt.margin = *c.tol;
  if (c.p) opt.quad.p = *c.p;
  const auto rep = theorem_report(f, document_id(*c.map), opt);

  Outcome o;
  o.doc["meta"] = meta(c);
  o.doc["meta"]["depth"] = opt.max_depth;
  o.doc["meta"]["tol"] = opt.margin;
  o.doc["map"] = rep.map_description;
  o.doc["options"] = {{"grid", grid_json(opt.grid)}, {"max_depth", opt.max_depth}, {"alpha", opt.alpha_turns},
                      {"margin", opt.margin}, {"stable_change", opt.stable_change}, {"floor", opt.floor},
                      {"p", opt.quad.p}, {"c_grid", opt.c_grid}};
  o.doc["sup"] = {{"lower", number(rep.sup.lower)}, {"certified_upper", number(rep.sup.certified_upper)},
                  {"mesh", number(rep.sup.mesh)}, {"covered_radius", number(rep.sup.covered_radius)},
                  {"nodes", rep.sup.nodes}};
  o.doc["clark"] = {{"source", rep.clark_source}, {"tree_depth", rep.clark_tree_depth}};
  Json scales = Json::array();
  Csv csv({"depth", "condition_b", "b2", "box_scan_best"});
  for (const auto& s : rep.scales) {
    Json sj = {{"depth", s.depth}, {"condition_b", number(s.condition_b)}, {"b2", number(s.b2)},
               {"b2_divergent", s.b2_divergent}};
    sj["box_scan_best"] = s.box_scan_best ? Json(*s.box_scan_best) : Json(nullptr);
    scales.push_back(sj);
    csv.row(s.depth, s.condition_b, s.b2, s.box_scan_best.value_or(NAN));
  }
  o.doc["scales"] = scales;
  o.doc["condition_b_constant"] = number(rep.condition_b_constant);
  o.doc["b2_characteristic"] = number(rep.b2_characteristic);
  o.doc["box_scan"] = {{"available", rep.box_scan_available}, {"note", rep.box_scan_note}};
  o.doc["evidence"] = {{"sup", to_string(rep.from_sup)}, {"condition_b", to_string(rep.from_condition_b)},
                       {"b2", to_string(rep.from_b2)}, {"box_scan", to_string(rep.from_box_scan)}};
  o.doc["classification"] = to_string(rep.classification);
  o.doc["verdict"] = to_string(rep.verdict);
  o.doc["notes"] = rep.notes;
  o.tables.push_back({"report_scales.csv", csv.str()});
  if (rep.verdict == Verdict::Inconsistent) o.status = kInconsistent;
  return o;
}

void emit(const RunConfig& c, Outcome& o) {
  if (!o.doc.contains("status")) o.doc["status"] = "ok";
  Json tables = Json::array();
  for (const auto& t : o.tables) tables.push_back(t.name);
  o.doc["tables"] = tables;
  if (c.out) {
    for (const auto& t : o.tables) write_atomic(*c.out / t.name, t.content);
    write_atomic(*c.out / (c.command + ".json"), dump(o.doc));
  } else {
    std::cout << dump(o.doc);
  }
}

}  // namespace

void validate(const RunConfig& c) {
  for (int d : c.depths)
    if (d < 1 || d > 24) throw ArgumentError("--depth values must lie in [1, 24]");
  if (c.grid_J < 1 || c.grid_J > 16) throw ArgumentError("--grid must lie in [1, 16]");
  if (!(c.angular_factor > 0.0)) throw ArgumentError("angular factor must be positive");
  if (c.tol && !(*c.tol > 0.0)) throw ArgumentError("--tol must be positive");
  for (const auto* p : {&c.map, &c.measure, &c.set})
    if (*p && !std::filesystem::exists(**p)) throw ParseError((*p)->string() + ": no such file");
}

int run(const RunConfig& c) {
  try {
    validate(c);
    Outcome o;
    try {
      if (c.command == "dh") o = cmd_dh(c);
      else if (c.command == "clark") o = cmd_clark(c);
      else if (c.command == "b2") o = cmd_b2(c);
      else if (c.command == "mixing") o = cmd_mixing(c);
      else if (c.command == "zeros") o = cmd_zeros(c);
      else if (c.command == "cantor") o = cmd_cantor(c);
      else if (c.command == "content") o = cmd_content(c);
      else if (c.command == "report") o = cmd_report(c);
      else throw ArgumentError("unknown command \"" + c.command + "\"");
    } catch (const NumericalError& e) {
      // Degenerate numerics are part of the result, not a failure of the run.
      o = Outcome{};
      o.doc["meta"] = meta(c);
      o.doc["status"] = "numerical_error";
      o.doc["error"] = e.what();
    }
    emit(c, o);
    return o.status;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kInputError;
}

}  // namespace contractive::tools
