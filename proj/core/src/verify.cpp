#include "contractive/verify.hpp"

#include <algorithm>
#include <cmath>

#include "contractive/clark.hpp"
#include "contractive/errors.hpp"
#include "contractive/parallel.hpp"

namespace contractive {

// MeasurableSet ---------------------------------------------------------------

MeasurableSet::MeasurableSet(const std::vector<Arc>& arcs) {
  std::vector<std::pair<double, double>> raw;
  for (const Arc& a : arcs) {
    if (a.length >= 1.0) {
      raw.clear();
      raw.emplace_back(0.0, 1.0);
      break;
    }
    const double s = wrap_turns(a.start);
    const double e = s + a.length;
    if (e <= 1.0) {
      raw.emplace_back(s, e);
    } else {
      raw.emplace_back(s, 1.0);
      raw.emplace_back(0.0, e - 1.0);
    }
  }
  std::sort(raw.begin(), raw.end());
  for (const auto& p : raw) {
    if (!(p.second > p.first)) continue;
    if (!pieces_.empty() && p.first <= pieces_.back().second)
      pieces_.back().second = std::max(pieces_.back().second, p.second);
    else
      pieces_.push_back(p);
  }
  double acc = 0.0;
  for (const auto& p : pieces_) {
    acc += p.second - p.first;
    prefix_.push_back(acc);
  }
}

bool MeasurableSet::is_full() const {
  return pieces_.size() == 1 && pieces_[0].first == 0.0 && pieces_[0].second == 1.0;
}

std::vector<Arc> MeasurableSet::cyclic_arcs() const {
  std::vector<Arc> out;
  if (pieces_.empty()) return out;
  if (is_full()) return {Arc(0.0, 1.0)};
  auto ps = pieces_;
  if (ps.size() > 1 && ps.front().first == 0.0 && ps.back().second == 1.0) {
    const double len0 = ps.front().second;
    ps.erase(ps.begin());
    ps.back().second = 1.0 + len0;
  }
  for (const auto& p : ps) out.emplace_back(p.first, p.second - p.first);
  std::sort(out.begin(), out.end(), [](const Arc& a, const Arc& b) { return a.start < b.start; });
  return out;
}

double MeasurableSet::cumulative(double x) const {
  // Pieces with start < x contribute fully, except possibly the last one.
  auto it = std::lower_bound(pieces_.begin(), pieces_.end(), x,
                             [](const std::pair<double, double>& p, double v) { return p.first < v; });
  if (it == pieces_.begin()) return 0.0;
  const std::size_t i = static_cast<std::size_t>(it - pieces_.begin()) - 1;
  const double before = i == 0 ? 0.0 : prefix_[i - 1];
  return before + std::min(x, pieces_[i].second) - pieces_[i].first;
}

double MeasurableSet::measure_in(const Arc& arc) const {
  if (pieces_.empty()) return 0.0;
  if (arc.length >= 1.0) return measure();
  const double s = wrap_turns(arc.start);
  const double e = s + arc.length;
  if (e <= 1.0) return cumulative(e) - cumulative(s);
  return (measure() - cumulative(s)) + cumulative(e - 1.0);
}

bool MeasurableSet::contains(double t) const {
  t = wrap_turns(t);
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), t,
                             [](double v, const std::pair<double, double>& p) { return v < p.first; });
  if (it == pieces_.begin()) return false;
  --it;
  return t < it->second;
}

// Harmonic measure and preimages ----------------------------------------------

double harmonic_measure(Complex z, const MeasurableSet& e) {
  require_interior(z, "harmonic_measure");
  if (e.is_full()) return 1.0;
  double s = 0.0;
  for (const auto& p : e.pieces()) s += poisson_arc_integral(z, Arc(p.first, p.second - p.first));
  return std::clamp(s, 0.0, 1.0);
}

MeasurableSet boundary_preimage(const SelfMap& f, const MeasurableSet& e) {
  if (!f.is_rational_inner()) throw ArgumentError("boundary_preimage: needs a finite Blaschke product");
  if (e.empty() || e.is_full()) return e;
  const BoundaryPhase phase(f);
  std::vector<Arc> out;
  for (const Arc& piece : e.cyclic_arcs()) {
    const auto lo = phase.solve(piece.start);
    const auto hi = phase.solve(piece.start + piece.length);
    if (lo.size() != hi.size() || lo.empty())
      throw NumericalError("boundary_preimage: endpoint preimages do not pair up");
    // The phase is increasing, so each lower root is followed by the next upper root.
    const std::size_t n = lo.size();
    std::size_t j = static_cast<std::size_t>(std::upper_bound(hi.begin(), hi.end(), lo[0]) - hi.begin());
    for (std::size_t k = 0; k < n; ++k, ++j) {
      const double a = lo[k];
      double b = hi[j % n] + (j >= n ? 1.0 : 0.0);
      if (b <= a) b += 1.0;
      out.emplace_back(a, std::min(1.0, b - a));
    }
  }
  return MeasurableSet(out);
}

// Mixing ---------------------------------------------------------------------

MixingReport mixing_report(const SelfMap& f, const std::vector<Arc>& arcs, const std::vector<MeasurableSet>& sets,
                           double tol) {
  if (!f.is_rational_inner()) throw ArgumentError("mixing_report: needs a finite Blaschke product");
  MixingReport rep;
  std::vector<MeasurableSet> pre;
  pre.reserve(sets.size());
  for (const auto& e : sets) pre.push_back(boundary_preimage(f, e));
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const Arc& I = arcs[i];
    const Complex zi = I.anchor();
    const Complex w = f(zi);
    const double kb = 1.0 / (I.length * poisson_kernel(zi, I.start));
    for (std::size_t k = 0; k < sets.size(); ++k) {
      MixingRow row;
      row.arc = i;
      row.set = k;
      row.kernel_bound = kb;
      row.preimage_density = pre[k].measure_in(I) / I.length;
      row.omega = harmonic_measure(w, sets[k]);
      if (row.omega <= 0.0) {
        row.skipped = true;
        ++rep.skipped;
      } else {
        row.ratio = row.preimage_density / row.omega;
        rep.lower_constant = std::min(rep.lower_constant, row.ratio);
        rep.upper_constant = std::max(rep.upper_constant, row.ratio);
        if (row.ratio > rep.stated_bound * (1.0 + tol)) rep.stated_bound_respected = false;
        if (row.ratio > kb * (1.0 + tol)) rep.kernel_bound_respected = false;
      }
      rep.rows.push_back(row);
    }
  }
  if (rep.rows.size() == rep.skipped) rep.lower_constant = 0.0;
  return rep;
}

// B2 sets ---------------------------------------------------------------------

B2SetVerdict b2_set_test(const MeasurableSet& e, int max_depth, double max_drop, double min_floor) {
  if (max_depth < 1 || max_depth > 24) throw ArgumentError("b2_set_test: depth must lie in [1, 24]");
  B2SetVerdict v;
  const double m = e.measure();
  if (e.empty() || e.is_full() || m <= 0.0 || m >= 1.0) {
    v.trivial = true;
    v.floor = e.empty() ? 0.0 : 1.0;
    v.per_depth.assign(max_depth, v.floor);
    v.stabilizes = !e.empty();
    return v;
  }
  v.per_depth.assign(max_depth, std::numeric_limits<double>::infinity());
  std::vector<ScannedArc> worst(max_depth);
  for (int n = 1; n <= max_depth; ++n) {
    const std::size_t count = std::size_t{1} << (n + 1);
    std::vector<double> ratio(count);
    parallel_for(count, [&](std::size_t q) {
      const ScannedArc s{n, q >> 1, (q & 1u) != 0};
      const Arc I = s.arc();
      const double w = harmonic_measure(I.anchor(), e);
      ratio[q] = (e.measure_in(I) / I.length) / w;
    });
    for (std::size_t q = 0; q < count; ++q)
      if (ratio[q] < v.per_depth[n - 1]) {
        v.per_depth[n - 1] = ratio[q];
        worst[n - 1] = {n, q >> 1, (q & 1u) != 0};
      }
  }
  v.check_depths = {std::max(1, (max_depth + 3) / 4), std::max(1, (max_depth + 1) / 2), max_depth};
  double running = std::numeric_limits<double>::infinity();
  int d = 0;
  for (int c : v.check_depths) {
    for (; d < c; ++d) running = std::min(running, v.per_depth[d]);
    v.running_min.push_back(running);
  }
  v.floor = v.running_min.back();
  for (int n = 0; n < max_depth; ++n)
    if (v.per_depth[n] == v.floor) {
      v.worst = worst[n];
      break;
    }
  v.stabilizes = v.floor > min_floor;
  for (std::size_t i = 1; i < v.running_min.size(); ++i)
    if (v.running_min[i] < (1.0 - max_drop) * v.running_min[i - 1]) v.stabilizes = false;
  return v;
}

// Essential norm --------------------------------------------------------------

std::vector<EssentialNormRow> essential_norm_from_samples(const std::vector<GridSample>& samples,
                                                          const std::vector<double>& levels) {
  std::vector<EssentialNormRow> out;
  for (double c : levels) {
    EssentialNormRow row{c, 0.0, 0};
    for (const auto& s : samples)
      if (s.modulus > c) {
        ++row.nodes;
        row.sup = std::max(row.sup, s.dh);
      }
    out.push_back(row);
  }
  return out;
}

std::vector<EssentialNormRow> essential_norm_estimate(const SelfMap& f, const std::vector<double>& levels,
                                                      const HyperbolicGridSpec& grid) {
  const HyperbolicGrid g(grid);
  return essential_norm_from_samples(sample_grid(f, g), levels);
}

// Inscribed radius ------------------------------------------------------------

InscribedRadius inscribed_hyperbolic_radius(const std::vector<HyperbolicBall>& obstacles,
                                            const HyperbolicGridSpec& spec) {
  const HyperbolicGrid grid(spec);
  InscribedRadius out;
  out.J = spec.J;
  out.covered_radius = grid.covered_radius();
  out.nodes = grid.node_count();
  if (obstacles.empty()) {
    out.infinite = true;
    out.radius = out.radius_dh = std::numeric_limits<double>::infinity();
    return out;
  }
  for (const auto& b : obstacles) {
    require_interior(b.center, "inscribed_hyperbolic_radius");
    if (!(b.radius >= 0.0)) throw ArgumentError("inscribed_hyperbolic_radius: negative ball radius");
  }
  std::vector<std::pair<std::size_t, std::size_t>> index;
  for (std::size_t i = 0; i < grid.rings().size(); ++i)
    for (std::size_t j = 0; j < grid.rings()[i].nodes; ++j) index.emplace_back(i, j);
  std::vector<double> dist(index.size());
  parallel_for(index.size(), [&](std::size_t k) {
    const Complex z = grid.node(index[k].first, index[k].second);
    double d = std::numeric_limits<double>::infinity();
    for (const auto& b : obstacles) d = std::min(d, std::max(0.0, geodesic_distance(z, b.center) - b.radius));
    dist[k] = d;
  });
  std::size_t best = 0;
  for (std::size_t k = 1; k < dist.size(); ++k)
    if (dist[k] > dist[best]) best = k;
  out.radius = dist[best];
  out.radius_dh = hyperbolic_distance_from_pseudo(pseudo_from_geodesic(out.radius));
  out.at = grid.node(index[best].first, index[best].second);
  return out;
}

}  // namespace contractive
