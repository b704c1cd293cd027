#include "contractive/hausdorff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "contractive/errors.hpp"

namespace contractive {

using boost::multiprecision::cpp_int;

namespace {

Rational exact_rational(double x) {
  if (!std::isfinite(x)) throw ArgumentError("non-finite constant");
  if (x == 0.0) return Rational(0);
  int e = 0;
  const double f = std::frexp(std::fabs(x), &e);
  cpp_int mant = static_cast<long long>(std::ldexp(f, 53));
  Rational r(mant);
  const int shift = e - 53;
  if (shift >= 0) r *= Rational(cpp_int(1) << shift);
  else r /= Rational(cpp_int(1) << -shift);
  return x < 0.0 ? Rational(-r) : r;
}

std::string name(const DyadicArc& a) {
  std::ostringstream s;
  s << "(" << a.depth << ", " << a.index << ")";
  return s.str();
}

}  // namespace

Rational dyadic_length(const DyadicArc& arc) { return Rational(cpp_int(1), cpp_int(1) << arc.depth); }

Rational ArcCollection::total_length() const {
  Rational s(0);
  for (const auto& a : arcs) s += dyadic_length(a);
  return s;
}

// Content ---------------------------------------------------------------------

namespace {

struct DyadicCover {
  const MeasurableSet& e;
  double s;
  int budget;

  double run(const DyadicArc& j, std::vector<Arc>& cover) const {
    const Arc a = j.arc();
    const double m = e.measure_in(a);
    if (m <= 0.0) return 0.0;
    const double own = std::pow(a.length, s);
    if (m >= a.length * (1.0 - 1e-13) || j.depth >= budget) {
      cover.push_back(a);
      return own;
    }
    std::vector<Arc> sub;
    const double kids = run(j.left(), sub) + run(j.right(), sub);
    if (own <= kids) {
      cover.push_back(a);
      return own;
    }
    cover.insert(cover.end(), sub.begin(), sub.end());
    return kids;
  }
};

}  // namespace

ContentBounds hausdorff_content(const MeasurableSet& e, double s, int budget_depth) {
  if (!(s > 0.0 && s <= 1.0)) throw ArgumentError("hausdorff_content: exponent must lie in (0, 1]");
  if (budget_depth < 0 || budget_depth > 40) throw ArgumentError("hausdorff_content: budget depth out of range");
  ContentBounds out;
  if (e.empty()) return out;
  if (e.is_full()) {
    out.lower = out.upper = 1.0;
    out.cover = {Arc(0.0, 1.0)};
    return out;
  }
  const auto arcs = e.cyclic_arcs();
  const std::size_t n = arcs.size();
  auto start_of = [&](std::size_t k) { return arcs[k % n].start + static_cast<double>(k / n); };
  auto end_of = [&](std::size_t k) { return arcs[k % n].end() + static_cast<double>(k / n); };
  auto cost = [&](double hull) { return hull >= 1.0 ? 1.0 : std::pow(hull, s); };

  out.upper = 1.0;
  out.cover = {Arc(0.0, 1.0)};

  // Covers by hulls of consecutive runs, cutting the circle before piece k.
  if (n <= 200) {
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<double> dp(n + 1, std::numeric_limits<double>::infinity());
      std::vector<std::size_t> from(n + 1, 0);
      dp[0] = 0.0;
      for (std::size_t j = 1; j <= n; ++j)
        for (std::size_t i = 0; i < j; ++i) {
          const double v = dp[i] + cost(end_of(k + j - 1) - start_of(k + i));
          if (v < dp[j]) {
            dp[j] = v;
            from[j] = i;
          }
        }
      if (dp[n] < out.upper) {
        out.upper = dp[n];
        out.cover.clear();
        for (std::size_t j = n; j > 0; j = from[j]) {
          const double a = start_of(k + from[j]);
          out.cover.emplace_back(a, std::min(1.0, end_of(k + j - 1) - a));
        }
        std::reverse(out.cover.begin(), out.cover.end());
      }
    }
  }
  {
    std::vector<Arc> cover;
    const DyadicCover dc{e, s, budget_depth};
    const double v = dc.run(DyadicArc(0, 0), cover);
    if (v < out.upper) {
      out.upper = v;
      out.cover = std::move(cover);
    }
  }

  // Mass distribution: the sup of m(E ∩ J)/|J|^s over arcs is attained at hulls of runs.
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double mass = 0.0;
    for (std::size_t j = i; j < i + n; ++j) {
      mass += arcs[j % n].length;
      const double hull = end_of(j) - start_of(i);
      best = std::max(best, mass / cost(hull));
      if (hull >= 1.0) break;
    }
  }
  out.lower = e.measure() / best;
  if (out.lower > out.upper) out.lower = out.upper;
  return out;
}

FrostmanCertificate frostman_certificate(const BoundaryMeasure& sigma, double s, int max_depth, double tol,
                                         std::string measure_id) {
  if (!(s > 0.0 && s < 1.0)) throw ArgumentError("frostman_certificate: exponent must lie in (0, 1)");
  if (max_depth < 1 || max_depth > DyadicMassTree::kMaxDepth)
    throw ArgumentError("frostman_certificate: depth must lie in [1, 24]");
  if (sigma.is_zero()) throw DegenerateError("frostman_certificate: zero measure");
  FrostmanCertificate cert;
  cert.s = s;
  cert.depth = max_depth;
  cert.measure_id = std::move(measure_id);
  cert.per_depth.assign(max_depth + 1, 0.0);
  std::vector<DyadicArc> arg(max_depth + 1);
  for (int n = 0; n <= max_depth; ++n) {
    const std::size_t count = std::size_t{1} << n;
    std::vector<double> mass(count, 0.0);
    const auto& tree = sigma.tree();
    if (!tree.empty()) {
      if (n <= tree.depth()) {
        mass = tree.level(n);
      } else {
        const int extra = n - tree.depth();
        const auto& leaves = tree.leaves();
        for (std::size_t k = 0; k < count; ++k) mass[k] = std::ldexp(leaves[k >> extra], -extra);
      }
    }
    for (const auto& a : sigma.atoms()) {
      const auto k = static_cast<std::size_t>(std::floor(std::ldexp(a.t, n)));
      mass[std::min(k, count - 1)] += a.mass;
    }
    if (sigma.density())
      for (std::size_t k = 0; k < count; ++k) mass[k] += sigma.density()->integral(DyadicArc(n, k).arc());
    const double scale = std::pow(std::ldexp(1.0, -n), s);
    for (std::size_t k = 0; k < count; ++k) {
      const double v = mass[k] / scale;
      if (v > cert.per_depth[n]) {
        cert.per_depth[n] = v;
        arg[n] = DyadicArc(n, k);
      }
    }
  }
  int best = 0;
  for (int n = 1; n <= max_depth; ++n)
    if (cert.per_depth[n] > cert.per_depth[best]) best = n;
  cert.constant = cert.per_depth[best];
  cert.binding = arg[best];
  cert.ok = cert.per_depth[max_depth] <= cert.per_depth[max_depth / 2] * (1.0 + tol);
  if (!cert.ok) cert.failure = arg[max_depth];
  return cert;
}

// FN subcollection ------------------------------------------------------------

namespace {

// Arcs of G sorted by position, measured in units of the finest depth.
class ArcIndex {
 public:
  ArcIndex(const DyadicArc& root, std::vector<DyadicArc> g) : arcs_(std::move(g)) {
    std::sort(arcs_.begin(), arcs_.end());
    depth_ = root.depth;
    for (const auto& a : arcs_) depth_ = std::max(depth_, a.depth);
    prefix_.push_back(cpp_int(0));
    for (const auto& a : arcs_) {
      starts_.push_back(start(a));
      prefix_.push_back(prefix_.back() + units(a));
    }
  }

  const std::vector<DyadicArc>& arcs() const { return arcs_; }
  cpp_int units(const DyadicArc& a) const { return cpp_int(1) << (depth_ - a.depth); }
  std::uint64_t start(const DyadicArc& a) const { return a.index << (depth_ - a.depth); }

  // Index range of arcs starting inside a.
  std::pair<std::size_t, std::size_t> range(const DyadicArc& a) const {
    const std::uint64_t lo = start(a);
    const std::uint64_t hi = lo + (std::uint64_t{1} << (depth_ - a.depth));
    const auto b = std::lower_bound(starts_.begin(), starts_.end(), lo) - starts_.begin();
    const auto e = std::lower_bound(starts_.begin(), starts_.end(), hi) - starts_.begin();
    return {static_cast<std::size_t>(b), static_cast<std::size_t>(e)};
  }

  // Σ_{I_j ⊂ a} |I_j| in units.
  cpp_int inside(const DyadicArc& a) const {
    const auto [b, e] = range(a);
    cpp_int s = prefix_[e] - prefix_[b];
    if (b < e && arcs_[b].depth < a.depth) s -= units(arcs_[b]);  // an arc containing a
    return s;
  }

  // True when a lies inside (or equals) an arc of G.
  bool covered(const DyadicArc& a) const {
    const std::uint64_t lo = start(a);
    auto it = std::upper_bound(starts_.begin(), starts_.end(), lo);
    if (it == starts_.begin()) return false;
    const auto i = static_cast<std::size_t>(it - starts_.begin()) - 1;
    return arcs_[i].contains(a);
  }

 private:
  std::vector<DyadicArc> arcs_;
  std::vector<std::uint64_t> starts_;
  std::vector<cpp_int> prefix_;
  int depth_ = 0;
};

// x ≤ q·y for integers x, y and a rational q.
bool at_most(const cpp_int& x, const Rational& q, const cpp_int& y) {
  return x * boost::multiprecision::denominator(q) <= boost::multiprecision::numerator(q) * y;
}

}  // namespace

FnResult fn_subcollection(const DyadicArc& I, const std::vector<DyadicArc>& g, const Rational& c, const Rational& eta) {
  if (!(eta > 0 && eta < c && c <= 1)) throw ArgumentError("fn_subcollection: need 0 < eta < c <= 1");
  for (const auto& a : g)
    if (!I.contains(a)) throw PreconditionError("fn_subcollection: arc " + name(a) + " is not inside " + name(I));
  const ArcIndex idx(I, g);
  const auto& arcs = idx.arcs();
  for (std::size_t i = 1; i < arcs.size(); ++i)
    if (!arcs[i - 1].disjoint(arcs[i]))
      throw PreconditionError("fn_subcollection: arcs " + name(arcs[i - 1]) + " and " + name(arcs[i]) + " overlap");

  FnResult out;
  const cpp_int total = idx.inside(I);
  const cpp_int whole = idx.units(I);
  out.g_length = Rational(total, whole) * dyadic_length(I);
  // Hypothesis Σ|I_j| ≥ c|I|, i.e. not (total < c whole).
  if (total * boost::multiprecision::denominator(c) < boost::multiprecision::numerator(c) * whole)
    throw PreconditionError("fn_subcollection: total length of G is below c|I|");

  const Rational gap = c - eta;
  std::vector<char> excluded(arcs.size(), 0);
  std::vector<DyadicArc> stack{I};
  while (!stack.empty()) {
    const DyadicArc j = stack.back();
    stack.pop_back();
    if (idx.covered(j)) continue;
    if (at_most(idx.inside(j), gap, idx.units(j))) {
      out.family.push_back(j);
      const auto [b, e] = idx.range(j);
      for (std::size_t k = b; k < e; ++k) excluded[k] = 1;
      continue;
    }
    stack.push_back(j.right());
    stack.push_back(j.left());
  }
  std::sort(out.family.begin(), out.family.end());

  cpp_int kept = 0;
  for (std::size_t k = 0; k < arcs.size(); ++k)
    if (!excluded[k]) {
      out.g1.push_back(arcs[k]);
      kept += idx.units(arcs[k]);
    }
  out.g1_length = Rational(kept, whole) * dyadic_length(I);

  // Postconditions, checked directly.
  out.coverage_holds = !(kept * boost::multiprecision::denominator(eta) < boost::multiprecision::numerator(eta) * whole);
  out.density_holds = true;
  std::set<DyadicArc> seen;
  for (const auto& a : out.g1) {
    for (int d = a.depth; d >= I.depth; --d) {
      const DyadicArc l = a.ancestor(d);
      if (!seen.insert(l).second) break;
      const cpp_int in = idx.inside(l);
      if (in * boost::multiprecision::denominator(gap) < boost::multiprecision::numerator(gap) * idx.units(l)) {
        out.density_holds = false;
      }
    }
  }
  return out;
}

FnResult fn_subcollection(const DyadicArc& I, const std::vector<DyadicArc>& g, double c, double eta) {
  return fn_subcollection(I, g, exact_rational(c), exact_rational(eta));
}

// Hungerford ------------------------------------------------------------------

double hungerford_formula(double epsilon, double c) {
  if (!(epsilon > 0.0 && epsilon < 1.0) || !(c > 0.0 && c <= 1.0))
    throw ArgumentError("hungerford: need 0 < epsilon < 1 and 0 < c <= 1");
  return 1.0 - std::log(c) / std::log(epsilon);
}

HungerfordCheck check_hungerford(const std::vector<ArcCollection>& gens, std::optional<double> epsilon,
                                 std::optional<double> c) {
  HungerfordCheck out;
  const std::optional<Rational> eps = epsilon ? std::optional<Rational>(exact_rational(*epsilon)) : std::nullopt;
  const std::optional<Rational> cc = c ? std::optional<Rational>(exact_rational(*c)) : std::nullopt;
  auto fail = [&](std::string msg) {
    if (out.ok) out.violation = std::move(msg);
    out.ok = false;
  };
  for (std::size_t g = 0; g < gens.size(); ++g) {
    auto arcs = gens[g].arcs;
    std::sort(arcs.begin(), arcs.end());
    for (std::size_t i = 1; i < arcs.size(); ++i)
      if (!arcs[i - 1].disjoint(arcs[i]))
        fail("generation " + std::to_string(g) + ": arcs " + name(arcs[i - 1]) + " and " + name(arcs[i]) +
             " overlap");
  }
  for (std::size_t g = 0; g + 1 < gens.size(); ++g) {
    auto parents = gens[g].arcs;
    std::sort(parents.begin(), parents.end());
    std::vector<Rational> child_sum(parents.size(), Rational(0));
    for (const auto& j : gens[g + 1].arcs) {
      // The parent is the last one starting at or before j.
      auto it = std::upper_bound(parents.begin(), parents.end(), j);
      std::size_t owner = parents.size();
      if (it != parents.begin()) {
        const auto k = static_cast<std::size_t>(it - parents.begin()) - 1;
        if (parents[k].contains(j)) owner = k;
      }
      if (owner == parents.size()) {
        fail("generation " + std::to_string(g + 1) + ": arc " + name(j) + " has no parent");
        continue;
      }
      const DyadicArc& I = parents[owner];
      const double ratio = std::ldexp(1.0, I.depth - j.depth);
      out.realized_epsilon = std::max(out.realized_epsilon, ratio);
      if (eps && dyadic_length(j) > *eps * dyadic_length(I))
        fail("hypothesis (a) fails for parent " + name(I) + " and child " + name(j));
      child_sum[owner] += dyadic_length(j);
    }
    for (std::size_t k = 0; k < parents.size(); ++k) {
      const Rational frac = child_sum[k] / dyadic_length(parents[k]);
      out.realized_c = std::min(out.realized_c, static_cast<double>(frac));
      if (cc && frac < *cc)
        fail("hypothesis (b) fails for parent " + name(parents[k]) + " in generation " + std::to_string(g));
    }
  }
  return out;
}

HungerfordBound hungerford_bound(const std::vector<ArcCollection>& gens, double epsilon, double c) {
  HungerfordBound out;
  out.bound = hungerford_formula(epsilon, c);
  out.check = check_hungerford(gens, epsilon, c);
  if (!out.check.ok) throw PreconditionError("hungerford_bound: " + out.check.violation);
  if (out.check.realized_epsilon > 0.0 && out.check.realized_epsilon < 1.0 && out.check.realized_c > 0.0)
    out.realized_bound = hungerford_formula(out.check.realized_epsilon, out.check.realized_c);
  return out;
}

// Pullback content ------------------------------------------------------------

MonotonicityCheck fp_monotonicity_check(const SelfMap& f, const MeasurableSet& e, double s, int budget_depth) {
  MonotonicityCheck out;
  out.preimage = hausdorff_content(boundary_preimage(f, e), s, budget_depth);
  out.image = hausdorff_content(e, s, budget_depth);
  out.ratio = out.image.upper > 0.0 ? out.preimage.lower / out.image.upper : 0.0;
  return out;
}

}  // namespace contractive
