#include "contractive/cantor.hpp"

#include <algorithm>
#include <cmath>

#include "contractive/errors.hpp"
#include "contractive/zeros.hpp"

namespace contractive {

std::string to_string(CantorStatus s) {
  switch (s) {
    case CantorStatus::Complete: return "complete";
    case CantorStatus::Truncated: return "truncated";
    case CantorStatus::NoStoppingArcs: return "no_stopping_arcs";
  }
  return "unknown";
}

std::size_t CantorResult::nonempty_generations() const {
  std::size_t n = 0;
  for (const auto& g : generations)
    if (!g.arcs.empty()) ++n;
  return n;
}

namespace {

struct Builder {
  const AnchorPoisson& P;
  const CantorOptions& opt;

  // Maximal dyadic subarcs of base (excluding base itself) where pred holds.
  template <class Pred>
  std::vector<DyadicArc> maximal(const DyadicArc& base, Pred pred) const {
    std::vector<DyadicArc> out;
    std::vector<DyadicArc> stack{base.right(), base.left()};
    while (!stack.empty()) {
      const DyadicArc j = stack.back();
      stack.pop_back();
      if (j.depth > opt.max_depth) continue;
      if (pred(P.at(j))) {
        out.push_back(j);
        continue;
      }
      stack.push_back(j.right());
      stack.push_back(j.left());
    }
    return out;
  }

  // One first-generation step from a base arc; returns the thinned stopping arcs.
  std::vector<DyadicArc> step(const DyadicArc& base, CantorGenerationStats& st) const {
    const auto stops = maximal(base, [&](double v) { return v >= opt.K; });
    ++st.bases;
    if (stops.empty()) {
      st.min_stopping_fraction = 0.0;
      st.min_kept_fraction = 0.0;
      return {};
    }
    Rational sum(0);
    for (const auto& a : stops) {
      sum += dyadic_length(a);
      st.max_stopping_poisson = std::max(st.max_stopping_poisson, P.at(a));
    }
    const Rational c1 = sum / dyadic_length(base);
    // η = fraction · C1, rounded to a dyadic rational strictly inside (0, C1).
    Rational eta = c1 * Rational(static_cast<long long>(std::ldexp(opt.eta_fraction, 30)), 1LL << 30);
    const auto fn = fn_subcollection(base, stops, c1, eta);
    if (!fn.coverage_holds || !fn.density_holds)
      throw NumericalError("cantor_builder: subcollection postconditions failed");
    st.min_stopping_fraction = std::min(st.min_stopping_fraction, static_cast<double>(c1));
    st.min_kept_fraction = std::min(st.min_kept_fraction, static_cast<double>(fn.g1_length / dyadic_length(base)));
    return fn.g1;
  }
};

}  // namespace

CantorResult cantor_builder(const ZerosMeasure& mu, const Arc& I, const CantorOptions& opt, const SelfMap* f) {
  if (!(opt.K > 0.0 && opt.K1 > 0.0 && opt.K1 < opt.K / 10.0))
    throw ArgumentError("cantor_builder: need 0 < K1 < K/10");
  if (!(opt.eta_fraction > 0.0 && opt.eta_fraction < 1.0))
    throw ArgumentError("cantor_builder: eta fraction must lie in (0, 1)");
  if (opt.max_depth < 1 || opt.max_depth > 22) throw ArgumentError("cantor_builder: depth must lie in [1, 22]");
  if (opt.generations < 1) throw ArgumentError("cantor_builder: need at least one generation");
  if (opt.trace_min_j < 1 || opt.trace_max_j < opt.trace_min_j || opt.trace_max_j > 40)
    throw ArgumentError("cantor_builder: invalid trace radii");

  const AnchorPoisson P(mu);
  const Builder b{P, opt};

  // Seed: the largest dyadic arc inside I with K1/2 ≤ P[μ] ≤ K1.
  std::optional<DyadicArc> seed;
  for (int n = 0; n <= opt.max_depth && !seed; ++n) {
    const std::uint64_t count = std::uint64_t{1} << n;
    const double len = std::ldexp(1.0, -n);
    const auto first = static_cast<std::uint64_t>(std::ceil(std::ldexp(wrap_turns(I.start), n) - 1e-9));
    for (std::uint64_t k = first; k < first + count; ++k) {
      const DyadicArc a(n, k % count);
      // Containment in I, measured from I's start.
      double off = wrap_turns(a.start() - I.start);
      if (off > 1.0 - 1e-15) off = 0.0;
      if (off + len > I.length + 1e-15) break;
      const double v = P.at(a);
      if (v >= 0.5 * opt.K1 && v <= opt.K1) {
        seed = a;
        break;
      }
    }
  }
  if (!seed) throw ResolutionError("cantor_builder: no seed arc with K1/2 <= P <= K1 at this resolution");

  CantorResult res;
  res.seed = *seed;
  res.seed_poisson = P.at(*seed);
  res.generations.push_back({0, {*seed}});

  for (int g = 1; g <= opt.generations; ++g) {
    CantorGenerationStats st;
    ArcCollection next{g, {}};
    const auto& prev = res.generations.back().arcs;
    for (const auto& parent : prev) {
      std::vector<DyadicArc> bases;
      if (g == 1) {
        bases.push_back(parent);
      } else {
        bases = b.maximal(parent, [&](double v) { return v <= opt.K1; });
        Rational cov(0);
        for (const auto& j : bases) cov += dyadic_length(j);
        st.min_reset_coverage = std::min(st.min_reset_coverage, static_cast<double>(cov / dyadic_length(parent)));
      }
      for (const auto& base : bases) {
        const auto kept = b.step(base, st);
        next.arcs.insert(next.arcs.end(), kept.begin(), kept.end());
      }
    }
    std::sort(next.arcs.begin(), next.arcs.end());
    res.stats.push_back(st);
    const bool empty = next.arcs.empty();
    if (empty && g == 1) {
      res.status = CantorStatus::NoStoppingArcs;
      break;
    }
    if (empty) {
      res.status = CantorStatus::Truncated;
      break;
    }
    res.generations.push_back(std::move(next));
  }

  res.check = check_hungerford(res.generations, std::nullopt, std::nullopt);
  const double eps = res.check.realized_epsilon;
  const double c = res.check.realized_c;
  if (res.generations.size() >= 2 && eps > 0.0 && eps < 1.0 && c > 0.0) {
    const auto verified = check_hungerford(res.generations, eps, c);
    res.hypotheses_hold = verified.ok;
    res.dimension_bound = hungerford_formula(eps, c);
  }

  if (f && res.generations.size() >= 2) {
    const auto& last = res.generations.back().arcs;
    const std::size_t want = std::min(opt.witness_points, last.size());
    for (std::size_t i = 0; i < want; ++i) {
      const DyadicArc& a = last[i * last.size() / want];
      RadialTrace tr;
      tr.t = a.arc().center();
      for (int j = opt.trace_min_j; j <= opt.trace_max_j; ++j) {
        const double r = 1.0 - std::ldexp(1.0, -j);
        const double m = std::abs(f->jet(std::polar(r, kTwoPi * tr.t)).value);
        tr.r.push_back(r);
        tr.modulus.push_back(m);
        tr.max_modulus = std::max(tr.max_modulus, m);
      }
      res.trace_max = std::max(res.trace_max, tr.max_modulus);
      res.traces.push_back(std::move(tr));
    }
  }
  return res;
}

}  // namespace contractive
