#include "contractive/measure_scans.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>

#include "contractive/errors.hpp"
#include "contractive/fourier.hpp"
#include "contractive/parallel.hpp"

namespace contractive {

double poisson_integral(const BoundaryMeasure& sigma, Complex z) { return sigma.poisson(z); }

double weighted_gradient(const BoundaryMeasure& sigma, Complex z) {
  // (1 - |z|²)/(|ξ - z|² τ_z(ξ)) = (1 - |z|²) ξ/(ξ - z)², so the integral is
  // half of (1 - |z|²) H'(z) for the Herglotz integral H.
  return (1.0 - std::norm(z)) * std::abs(sigma.herglotz_derivative(z));
}

Arc ScannedArc::arc() const {
  const double len = std::ldexp(1.0, -depth);
  const double start = std::ldexp(static_cast<double>(index), -depth) + (rotated ? 0.5 * len : 0.0);
  return Arc(start, len);
}

namespace {

void check_depth(int n, const char* what) {
  if (n < 1 || n > 30) throw ArgumentError(std::string(what) + ": depth must lie in [1, 30]");
}

// σ of the scanned arc number q on the half-step grid of depth n.
double scanned_mass(const BoundaryMeasure& s, int n, std::uint64_t q) {
  const std::uint64_t j = q >> 1;
  if ((q & 1u) == 0) return s.dyadic_mass(DyadicArc(n, j));
  const std::uint64_t m = std::uint64_t{1} << (n + 1);
  return s.dyadic_mass(DyadicArc(n + 1, 2 * j + 1)) + s.dyadic_mass(DyadicArc(n + 1, (2 * j + 2) & (m - 1)));
}

ScannedArc scanned(int n, std::uint64_t q) { return {n, q >> 1, (q & 1u) != 0}; }

}  // namespace

ConditionBResult condition_b_constant(const BoundaryMeasure& sigma, int max_depth,
                                      std::vector<ArcRatioRow>* rows) {
  check_depth(max_depth, "condition_b_constant");
  if (sigma.is_zero()) throw DegenerateError("condition_b_constant: zero measure");
  const RingEvaluator ring(sigma);
  ConditionBResult out;
  out.constant = std::numeric_limits<double>::infinity();
  out.per_depth.assign(max_depth, std::numeric_limits<double>::infinity());
  for (int n = 1; n <= max_depth; ++n) {
    const double len = std::ldexp(1.0, -n);
    const std::size_t count = std::size_t{1} << (n + 1);
    // Anchors of the scanned arcs sit at centers (q + 1) 2^-(n+1).
    const auto u = ring.poisson(1.0 - len, 0.5 * len, count);
    for (std::size_t q = 0; q < count; ++q) {
      const double dens = scanned_mass(sigma, n, q) / len;
      const double ratio = dens / u[q];
      if (rows) rows->push_back({scanned(n, q), dens, u[q], ratio});
      if (ratio < out.per_depth[n - 1]) out.per_depth[n - 1] = ratio;
      if (ratio < out.constant) {
        out.constant = ratio;
        out.worst = scanned(n, q);
      }
    }
  }
  return out;
}

B2Result b2_characteristic(const BoundaryMeasure& sigma, int max_depth, const QuadSpec& quad) {
  check_depth(max_depth, "b2_characteristic");
  if (max_depth > 20) throw ArgumentError("b2_characteristic: depth above 20 is out of desk range");
  if (!(quad.p > 1.0)) throw ArgumentError("b2_characteristic: exponent p must exceed 1");
  if (quad.radial_nodes < 1 || quad.radial_nodes > 64 || quad.extra_bands < 0 || quad.angular_exponent < 0)
    throw ArgumentError("b2_characteristic: invalid quadrature spec");
  if (sigma.is_zero()) throw DegenerateError("b2_characteristic: zero measure");

  const int N = max_depth;
  const int K = N + quad.extra_bands;
  const std::size_t ncell = std::size_t{1} << (N + 1);
  const double dual = -1.0 / (quad.p - 1.0);
  const RingEvaluator ring(sigma);

  // Gauss-Legendre on [-1, 1]; boost stores the nonnegative half.
  std::vector<double> gx, gw;
  {
    std::vector<double> x, w;
    switch (quad.radial_nodes) {
#define CONTRACTIVE_GL(n)                                                      \
  case n: {                                                                    \
    const auto& a = boost::math::quadrature::gauss<double, n>::abscissa();     \
    const auto& b = boost::math::quadrature::gauss<double, n>::weights();      \
    x.assign(a.begin(), a.end());                                              \
    w.assign(b.begin(), b.end());                                              \
    break;                                                                     \
  }
      CONTRACTIVE_GL(4)
      CONTRACTIVE_GL(8)
      CONTRACTIVE_GL(12)
      CONTRACTIVE_GL(16)
      CONTRACTIVE_GL(20)
      CONTRACTIVE_GL(32)
#undef CONTRACTIVE_GL
      default:
        throw ArgumentError("b2_characteristic: radial node count must be one of 4, 8, 12, 16, 20, 32");
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0.0) {
        gx.push_back(0.0);
        gw.push_back(w[i]);
      } else {
        gx.push_back(x[i]);
        gw.push_back(w[i]);
        gx.push_back(-x[i]);
        gw.push_back(w[i]);
      }
    }
  }

  // Per band: cell sums of u dA, u^dual dA and dA.
  struct Band {
    std::vector<double> su, sv, sa;
    bool bad = false;
  };
  std::vector<Band> bands(K + 1);
  const std::size_t nodes = gx.size();
  parallel_for(static_cast<std::size_t>(K + 1), [&](std::size_t k) {
    Band& b = bands[k];
    b.su.assign(ncell, 0.0);
    b.sv.assign(ncell, 0.0);
    b.sa.assign(ncell, 0.0);
    const double lo = std::ldexp(1.0, -static_cast<int>(k) - 1), hi = 2.0 * lo;
    const std::size_t nang = std::max<std::size_t>(
        {std::size_t{1} << (k + quad.angular_exponent), ncell, static_cast<std::size_t>(quad.min_angular)});
    const std::size_t per_cell = nang / ncell;
    for (std::size_t g = 0; g < nodes; ++g) {
      const double d = lo + (hi - lo) * 0.5 * (gx[g] + 1.0);
      const double r = 1.0 - d;
      const double da = 2.0 * r * gw[g] * 0.5 * (hi - lo) / static_cast<double>(nang);
      const auto u = ring.poisson(r, 0.5 / static_cast<double>(nang), nang);
      for (std::size_t c = 0; c < ncell; ++c) {
        double su = 0.0, sv = 0.0;
        for (std::size_t i = c * per_cell; i < (c + 1) * per_cell; ++i) {
          const double v = u[i];
          if (!(v > 0.0) || !std::isfinite(v)) {
            b.bad = true;
            continue;
          }
          su += v;
          sv += (quad.p == 2.0) ? 1.0 / v : std::pow(v, dual);
        }
        b.su[c] += su * da;
        b.sv[c] += sv * da;
        b.sa[c] += static_cast<double>(per_cell) * da;
      }
    }
  });

  B2Result out;
  out.value = 0.0;
  out.per_depth.assign(N, 0.0);
  out.mean_ratio_min.assign(N, std::numeric_limits<double>::infinity());
  out.mean_ratio_max.assign(N, 0.0);
  for (const auto& b : bands) out.divergent = out.divergent || b.bad;
  if (out.divergent) {
    out.value = std::numeric_limits<double>::infinity();
    std::fill(out.per_depth.begin(), out.per_depth.end(), out.value);
    return out;
  }

  // Boxes of depth n collect bands k ≥ n.
  std::vector<double> su(ncell, 0.0), sv(ncell, 0.0), sa(ncell, 0.0);
  for (int k = K; k > N; --k)
    for (std::size_t c = 0; c < ncell; ++c) {
      su[c] += bands[k].su[c];
      sv[c] += bands[k].sv[c];
      sa[c] += bands[k].sa[c];
    }
  std::vector<double> per_depth_value(N + 1, 0.0);
  std::vector<ScannedArc> per_depth_arc(N + 1);
  for (int n = N; n >= 1; --n) {
    for (std::size_t c = 0; c < ncell; ++c) {
      su[c] += bands[n].su[c];
      sv[c] += bands[n].sv[c];
      sa[c] += bands[n].sa[c];
    }
    const std::size_t width = std::size_t{1} << (N + 1 - n);
    const std::size_t half = width / 2;
    auto prefix = [&](const std::vector<double>& x) {
      std::vector<double> p(2 * ncell + 1, 0.0);
      for (std::size_t i = 0; i < 2 * ncell; ++i) p[i + 1] = p[i] + x[i % ncell];
      return p;
    };
    const auto pu = prefix(su), pv = prefix(sv), pa = prefix(sa);
    const double len = std::ldexp(1.0, -n);
    const std::size_t count = std::size_t{1} << (n + 1);
    const auto u_anchor = ring.poisson(1.0 - len, 0.5 * len, count);
    for (std::size_t q = 0; q < count; ++q) {
      const std::size_t s = q * half;
      const double a = pa[s + width] - pa[s];
      const double mu = (pu[s + width] - pu[s]) / a;
      const double mv = (pv[s + width] - pv[s]) / a;
      const double val = mu * std::pow(mv, quad.p - 1.0);
      if (val > per_depth_value[n]) {
        per_depth_value[n] = val;
        per_depth_arc[n] = scanned(n, q);
      }
      const double mr = mu / u_anchor[q];
      out.mean_ratio_min[n - 1] = std::min(out.mean_ratio_min[n - 1], mr);
      out.mean_ratio_max[n - 1] = std::max(out.mean_ratio_max[n - 1], mr);
    }
  }
  for (int n = 1; n <= N; ++n) {
    if (per_depth_value[n] > out.value) {
      out.value = per_depth_value[n];
      out.worst = per_depth_arc[n];
    }
    out.per_depth[n - 1] = out.value;
  }
  return out;
}

RatioScan doubling_constant(const BoundaryMeasure& sigma, int max_depth) {
  check_depth(max_depth, "doubling_constant");
  RatioScan out;
  for (int n = 1; n <= max_depth; ++n) {
    const std::uint64_t cnt = std::uint64_t{1} << n;
    const std::uint64_t fine = cnt << 1;
    for (std::uint64_t j = 0; j < cnt; ++j) {
      for (int rot = 0; rot < 2; ++rot) {
        double m1, m2;
        if (!rot) {
          m1 = sigma.dyadic_mass(DyadicArc(n, j));
          m2 = 0.0;
          for (std::uint64_t i = 0; i < 4; ++i)
            m2 += sigma.dyadic_mass(DyadicArc(n + 1, (2 * j + fine - 1 + i) & (fine - 1)));
        } else {
          m1 = scanned_mass(sigma, n, 2 * j + 1);
          m2 = sigma.dyadic_mass(DyadicArc(n, j)) + sigma.dyadic_mass(DyadicArc(n, (j + 1) & (cnt - 1)));
        }
        const ScannedArc a{n, j, rot == 1};
        if (!(m1 > 0.0)) {
          out.infinite = true;
          out.value = std::numeric_limits<double>::infinity();
          out.worst = a;
          return out;
        }
        if (m2 / m1 > out.value) {
          out.value = m2 / m1;
          out.worst = a;
        }
      }
    }
  }
  return out;
}

RatioScan symmetry_defect(const BoundaryMeasure& sigma, int depth) {
  check_depth(depth, "symmetry_defect");
  RatioScan out;
  const std::uint64_t cnt = std::uint64_t{1} << depth;
  std::vector<double> m(cnt);
  for (std::uint64_t j = 0; j < cnt; ++j) m[j] = sigma.dyadic_mass(DyadicArc(depth, j));
  for (std::uint64_t j = 0; j < cnt; ++j) {
    const double a = m[j], b = m[(j + 1) & (cnt - 1)];
    if (!(a > 0.0) || !(b > 0.0)) {
      out.infinite = true;
      out.value = std::numeric_limits<double>::infinity();
      out.worst = {depth, j, false};
      return out;
    }
    const double d = std::max(std::abs(a / b - 1.0), std::abs(b / a - 1.0));
    if (d > out.value) {
      out.value = d;
      out.worst = {depth, j, false};
    }
  }
  return out;
}

ContiguousRatioRange contiguous_ratio_range(const BoundaryMeasure& sigma, int max_depth) {
  check_depth(max_depth, "contiguous_ratio_range");
  ContiguousRatioRange out;
  for (int n = 1; n <= max_depth; ++n) {
    const std::uint64_t cnt = std::uint64_t{1} << n;
    for (std::uint64_t j = 0; j < cnt; ++j) {
      const double a = sigma.dyadic_mass(DyadicArc(n, j));
      const double b = sigma.dyadic_mass(DyadicArc(n, (j + 1) & (cnt - 1)));
      if (!(a > 0.0) || !(b > 0.0)) {
        out.infinite = true;
        continue;
      }
      out.min_ratio = std::min({out.min_ratio, a / b, b / a});
      out.max_ratio = std::max({out.max_ratio, a / b, b / a});
    }
  }
  return out;
}

CompressionVerdict bounded_compression_test(const BoundaryMeasure& sigma, double epsilon, int search_depth,
                                            double heavy_threshold, int fallback_depth) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ArgumentError("bounded_compression_test: epsilon must lie in (0, 1)");
  if (search_depth < 1) throw ArgumentError("bounded_compression_test: search depth must be positive");
  if (!(heavy_threshold > 0.0)) throw ArgumentError("bounded_compression_test: heavy threshold must be positive");
  if (sigma.is_zero()) throw DegenerateError("bounded_compression_test: zero measure");

  const bool tree_only = sigma.has_tree() && !sigma.has_atoms() && !sigma.has_density();
  const int D = sigma.has_tree() ? sigma.tree_depth() : fallback_depth + search_depth;
  if (D > 26) throw ArgumentError("bounded_compression_test: search exceeds desk depth");
  const int limit = D - search_depth;
  CompressionVerdict out;
  out.arc_depth_limit = limit;
  if (limit < 0) throw ResolutionError("bounded_compression_test: tree is shallower than the search depth");

  // Densities σ(J)/|J| for every dyadic arc down to depth D.
  std::vector<std::vector<double>> dens(D + 1);
  for (int n = 0; n <= D; ++n) {
    const std::uint64_t cnt = std::uint64_t{1} << n;
    dens[n].resize(cnt);
    const double scale = std::ldexp(1.0, n);
    for (std::uint64_t j = 0; j < cnt; ++j)
      dens[n][j] = scale * (tree_only ? sigma.tree().level(n)[j] : sigma.dyadic_mass(DyadicArc(n, j)));
  }
  const double heavy = heavy_threshold * sigma.total_mass();
  out.worst_ratio = 0.0;
  bool first = true;
  for (int n = 0; n <= limit; ++n) {
    const std::uint64_t cnt = std::uint64_t{1} << n;
    std::vector<double> best(cnt, std::numeric_limits<double>::infinity());
    for (int d = n + 1; d <= n + search_depth; ++d) {
      const int shift = d - n;
      const auto& row = dens[d];
      for (std::uint64_t j = 0; j < row.size(); ++j) {
        auto& b = best[j >> shift];
        if (row[j] < b) b = row[j];
      }
    }
    for (std::uint64_t j = 0; j < cnt; ++j) {
      const double di = dens[n][j];
      if (!(di >= heavy) || di <= 0.0) continue;
      ++out.heavy_arcs;
      const double ratio = best[j] / di;
      if (first || ratio > out.worst_ratio) {
        out.worst_ratio = ratio;
        out.worst_arc = DyadicArc(n, j);
        first = false;
      }
    }
  }
  out.pass = out.heavy_arcs == 0 || out.worst_ratio <= epsilon * (1.0 + 1e-12);
  return out;
}

}  // namespace contractive
