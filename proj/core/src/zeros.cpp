#include "contractive/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "contractive/clark.hpp"
#include "contractive/errors.hpp"
#include "contractive/fourier.hpp"
#include "contractive/parallel.hpp"

namespace contractive {

namespace {

struct Accumulator {
  std::vector<InteriorAtom> interior;
  std::vector<Atom> boundary_atoms;
  std::optional<TrigPoly> density;

  void add_density(const TrigPoly& g) { density = density ? *density + g : g; }
};

void collect(const SelfMap& f, Accumulator& acc) {
  switch (f.kind()) {
    case SelfMap::Kind::Blaschke:
      for (const Complex& a : f.as_blaschke().zeros) acc.interior.push_back({a, 1.0 - std::norm(a)});
      return;
    case SelfMap::Kind::SingularAtoms:
      for (const Atom& a : f.as_singular().atoms) acc.boundary_atoms.push_back({a.t, 2.0 * a.mass});
      return;
    case SelfMap::Kind::Outer: {
      const TrigPoly& lm = f.as_outer().log_modulus;
      if (lm.max_upper_bound() > 1e-12) throw PreconditionError("zeros_measure: outer log-modulus must be <= 0");
      if (!lm.is_zero()) acc.add_density(lm.scaled(-2.0));
      return;
    }
    case SelfMap::Kind::ScaledRotation: {
      const double r = f.as_scaled_rotation().r;
      if (r <= 0.0) throw ArgumentError("zeros_measure: f = 0 has no finite zeros measure");
      acc.interior.push_back({Complex{}, 1.0});
      if (r < 1.0) acc.add_density(TrigPoly::constant(-2.0 * std::log(r)));
      return;
    }
    case SelfMap::Kind::Product:
      for (const auto& g : f.as_product().factors) collect(*g, acc);
      return;
    case SelfMap::Kind::Herglotz:
      if (f.inner_degree() > 0) {
        collect(blaschke_from_atomic(f).map, acc);
        return;
      }
      throw ArgumentError("zeros_measure: Herglotz maps with tree or density parts have no declared factorization");
    case SelfMap::Kind::Compose:
      throw ArgumentError("zeros_measure: compositions have no declared factorization");
  }
}

}  // namespace

ZerosMeasure zeros_measure(const SelfMap& f) {
  Accumulator acc;
  collect(f, acc);
  ZerosMeasure mu;
  mu.interior_atoms = std::move(acc.interior);
  if (!acc.boundary_atoms.empty() || acc.density)
    mu.boundary_part = BoundaryMeasure(std::move(acc.boundary_atoms), DyadicMassTree{}, std::move(acc.density));
  return mu;
}

Complex zeros_log_derivative_integral(const ZerosMeasure& mu, Complex z) {
  require_interior(z, "zeros_log_derivative_integral");
  Complex s{};
  // Interior atom: 1/(|1 - ā z|² τ_z(a)) = 1/((z - a)(1 - ā z)).
  for (const auto& a : mu.interior_atoms) s += a.mass / ((z - a.z) * (1.0 - std::conj(a.z) * z));
  // Boundary point: 1/(|ξ - z|² τ_z(ξ)) = -ξ/(ξ - z)², half the Herglotz derivative.
  if (!mu.boundary_part.is_zero()) s -= 0.5 * mu.boundary_part.herglotz_derivative(z);
  return s;
}

std::pair<int, double> calibrate_log_derivative_sign() {
  const Complex z{0.5, 0.0};
  const double h = 1e-3;
  auto lg = [](Complex w) { return std::log(w); };
  // Fourth-order central difference of log f for f(z) = z.
  const Complex fd = (-lg(z + 2.0 * h) + 8.0 * lg(z + h) - 8.0 * lg(z - h) + lg(z - 2.0 * h)) / (12.0 * h);
  ZerosMeasure delta;
  delta.interior_atoms.push_back({Complex{}, 1.0});
  const Complex integral = zeros_log_derivative_integral(delta, z);
  const double rp = std::abs(fd - integral);
  const double rm = std::abs(fd + integral);
  return rp <= rm ? std::pair{1, rp} : std::pair{-1, rm};
}

LogModulusReport log_modulus_checks(const SelfMap& f, const ZerosMeasure& mu, const std::vector<Complex>& samples) {
  LogModulusReport rep;
  std::tie(rep.sign, rep.calibration_residual) = calibrate_log_derivative_sign();
  rep.min_slack_a = std::numeric_limits<double>::infinity();
  rep.rows.resize(samples.size());
  parallel_for(samples.size(), [&](std::size_t i) {
    const Complex z = samples[i];
    LogModulusRow& row = rep.rows[i];
    row.z = z;
    const Jet j = f.jet(z);
    row.poisson = closed_disc_poisson(mu, z);
    // The defect keeps precision near |f| = 1; |f| itself is exact when it is small.
    const double m = std::abs(j.value);
    if (m == 0.0) row.log_term = std::numeric_limits<double>::infinity();
    else row.log_term = m < 0.7 ? -2.0 * std::log(m) : -std::log1p(-j.defect);
    row.slack_a = row.log_term - row.poisson;
    row.ratio_b = row.log_term / row.poisson;
    row.zero_distance = std::numeric_limits<double>::infinity();
    for (const auto& a : mu.interior_atoms) row.zero_distance = std::min(row.zero_distance, hyperbolic_distance(z, a.z));
    const double vz = std::abs(j.value);
    if (vz < 1e-12 || row.zero_distance < 1e-12) {
      row.skipped_c = true;
      return;
    }
    const Complex lhs = j.derivative / j.value;
    row.residual_c = std::abs(lhs - static_cast<double>(rep.sign) * zeros_log_derivative_integral(mu, z));
  });
  for (const auto& row : rep.rows) {
    rep.min_slack_a = std::min(rep.min_slack_a, row.slack_a);
    if (row.skipped_c) ++rep.skipped_c;
    else rep.max_residual_c = std::max(rep.max_residual_c, row.residual_c);
  }
  if (rep.rows.empty()) rep.min_slack_a = 0.0;
  return rep;
}

// AnchorPoisson ---------------------------------------------------------------

AnchorPoisson::AnchorPoisson(const ZerosMeasure& mu) : mu_(&mu) {
  if (!mu.boundary_part.is_zero()) boundary_ = std::make_unique<RingEvaluator>(mu.boundary_part);
}

AnchorPoisson::~AnchorPoisson() = default;

const std::vector<double>& AnchorPoisson::ring(int n) const {
  if (n < 0 || n > 24) throw ArgumentError("AnchorPoisson: depth must lie in [0, 24]");
  {
    std::lock_guard<std::mutex> g(lock_);
    auto it = cache_.find(n);
    if (it != cache_.end()) return *it->second;
  }
  const double len = std::ldexp(1.0, -n);
  const double r = 1.0 - len;
  const std::size_t count = std::size_t{1} << (n + 1);
  const double phase = 0.5 * len;
  std::vector<double> v(count, 0.0);
  if (boundary_) {
    if (n == 0) {
      v.assign(count, mu_->boundary_part.total_mass());
    } else {
      v = boundary_->poisson(r, phase, count);
    }
  }
  if (!mu_->interior_atoms.empty()) {
    const double q = 1.0 - r * r;
    parallel_for(count, [&](std::size_t k) {
      const Complex z = std::polar(r, kTwoPi * (phase + static_cast<double>(k) / static_cast<double>(count)));
      double s = 0.0;
      for (const auto& a : mu_->interior_atoms) s += a.mass * q / std::norm(1.0 - std::conj(a.z) * z);
      v[k] += s;
    });
  }
  auto ptr = std::make_shared<const std::vector<double>>(std::move(v));
  std::lock_guard<std::mutex> g(lock_);
  auto [it, inserted] = cache_.emplace(n, std::move(ptr));
  return *it->second;
}

double AnchorPoisson::scanned(int n, std::uint64_t q) const {
  const auto& v = ring(n);
  return v.at(q);
}

// Box mass scan --------------------------------------------------------------

BoxMassResult box_mass_scan(const ZerosMeasure& mu, const std::vector<double>& c_grid, int max_depth,
                             std::optional<double> gate) {
  if (max_depth < 1 || max_depth > 20) throw ArgumentError("box_mass_scan: depth must lie in [1, 20]");
  if (mu.total_mass() <= 0.0) throw DegenerateError("box_mass_scan: zero measure");
  for (double c : c_grid)
    if (!(c > 0.0)) throw ArgumentError("box_mass_scan: candidate constants must be positive");
  const AnchorPoisson anchors(mu);
  std::vector<BoxMassRow> boxes;
  for (int n = 1; n <= max_depth; ++n) {
    const std::size_t count = std::size_t{1} << (n + 1);
    const auto& pv = anchors.ring(n);
    std::vector<BoxMassRow> level(count);
    parallel_for(count, [&](std::size_t q) {
      BoxMassRow b;
      b.arc = {n, q >> 1, (q & 1u) != 0};
      const Arc I = b.arc.arc();
      b.box_mass = mu.closed_box_mass(I);
      b.poisson = pv[q];
      b.ratio = b.box_mass / (I.length * b.poisson);
      level[q] = b;
    });
    boxes.insert(boxes.end(), level.begin(), level.end());
  }
  constexpr double kSlack = 1e-12;
  BoxMassResult res;
  res.max_depth = max_depth;
  std::vector<double> sorted = c_grid;
  std::sort(sorted.begin(), sorted.end());
  for (double c : sorted) {
    BoxMassCandidate cand;
    cand.c = c;
    cand.gate = gate ? *gate : c;
    for (const auto& b : boxes) {
      if (b.poisson > cand.gate * (1.0 + kSlack)) continue;
      ++cand.tested;
      if (!cand.tightest || b.ratio < cand.tightest->ratio) cand.tightest = b;
    }
    if (cand.tightest && cand.tightest->ratio < c * (1.0 - kSlack)) cand.pass = false;
    if (cand.pass) res.best = c;
    else if (!res.violation) res.violation = cand.tightest;
    res.candidates.push_back(cand);
  }
  return res;
}

}  // namespace contractive
