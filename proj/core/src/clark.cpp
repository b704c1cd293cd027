#include "contractive/clark.hpp"

#include <algorithm>
#include <cmath>

#include "contractive/errors.hpp"

namespace contractive {

// BoundaryPhase -------------------------------------------------------------------

BoundaryPhase::BoundaryPhase(const SelfMap& f) {
  absorb(f);
  if (degree_ < 1) throw ArgumentError("boundary phase needs a finite Blaschke product");
}

void BoundaryPhase::absorb(const SelfMap& f) {
  switch (f.kind()) {
    case SelfMap::Kind::Blaschke: {
      const auto& d = f.as_blaschke();
      constant_ += d.constant_turns;
      for (const Complex& a : d.zeros) {
        double p0 = 0.0;
        if (a != Complex{}) p0 = angle_of(std::abs(a) / a * (a - 1.0) / (1.0 - std::conj(a)));
        factors_.push_back({a, p0});
      }
      degree_ += static_cast<int>(d.zeros.size());
      return;
    }
    case SelfMap::Kind::ScaledRotation: {
      const auto& d = f.as_scaled_rotation();
      if (d.r != 1.0) break;
      constant_ += d.theta_turns;
      factors_.push_back({Complex{}, 0.0});
      degree_ += 1;
      return;
    }
    case SelfMap::Kind::Herglotz: {
      const auto& d = f.as_herglotz();
      if (d.measure.has_tree() || d.measure.has_density()) break;
      AtomicPart part;
      part.atoms = d.measure.atoms();  // already sorted by the measure
      part.alpha = d.alpha_turns;
      part.c = d.imaginary_constant;
      degree_ += static_cast<int>(part.atoms.size());
      atomic_.push_back(std::move(part));
      return;
    }
    case SelfMap::Kind::Product:
      for (const auto& g : f.as_product().factors) absorb(*g);
      return;
    default:
      break;
  }
  throw ArgumentError("boundary phase needs a finite Blaschke product, got " + f.describe());
}

double BoundaryPhase::phase_and_derivative(double t, double* d) const {
  double phi = constant_;
  double dphi = 0.0;
  for (const auto& f : factors_) {
    if (f.zero == Complex{}) {
      phi += t;
      dphi += 1.0;
    } else {
      phi += f.phase0 + poisson_cumulative(f.zero, t) - poisson_cumulative(f.zero, 0.0);
      if (d) dphi += poisson_kernel(f.zero, t);
    }
  }
  for (const auto& part : atomic_) {
    const auto& atoms = part.atoms;
    const auto k = std::upper_bound(atoms.begin(), atoms.end(), t,
                                    [](double x, const Atom& a) { return x < a.t; }) -
                   atoms.begin();
    double h = part.c, csc2 = 0.0;
    bool on_atom = false;
    double on_mass = 0.0;
    for (const auto& a : atoms) {
      const double x = kPi * (t - a.t);
      const double s = std::sin(x);
      if (s == 0.0) {
        on_atom = true;
        on_mass = a.mass;
        continue;
      }
      h += a.mass * std::cos(x) / s;
      csc2 += a.mass / (s * s);
    }
    // arg f = α + (atoms passed) + arccot(h)/π; h = +∞ exactly on an atom.
    const double ac = on_atom ? 0.0 : std::atan2(1.0, h);
    phi += part.alpha + static_cast<double>(k) + ac / kPi;
    if (d) {
      double v = on_atom ? 1.0 / on_mass : csc2 / (1.0 + h * h);
      if (!std::isfinite(v) || v <= 0.0) {
        // Near-overflow next to an atom: the local atom dominates.
        double best = 2.0;
        for (const auto& a : atoms) {
          const double g = std::abs(wrap_turns(t - a.t + 0.5) - 0.5);
          if (g < best) best = g, v = 1.0 / a.mass;
        }
      }
      dphi += v;
    }
  }
  if (d) *d = dphi;
  return phi;
}

double BoundaryPhase::phase(double t) const {
  const double fl = std::floor(t);
  return phase_and_derivative(t - fl, nullptr) + static_cast<double>(degree_) * fl;
}

double BoundaryPhase::derivative(double t) const {
  double d = 0.0;
  phase_and_derivative(wrap_turns(t), &d);
  return d;
}

double BoundaryPhase::solve_in(double y, double lo, double hi) const {
  double t = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    double d = 0.0;
    const double v = phase_and_derivative(t, &d) - y;
    if (v == 0.0) return t;
    if (v < 0.0) lo = t; else hi = t;
    double next = t - v / d;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) <= 1e-17 || hi - lo <= 2e-16) return next;
    t = next;
  }
  return t;
}

std::vector<double> BoundaryPhase::solve(double target_turns) const {
  // Bracket grid: uniform samples plus every atom (where the phase is exact).
  const std::size_t m = std::max<std::size_t>(64, 8 * static_cast<std::size_t>(degree_));
  std::vector<double> grid;
  const bool pure_atomic = factors_.empty() && atomic_.size() == 1;
  if (!pure_atomic)
    for (std::size_t i = 0; i <= m; ++i) grid.push_back(static_cast<double>(i) / static_cast<double>(m));
  else
    grid = {0.0, 1.0};
  for (const auto& part : atomic_)
    for (const auto& a : part.atoms) grid.push_back(a.t);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  std::vector<double> vals(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = phase_and_derivative(grid[i], nullptr);
  vals.back() = vals.front() + degree_;  // exact at t = 1

  const double phi0 = vals.front();
  const double base = phi0 + wrap_turns(target_turns - phi0);
  std::vector<double> roots;
  roots.reserve(degree_);
  for (int k = 0; k < degree_; ++k) {
    const double y = base + k;
    // First grid value ≥ y; the root lies in the preceding cell.
    const auto it = std::lower_bound(vals.begin(), vals.end(), y);
    const std::size_t i = static_cast<std::size_t>(it - vals.begin());
    double t;
    if (i < vals.size() && vals[i] == y) {
      t = grid[i];
    } else if (i == 0) {
      t = grid[0];
    } else {
      t = solve_in(y, grid[i - 1], grid[std::min(i, grid.size() - 1)]);
    }
    roots.push_back(wrap_turns(t));
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// Spectra ---------------------------------------------------------------------

double ClarkSpectrum::total_mass() const {
  double s = 0.0;
  for (const auto& a : atoms) s += a.mass;
  return s;
}

BoundaryMeasure ClarkSpectrum::measure() const {
  std::vector<Atom> out;
  out.reserve(atoms.size());
  for (const auto& a : atoms) out.push_back({a.t, a.mass});
  return BoundaryMeasure::from_atoms(std::move(out));
}

ClarkSpectrum clark_blaschke(const SelfMap& f, double alpha_turns) {
  const BoundaryPhase phase(f);
  const Complex alpha = boundary_point(alpha_turns);
  ClarkSpectrum s;
  s.alpha_turns = wrap_turns(alpha_turns);
  const Complex f0 = f.jet(Complex{}).value;
  s.imaginary_constant = ((alpha + f0) / (alpha - f0)).imag();
  for (double t : phase.solve(alpha_turns)) {
    ClarkAtom a;
    a.t = t;
    a.mass = 1.0 / phase.derivative(t);
    try {
      a.residual = std::abs(f.jet(boundary_point(t)).value - alpha);
    } catch (const SingularityError&) {
      a.residual = std::abs(boundary_point(phase.phase(t)) - alpha);
    }
    s.atoms.push_back(a);
  }
  return s;
}

double clark_poisson(const SelfMap& f, double alpha_turns, Complex z) {
  require_interior(z, "clark_poisson");
  const Jet j = f.jet(z);
  const double den = std::norm(boundary_point(alpha_turns) - j.value);
  if (!(den > 0.0)) throw SingularityError("f(z) = alpha");
  return j.defect / den;
}

double ClarkDensity::arc_mass(const Arc& arc) const {
  const std::size_t n = t.size();
  if (n == 0) return 0.0;
  const double h = 1.0 / static_cast<double>(n);
  // Integrate the periodic linear interpolant over [s, s + L).
  auto integral_to = [&](double x) {  // ∫_0^x for x in [0, 1]
    const double pos = x / h;
    const auto full = static_cast<std::size_t>(std::floor(pos));
    double s = 0.0;
    for (std::size_t i = 0; i < std::min(full, n); ++i) s += 0.5 * h * (density[i] + density[(i + 1) % n]);
    if (full < n) {
      const double frac = pos - static_cast<double>(full);
      const double a = density[full], b = density[(full + 1) % n];
      s += h * (a * frac + 0.5 * (b - a) * frac * frac);
    }
    return s;
  };
  const double total = integral_to(1.0);
  if (arc.length >= 1.0) return total;
  const double s0 = arc.start, s1 = arc.start + arc.length;
  if (s1 <= 1.0) return integral_to(s1) - integral_to(s0);
  return total - integral_to(s0) + integral_to(s1 - 1.0);
}

ClarkDensity clark_radial(const SelfMap& f, double alpha_turns, double r, std::size_t mesh) {
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("clark_radial: radius must lie in [0, 1)");
  if (mesh < 2) throw ArgumentError("clark_radial: mesh needs at least two nodes");
  const Complex alpha = boundary_point(alpha_turns);
  ClarkDensity d;
  d.alpha_turns = wrap_turns(alpha_turns);
  d.r = r;
  const auto jets = f.ring(r, 0.0, mesh);
  d.t.resize(mesh);
  d.density.resize(mesh);
  for (std::size_t i = 0; i < mesh; ++i) {
    d.t[i] = static_cast<double>(i) / static_cast<double>(mesh);
    const double den = std::norm(alpha - jets[i].value);
    if (!(den > 0.0)) throw SingularityError("clark_radial: f(r xi) = alpha on the mesh; refine r");
    d.density[i] = jets[i].defect / den;
  }
  return d;
}

DisintegrationResult disintegration_check(const SelfMap& f, const TrigPoly& g, std::size_t mesh_alpha) {
  if (mesh_alpha < 1) throw ArgumentError("disintegration_check: empty alpha mesh");
  const BoundaryPhase phase(f);
  DisintegrationResult r;
  r.lebesgue_integral = g.mean();
  double acc = 0.0;
  for (std::size_t i = 0; i < mesh_alpha; ++i) {
    const double alpha = static_cast<double>(i) / static_cast<double>(mesh_alpha);
    double inner = 0.0;
    for (double t : phase.solve(alpha)) inner += g(t) / phase.derivative(t);
    acc += inner;
  }
  r.averaged_integral = acc / static_cast<double>(mesh_alpha);
  r.defect = std::abs(r.lebesgue_integral - r.averaged_integral);
  return r;
}

BoundaryMeasure inner_approximation(const BoundaryMeasure& sigma, int depth) {
  if (depth < 0 || depth > DyadicMassTree::kMaxDepth) throw ArgumentError("inner_approximation: depth out of range");
  std::vector<Atom> atoms = sigma.atoms();
  const std::uint64_t cnt = std::uint64_t{1} << depth;
  const double len = std::ldexp(1.0, -depth);
  for (std::uint64_t j = 0; j < cnt; ++j) {
    const DyadicArc a(depth, j);
    double m = sigma.tree().mass(a);
    if (sigma.density()) m += sigma.density()->integral(a.arc());
    if (m > 0.0) atoms.push_back({(static_cast<double>(j) + 0.5) * len, m});
  }
  std::sort(atoms.begin(), atoms.end(), [](const Atom& x, const Atom& y) { return x.t < y.t; });
  std::vector<Atom> merged;
  for (const auto& a : atoms) {
    if (!merged.empty() && merged.back().t == a.t) merged.back().mass += a.mass;
    else merged.push_back(a);
  }
  if (merged.empty()) throw DegenerateError("inner_approximation: zero measure");
  return BoundaryMeasure::from_atoms(std::move(merged));
}

BlaschkeConversion blaschke_from_atomic(const SelfMap& g) {
  if (g.kind() != SelfMap::Kind::Herglotz || g.inner_degree() == 0)
    throw ArgumentError("blaschke_from_atomic: needs a purely atomic Herglotz map");
  const auto& d = g.as_herglotz();
  const auto& atoms = d.measure.atoms();
  const std::size_t n = atoms.size();
  std::vector<Complex> xi(n);
  for (std::size_t k = 0; k < n; ++k) xi[k] = boundary_point(atoms[k].t);

  // N(z) = (H(z) - 1) Π(ξ_k - z); N'/N = H'/(H - 1) + Σ 1/(z - ξ_k).
  auto log_deriv = [&](Complex z, Complex& ratio) {
    Complex h{-1.0, d.imaginary_constant}, dh{}, poles{};
    for (std::size_t k = 0; k < n; ++k) {
      const Complex den = xi[k] - z;
      const Complex inv = 1.0 / den;
      h += atoms[k].mass * (xi[k] + z) * inv;
      dh += atoms[k].mass * 2.0 * xi[k] * inv * inv;
      poles -= inv;
    }
    ratio = dh / h + poles;
    return h;
  };

  std::vector<Complex> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t0 = atoms[k].t;
    const double t1 = (k + 1 < n) ? atoms[k + 1].t : atoms[0].t + 1.0;
    const double gap = t1 - t0;
    const double rad = 1.0 - std::min(0.5, kPi * gap);
    z[k] = std::polar(rad, kTwoPi * (t0 + 0.5 * gap));
  }
  int it = 0;
  for (; it < 500; ++it) {
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      Complex ratio;
      log_deriv(z[j], ratio);
      const Complex w = 1.0 / ratio;
      Complex s{};
      for (std::size_t i = 0; i < n; ++i)
        if (i != j) s += 1.0 / (z[j] - z[i]);
      const Complex step = w / (1.0 - w * s);
      z[j] -= step;
      worst = std::max(worst, std::abs(step));
    }
    if (worst < 1e-13) break;
  }
  for (auto& a : z)
    if (!(std::norm(a) < 1.0)) throw NumericalError("blaschke_from_atomic: a zero left the disc");

  // Unimodular constant from a point where neither side is small.
  const Complex probe = std::polar(0.5, 0.123);
  const SelfMap unit = SelfMap::blaschke(z, 0.0);
  const Complex lam = g.jet(probe).value / unit.jet(probe).value;
  BlaschkeConversion out{SelfMap::blaschke(z, angle_of(lam)), 0.0, it};
  for (int k = 0; k < 24; ++k) {
    const Complex p = std::polar(0.3 + 0.6 * (k % 3) / 2.0, kTwoPi * k / 24.0);
    out.max_residual = std::max(out.max_residual, std::abs(out.map.jet(p).value - g.jet(p).value));
  }
  return out;
}

}  // namespace contractive
