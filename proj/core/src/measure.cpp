#include "contractive/measure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "contractive/errors.hpp"

namespace contractive {

// DyadicMassTree ----------------------------------------------------------------

DyadicMassTree DyadicMassTree::from_leaves(std::vector<double> leaves) {
  const std::size_t n = leaves.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw ArgumentError("tree leaf count must be a power of two");
  int depth = 0;
  while ((std::size_t{1} << depth) < n) ++depth;
  if (depth > kMaxDepth)
    throw ArgumentError("tree depth " + std::to_string(depth) + " exceeds " + std::to_string(kMaxDepth));
  for (double v : leaves)
    if (!(v >= 0.0) || !std::isfinite(v)) throw ArgumentError("tree masses must be finite and nonnegative");

  DyadicMassTree t;
  t.levels_.resize(depth + 1);
  t.levels_[depth] = std::move(leaves);
  for (int d = depth - 1; d >= 0; --d) {
    const auto& below = t.levels_[d + 1];
    auto& here = t.levels_[d];
    here.resize(below.size() / 2);
    for (std::size_t k = 0; k < here.size(); ++k) here[k] = below[2 * k] + below[2 * k + 1];
  }
  return t;
}

double DyadicMassTree::leaf_length() const { return std::ldexp(1.0, -depth()); }

double DyadicMassTree::mass(const DyadicArc& arc) const {
  if (empty()) return 0.0;
  const int n = depth();
  if (arc.depth <= n) return levels_[arc.depth][arc.index];
  const int extra = arc.depth - n;
  return std::ldexp(levels_[n][arc.index >> extra], -extra);
}

double DyadicMassTree::leaf_range_mass(std::uint64_t lo, std::uint64_t hi) const {
  if (empty() || lo >= hi) return 0.0;
  double s = 0.0;
  int d = depth();
  while (lo < hi) {
    const auto& lev = levels_[d];
    if (lo & 1u) s += lev[lo++];
    if (hi & 1u) s += lev[--hi];
    lo >>= 1;
    hi >>= 1;
    --d;
  }
  return s;
}

DyadicMassTree DyadicMassTree::scaled(double c) const {
  if (empty()) return {};
  std::vector<double> l = leaves();
  for (double& v : l) v *= c;
  return from_leaves(std::move(l));
}

DyadicMassTree DyadicMassTree::rotated_leaves(std::int64_t steps) const {
  if (empty()) return {};
  const auto& src = leaves();
  const auto n = static_cast<std::int64_t>(src.size());
  std::vector<double> dst(src.size());
  const std::int64_t s = ((steps % n) + n) % n;
  for (std::int64_t j = 0; j < n; ++j) dst[(j + s) % n] = src[j];
  return from_leaves(std::move(dst));
}

DyadicMassTree DyadicMassTree::truncated(int d) const {
  if (empty()) return {};
  if (d < 0 || d > depth()) throw ArgumentError("truncation depth out of range");
  return from_leaves(levels_[d]);
}

DyadicMassTree DyadicMassTree::refined(int extra) const {
  if (empty() || extra == 0) return *this;
  if (extra < 0 || depth() + extra > kMaxDepth) throw ArgumentError("refinement depth out of range");
  const auto& src = leaves();
  const std::size_t f = std::size_t{1} << extra;
  std::vector<double> dst(src.size() * f);
  for (std::size_t j = 0; j < src.size(); ++j)
    std::fill_n(dst.begin() + j * f, f, std::ldexp(src[j], -extra));
  return from_leaves(std::move(dst));
}

bool DyadicMassTree::consistent() const {
  for (int d = 0; d + 1 < static_cast<int>(levels_.size()); ++d)
    for (std::size_t k = 0; k < levels_[d].size(); ++k)
      if (levels_[d][k] != levels_[d + 1][2 * k] + levels_[d + 1][2 * k + 1]) return false;
  return true;
}

double DyadicMassTree::min_positive_leaf() const {
  double m = 0.0;
  if (empty()) return m;
  for (double v : leaves())
    if (v > 0.0 && (m == 0.0 || v < m)) m = v;
  return m;
}

// BoundaryMeasure ---------------------------------------------------------------

BoundaryMeasure::BoundaryMeasure(std::vector<Atom> atoms, DyadicMassTree tree,
                                 std::optional<TrigPoly> density)
    : atoms_(std::move(atoms)), tree_(std::move(tree)), density_(std::move(density)) {
  for (auto& a : atoms_) {
    if (!(a.mass > 0.0) || !std::isfinite(a.mass) || !std::isfinite(a.t))
      throw ArgumentError("atom masses must be finite and positive");
    a.t = wrap_turns(a.t);
  }
  std::stable_sort(atoms_.begin(), atoms_.end(), [](const Atom& x, const Atom& y) { return x.t < y.t; });
  if (density_) {
    if (density_->is_zero()) {
      density_.reset();
    } else {
      const std::size_t n = std::max<std::size_t>(512, 64 * (density_->degree() + 1));
      const double scale = std::abs(density_->mean()) + 1.0;
      for (std::size_t j = 0; j < n; ++j)
        if ((*density_)(static_cast<double>(j) / n) < -1e-12 * scale)
          throw ArgumentError("density must be nonnegative on the circle");
    }
  }
}

BoundaryMeasure BoundaryMeasure::lebesgue(double mass) {
  if (!(mass > 0.0)) throw ArgumentError("mass must be positive");
  return from_density(TrigPoly::constant(mass));
}

BoundaryMeasure BoundaryMeasure::dirac(double t, double mass) { return from_atoms({{t, mass}}); }

BoundaryMeasure BoundaryMeasure::from_atoms(std::vector<Atom> atoms) {
  return BoundaryMeasure(std::move(atoms), {}, std::nullopt);
}

BoundaryMeasure BoundaryMeasure::from_tree(DyadicMassTree tree) {
  return BoundaryMeasure({}, std::move(tree), std::nullopt);
}

BoundaryMeasure BoundaryMeasure::from_density(TrigPoly density) {
  return BoundaryMeasure({}, {}, std::move(density));
}

double BoundaryMeasure::total_mass() const {
  double s = tree_.total();
  for (const auto& a : atoms_) s += a.mass;
  if (density_) s += density_->mean();
  return s;
}

namespace {

// Tree mass of [x, y) with 0 ≤ x < y ≤ 1, proportional inside partial leaves.
BoundaryMeasure::ArcMass tree_interval_mass(const DyadicMassTree& tree, double x, double y) {
  BoundaryMeasure::ArcMass out;
  const auto& leaves = tree.leaves();
  const double n = static_cast<double>(leaves.size());
  const double X = x * n, Y = y * n;
  const double lo_f = std::ceil(X), hi_f = std::floor(Y);
  if (lo_f <= hi_f) {
    const auto lo = static_cast<std::uint64_t>(lo_f), hi = static_cast<std::uint64_t>(hi_f);
    out.value = tree.leaf_range_mass(lo, hi);
    if (X < lo_f) {
      const double m = leaves[lo - 1];
      out.value += m * (lo_f - X);
      out.error_bound += m;
    }
    if (Y > hi_f) {
      const double m = leaves[hi];
      out.value += m * (Y - hi_f);
      out.error_bound += m;
    }
  } else {
    const auto i = static_cast<std::uint64_t>(hi_f);
    const double m = leaves[i];
    out.value = m * (Y - X);
    out.error_bound = m;
  }
  return out;
}

}  // namespace

BoundaryMeasure::ArcMass BoundaryMeasure::arc_mass_impl(const Arc& arc, bool closed) const {
  ArcMass out;
  for (const auto& a : atoms_)
    if (closed ? arc.contains_closed(a.t) : arc.contains(a.t)) out.value += a.mass;
  if (density_) out.value += density_->integral(arc);
  if (!tree_.empty()) {
    if (arc.length >= 1.0) {
      out.value += tree_.total();
    } else {
      const double s = arc.start, e = arc.start + arc.length;
      auto add = [&](double x, double y) {
        if (y <= x) return;
        const auto m = tree_interval_mass(tree_, x, y);
        out.value += m.value;
        out.error_bound += m.error_bound;
      };
      if (e <= 1.0) {
        add(s, e);
      } else {
        add(s, 1.0);
        add(0.0, e - 1.0);
      }
    }
  }
  return out;
}

BoundaryMeasure::ArcMass BoundaryMeasure::arc_mass(const Arc& arc) const { return arc_mass_impl(arc, false); }

BoundaryMeasure::ArcMass BoundaryMeasure::closed_arc_mass(const Arc& arc) const {
  return arc_mass_impl(arc, true);
}

double BoundaryMeasure::dyadic_mass(const DyadicArc& arc) const {
  double s = tree_.mass(arc);
  if (!atoms_.empty() || density_) {
    const Arc a = arc.arc();
    for (const auto& at : atoms_)
      if (a.contains(at.t)) s += at.mass;
    if (density_) s += density_->integral(a);
  }
  return s;
}

BoundaryMeasure BoundaryMeasure::scaled(double c) const {
  if (!(c > 0.0)) throw ArgumentError("scale factor must be positive");
  std::vector<Atom> atoms = atoms_;
  for (auto& a : atoms) a.mass *= c;
  std::optional<TrigPoly> d;
  if (density_) d = density_->scaled(c);
  return BoundaryMeasure(std::move(atoms), tree_.scaled(c), std::move(d));
}

BoundaryMeasure BoundaryMeasure::rotated(double shift) const {
  std::vector<Atom> atoms = atoms_;
  for (auto& a : atoms) a.t = wrap_turns(a.t + shift);
  std::optional<TrigPoly> d;
  if (density_) d = density_->rotated(shift);
  DyadicMassTree tree;
  if (!tree_.empty()) {
    const double steps = shift * std::ldexp(1.0, tree_.depth());
    const double r = std::round(steps);
    if (std::abs(steps - r) > 1e-9)
      throw ArgumentError("tree measures rotate only by whole leaves");
    tree = tree_.rotated_leaves(static_cast<std::int64_t>(r));
  }
  return BoundaryMeasure(std::move(atoms), std::move(tree), std::move(d));
}

BoundaryMeasure BoundaryMeasure::operator+(const BoundaryMeasure& other) const {
  std::vector<Atom> atoms = atoms_;
  atoms.insert(atoms.end(), other.atoms_.begin(), other.atoms_.end());
  DyadicMassTree tree;
  if (tree_.empty()) {
    tree = other.tree_;
  } else if (other.tree_.empty()) {
    tree = tree_;
  } else {
    const int d = std::max(tree_.depth(), other.tree_.depth());
    auto a = tree_.refined(d - tree_.depth()).leaves();
    const auto& b = other.tree_.refined(d - other.tree_.depth()).leaves();
    for (std::size_t j = 0; j < a.size(); ++j) a[j] += b[j];
    tree = DyadicMassTree::from_leaves(std::move(a));
  }
  std::optional<TrigPoly> dens = density_;
  if (other.density_) dens = dens ? *dens + *other.density_ : *other.density_;
  return BoundaryMeasure(std::move(atoms), std::move(tree), std::move(dens));
}

Complex BoundaryMeasure::herglotz(Complex z) const {
  require_interior(z, "herglotz");
  Complex h{};
  for (const auto& a : atoms_) {
    const Complex xi = boundary_point(a.t);
    h += a.mass * (xi + z) / (xi - z);
  }
  if (density_) h += density_->herglotz(z);
  if (!tree_.empty()) {
    const auto& leaves = tree_.leaves();
    const std::size_t n = leaves.size();
    const double inv_len = static_cast<double>(n);
    // Shared endpoint values: harmonic-measure antiderivative and log|ξ - z|.
    double c_prev = poisson_cumulative(z, 0.0);
    double l_prev = std::log(std::abs(boundary_point(0.0) - z));
    double re = 0.0, im = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double t1 = static_cast<double>(j + 1) / inv_len;
      const double c_next = poisson_cumulative(z, t1);
      const double l_next = std::log(std::abs(boundary_point(t1) - z));
      if (leaves[j] != 0.0) {
        const double w = leaves[j] * inv_len;
        re += w * (c_next - c_prev);
        im -= w * (l_next - l_prev);
      }
      c_prev = c_next;
      l_prev = l_next;
    }
    h += Complex{re, im / kPi};
  }
  return h;
}

Complex BoundaryMeasure::herglotz_derivative(Complex z) const {
  require_interior(z, "herglotz_derivative");
  Complex d{};
  for (const auto& a : atoms_) {
    const Complex xi = boundary_point(a.t);
    d += a.mass * 2.0 * xi / ((xi - z) * (xi - z));
  }
  if (density_) d += density_->herglotz_derivative(z);
  if (!tree_.empty()) {
    const auto& leaves = tree_.leaves();
    const std::size_t n = leaves.size();
    const double inv_len = static_cast<double>(n);
    Complex a_prev = 1.0 / (boundary_point(0.0) - z);
    Complex acc{};
    for (std::size_t j = 0; j < n; ++j) {
      const Complex a_next = 1.0 / (boundary_point(static_cast<double>(j + 1) / inv_len) - z);
      if (leaves[j] != 0.0) acc += leaves[j] * inv_len * (a_prev - a_next);
      a_prev = a_next;
    }
    d += acc / Complex{0.0, kPi};
  }
  return d;
}

double BoundaryMeasure::poisson(Complex z) const {
  require_interior(z, "poisson");
  double u = 0.0;
  for (const auto& a : atoms_) u += a.mass * poisson_kernel(z, a.t);
  if (density_) u += density_->herglotz(z).real();
  if (!tree_.empty()) {
    const auto& leaves = tree_.leaves();
    const std::size_t n = leaves.size();
    const double inv_len = static_cast<double>(n);
    double c_prev = poisson_cumulative(z, 0.0);
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double c_next = poisson_cumulative(z, static_cast<double>(j + 1) / inv_len);
      if (leaves[j] != 0.0) acc += leaves[j] * inv_len * (c_next - c_prev);
      c_prev = c_next;
    }
    u += acc;
  }
  return u;
}

// Constructors ----------------------------------------------------------------

BoundaryMeasure bernoulli_alternating_measure(double p, int depth) {
  if (!(p > 0.0 && p < 0.5)) throw ArgumentError("Bernoulli parameter must lie in (0, 1/2)");
  if (depth < 0 || depth > DyadicMassTree::kMaxDepth)
    throw ArgumentError("Bernoulli depth out of range");
  std::vector<double> cur{1.0};
  for (int n = 0; n < depth; ++n) {
    const double left = (n % 2 == 1) ? p : 1.0 - p;
    std::vector<double> next(cur.size() * 2);
    for (std::size_t k = 0; k < cur.size(); ++k) {
      next[2 * k] = cur[k] * left;
      next[2 * k + 1] = cur[k] * (1.0 - left);
    }
    cur.swap(next);
  }
  return BoundaryMeasure::from_tree(DyadicMassTree::from_leaves(std::move(cur)));
}

// ZerosMeasure ----------------------------------------------------------------

double ZerosMeasure::total_mass() const {
  double s = boundary_part.total_mass();
  for (const auto& a : interior_atoms) s += a.mass;
  return s;
}

double ZerosMeasure::closed_box_mass(const Arc& arc) const {
  const CarlesonBox box(arc);
  double s = boundary_part.closed_arc_mass(arc).value;
  for (const auto& a : interior_atoms)
    if (box.contains_closed(a.z)) s += a.mass;
  return s;
}

double closed_disc_poisson(const ZerosMeasure& mu, Complex z) {
  require_interior(z, "closed_disc_poisson");
  double s = 0.0;
  if (!mu.boundary_part.is_zero()) s = mu.boundary_part.poisson(z);
  const double q = 1.0 - std::norm(z);
  for (const auto& a : mu.interior_atoms) s += a.mass * q / std::norm(1.0 - std::conj(a.z) * z);
  return s;
}

}  // namespace contractive
