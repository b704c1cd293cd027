#include "contractive/disc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "contractive/errors.hpp"

namespace contractive {

double wrap_turns(double t) {
  double r = t - std::floor(t);
  // floor can leave r == 1.0 for tiny negative t.
  if (r >= 1.0) r = 0.0;
  return r;
}

Complex boundary_point(double turns) {
  const double t = wrap_turns(turns);
  // Exact values at the quarter turns keep dyadic tests clean.
  if (t == 0.0) return {1.0, 0.0};
  if (t == 0.25) return {0.0, 1.0};
  if (t == 0.5) return {-1.0, 0.0};
  if (t == 0.75) return {0.0, -1.0};
  return {std::cos(kTwoPi * t), std::sin(kTwoPi * t)};
}

double angle_of(Complex z) {
  if (z == Complex{}) return 0.0;
  return wrap_turns(std::atan2(z.imag(), z.real()) / kTwoPi);
}

// Arc ----------------------------------------------------------------------

Arc::Arc(double start_turns, double length_turns)
    : start(wrap_turns(start_turns)), length(length_turns) {
  if (!(length > 0.0) || length > 1.0 || !std::isfinite(start_turns))
    throw ArgumentError("arc length must lie in (0, 1], got " +
                        std::to_string(length_turns));
}

Arc Arc::centered(double center_turns, double length_turns) {
  return Arc(center_turns - 0.5 * length_turns, length_turns);
}

bool Arc::contains(double t) const {
  if (length >= 1.0) return true;
  return wrap_turns(t - start) < length;
}

bool Arc::contains_closed(double t) const {
  if (length >= 1.0) return true;
  const double d = wrap_turns(t - start);
  return d <= length || 1.0 - d <= 1e-15;
}

Complex Arc::anchor() const { return (1.0 - length) * boundary_point(center()); }

Arc Arc::dilated(double factor) const {
  const double len = std::min(1.0, length * factor);
  return Arc::centered(center(), len);
}

// DyadicArc -----------------------------------------------------------------

DyadicArc::DyadicArc(int d, std::uint64_t k) : depth(d), index(k) {
  if (d < 0 || d > kMaxDepth)
    throw ArgumentError("dyadic depth out of range: " + std::to_string(d));
  if (k >= (std::uint64_t{1} << d))
    throw ArgumentError("dyadic index out of range at depth " + std::to_string(d));
}

double DyadicArc::length() const { return std::ldexp(1.0, -depth); }
double DyadicArc::start() const { return std::ldexp(static_cast<double>(index), -depth); }

DyadicArc DyadicArc::parent() const {
  if (depth == 0) throw ArgumentError("the full circle has no parent");
  return DyadicArc(depth - 1, index >> 1);
}

DyadicArc DyadicArc::ancestor(int at_depth) const {
  if (at_depth < 0 || at_depth > depth) throw ArgumentError("ancestor depth out of range");
  return DyadicArc(at_depth, index >> (depth - at_depth));
}

DyadicArc DyadicArc::shifted(std::int64_t steps) const {
  const std::uint64_t n = count_at_depth();
  const auto s = static_cast<std::uint64_t>(steps);  // two's complement wraps mod n
  return DyadicArc(depth, (index + s) & (n - 1));
}

bool DyadicArc::contains(const DyadicArc& other) const {
  return other.depth >= depth && (other.index >> (other.depth - depth)) == index;
}

bool DyadicArc::disjoint(const DyadicArc& other) const {
  return !contains(other) && !other.contains(*this);
}

// CarlesonBox ---------------------------------------------------------------

double CarlesonBox::area() const {
  const double l = base.length;
  return l * l * (2.0 - l);
}

bool CarlesonBox::contains(Complex z) const {
  const double r = std::abs(z);
  if (r >= 1.0) return false;
  if (1.0 - r > base.length) return false;
  if (r == 0.0) return base.length >= 1.0;
  return base.contains(angle_of(z));
}

bool CarlesonBox::contains_closed(Complex z) const {
  const double r = std::abs(z);
  if (r > 1.0) return false;
  if (1.0 - r > base.length) return false;
  if (r == 0.0) return base.length >= 1.0;
  return base.contains_closed(angle_of(z));
}

bool CarlesonBox::in_top_half(Complex z) const {
  return contains(z) && 1.0 - std::abs(z) >= 0.5 * base.length;
}

// Hyperbolic geometry ---------------------------------------------------------

void require_interior(Complex z, const char* what) {
  if (!(std::norm(z) < 1.0))
    throw DomainError(std::string(what) + ": point must lie in the open unit disc");
}

namespace {

// 1 - ρ², computed without cancellation.
double one_minus_rho2(Complex z, Complex w) {
  const double d = std::norm(1.0 - std::conj(w) * z);
  return (1.0 - std::norm(z)) * (1.0 - std::norm(w)) / d;
}

}  // namespace

double pseudo_hyperbolic(Complex z, Complex w) {
  require_interior(z, "pseudo_hyperbolic");
  require_interior(w, "pseudo_hyperbolic");
  const double rho = std::abs(z - w) / std::abs(1.0 - std::conj(w) * z);
  return std::min(rho, std::nextafter(1.0, 0.0));
}

double hyperbolic_distance_from_pseudo(double rho) {
  if (rho < 0.0 || rho >= 1.0) throw DomainError("pseudo-hyperbolic distance must lie in [0, 1)");
  return std::atanh(rho * rho);
}

double hyperbolic_distance(Complex z, Complex w) {
  require_interior(z, "hyperbolic_distance");
  require_interior(w, "hyperbolic_distance");
  const double q = one_minus_rho2(z, w);
  const double rho2 = std::norm(z - w) / std::norm(1.0 - std::conj(w) * z);
  // ½ log((1 + ρ²)/(1 - ρ²)) with the denominator taken from the stable form.
  return 0.5 * std::log((1.0 + rho2) / q);
}

double geodesic_from_pseudo(double rho) {
  if (rho < 0.0 || rho >= 1.0) throw DomainError("pseudo-hyperbolic distance must lie in [0, 1)");
  return std::atanh(rho);
}

double pseudo_from_geodesic(double d) {
  if (d < 0.0) throw ArgumentError("geodesic distance must be nonnegative");
  return std::tanh(d);
}

double geodesic_distance(Complex z, Complex w) {
  require_interior(z, "geodesic_distance");
  require_interior(w, "geodesic_distance");
  const double q = one_minus_rho2(z, w);
  const double rho = std::abs(z - w) / std::abs(1.0 - std::conj(w) * z);
  // artanh ρ = ½ log((1 + ρ)² / (1 - ρ²)).
  return 0.5 * std::log((1.0 + rho) * (1.0 + rho) / q);
}

double geodesic_distance_real(double a, double b) {
  return geodesic_distance(Complex{a, 0.0}, Complex{b, 0.0});
}

Complex automorphism(Complex a, Complex w) {
  require_interior(a, "automorphism");
  const Complex den = 1.0 - std::conj(a) * w;
  if (den == Complex{}) throw DomainError("automorphism: pole at 1/conj(a)");
  return (a - w) / den;
}

double poisson_kernel(Complex z, double turns) {
  require_interior(z, "poisson_kernel");
  return (1.0 - std::norm(z)) / std::norm(boundary_point(turns) - z);
}

Arc arc_of_point(Complex z) {
  require_interior(z, "arc_of_point");
  if (z == Complex{}) throw DomainError("arc_of_point: the origin has no canonical center");
  return Arc::centered(angle_of(z), 1.0 - std::abs(z));
}

Complex anchor_point(const Arc& arc) { return arc.anchor(); }

// Closed forms ---------------------------------------------------------------

double poisson_cumulative(Complex z, double t) {
  require_interior(z, "poisson_cumulative");
  const double rho = std::abs(z);
  const double phi = rho > 0.0 ? angle_of(z) : 0.0;
  const double s = t - phi;
  const double j = std::floor(s + 0.5);
  const double sr = s - j;  // in [-1/2, 1/2)
  const double k = (1.0 + rho) / (1.0 - rho);
  const double g = std::atan(k * std::tan(kPi * sr)) / kPi;
  return phi + j + g;
}

double poisson_arc_integral(Complex z, const Arc& arc) {
  if (arc.length >= 1.0) {
    require_interior(z, "poisson_arc_integral");
    return 1.0;
  }
  const double v = poisson_cumulative(z, arc.start + arc.length) - poisson_cumulative(z, arc.start);
  return std::clamp(v, 0.0, 1.0);
}

Complex herglotz_arc_integral(Complex z, const Arc& arc) {
  const double re = poisson_arc_integral(z, arc);
  if (arc.length >= 1.0) return {re, 0.0};
  const Complex xi1 = boundary_point(arc.start);
  const Complex xi2 = boundary_point(arc.start + arc.length);
  const double im = -std::log(std::abs(xi2 - z) / std::abs(xi1 - z)) / kPi;
  return {re, im};
}

Complex herglotz_arc_derivative(Complex z, const Arc& arc) {
  require_interior(z, "herglotz_arc_derivative");
  if (arc.length >= 1.0) return {};
  const Complex xi1 = boundary_point(arc.start);
  const Complex xi2 = boundary_point(arc.start + arc.length);
  const Complex i_pi{0.0, kPi};
  return (1.0 / (xi1 - z) - 1.0 / (xi2 - z)) / i_pi;
}

}  // namespace contractive
