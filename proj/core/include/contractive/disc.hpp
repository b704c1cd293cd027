#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace contractive {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Reduces an angle given in turns to [0, 1).
double wrap_turns(double t);

/// exp(2πi t).
Complex boundary_point(double turns);

/// Argument of z in turns, in [0, 1). z = 0 maps to 0.
double angle_of(Complex z);

/// A boundary point stored as a fraction of a full revolution.
class BoundaryAngle {
 public:
  BoundaryAngle() = default;
  explicit BoundaryAngle(double turns) : t_(wrap_turns(turns)) {}

  double turns() const { return t_; }
  Complex point() const { return boundary_point(t_); }

  friend bool operator==(const BoundaryAngle&, const BoundaryAngle&) = default;

 private:
  double t_ = 0.0;
};

/// Half-open angular interval [start, start + length) taken mod 1.
/// Lengths are normalized Lebesgue measure, so m(∂D) = 1.
struct Arc {
  double start = 0.0;
  double length = 1.0;

  Arc() = default;
  Arc(double start_turns, double length_turns);

  static Arc centered(double center_turns, double length_turns);

  double center() const { return wrap_turns(start + 0.5 * length); }
  double end() const { return start + length; }

  bool contains(double t) const;
  bool contains_closed(double t) const;

  /// z_I = (1 - |I|) ξ_I.
  Complex anchor() const;

  /// Arc with the same center and `factor` times the length (capped at 1).
  Arc dilated(double factor) const;
  Arc rotated(double dt) const { return Arc(start + dt, length); }
};

/// [k 2^-n, (k+1) 2^-n). Exact: tree code never touches the real-valued ends.
struct DyadicArc {
  int depth = 0;
  std::uint64_t index = 0;

  static constexpr int kMaxDepth = 62;

  DyadicArc() = default;
  DyadicArc(int depth, std::uint64_t index);

  std::uint64_t count_at_depth() const { return std::uint64_t{1} << depth; }
  double length() const;
  double start() const;
  Arc arc() const { return Arc(start(), length()); }

  DyadicArc left() const { return DyadicArc(depth + 1, 2 * index); }
  DyadicArc right() const { return DyadicArc(depth + 1, 2 * index + 1); }
  DyadicArc parent() const;
  DyadicArc ancestor(int at_depth) const;
  /// Neighbour at the same depth, cyclically.
  DyadicArc shifted(std::int64_t steps) const;

  /// True when `other` is this arc or one of its descendants.
  bool contains(const DyadicArc& other) const;
  bool disjoint(const DyadicArc& other) const;

  friend bool operator==(const DyadicArc&, const DyadicArc&) = default;
  friend auto operator<=>(const DyadicArc& a, const DyadicArc& b) {
    // Order by left endpoint, then by depth (parents first).
    const int d = a.depth > b.depth ? a.depth : b.depth;
    const auto sa = a.index << (d - a.depth);
    const auto sb = b.index << (d - b.depth);
    if (sa != sb) return sa <=> sb;
    return a.depth <=> b.depth;
  }
};

/// Q(I) = {z : 1 - |z| <= |I|, z/|z| ∈ I}.
struct CarlesonBox {
  Arc base;

  CarlesonBox() = default;
  explicit CarlesonBox(Arc arc) : base(arc) {}

  double side() const { return base.length; }
  /// Normalized area |I|^2 (2 - |I|).
  double area() const;
  Complex anchor() const { return base.anchor(); }
  bool contains(Complex z) const;
  bool contains_closed(Complex z) const;
  /// T(Q) = {z ∈ Q : 1 - |z| >= l(Q)/2}.
  bool in_top_half(Complex z) const;
};

// Hyperbolic geometry ---------------------------------------------------

void require_interior(Complex z, const char* what);

/// ρ(z, w) = |(z - w) / (1 - conj(w) z)|.
double pseudo_hyperbolic(Complex z, Complex w);

/// d_h(z, w) = ½ log((1 + ρ²) / (1 - ρ²)).
///
/// This is the normalization used for every reported distance. It is a
/// monotone function of ρ but it is not a metric: the triangle inequality
/// fails for nearby points. Anything that needs a genuine metric (mesh
/// sizes, Lipschitz certificates, ball obstacles) uses geodesic_distance.
double hyperbolic_distance(Complex z, Complex w);
double hyperbolic_distance_from_pseudo(double rho);

/// Geodesic distance artanh ρ of the metric |dz| / (1 - |z|²).
double geodesic_distance(Complex z, Complex w);
double geodesic_from_pseudo(double rho);
double pseudo_from_geodesic(double d);

/// Distance between two values in [0, 1) viewed as points of the disc.
double geodesic_distance_real(double a, double b);

/// τ_a(w) = (a - w) / (1 - conj(a) w); an involution swapping a and 0.
Complex automorphism(Complex a, Complex w);

/// P_z(ξ) = (1 - |z|²) / |ξ - z|² for ξ = exp(2πi t).
double poisson_kernel(Complex z, double turns);

/// I(z): arc centered at z/|z| of length 1 - |z|.
Arc arc_of_point(Complex z);
Complex anchor_point(const Arc& arc);

// Closed-form integrals over arcs ----------------------------------------

/// Continuous antiderivative of t ↦ P_z(exp(2πi t)), with C(t + 1) = C(t) + 1.
double poisson_cumulative(Complex z, double t);

/// ∫_arc P_z dm, i.e. the harmonic measure ω(z, arc).
double poisson_arc_integral(Complex z, const Arc& arc);

/// ∫_arc (ξ + z) / (ξ - z) dm(ξ).
Complex herglotz_arc_integral(Complex z, const Arc& arc);

/// ∫_arc 2ξ / (ξ - z)² dm(ξ), the z-derivative of herglotz_arc_integral.
Complex herglotz_arc_derivative(Complex z, const Arc& arc);

}  // namespace contractive
