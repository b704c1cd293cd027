#pragma once

#include <complex>
#include <vector>

#include "contractive/disc.hpp"

namespace contractive {

/// g(t) = a0 + Σ_{k≥1} a_k cos(2πkt) + b_k sin(2πkt), t in turns.
/// cos_coeffs[0] is a0; sin_coeffs[0] is ignored and kept at zero.
class TrigPoly {
 public:
  TrigPoly() = default;
  TrigPoly(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs);

  static TrigPoly constant(double c) { return TrigPoly({c}, {}); }

  int degree() const { return static_cast<int>(a_.size()) - 1; }
  const std::vector<double>& cos_coeffs() const { return a_; }
  const std::vector<double>& sin_coeffs() const { return b_; }

  double operator()(double t) const;
  double mean() const { return a_.empty() ? 0.0 : a_[0]; }
  bool is_zero() const;

  /// ∫_arc g dm, exact.
  double integral(const Arc& arc) const;

  /// A bound valid for every t: max |g'(t)| ≤ Σ 2πk(|a_k| + |b_k|).
  double lipschitz_bound() const;
  /// Certified lower bound of min g over the circle via dense sampling.
  double min_lower_bound() const;
  /// Certified upper bound of max g.
  double max_upper_bound() const;

  /// ∫ (ξ + z)/(ξ - z) g(ξ) dm(ξ) = a0 + Σ (a_k - i b_k) z^k.
  Complex herglotz(Complex z) const;
  Complex herglotz_derivative(Complex z) const;

  TrigPoly scaled(double c) const;
  TrigPoly rotated(double dt) const;  ///< t ↦ g(t - dt)
  TrigPoly operator+(const TrigPoly& other) const;

 private:
  std::vector<double> a_;
  std::vector<double> b_;
};

}  // namespace contractive
