#include "contractive/trig_poly.hpp"

#include <algorithm>
#include <cmath>

#include "contractive/errors.hpp"

namespace contractive {

TrigPoly::TrigPoly(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs)
    : a_(std::move(cos_coeffs)), b_(std::move(sin_coeffs)) {
  const std::size_t n = std::max({a_.size(), b_.size(), std::size_t{1}});
  a_.resize(n, 0.0);
  b_.resize(n, 0.0);
  b_[0] = 0.0;
  for (double v : a_)
    if (!std::isfinite(v)) throw ArgumentError("trigonometric coefficient is not finite");
  for (double v : b_)
    if (!std::isfinite(v)) throw ArgumentError("trigonometric coefficient is not finite");
  while (a_.size() > 1 && a_.back() == 0.0 && b_.back() == 0.0) {
    a_.pop_back();
    b_.pop_back();
  }
}

double TrigPoly::operator()(double t) const {
  if (a_.empty()) return 0.0;
  double s = a_[0];
  for (std::size_t k = 1; k < a_.size(); ++k) {
    const double x = kTwoPi * static_cast<double>(k) * wrap_turns(t);
    s += a_[k] * std::cos(x) + b_[k] * std::sin(x);
  }
  return s;
}

bool TrigPoly::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](double v) { return v == 0.0; }) &&
         std::all_of(b_.begin(), b_.end(), [](double v) { return v == 0.0; });
}

double TrigPoly::integral(const Arc& arc) const {
  if (a_.empty()) return 0.0;
  if (arc.length >= 1.0) return a_[0];
  const double s0 = arc.start;
  const double s1 = arc.start + arc.length;
  double v = a_[0] * arc.length;
  for (std::size_t k = 1; k < a_.size(); ++k) {
    const double w = kTwoPi * static_cast<double>(k);
    v += a_[k] * (std::sin(w * s1) - std::sin(w * s0)) / w;
    v -= b_[k] * (std::cos(w * s1) - std::cos(w * s0)) / w;
  }
  return v;
}

double TrigPoly::lipschitz_bound() const {
  double l = 0.0;
  for (std::size_t k = 1; k < a_.size(); ++k)
    l += kTwoPi * static_cast<double>(k) * (std::abs(a_[k]) + std::abs(b_[k]));
  return l;
}

double TrigPoly::min_lower_bound() const {
  const std::size_t n = std::max<std::size_t>(256, 64 * a_.size());
  double m = (*this)(0.0);
  for (std::size_t j = 1; j < n; ++j) m = std::min(m, (*this)(static_cast<double>(j) / n));
  return m - lipschitz_bound() * 0.5 / static_cast<double>(n);
}

double TrigPoly::max_upper_bound() const {
  const std::size_t n = std::max<std::size_t>(256, 64 * a_.size());
  double m = (*this)(0.0);
  for (std::size_t j = 1; j < n; ++j) m = std::max(m, (*this)(static_cast<double>(j) / n));
  return m + lipschitz_bound() * 0.5 / static_cast<double>(n);
}

Complex TrigPoly::herglotz(Complex z) const {
  if (a_.empty()) return {};
  // Horner in z over the coefficients (a_k - i b_k).
  Complex acc{};
  for (std::size_t k = a_.size() - 1; k >= 1; --k) acc = acc * z + Complex{a_[k], -b_[k]};
  return a_[0] + acc * z;
}

Complex TrigPoly::herglotz_derivative(Complex z) const {
  if (a_.size() < 2) return {};
  Complex acc{};
  for (std::size_t k = a_.size() - 1; k >= 1; --k)
    acc = acc * z + static_cast<double>(k) * Complex{a_[k], -b_[k]};
  return acc;
}

TrigPoly TrigPoly::scaled(double c) const {
  TrigPoly r = *this;
  for (double& v : r.a_) v *= c;
  for (double& v : r.b_) v *= c;
  return r;
}

TrigPoly TrigPoly::rotated(double dt) const {
  // cos(w(t - d)) = cos(wt)cos(wd) + sin(wt)sin(wd); sin(w(t - d)) = sin(wt)cos(wd) - cos(wt)sin(wd).
  TrigPoly r = *this;
  for (std::size_t k = 1; k < a_.size(); ++k) {
    const double w = kTwoPi * static_cast<double>(k) * dt;
    const double c = std::cos(w), s = std::sin(w);
    r.a_[k] = a_[k] * c - b_[k] * s;
    r.b_[k] = a_[k] * s + b_[k] * c;
  }
  return r;
}

TrigPoly TrigPoly::operator+(const TrigPoly& other) const {
  const std::size_t n = std::max(a_.size(), other.a_.size());
  std::vector<double> a(n, 0.0), b(n, 0.0);
  for (std::size_t k = 0; k < a_.size(); ++k) a[k] += a_[k], b[k] += b_[k];
  for (std::size_t k = 0; k < other.a_.size(); ++k) a[k] += other.a_[k], b[k] += other.b_[k];
  return TrigPoly(std::move(a), std::move(b));
}

}  // namespace contractive
