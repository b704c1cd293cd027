#include "contractive/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

#include "contractive/errors.hpp"

namespace contractive {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void run_dft(std::vector<Complex>& a, int sign) {
  if (a.size() <= 1) return;
  auto* p = reinterpret_cast<fftw_complex*>(a.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(a.size()), p, p, sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(plan);
}

}  // namespace

void inverse_dft(std::vector<Complex>& a) { run_dft(a, FFTW_BACKWARD); }
void forward_dft(std::vector<Complex>& a) { run_dft(a, FFTW_FORWARD); }

struct RingEvaluator::Data {
  double c0 = 0.0;
  // Tree part: c_m = tree_weight[m mod 2^M] / m for m ≥ 1.
  std::vector<Complex> tree_weight;
  // Density part: c_m for 1 ≤ m < size.
  std::vector<Complex> density;
  std::vector<Atom> atoms;
};

RingEvaluator::RingEvaluator(const BoundaryMeasure& sigma) {
  auto d = std::make_shared<Data>();
  d->c0 = sigma.tree().total() + (sigma.density() ? sigma.density()->mean() : 0.0);
  d->atoms = sigma.atoms();
  if (sigma.has_tree()) {
    std::vector<Complex> f(sigma.tree().leaves().begin(), sigma.tree().leaves().end());
    forward_dft(f);
    const std::size_t n = f.size();
    const double len = 1.0 / static_cast<double>(n);
    d->tree_weight.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      // 2 (1 - e^{-2πikL}) / (2πiL), the leaf-average factor without its 1/m.
      const double x = kTwoPi * static_cast<double>(k) * len;
      const Complex e = Complex{1.0 - std::cos(x), std::sin(x)};
      d->tree_weight[k] = 2.0 * f[k] * e / Complex{0.0, kTwoPi * len};
    }
  }
  if (sigma.density()) {
    const auto& a = sigma.density()->cos_coeffs();
    const auto& b = sigma.density()->sin_coeffs();
    d->density.resize(a.size());
    for (std::size_t k = 1; k < a.size(); ++k) d->density[k] = Complex{a[k], -b[k]};
  }
  data_ = std::move(d);
}

std::size_t RingEvaluator::series_length(double r) {
  if (r <= 0.0) return 1;
  const double lam = -std::log(r);  // r^m = e^{-mλ}
  const double m = (40.0 + std::log1p(1.0 / lam)) / lam;
  if (!(m < 4.0e9)) throw ResolutionError("ring radius too close to the circle for series evaluation");
  return static_cast<std::size_t>(std::ceil(m)) + 2;
}

RingEvaluator::Values RingEvaluator::herglotz(double r, double phase, std::size_t n,
                                              bool with_derivative) const {
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("ring radius must lie in [0, 1)");
  if (n == 0) throw ArgumentError("ring needs at least one node");
  const Data& d = *data_;
  Values out;
  out.h.assign(n, Complex{});
  if (with_derivative) out.dh.assign(n, Complex{});
  std::vector<Complex>& b = out.h;
  std::vector<Complex>& db = out.dh;

  const bool has_series = !d.tree_weight.empty() || d.density.size() > 1;
  if (has_series && r > 0.0) {
    const std::size_t mmax = std::max(series_length(r), d.density.size());
    const std::size_t tree_n = d.tree_weight.size();
    const long double ph = static_cast<long double>(wrap_turns(phase));
    const Complex zeta = std::polar(r, kTwoPi * wrap_turns(phase));
    Complex pw{1.0, 0.0};
    std::size_t q = 0;
    for (std::size_t m = 1; m <= mmax; ++m) {
      if ((m & 1023u) == 0) {
        const long double turns = std::fmod(static_cast<long double>(m) * ph, 1.0L);
        pw = std::polar(std::pow(r, static_cast<double>(m)), kTwoPi * static_cast<double>(turns));
      } else {
        pw *= zeta;
      }
      if (++q == n) q = 0;
      Complex c{};
      if (tree_n) c += d.tree_weight[m & (tree_n - 1)] / static_cast<double>(m);
      if (m < d.density.size()) c += d.density[m];
      const Complex term = c * pw;
      b[q] += term;
      if (with_derivative) db[q] += static_cast<double>(m) * term;
    }
    inverse_dft(b);
    if (with_derivative) inverse_dft(db);
  }
  for (std::size_t j = 0; j < n; ++j) {
    const Complex z = std::polar(r, kTwoPi * (wrap_turns(phase) + static_cast<double>(j) / n));
    b[j] += d.c0;
    if (with_derivative) {
      if (r > 0.0) {
        db[j] /= z;
      } else {
        Complex c1{};
        if (!d.tree_weight.empty()) c1 += d.tree_weight[1 & (d.tree_weight.size() - 1)];
        if (d.density.size() > 1) c1 += d.density[1];
        db[j] = c1;
      }
    }
    for (const auto& a : d.atoms) {
      const Complex xi = boundary_point(a.t);
      const Complex den = xi - z;
      b[j] += a.mass * (xi + z) / den;
      if (with_derivative) db[j] += a.mass * 2.0 * xi / (den * den);
    }
  }
  return out;
}

std::vector<double> RingEvaluator::poisson(double r, double phase, std::size_t n) const {
  const auto v = herglotz(r, phase, n, false);
  std::vector<double> u(n);
  for (std::size_t j = 0; j < n; ++j) u[j] = v.h[j].real();
  return u;
}

}  // namespace contractive
