#pragma once

#include <vector>

#include "contractive/measure.hpp"
#include "contractive/selfmap.hpp"
#include "contractive/trig_poly.hpp"

namespace contractive {

/// Continuous lift of arg f(exp(2πit)) in turns for a finite Blaschke
/// product in any representation (zeros, unit rotation, atomic Herglotz
/// data, products). Strictly increasing with total increase = degree.
class BoundaryPhase {
 public:
  explicit BoundaryPhase(const SelfMap& f);

  int degree() const { return degree_; }
  double phase(double t) const;
  /// Φ'(t) = |f'(ξ)|.
  double derivative(double t) const;
  /// All t in [0, 1) with arg f(exp(2πit)) ≡ target (mod 1), sorted.
  std::vector<double> solve(double target_turns) const;

 private:
  struct Factor {
    Complex zero;
    double phase0 = 0.0;
  };
  struct AtomicPart {
    std::vector<Atom> atoms;  // sorted by position
    double alpha = 0.0;
    double c = 0.0;
  };

  void absorb(const SelfMap& f);
  double phase_and_derivative(double t, double* d) const;
  double solve_in(double y, double lo, double hi) const;

  double constant_ = 0.0;
  std::vector<Factor> factors_;
  std::vector<AtomicPart> atomic_;
  int degree_ = 0;
};

struct ClarkAtom {
  double t = 0.0;
  double mass = 0.0;
  double residual = 0.0;  ///< |f(ξ) - α|
};

struct ClarkSpectrum {
  double alpha_turns = 0.0;
  std::vector<ClarkAtom> atoms;
  double imaginary_constant = 0.0;  ///< Im[(α + f(0))/(α - f(0))]

  double total_mass() const;
  BoundaryMeasure measure() const;
};

/// The Clark measure σ_α of a finite Blaschke product: atoms at the n
/// solutions of f(ξ) = α with masses 1/|f'(ξ)|.
ClarkSpectrum clark_blaschke(const SelfMap& f, double alpha_turns);

/// u_α(z) = (1 - |f(z)|²)/|α - f(z)|², the Poisson integral of σ_α.
double clark_poisson(const SelfMap& f, double alpha_turns, Complex z);

struct ClarkDensity {
  double alpha_turns = 0.0;
  double r = 0.0;
  std::vector<double> t;
  std::vector<double> density;  ///< Re[(α + f(rξ))/(α - f(rξ))]

  /// Integral of the piecewise-linear interpolant over the arc.
  double arc_mass(const Arc& arc) const;
};

ClarkDensity clark_radial(const SelfMap& f, double alpha_turns, double r, std::size_t mesh);

struct DisintegrationResult {
  double lebesgue_integral = 0.0;
  double averaged_integral = 0.0;
  double defect = 0.0;
};

/// |∫G dm - ∫(∫G dσ_α) dm(α)| with the outer integral a trapezoid over M values of α.
DisintegrationResult disintegration_check(const SelfMap& f, const TrigPoly& g, std::size_t mesh_alpha);

/// Atoms at the midpoints of the depth-d dyadic arcs carrying their σ-mass;
/// existing atoms are kept. The result is the Clark measure of a finite
/// Blaschke product through map_from_clark_measure.
BoundaryMeasure inner_approximation(const BoundaryMeasure& sigma, int depth);

struct BlaschkeConversion {
  SelfMap map;
  double max_residual = 0.0;  ///< sup over probe points of |f_zeros - f_atoms|
  int iterations = 0;
};

/// Zeros of α(H - 1)/(H + 1) for a purely atomic H, by Aberth iteration.
BlaschkeConversion blaschke_from_atomic(const SelfMap& atomic_herglotz);

}  // namespace contractive
