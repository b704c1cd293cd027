#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "contractive/disc.hpp"
#include "contractive/measure.hpp"
#include "contractive/trig_poly.hpp"

namespace contractive {

class RingEvaluator;

/// Value, derivative and 1 - |f|² at a point. The defect is carried
/// separately because 1 - |f|² loses all precision when formed from f.
struct Jet {
  Complex value;
  Complex derivative;
  double defect = 1.0;
};

/// Analytic self-map of the disc built from closed-form pieces.
class SelfMap {
 public:
  enum class Kind { Blaschke, SingularAtoms, Outer, Herglotz, ScaledRotation, Product, Compose };

  struct BlaschkeData {
    std::vector<Complex> zeros;
    double constant_turns = 0.0;  ///< unimodular constant exp(2πi·constant_turns)
  };
  struct SingularData {
    std::vector<Atom> atoms;  ///< exp(-Σ c_j (ξ_j + z)/(ξ_j - z))
  };
  struct OuterData {
    TrigPoly log_modulus;     ///< log|f| on the circle, ≤ 0
    double phase_turns = 0.0;
  };
  struct HerglotzData {
    BoundaryMeasure measure;
    double alpha_turns = 0.0;
    double imaginary_constant = 0.0;
    std::shared_ptr<const RingEvaluator> ring;
  };
  struct ScaledRotationData {
    double r = 1.0;
    double theta_turns = 0.0;
  };
  struct ProductData {
    std::vector<std::shared_ptr<const SelfMap>> factors;
  };
  struct ComposeData {
    std::shared_ptr<const SelfMap> outer;
    std::shared_ptr<const SelfMap> inner;
  };

  static SelfMap blaschke(std::vector<Complex> zeros, double constant_turns = 0.0);
  static SelfMap singular(std::vector<Atom> atoms);
  static SelfMap outer(TrigPoly log_modulus, double phase_turns = 0.0);
  static SelfMap herglotz(BoundaryMeasure measure, double alpha_turns, double imaginary_constant);
  static SelfMap scaled_rotation(double r, double theta_turns);
  static SelfMap product(std::vector<SelfMap> factors);
  static SelfMap compose(SelfMap outer, SelfMap inner);

  static SelfMap identity() { return scaled_rotation(1.0, 0.0); }
  /// The constant map c with |c| < 1.
  static SelfMap constant(Complex c);
  /// exp(2πiθ) τ_a.
  static SelfMap mobius(Complex a, double theta_turns = 0.0);

  Kind kind() const;
  const BlaschkeData& as_blaschke() const { return std::get<BlaschkeData>(data_); }
  const SingularData& as_singular() const { return std::get<SingularData>(data_); }
  const OuterData& as_outer() const { return std::get<OuterData>(data_); }
  const HerglotzData& as_herglotz() const { return std::get<HerglotzData>(data_); }
  const ScaledRotationData& as_scaled_rotation() const { return std::get<ScaledRotationData>(data_); }
  const ProductData& as_product() const { return std::get<ProductData>(data_); }
  const ComposeData& as_compose() const { return std::get<ComposeData>(data_); }

  /// Closed disc for pieces whose formulas extend to the circle; measures
  /// with a tree or density part need |z| < 1.
  Jet jet(Complex z) const;
  Complex operator()(Complex z) const { return jet(z).value; }

  /// Values on the ring z_j = r exp(2πi(phase + j/n)); Herglotz pieces use
  /// the FFT ring evaluator.
  std::vector<Jet> ring(double r, double phase, std::size_t n) const;

  /// Möbius maps of the disc onto itself (degree-1 inner).
  bool is_automorphism() const;
  /// Finite Blaschke products in any of their representations.
  bool is_rational_inner() const;
  /// Degree as a rational inner function (0 when not rational inner).
  int inner_degree() const;

  std::string describe() const;

 private:
  using Data = std::variant<BlaschkeData, SingularData, OuterData, HerglotzData, ScaledRotationData,
                            ProductData, ComposeData>;
  explicit SelfMap(Data d) : data_(std::move(d)) {}
  Data data_;
};

struct HyperbolicDerivativeValue {
  double value = 0.0;
  Complex at;
};

Complex evaluate(const SelfMap& f, Complex z);
Complex derivative(const SelfMap& f, Complex z);

/// D_h(f)(z) = (1 - |z|²)|f'(z)| / (1 - |f(z)|²).
HyperbolicDerivativeValue hyperbolic_derivative(const SelfMap& f, Complex z);
double hyperbolic_derivative(const Jet& j, Complex z);

/// f = α (H - 1)/(H + 1) with H = ∫ (ξ + z)/(ξ - z) dσ + iC.
SelfMap map_from_clark_measure(const BoundaryMeasure& sigma, double alpha_turns, double imaginary_constant);

}  // namespace contractive
