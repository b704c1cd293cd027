#include "contractive/selfmap.hpp"

#include <cmath>
#include <sstream>

#include "contractive/errors.hpp"
#include "contractive/fourier.hpp"

namespace contractive {

namespace {

void require_closed(Complex z, const char* what) {
  if (!(std::norm(z) <= 1.0 + 1e-12))
    throw DomainError(std::string(what) + ": point outside the closed unit disc");
}

// 1 - (1 - a)(1 - b) without cancellation.
double combine_defect(double a, double b) { return a + b - a * b; }

Jet herglotz_to_jet(Complex h, Complex dh, double alpha_turns) {
  const Complex alpha = boundary_point(alpha_turns);
  const Complex hp1 = h + 1.0;
  if (std::abs(hp1) == 0.0) throw SingularityError("Herglotz map: H(z) = -1");
  Jet j;
  j.value = alpha * (h - 1.0) / hp1;
  j.derivative = alpha * 2.0 * dh / (hp1 * hp1);
  j.defect = std::max(0.0, 4.0 * h.real() / std::norm(hp1));
  return j;
}

// Herglotz integral of a purely atomic measure; valid on the closed disc off the atoms.
void atomic_herglotz(const std::vector<Atom>& atoms, Complex z, Complex& h, Complex& dh) {
  for (const auto& a : atoms) {
    const Complex xi = boundary_point(a.t);
    const Complex den = xi - z;
    if (std::abs(den) < 1e-300) throw SingularityError("evaluation at a boundary atom");
    h += a.mass * (xi + z) / den;
    dh += a.mass * 2.0 * xi / (den * den);
  }
}

bool atoms_only(const BoundaryMeasure& m) { return !m.has_tree() && !m.has_density(); }

}  // namespace

SelfMap SelfMap::blaschke(std::vector<Complex> zeros, double constant_turns) {
  if (zeros.empty()) throw ArgumentError("Blaschke product needs at least one zero");
  for (const Complex& a : zeros)
    if (!(std::norm(a) < 1.0) || !std::isfinite(a.real()) || !std::isfinite(a.imag()))
      throw ArgumentError("Blaschke zeros must lie in the open disc");
  return SelfMap(BlaschkeData{std::move(zeros), wrap_turns(constant_turns)});
}

SelfMap SelfMap::singular(std::vector<Atom> atoms) {
  if (atoms.empty()) throw ArgumentError("singular inner factor needs at least one atom");
  for (auto& a : atoms) {
    if (!(a.mass > 0.0) || !std::isfinite(a.mass)) throw ArgumentError("singular weights must be positive");
    a.t = wrap_turns(a.t);
  }
  return SelfMap(SingularData{std::move(atoms)});
}

SelfMap SelfMap::outer(TrigPoly log_modulus, double phase_turns) {
  const std::size_t n = std::max<std::size_t>(1024, 64 * (log_modulus.degree() + 1));
  for (std::size_t j = 0; j < n; ++j)
    if (log_modulus(static_cast<double>(j) / n) > 1e-12)
      throw PreconditionError("outer factor: log-modulus must be nonpositive on the circle");
  return SelfMap(OuterData{std::move(log_modulus), wrap_turns(phase_turns)});
}

SelfMap SelfMap::herglotz(BoundaryMeasure measure, double alpha_turns, double imaginary_constant) {
  if (measure.is_zero()) throw DegenerateError("zero measure gives the unimodular constant alpha");
  if (!std::isfinite(imaginary_constant)) throw ArgumentError("imaginary constant must be finite");
  std::shared_ptr<const RingEvaluator> ring;
  if (!atoms_only(measure)) ring = std::make_shared<RingEvaluator>(measure);
  return SelfMap(HerglotzData{std::move(measure), wrap_turns(alpha_turns), imaginary_constant, std::move(ring)});
}

SelfMap SelfMap::scaled_rotation(double r, double theta_turns) {
  if (!(r >= 0.0 && r <= 1.0)) throw ArgumentError("scaled rotation needs 0 <= r <= 1");
  return SelfMap(ScaledRotationData{r, wrap_turns(theta_turns)});
}

SelfMap SelfMap::product(std::vector<SelfMap> factors) {
  if (factors.empty()) throw ArgumentError("product needs at least one factor");
  ProductData d;
  for (auto& f : factors) d.factors.push_back(std::make_shared<const SelfMap>(std::move(f)));
  return SelfMap(std::move(d));
}

SelfMap SelfMap::compose(SelfMap outer, SelfMap inner) {
  return SelfMap(ComposeData{std::make_shared<const SelfMap>(std::move(outer)),
                             std::make_shared<const SelfMap>(std::move(inner))});
}

SelfMap SelfMap::constant(Complex c) {
  if (!(std::abs(c) < 1.0)) throw ArgumentError("constant self-map needs |c| < 1");
  if (c == Complex{}) return scaled_rotation(0.0, 0.0);
  return outer(TrigPoly::constant(std::log(std::abs(c))), angle_of(c));
}

SelfMap SelfMap::mobius(Complex a, double theta_turns) {
  require_interior(a, "mobius");
  // τ_a = (a/|a|) times the normalized factor (|a|/a)(a - z)/(1 - ā z).
  if (a == Complex{}) return scaled_rotation(1.0, wrap_turns(theta_turns + 0.5));
  return blaschke({a}, theta_turns + angle_of(a));
}

SelfMap::Kind SelfMap::kind() const { return static_cast<Kind>(data_.index()); }

Jet SelfMap::jet(Complex z) const {
  switch (kind()) {
    case Kind::Blaschke: {
      require_closed(z, "blaschke");
      const auto& d = as_blaschke();
      const std::size_t n = d.zeros.size();
      std::vector<Complex> b(n), db(n);
      double defect = 0.0;
      const double qz = 1.0 - std::norm(z);
      for (std::size_t k = 0; k < n; ++k) {
        const Complex a = d.zeros[k];
        if (a == Complex{}) {
          b[k] = z;
          db[k] = 1.0;
          defect = combine_defect(defect, qz);
        } else {
          const Complex u = std::abs(a) / a;
          const Complex den = 1.0 - std::conj(a) * z;
          const double qa = 1.0 - std::norm(a);
          b[k] = u * (a - z) / den;
          db[k] = -u * qa / (den * den);
          defect = combine_defect(defect, qa * qz / std::norm(den));
        }
      }
      // Prefix/suffix products keep the derivative finite at the zeros.
      std::vector<Complex> suffix(n + 1, 1.0);
      for (std::size_t k = n; k-- > 0;) suffix[k] = suffix[k + 1] * b[k];
      Complex prefix = 1.0, deriv{};
      for (std::size_t k = 0; k < n; ++k) {
        deriv += prefix * db[k] * suffix[k + 1];
        prefix *= b[k];
      }
      const Complex lam = boundary_point(d.constant_turns);
      return {lam * prefix, lam * deriv, defect};
    }
    case Kind::SingularAtoms: {
      require_closed(z, "singular");
      Complex s{}, ds{};
      atomic_herglotz(as_singular().atoms, z, s, ds);
      const Complex f = std::exp(-s);
      return {f, -ds * f, -std::expm1(-2.0 * s.real())};
    }
    case Kind::Outer: {
      require_closed(z, "outer");
      const auto& d = as_outer();
      const Complex h = d.log_modulus.herglotz(z);
      const Complex f = std::exp(h) * boundary_point(d.phase_turns);
      return {f, d.log_modulus.herglotz_derivative(z) * f, -std::expm1(2.0 * h.real())};
    }
    case Kind::Herglotz: {
      const auto& d = as_herglotz();
      Complex h{}, dh{};
      if (atoms_only(d.measure)) {
        require_closed(z, "herglotz map");
        atomic_herglotz(d.measure.atoms(), z, h, dh);
      } else {
        h = d.measure.herglotz(z);
        dh = d.measure.herglotz_derivative(z);
      }
      h += Complex{0.0, d.imaginary_constant};
      return herglotz_to_jet(h, dh, d.alpha_turns);
    }
    case Kind::ScaledRotation: {
      require_closed(z, "scaled rotation");
      const auto& d = as_scaled_rotation();
      const Complex c = d.r * boundary_point(d.theta_turns);
      return {c * z, c, 1.0 - d.r * d.r * std::norm(z)};
    }
    case Kind::Product: {
      const auto& fs = as_product().factors;
      std::vector<Jet> js;
      js.reserve(fs.size());
      for (const auto& f : fs) js.push_back(f->jet(z));
      const std::size_t n = js.size();
      std::vector<Complex> suffix(n + 1, 1.0);
      for (std::size_t k = n; k-- > 0;) suffix[k] = suffix[k + 1] * js[k].value;
      Complex prefix = 1.0, deriv{};
      double defect = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        deriv += prefix * js[k].derivative * suffix[k + 1];
        prefix *= js[k].value;
        defect = combine_defect(defect, js[k].defect);
      }
      return {prefix, deriv, defect};
    }
    case Kind::Compose: {
      const auto& d = as_compose();
      const Jet in = d.inner->jet(z);
      const Jet out = d.outer->jet(in.value);
      return {out.value, out.derivative * in.derivative, out.defect};
    }
  }
  throw ArgumentError("unknown self-map kind");
}

std::vector<Jet> SelfMap::ring(double r, double phase, std::size_t n) const {
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("ring radius must lie in [0, 1)");
  std::vector<Jet> out(n);
  if (kind() == Kind::Herglotz && as_herglotz().ring) {
    const auto& d = as_herglotz();
    const auto v = d.ring->herglotz(r, phase, n, true);
    for (std::size_t j = 0; j < n; ++j)
      out[j] = herglotz_to_jet(v.h[j] + Complex{0.0, d.imaginary_constant}, v.dh[j], d.alpha_turns);
    return out;
  }
  if (kind() == Kind::Product) {
    const auto& fs = as_product().factors;
    std::vector<Complex> prefix(n, 1.0), deriv(n);
    std::vector<double> defect(n, 0.0);
    // Running product rule: (P f)' = P' f + P f'.
    for (const auto& f : fs) {
      const auto js = f->ring(r, phase, n);
      for (std::size_t j = 0; j < n; ++j) {
        deriv[j] = deriv[j] * js[j].value + prefix[j] * js[j].derivative;
        prefix[j] *= js[j].value;
        defect[j] = combine_defect(defect[j], js[j].defect);
      }
    }
    for (std::size_t j = 0; j < n; ++j) out[j] = {prefix[j], deriv[j], defect[j]};
    return out;
  }
  if (kind() == Kind::Compose) {
    const auto& d = as_compose();
    const auto in = d.inner->ring(r, phase, n);
    for (std::size_t j = 0; j < n; ++j) {
      const Jet o = d.outer->jet(in[j].value);
      out[j] = {o.value, o.derivative * in[j].derivative, o.defect};
    }
    return out;
  }
  const double ph = wrap_turns(phase);
  for (std::size_t j = 0; j < n; ++j)
    out[j] = jet(std::polar(r, kTwoPi * (ph + static_cast<double>(j) / n)));
  return out;
}

bool SelfMap::is_automorphism() const { return inner_degree() == 1; }

bool SelfMap::is_rational_inner() const { return inner_degree() > 0; }

int SelfMap::inner_degree() const {
  switch (kind()) {
    case Kind::Blaschke:
      return static_cast<int>(as_blaschke().zeros.size());
    case Kind::ScaledRotation:
      return as_scaled_rotation().r == 1.0 ? 1 : 0;
    case Kind::Herglotz: {
      const auto& m = as_herglotz().measure;
      return atoms_only(m) ? static_cast<int>(m.atoms().size()) : 0;
    }
    case Kind::Product: {
      int s = 0;
      for (const auto& f : as_product().factors) {
        const int d = f->inner_degree();
        if (d == 0) return 0;
        s += d;
      }
      return s;
    }
    case Kind::Compose: {
      const int a = as_compose().outer->inner_degree();
      const int b = as_compose().inner->inner_degree();
      return (a > 0 && b > 0) ? a * b : 0;
    }
    default:
      return 0;
  }
}

std::string SelfMap::describe() const {
  std::ostringstream os;
  switch (kind()) {
    case Kind::Blaschke:
      os << "blaschke(degree=" << as_blaschke().zeros.size() << ")";
      break;
    case Kind::SingularAtoms:
      os << "singular(atoms=" << as_singular().atoms.size() << ")";
      break;
    case Kind::Outer:
      os << "outer(degree=" << as_outer().log_modulus.degree() << ")";
      break;
    case Kind::Herglotz: {
      const auto& m = as_herglotz().measure;
      os << "herglotz(atoms=" << m.atoms().size() << ",tree_depth=" << m.tree_depth()
         << ",density=" << (m.has_density() ? "yes" : "no") << ")";
      break;
    }
    case Kind::ScaledRotation:
      os << "scaled_rotation(r=" << as_scaled_rotation().r << ")";
      break;
    case Kind::Product: {
      os << "product(";
      const auto& fs = as_product().factors;
      for (std::size_t k = 0; k < fs.size(); ++k) os << (k ? "," : "") << fs[k]->describe();
      os << ")";
      break;
    }
    case Kind::Compose:
      os << "compose(" << as_compose().outer->describe() << "," << as_compose().inner->describe() << ")";
      break;
  }
  return os.str();
}

Complex evaluate(const SelfMap& f, Complex z) {
  require_interior(z, "evaluate");
  return f.jet(z).value;
}

Complex derivative(const SelfMap& f, Complex z) {
  require_interior(z, "derivative");
  return f.jet(z).derivative;
}

double hyperbolic_derivative(const Jet& j, Complex z) {
  if (!(j.defect > 1e-14)) throw DegenerateError("|f(z)| = 1: hyperbolic derivative undefined");
  return (1.0 - std::norm(z)) * std::abs(j.derivative) / j.defect;
}

HyperbolicDerivativeValue hyperbolic_derivative(const SelfMap& f, Complex z) {
  require_interior(z, "hyperbolic_derivative");
  if (f.is_automorphism()) return {1.0, z};
  return {hyperbolic_derivative(f.jet(z), z), z};
}

SelfMap map_from_clark_measure(const BoundaryMeasure& sigma, double alpha_turns, double imaginary_constant) {
  return SelfMap::herglotz(sigma, alpha_turns, imaginary_constant);
}

}  // namespace contractive
