#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "contractive/measure.hpp"

namespace contractive {

/// Evaluates the Herglotz integral of a measure on equispaced rings
/// z_j = r exp(2πi(phase + j/n)) through its Fourier series, folded into n
/// bins and summed with one FFT. Atoms are added pointwise.
class RingEvaluator {
 public:
  explicit RingEvaluator(const BoundaryMeasure& sigma);

  struct Values {
    std::vector<Complex> h;   ///< H(z_j)
    std::vector<Complex> dh;  ///< H'(z_j), empty unless requested
  };

  Values herglotz(double r, double phase, std::size_t n, bool with_derivative) const;
  std::vector<double> poisson(double r, double phase, std::size_t n) const;

  /// Number of series terms used at radius r.
  static std::size_t series_length(double r);

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

/// Backward DFT: out[j] = Σ_k in[k] exp(+2πi jk/n).
void inverse_dft(std::vector<Complex>& a);
/// Forward DFT: out[k] = Σ_j in[j] exp(-2πi jk/n).
void forward_dft(std::vector<Complex>& a);

}  // namespace contractive
