#include "lcugf/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace lcugf::kernels::scalar {

void phase_sum(std::span<const double> coeffs, double step,
               std::span<const double> x, std::span<Complex> out) {
  const std::size_t terms = coeffs.size();
  for (std::size_t l = 0; l < x.size(); ++l) {
    const double theta = step * x[l];
    const double w_re = std::cos(theta);
    const double w_im = -std::sin(theta);
    double acc_re = 0.0;
    double acc_im = 0.0;
    for (std::size_t k0 = 0; k0 < terms; k0 += kAnchorStride) {
      const double anchor = static_cast<double>(k0) * theta;
      double p_re = std::cos(anchor);
      double p_im = -std::sin(anchor);
      const std::size_t k1 = std::min(terms, k0 + kAnchorStride);
      for (std::size_t k = k0; k < k1; ++k) {
        acc_re += coeffs[k] * p_re;
        acc_im += coeffs[k] * p_im;
        const double next_re = p_re * w_re - p_im * w_im;
        p_im = p_re * w_im + p_im * w_re;
        p_re = next_re;
      }
    }
    out[l] = Complex(acc_re, acc_im);
  }
}

Complex dotc(std::span<const Complex> a, std::span<const Complex> b) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

}  // namespace lcugf::kernels::scalar
