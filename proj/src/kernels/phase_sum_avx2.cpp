// Compiled with -mavx2 -mfma. Never call these directly without checking
// isa_available(Isa::avx2); use the dispatching entry points instead.
#include "lcugf/kernels.hpp"

#include <immintrin.h>

#include <cmath>

namespace lcugf::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

void phase_sum(std::span<const double> coeffs, double step,
               std::span<const double> x, std::span<Complex> out) {
  constexpr std::size_t kLanes = 4;
  const std::size_t terms = coeffs.size();
  const std::size_t full = x.size() - x.size() % kLanes;

  alignas(32) double theta[kLanes];
  alignas(32) double buf_re[kLanes];
  alignas(32) double buf_im[kLanes];

  for (std::size_t l = 0; l < full; l += kLanes) {
    for (std::size_t j = 0; j < kLanes; ++j) {
      theta[j] = step * x[l + j];
      buf_re[j] = std::cos(theta[j]);
      buf_im[j] = -std::sin(theta[j]);
    }
    const __m256d w_re = _mm256_load_pd(buf_re);
    const __m256d w_im = _mm256_load_pd(buf_im);
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();

    for (std::size_t k0 = 0; k0 < terms; k0 += kAnchorStride) {
      const double kk = static_cast<double>(k0);
      for (std::size_t j = 0; j < kLanes; ++j) {
        const double anchor = kk * theta[j];
        buf_re[j] = std::cos(anchor);
        buf_im[j] = -std::sin(anchor);
      }
      __m256d p_re = _mm256_load_pd(buf_re);
      __m256d p_im = _mm256_load_pd(buf_im);
      const std::size_t k1 =
          k0 + kAnchorStride < terms ? k0 + kAnchorStride : terms;
      for (std::size_t k = k0; k < k1; ++k) {
        const __m256d c = _mm256_set1_pd(coeffs[k]);
        acc_re = _mm256_fmadd_pd(c, p_re, acc_re);
        acc_im = _mm256_fmadd_pd(c, p_im, acc_im);
        const __m256d next_re =
            _mm256_fmsub_pd(p_re, w_re, _mm256_mul_pd(p_im, w_im));
        p_im = _mm256_fmadd_pd(p_re, w_im, _mm256_mul_pd(p_im, w_re));
        p_re = next_re;
      }
    }
    _mm256_store_pd(buf_re, acc_re);
    _mm256_store_pd(buf_im, acc_im);
    for (std::size_t j = 0; j < kLanes; ++j) {
      out[l + j] = Complex(buf_re[j], buf_im[j]);
    }
  }
  if (full < x.size()) {
    scalar::phase_sum(coeffs, step, x.subspan(full), out.subspan(full));
  }
}

Complex dotc(std::span<const Complex> a, std::span<const Complex> b) {
  // Two interleaved complex numbers per register: [re0, im0, re1, im1].
  const std::size_t n = a.size();
  const std::size_t pairs = n / 2;
  const auto* pa = reinterpret_cast<const double*>(a.data());
  const auto* pb = reinterpret_cast<const double*>(b.data());
  __m256d acc_direct = _mm256_setzero_pd();   // ar*br, ai*bi
  __m256d acc_swapped = _mm256_setzero_pd();  // ar*bi, ai*br
  for (std::size_t i = 0; i < pairs; ++i) {
    const __m256d va = _mm256_loadu_pd(pa + 4 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 4 * i);
    const __m256d vb_swapped = _mm256_permute_pd(vb, 0b0101);
    acc_direct = _mm256_fmadd_pd(va, vb, acc_direct);
    acc_swapped = _mm256_fmadd_pd(va, vb_swapped, acc_swapped);
  }
  alignas(32) double s[4];
  _mm256_store_pd(s, acc_swapped);
  double re = hsum(acc_direct);
  double im = (s[0] - s[1]) + (s[2] - s[3]);
  if (n % 2 != 0) {
    const double ar = pa[2 * (n - 1)], ai = pa[2 * (n - 1) + 1];
    const double br = pb[2 * (n - 1)], bi = pb[2 * (n - 1) + 1];
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

}  // namespace lcugf::kernels::avx2
