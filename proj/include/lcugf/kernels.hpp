#pragma once

// Data-parallel inner loops shared by the LCU filters and the spectral sums.
//
// Every kernel has a portable scalar reference implementation and an AVX2/FMA
// variant. The public entry points dispatch at runtime on the detected CPU;
// the variants are also exported individually so tests can compare them.
// This header must stay free of Eigen so the AVX2 translation unit does not
// instantiate inline library code with wider instruction sets.

#include <complex>
#include <span>
#include <string_view>

namespace lcugf::kernels {

using Complex = std::complex<double>;

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);
bool isa_available(Isa isa);

/// ISA used by the dispatching entry points. Defaults to the best available
/// one; the LCUGF_KERNELS environment variable ("scalar" or "avx2") overrides.
Isa active_isa();

/// Pins the dispatch target. Throws ValidationError if `isa` is unavailable.
void force_isa(Isa isa);

/// Number of terms between exact re-anchoring of the phase recurrence.
inline constexpr std::size_t kAnchorStride = 32;

// out[l] = sum_{k=0}^{K-1} coeffs[k] * exp(-i * k * step * x[l])
//
// The phase is advanced by complex multiplication and re-anchored with an
// exact sin/cos every kAnchorStride terms, so the rounding drift stays at a
// few tens of ulps independent of K.
void phase_sum(std::span<const double> coeffs, double step,
               std::span<const double> x, std::span<Complex> out);

// sum_l conj(a[l]) * b[l]
Complex dotc(std::span<const Complex> a, std::span<const Complex> b);

namespace scalar {
void phase_sum(std::span<const double> coeffs, double step,
               std::span<const double> x, std::span<Complex> out);
Complex dotc(std::span<const Complex> a, std::span<const Complex> b);
}  // namespace scalar

namespace avx2 {
void phase_sum(std::span<const double> coeffs, double step,
               std::span<const double> x, std::span<Complex> out);
Complex dotc(std::span<const Complex> a, std::span<const Complex> b);
}  // namespace avx2

}  // namespace lcugf::kernels
