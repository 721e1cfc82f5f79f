#include "lcugf/error.hpp"
#include "lcugf/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace lcugf::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa detect_default() {
  if (const char* env = std::getenv("LCUGF_KERNELS")) {
    const std::string want(env);
    if (want == "scalar") return Isa::scalar;
    if (want == "avx2" && cpu_has_avx2()) return Isa::avx2;
  }
  return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect_default()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  return isa == Isa::scalar || cpu_has_avx2();
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
  if (!isa_available(isa)) {
    throw ValidationError("kernel ISA '" + std::string(isa_name(isa)) +
                          "' is not supported on this CPU");
  }
  current().store(isa, std::memory_order_relaxed);
}

void phase_sum(std::span<const double> coeffs, double step,
               std::span<const double> x, std::span<Complex> out) {
  if (out.size() != x.size()) {
    throw ValidationError("phase_sum: output size does not match input size");
  }
  if (active_isa() == Isa::avx2) {
    avx2::phase_sum(coeffs, step, x, out);
  } else {
    scalar::phase_sum(coeffs, step, x, out);
  }
}

Complex dotc(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) {
    throw ValidationError("dotc: operand sizes differ");
  }
  return active_isa() == Isa::avx2 ? avx2::dotc(a, b) : scalar::dotc(a, b);
}

}  // namespace lcugf::kernels
