#include "lcugf/error.hpp"
#include "lcugf/kernels.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

namespace k = lcugf::kernels;
using Complex = std::complex<double>;

namespace {

std::vector<Complex> direct_phase_sum(const std::vector<double>& c, double step,
                                      const std::vector<double>& x) {
  std::vector<Complex> out(x.size());
  for (std::size_t l = 0; l < x.size(); ++l) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) {
      const double phase = -static_cast<double>(j) * step * x[l];
      s += c[j] * Complex(std::cos(phase), std::sin(phase));
    }
    out[l] = s;
  }
  return out;
}

struct Case {
  std::vector<double> coeffs;
  std::vector<double> x;
  double step;
};

Case make_case(std::size_t terms, std::size_t points, double step, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Case c{std::vector<double>(terms), std::vector<double>(points), step};
  for (auto& v : c.coeffs) v = std::exp(-std::abs(u(rng)));
  for (auto& v : c.x) v = 1.5 * u(rng);
  return c;
}

double l1(const std::vector<double>& c) {
  double s = 0.0;
  for (double v : c) s += std::abs(v);
  return s;
}

}  // namespace

TEST(PhaseSum, ScalarMatchesDirectTrigonometry) {
  for (std::size_t terms : {1u, 5u, 31u, 32u, 33u, 700u, 2398u}) {
    for (std::size_t points : {0u, 1u, 3u, 4u, 7u, 65u}) {
      const Case c = make_case(terms, points, 0.37, terms * 131 + points);
      std::vector<Complex> out(points);
      k::scalar::phase_sum(c.coeffs, c.step, c.x, out);
      const auto ref = direct_phase_sum(c.coeffs, c.step, c.x);
      for (std::size_t l = 0; l < points; ++l) {
        EXPECT_NEAR(std::abs(out[l] - ref[l]), 0.0, 1e-12 * l1(c.coeffs))
            << "terms=" << terms << " point=" << l;
      }
    }
  }
}

TEST(PhaseSum, Avx2MatchesScalar) {
  if (!k::isa_available(k::Isa::avx2)) GTEST_SKIP() << "AVX2/FMA not available";
  for (std::size_t terms : {1u, 2u, 31u, 32u, 97u, 2398u}) {
    for (std::size_t points : {0u, 1u, 3u, 4u, 5u, 8u, 127u}) {
      const Case c = make_case(terms, points, 0.0251, terms + 7 * points);
      std::vector<Complex> a(points), b(points);
      k::scalar::phase_sum(c.coeffs, c.step, c.x, a);
      k::avx2::phase_sum(c.coeffs, c.step, c.x, b);
      for (std::size_t l = 0; l < points; ++l) {
        EXPECT_NEAR(std::abs(a[l] - b[l]), 0.0, 1e-13 * l1(c.coeffs));
      }
    }
  }
}

TEST(PhaseSum, LargePhasesStayAccurate) {
  // Phases up to ~1e3 rad: the periodic re-anchoring keeps the drift bounded.
  const Case c = make_case(4000, 9, 0.5, 3);
  std::vector<Complex> out(c.x.size());
  k::phase_sum(c.coeffs, c.step, c.x, out);
  const auto ref = direct_phase_sum(c.coeffs, c.step, c.x);
  for (std::size_t l = 0; l < out.size(); ++l) {
    EXPECT_NEAR(std::abs(out[l] - ref[l]), 0.0, 1e-11 * l1(c.coeffs));
  }
}

TEST(PhaseSum, RejectsSizeMismatch) {
  std::vector<double> c{1.0}, x{0.0, 1.0};
  std::vector<Complex> out(1);
  EXPECT_THROW(k::phase_sum(c, 1.0, x, out), lcugf::ValidationError);
}

TEST(Dotc, MatchesConjugateSumForAllIsas) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 17u, 1024u}) {
    std::vector<Complex> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = {g(rng), g(rng)};
      b[i] = {g(rng), g(rng)};
    }
    Complex ref = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      ref += std::conj(a[i]) * b[i];
      scale += std::abs(a[i]) * std::abs(b[i]);
    }
    EXPECT_NEAR(std::abs(k::scalar::dotc(a, b) - ref), 0.0, 1e-14 * (scale + 1));
    if (k::isa_available(k::Isa::avx2)) {
      EXPECT_NEAR(std::abs(k::avx2::dotc(a, b) - ref), 0.0, 1e-14 * (scale + 1));
    }
  }
}

TEST(Dispatch, ForcedIsaIsReportedAndUsed) {
  const k::Isa original = k::active_isa();
  k::force_isa(k::Isa::scalar);
  EXPECT_EQ(k::active_isa(), k::Isa::scalar);
  EXPECT_EQ(k::isa_name(k::Isa::scalar), "scalar");
  const Case c = make_case(50, 6, 0.1, 5);
  std::vector<Complex> a(6), b(6);
  k::phase_sum(c.coeffs, c.step, c.x, a);
  k::scalar::phase_sum(c.coeffs, c.step, c.x, b);
  EXPECT_EQ(a, b);
  k::force_isa(original);
}
