#include "lcugf/error.hpp"
#include "lcugf/lcu_gsp.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace lcugf;

namespace {

// Random normalized Hamiltonian with a prescribed gap above a simple ground state.
NormalizedHamiltonian random_gapped(Eigen::Index n, double gap, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(gap, 1.0);
  RealVector d(n);
  d(0) = 0.0;
  d(1) = gap;
  d(n - 1) = 1.0;
  for (Eigen::Index i = 2; i + 1 < n; ++i) d(i) = u(rng);
  const ComplexMatrix q = lcugf::testing::random_hermitian(n, rng)
                              .householderQr()
                              .householderQ();
  const ComplexMatrix h = q * d.cast<Complex>().asDiagonal() * q.adjoint();
  return normalize_spectrum(HermitianOperator::from_dense((h + h.adjoint()) / 2.0));
}

// Trial state with ground overlap exactly gamma.
StateVector trial_with_overlap(const NormalizedHamiltonian& h, double gamma,
                               std::mt19937_64& rng) {
  ComplexVector c = lcugf::testing::random_vector(h.eig.dim(), rng);
  c(0) = 0.0;
  c *= std::sqrt(1.0 - gamma * gamma) / c.norm();
  c(0) = gamma;
  return StateVector(h.eig.from_eigenbasis(c));
}

Complex direct_hs_sum(const HsSchedule& s, double x) {
  Complex sum = 0.0;
  for (int k = -s.n_z; k <= s.n_z; ++k) {
    const double z = k * s.dz;
    const double a = s.dz / std::sqrt(2.0 * std::numbers::pi) * std::exp(-z * z / 2.0);
    sum += a * std::exp(Complex(0.0, -z * s.t * x));
  }
  return sum;
}

}  // namespace

TEST(HsSchedule, ArithmeticMatchesClosedForm) {
  const auto s = hs_schedule(0.1, 0.5, 0.01);
  EXPECT_NEAR(s.eta, 0.0282842712474619, 1e-15);
  EXPECT_NEAR(s.z_c, 3.1469807041887194, 1e-12);
  EXPECT_NEAR(s.z_c_prime, 3.5729040930898184, 1e-12);
  EXPECT_NEAR(s.t, 29.184230658724307, 1e-10);
  EXPECT_NEAR(s.dz, 0.19181119944660655, 1e-12);
  EXPECT_EQ(s.n_z, 17);
  EXPECT_EQ(s.coefficients.size(), 35u);
  EXPECT_NEAR(s.query_time(), 91.84221074959824, 1e-9);
  const auto simple = hs_schedule(0.1, 0.5, 0.01, StepRule::simple);
  EXPECT_NEAR(simple.dz, 2.0 * std::numbers::pi / (s.z_c + s.t), 1e-14);
  EXPECT_GE(simple.n_z, s.n_z);
}

TEST(HsSchedule, RejectsInvalidTargets) {
  EXPECT_THROW(hs_schedule(0.0, 0.5, 0.01), ValidationError);
  EXPECT_THROW(hs_schedule(1.5, 0.5, 0.01), ValidationError);
  EXPECT_THROW(hs_schedule(0.1, 0.0, 0.01), ValidationError);
  EXPECT_THROW(hs_schedule(0.1, 0.5, 1.0), ValidationError);
  EXPECT_THROW(hs_schedule(0.1, 0.5, 0.01).with_time(-1.0), ValidationError);
}

TEST(HsSchedule, WeightsAreNearlyNormalizedWithSmallTail) {
  for (double gamma : {0.05, 0.3, 1.0}) {
    for (double eps : {1e-4, 1e-2, 0.2}) {
      const auto s = hs_schedule(0.05, gamma, eps);
      EXPECT_GE(s.l1(), 0.9);
      EXPECT_LE(s.l1(), 1.1);
      EXPECT_LE(s.truncation_tail(), std::exp(-s.z_c * s.z_c / 2.0));
      // Poisson summation: the full lattice sum is 1 to many digits
      EXPECT_NEAR(s.l1() + s.truncation_tail(), 1.0, 1e-9);
    }
  }
}

TEST(HsFilter, MatchesDirectSum) {
  for (auto rule : {StepRule::balanced, StepRule::simple}) {
    const auto s = hs_schedule(0.07, 0.4, 0.01, rule);
    std::vector<double> x;
    for (int i = 0; i <= 400; ++i) x.push_back(-1.0 + i / 200.0);
    std::vector<Complex> got(x.size());
    hs_filter(s, x, got);
    for (std::size_t i = 0; i < x.size(); ++i) {
      EXPECT_LE(std::abs(got[i] - direct_hs_sum(s, x[i])), 1e-12) << x[i];
    }
  }
}

TEST(HsFilter, UniformErrorOnUnitInterval) {
  std::vector<double> x;
  for (int i = 0; i <= 4000; ++i) x.push_back(i / 4000.0);
  for (double gap : {0.01, 0.1, 0.5}) {
    for (double gamma : {0.05, 0.5, 1.0}) {
      for (double eps : {1e-3, 0.01, 0.1}) {
        const auto s = hs_schedule(gap, gamma, eps);
        EXPECT_LE(hs_operator_error(s, x), gamma * s.eta)
            << gap << " " << gamma << " " << eps;
      }
    }
  }
}

TEST(GroundStatePreparation, GroundStateInputIsFixedPoint) {
  const auto h = normalize_spectrum(build_hubbard({3, 1.0, 8.0, 0.0}));
  const StateVector g(h.eig.vectors().col(0));
  const auto s = hs_schedule(h.spectral_gap, 1.0, 0.01);
  const auto exact = apply_exact_gaussian(h, s.t, g);
  EXPECT_NEAR(exact.success_weight, 1.0, 1e-12);
  EXPECT_LE(exact.infidelity, 1e-12);
  const auto lcu = apply_hs_lcu(h, s, g);
  EXPECT_LE(lcu.infidelity, 1e-6);
  EXPECT_NEAR(lcu.success_weight, 1.0, s.eta);
}

TEST(GroundStatePreparation, RandomInstancesMeetTargets) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const double gap = 0.02 + 0.2 * (trial % 5);
    const double gamma = 0.1 + 0.2 * (trial % 4);
    const double eps = trial % 2 == 0 ? 0.01 : 1e-3;
    const auto h = random_gapped(12, gap, rng);
    const StateVector psi = trial_with_overlap(h, gamma, rng);
    ASSERT_NEAR(ground_overlap(h, psi), gamma, 1e-12);
    const auto s = hs_schedule(h.spectral_gap, gamma, eps);
    const auto exact = apply_exact_gaussian(h, s.t, psi);
    const auto lcu = apply_hs_lcu(h, s, psi);
    EXPECT_LE(exact.infidelity, eps);
    EXPECT_LE(lcu.infidelity, eps);
    // norm sandwich and normalized-difference bound
    EXPECT_LE(std::abs(lcu.success_weight - exact.success_weight), gamma * s.eta);
    EXPECT_LE(distance(lcu.state, exact.state),
              2.0 * gamma * s.eta / exact.success_weight + 1e-12);
  }
}

TEST(GroundStatePreparation, SuccessWeightSandwich) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const double gamma = 0.15 + 0.04 * trial;
    const double eps = 0.01;
    const auto base = random_gapped(10, 0.05 + 0.02 * trial, rng);
    // place lambda0 inside the allowed offset window
    const ComplexMatrix shifted =
        base.op.dense() + 0.01 * base.spectral_gap * ComplexMatrix::Identity(10, 10);
    const auto h = normalize_spectrum(HermitianOperator::from_dense(shifted),
                                      0.02 * base.spectral_gap);
    const StateVector psi = trial_with_overlap(h, gamma, rng);
    const auto s = hs_schedule(h.spectral_gap, gamma, eps);
    const double w = apply_exact_gaussian(h, s.t, psi).success_weight;
    const double lower = gamma * gaussian_filter(s.t, h.lambda0);
    EXPECT_GE(w, lower * (1.0 - 1e-12));
    EXPECT_LE(w, lower / (1.0 - eps));
  }
}

TEST(GroundStatePreparation, NormalizedDifferenceBound) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> n;
  for (int trial = 0; trial < 1000; ++trial) {
    const Eigen::Index dim = 2 + trial % 9;
    const double spread = std::pow(10.0, -(trial % 5));
    const ComplexVector u = lcugf::testing::random_vector(dim, rng);
    const ComplexVector v = u + spread * lcugf::testing::random_vector(dim, rng);
    const double lhs = (u / u.norm() - v / v.norm()).norm();
    EXPECT_LE(lhs, 2.0 * (u - v).norm() / u.norm() * (1.0 + 1e-12));
    // 1 - |<a|b>| <= |a - b|^2 / 2 for unit vectors
    const StateVector a = StateVector(u).normalized(), b = StateVector(v).normalized();
    EXPECT_LE(1.0 - fidelity(a, b), 0.5 * std::pow(distance(a, b), 2) + 1e-12);
  }
}

TEST(GroundStatePreparation, RejectsOffsetBeyondInverseTime) {
  const ComplexMatrix d = Eigen::Vector2cd(0.0, 1.0).asDiagonal();
  const auto h = normalize_spectrum(HermitianOperator::from_dense(d), 0.2);
  const auto s = hs_schedule(0.05, 0.5, 0.01);
  ASSERT_GT(h.lambda0 * s.t, 1.0);
  const StateVector psi(Eigen::Vector2cd(std::sqrt(0.5), std::sqrt(0.5)));
  EXPECT_THROW(apply_hs_lcu(h, s, psi), ValidationError);
  EXPECT_NO_THROW(apply_hs_lcu(h, hs_schedule(h.spectral_gap, 0.5, 0.01), psi));
}

TEST(GroundStatePreparation, VanishingOutputIsReported) {
  const ComplexMatrix d = Eigen::Vector2cd(0.0, 1.0).asDiagonal();
  const auto h = normalize_spectrum(HermitianOperator::from_dense(d));
  const StateVector excited = StateVector::basis(2, 1);
  EXPECT_THROW(apply_exact_gaussian(h, 100.0, excited), DegenerateInputError);
}

TEST(CosPower, ZeroOrderIsIdentity) {
  auto s = ge_schedule(0.1, 0.5, 0.01).with_order(0);
  EXPECT_EQ(s.m0, 0);
  std::vector<double> x{0.0, 0.3, 1.0};
  std::vector<Complex> out(3);
  ge_filter(s, x, out);
  for (const auto& v : out) EXPECT_NEAR(std::abs(v - 1.0), 0.0, 1e-15);
  EXPECT_THROW(s.with_order(3), ValidationError);
}

TEST(CosPower, ScheduleArithmetic) {
  const auto s = ge_schedule(0.1, 0.5, 0.01);
  EXPECT_EQ(s.order, 852);
  EXPECT_EQ(s.m0, 46);
  EXPECT_NEAR(s.tau, 0.03426508005963354, 1e-14);
  EXPECT_EQ(s.query_time(), 92.0);
  EXPECT_EQ(s.weights.size(), 93u);
}

TEST(CosPower, WeightsAreBinomial) {
  for (int m : {2, 10, 40, 60}) {
    // Pascal's triangle in long double, scaled by 2^-M row by row.
    std::vector<long double> row{1.0L};
    for (int r = 0; r < m; ++r) {
      std::vector<long double> next(row.size() + 1, 0.0L);
      for (std::size_t k = 0; k < row.size(); ++k) {
        next[k] += row[k] / 2;
        next[k + 1] += row[k] / 2;
      }
      row = std::move(next);
    }
    const auto s = ge_schedule(0.5, 1.0, 0.01).with_order(m);
    for (int j = -s.m0; j <= s.m0; ++j) {
      const double want = static_cast<double>(row[static_cast<std::size_t>(m / 2 + j)]);
      EXPECT_NEAR(s.weights[static_cast<std::size_t>(j + s.m0)], want, 1e-13 * want + 1e-300);
    }
  }
}

TEST(CosPower, TruncatedFilterWithinBound) {
  auto base = ge_schedule(0.05, 0.3, 0.01);
  for (int m : {20, 200, base.order}) {
    const auto s = base.with_order(m);
    std::vector<double> x;
    for (int i = 0; i <= 500; ++i) x.push_back(i / 500.0);
    std::vector<Complex> got(x.size());
    ge_filter(s, x, got);
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      worst = std::max(worst, std::abs(got[i] - cos_power_filter(s, x[i])));
    }
    if (s.m0 == m / 2) {
      EXPECT_LE(worst, 1e-12);
    } else {
      EXPECT_LE(worst, s.truncation_bound());
    }
  }
}

TEST(CosPower, TwoLevelSuppression) {
  const ComplexMatrix d = Eigen::Vector2cd(0.0, std::numbers::pi / 2).asDiagonal();
  const auto h = normalize_spectrum(HermitianOperator::from_dense(d));
  const StateVector psi(Eigen::Vector2cd(std::sqrt(0.5), std::sqrt(0.5)));
  const auto s = ge_schedule(h.spectral_gap, std::sqrt(0.5), 0.01);
  const auto r = apply_exact_cosM(h, s, psi);
  const double c0 = std::pow(std::cos(s.tau), s.order);
  const double c1 = std::pow(std::cos(1.0 + s.tau), s.order);
  EXPECT_NEAR(r.infidelity, 1.0 - std::abs(c0) / std::hypot(c0, c1), 1e-12);
  EXPECT_LE(r.infidelity, 0.01);
}

TEST(Sweep, BaselineOrderingAndThreads) {
  const auto h = normalize_spectrum(build_hubbard({3, 1.0, 8.0, 0.0}));
  SweepProblem p;
  p.model = "hubbard";
  p.sites = 3;
  p.hamiltonian = &h;
  p.trial = neel_state({3, 1.0, 8.0, 0.0});
  const double gamma = ground_overlap(h, p.trial);
  for (auto method : {GspMethod::hs, GspMethod::ge_cosm}) {
    const auto a = fidelity_sweep(p, method, 12, 1);
    const auto b = fidelity_sweep(p, method, 12, 3);
    ASSERT_EQ(a.size(), 12u);
    EXPECT_NEAR(a.front().infidelity_exact, 1.0 - gamma, 1e-12);
    EXPECT_EQ(a.front().query_time, 0.0);
    EXPECT_LE(a.back().infidelity_exact, p.epsilon);
    EXPECT_LE(a.back().infidelity_lcu, p.epsilon);
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a[i].grid_index, static_cast<int>(i));
      EXPECT_EQ(a[i].infidelity_lcu, b[i].infidelity_lcu);
      EXPECT_EQ(a[i].energy_error_exact, b[i].energy_error_exact);
      if (i > 0) {
        EXPECT_GE(a[i].query_time, a[i - 1].query_time);
        EXPECT_LE(a[i].infidelity_exact, a[i - 1].infidelity_exact + 1e-12);
      }
    }
  }
  EXPECT_THROW(fidelity_sweep(p, GspMethod::hs_gapamp), ValidationError);
  EXPECT_THROW(fidelity_sweep(p, GspMethod::hs, 1), ValidationError);
}

TEST(Sweep, GroundEnergyOffsetEndToEnd) {
  const HubbardSpec spec{2, 1.0, 8.0, 0.0};
  const auto h = normalize_spectrum(build_hubbard(spec), 1e-3);
  SweepProblem p;
  p.model = "hubbard";
  p.sites = 2;
  p.hamiltonian = &h;
  p.trial = neel_state(spec);
  const auto r = fidelity_sweep(p, GspMethod::hs, 8);
  EXPECT_LE(r.back().infidelity_lcu, p.epsilon);
  EXPECT_GT(r.back().energy_error_lcu, 0.0);
}

TEST(Sweep, FirstCrossing) {
  std::vector<SweepRecord> r(3);
  for (int i = 0; i < 3; ++i) {
    r[i].query_time = 10.0 * i;
    r[i].infidelity_lcu = 0.5 / (1 + 10 * i);
  }
  EXPECT_EQ(first_crossing(r, 0.05, &SweepRecord::infidelity_lcu), 10.0);
  EXPECT_EQ(first_crossing(r, 1e-6, &SweepRecord::infidelity_lcu), -1.0);
  EXPECT_EQ(parse_method("hs+gapamp"), GspMethod::hs_gapamp);
  EXPECT_EQ(method_name(GspMethod::ge_cosm), "geCosM");
  EXPECT_THROW(parse_method("qpe"), ValidationError);
}
