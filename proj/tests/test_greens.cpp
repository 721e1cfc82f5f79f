#include "lcugf/error.hpp"
#include "lcugf/greens.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace lcugf;

namespace {

// <g| c_j' (z - (H - E0))^-1 c+_j |g> + <g| c+_j (z + (H - E0))^-1 c_j' |g>,
// averaged over the ground space, by dense LU solves.
Complex dense_greens(const FockSpectrum& fs, int j, int jp, double omega, double gamma) {
  const ComplexMatrix h = fs.hamiltonian.dense();
  const Eigen::Index n = h.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix cdj(jw_operator(fs.map, LadderKind::creation, fs.map.mode(j, Spin::up)));
  const ComplexMatrix cjp(
      jw_operator(fs.map, LadderKind::annihilation, fs.map.mode(jp, Spin::up)));
  const Complex z(omega, gamma);
  const ComplexMatrix hp = h - fs.ground_energy * id;
  Complex sum = 0.0;
  for (Eigen::Index g = 0; g < fs.ground_dim(); ++g) {
    const ComplexVector psi = fs.ground_state(g);
    const ComplexVector a = (z * id - hp).partialPivLu().solve(cdj * psi);
    const ComplexVector b = (z * id + hp).partialPivLu().solve(cjp * psi);
    sum += psi.dot(cjp * a) + psi.dot(cdj * b);
  }
  return sum / static_cast<double>(fs.ground_dim());
}

}  // namespace

TEST(FockSpectrumTest, HalfFillingGroundState) {
  const auto fs = fock_spectrum({2, 1.0, 8.0, 0.0});
  EXPECT_EQ(fs.filling, 2);
  EXPECT_EQ(fs.ground_dim(), 1);
  EXPECT_NEAR(fs.ground_energy, -std::sqrt(20.0), 1e-12);
  EXPECT_EQ(fs.particles.size(), 16u);
  const auto atomic = fock_spectrum({2, 0.0, 8.0, 0.0});
  EXPECT_EQ(atomic.ground_dim(), 4);
  EXPECT_THROW(fock_spectrum({2, 1.0, 8.0, 0.0}, 5), ValidationError);
}

TEST(Greens, LehmannMatchesResolventAndDenseOracle) {
  for (int l : {2, 3}) {
    const auto fs = fock_spectrum({l, 1.0, 8.0, 0.0});
    const auto grid = uniform_grid(-8.0, 8.0, 41);
    for (auto [j, jp] : {std::pair{0, 0}, std::pair{0, 1}}) {
      const auto a = lehmann_greens(fs, j, jp, grid, 0.1);
      const auto b = resolvent_greens(fs, j, jp, grid, 0.1, GreensMode::resolvent_exact);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        EXPECT_LE(std::abs(a.values[i] - b.values[i]), 1e-9);
        EXPECT_LE(std::abs(a.values[i] - dense_greens(fs, j, jp, grid[i], 0.1)), 1e-9);
      }
    }
  }
}

TEST(Greens, AnticommutatorSumRule) {
  const auto fs = fock_spectrum({3, 1.0, 8.0, 0.0});
  for (Eigen::Index g = 0; g < fs.ground_dim(); ++g) {
    for (int j = 0; j < 3; ++j) {
      EXPECT_NEAR(std::abs(lehmann_data(fs, g, j, j).total_weight() - 1.0), 0.0, 1e-10);
    }
    EXPECT_NEAR(std::abs(lehmann_data(fs, g, 0, 1).total_weight()), 0.0, 1e-10);
  }
}

TEST(Greens, MajoranaIdentity) {
  for (int l : {2, 3}) {
    const auto fs = fock_spectrum({l, 1.0, 8.0, 0.0});
    for (auto mode : {GreensMode::resolvent_exact, GreensMode::resolvent_lcu}) {
      for (double omega : {-5.0, 0.0, 3.7}) {
        const auto c = majorana_check(fs, fs.ground_state(0), 0, l - 1, omega, 0.1, mode);
        EXPECT_LE(std::abs(c.direct - c.majorana), 1e-10);
      }
    }
    EXPECT_THROW(
        majorana_check(fs, fs.ground_state(0), 0, 0, 0.0, 0.1, GreensMode::lehmann),
        ValidationError);
  }
}

TEST(Greens, MajoranaOperatorsAreHermitianUnitaries) {
  const FermionModeMap map(2);
  for (int m = 0; m < 4; ++m) {
    const auto [b0, b1] = majorana_pair(map, m);
    const ComplexMatrix d0(b0), d1(b1);
    const ComplexMatrix id = ComplexMatrix::Identity(16, 16);
    EXPECT_LE((d0 * d0 - id).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LE((d1 * d1 - id).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LE((d0 - d0.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LE((d1 - d1.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LE((d0 * d1 + d1 * d0).cwiseAbs().maxCoeff(), 1e-14);
    const ComplexMatrix cd(jw_operator(map, LadderKind::creation, m));
    EXPECT_LE((0.5 * (d0 + Complex(0.0, 1.0) * d1) - cd).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(Greens, AtomicLimit) {
  const double u = 8.0, delta = 0.1;
  const auto fs = fock_spectrum({2, 0.0, u, 0.0});
  const auto grid = uniform_grid(-6.0, 6.0, 61);
  const auto g = lehmann_greens(fs, 0, 0, grid, delta);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Complex want = 0.5 / Complex(grid[i] - u / 2, delta) +
                         0.5 / Complex(grid[i] + u / 2, delta);
    EXPECT_LE(std::abs(g.values[i] - want), 1e-12);
  }
}

TEST(Greens, FreeTwoSiteChain) {
  const double delta = 0.05;
  const auto fs = fock_spectrum({2, 1.0, 0.0, 0.0});
  EXPECT_EQ(fs.ground_dim(), 1);
  const auto data = lehmann_data(fs, 0, 0, 0);
  double particle = 0.0, hole = 0.0;
  for (const auto& p : data.particle) {
    if (std::abs(p.weight) > 1e-12) {
      EXPECT_NEAR(p.energy, 1.0, 1e-12);
      particle += p.weight.real();
    }
  }
  for (const auto& p : data.hole) {
    if (std::abs(p.weight) > 1e-12) {
      EXPECT_NEAR(p.energy, 1.0, 1e-12);
      hole += p.weight.real();
    }
  }
  EXPECT_NEAR(particle, 0.5, 1e-12);
  EXPECT_NEAR(hole, 0.5, 1e-12);
  for (double w : {-2.0, -1.0, 0.0, 0.5, 1.0}) {
    const Complex want = 0.5 / Complex(w - 1.0, delta) + 0.5 / Complex(w + 1.0, delta);
    EXPECT_LE(std::abs(data.evaluate(w, delta) - want), 1e-12);
  }
}

TEST(Greens, LcuWithinTargetOfExact) {
  const auto fs = fock_spectrum({2, 1.0, 8.0, 0.0});
  const double eps = 0.05;
  const auto grid = uniform_grid(-8.0, 8.0, 161);
  const auto exact = resolvent_greens(fs, 0, 0, grid, 0.1, GreensMode::resolvent_exact);
  const auto lcu = resolvent_greens(fs, 0, 0, grid, 0.1, GreensMode::resolvent_lcu, eps, 2);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_LE(std::abs(lcu.values[i] - exact.values[i]), eps);
  }
  EXPECT_EQ(mode_name(lcu.mode), "lcu");
}

TEST(Ldos, NonnegativeWithMottGap) {
  const auto fs = fock_spectrum({4, 1.0, 8.0, 0.0});
  const auto grid = uniform_grid(-8.0, 8.0, 321);
  const auto g = resolvent_greens(fs, 0, 0, grid, 0.1, GreensMode::resolvent_exact);
  for (const auto& v : g.values) EXPECT_LE(v.imag(), 1e-12);
  const auto d = ldos(g);
  const double peak = *std::max_element(d.values.begin(), d.values.end());
  EXPECT_LT(d.values[160] / peak, 0.05);  // omega = 0
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_NEAR(d.values[i], d.values[grid.size() - 1 - i], 1e-9);  // bipartite symmetry
  }
  const auto n = grid_normalize(d);
  EXPECT_TRUE(n.normalized);
  EXPECT_NEAR(trapezoid(n.omega, n.values), 1.0, 1e-12);
  EXPECT_GT(n.integral, 0.9);
}

TEST(Ldos, RejectsNegativeDensityAndOffDiagonal) {
  GreensSeries g;
  g.omega = {0.0, 1.0};
  g.values = {Complex(0.0, -1.0), Complex(0.0, 0.5)};
  EXPECT_THROW(ldos(g), ConsistencyError);
  g.values[1] = Complex(0.0, 1e-12);
  const auto d = ldos(g);
  EXPECT_EQ(d.values[1], 0.0);
  g.jprime = 1;
  EXPECT_THROW(ldos(g), ValidationError);
}

TEST(Ldos, TrapezoidAndAverage) {
  const std::vector<double> x{0.0, 1.0, 3.0};
  const std::vector<double> y{1.0, 3.0, 1.0};
  EXPECT_DOUBLE_EQ(trapezoid(x, y), 2.0 + 4.0);
  GreensSeries a, b;
  a.omega = b.omega = {0.0, 1.0};
  a.values = {Complex(1.0, -1.0), Complex(2.0, 0.0)};
  b.values = {Complex(3.0, 1.0), Complex(0.0, -2.0)};
  const auto m = degeneracy_average({a, b});
  EXPECT_EQ(m.values[0], Complex(2.0, 0.0));
  EXPECT_EQ(m.values[1], Complex(1.0, -1.0));
  b.omega = {0.0, 2.0};
  EXPECT_THROW(degeneracy_average({a, b}), ValidationError);
  EXPECT_THROW(degeneracy_average({}), ValidationError);
}
