#pragma once

#include "lcugf/linalg.hpp"

#include <random>

namespace lcugf::testing {

inline ComplexMatrix random_hermitian(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
  }
  return (a + a.adjoint()) / 2.0;
}

inline ComplexVector random_vector(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(g(rng), g(rng));
  return v;
}

inline StateVector random_state(Eigen::Index n, std::mt19937_64& rng) {
  return StateVector(random_vector(n, rng)).normalize();
}

}  // namespace lcugf::testing
