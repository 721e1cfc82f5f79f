#pragma once

// Retarded resolvent R(w + i Gamma, H) = (w + i Gamma - H)^-1, exactly and as
// the truncated Fourier-Laplace sum
//   h = -i sum_{k=0}^{Nc} dt exp(i (w + i Gamma - H) k dt).

#include "lcugf/linalg.hpp"

#include <span>
#include <vector>

namespace lcugf {

enum class TimeStepRule {
  practical,  // dt = min(eps'/2, 3 / ||H||)
  tightened,  // dt = eps' - (W/3) eps'^2 + (2 W^2 / 9) eps'^3 with W = ||H||
};

struct FitSchedule {
  double gamma = 0.0;
  double eps = 0.0;     // target operator-norm error eps'
  double norm_h = 0.0;  // ||H|| used for the step rule
  double dt = 0.0;
  double t_c = 0.0;     // (1 / Gamma) log(2 / (Gamma eps'))
  int n_c = 0;          // ceil(t_c / dt)
  TimeStepRule rule = TimeStepRule::practical;
  std::vector<double> coefficients;  // alpha_k = dt exp(-Gamma k dt), k = 0..Nc

  double l1() const;
  /// ||alpha||_1 * t_c, the evolution time charged to one application.
  double query_cost() const;
  /// Closed-form bound exp(-Gamma t_c) / Gamma on the truncated tail.
  double tail_bound() const { return std::exp(-gamma * t_c) / gamma; }
  /// sum_{k > Nc} alpha_k evaluated as a geometric series.
  double tail_sum() const;
};

FitSchedule fit_schedule(double gamma, double eps, double norm_h,
                         TimeStepRule rule = TimeStepRule::practical);

/// out[l] = h(w + i Gamma, lambda_l) via the LCU sum.
void lcu_resolvent_values(const FitSchedule& s, double omega,
                          std::span<const double> energies, std::span<Complex> out);
/// out[l] = 1 / (w + i Gamma - lambda_l). Gamma < 0 is rejected; Gamma = 0 on
/// a pole (within 1e-14) raises SingularityError.
void exact_resolvent_values(double omega, double gamma,
                            std::span<const double> energies, std::span<Complex> out);

/// Resolvent actions on a vector through the eigendecomposition.
ComplexVector lcu_resolvent(const EigenDecomposition& e, double omega,
                            const FitSchedule& s, const ComplexVector& v);
ComplexVector exact_resolvent(const EigenDecomposition& e, double omega, double gamma,
                              const ComplexVector& v);

struct ResolventResult {
  double omega = 0.0;
  double error_norm = 0.0;  // ||h - R||_2, exact in the eigenbasis
  bool in_range = true;     // omega inside [lambda_min, lambda_max]
};

/// Operator-norm error of the LCU resolvent at every grid frequency.
std::vector<ResolventResult> certify(const EigenDecomposition& e,
                                     std::span<const double> omegas,
                                     const FitSchedule& s, int threads = 1);

/// count points spanning [lo, hi] inclusive.
std::vector<double> uniform_grid(double lo, double hi, int count);

}  // namespace lcugf
