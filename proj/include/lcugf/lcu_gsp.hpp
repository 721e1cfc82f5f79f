#pragma once

// Projective ground-state preparation: the Gaussian filter exp(-t^2 H^2 / 2)
// realized as a finite sum of time evolutions, and the binomial cos^M filter
// used as a baseline. States are prepared exactly in the eigenbasis, so the
// only error sources are the filter approximations themselves.

#include "lcugf/gap_amp.hpp"
#include "lcugf/linalg.hpp"
#include "lcugf/models.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lcugf {

/// Additive state error allowed for a target infidelity eps: (5 eta)^2 / 2 = eps.
double eta_from_infidelity(double epsilon);

/// Which quadrature step to use for the Gaussian sum.
enum class StepRule {
  balanced,  // dz = 2 pi / (z'_c + t): truncation and aliasing errors balanced
  simple,    // dz = 2 pi / (z_c + t)
};

/// h(x) = sum_{k=-Nz}^{Nz} alpha_k exp(-i z_k t x),
/// alpha_k = dz / sqrt(2 pi) * exp(-z_k^2 / 2), z_k = k dz.
struct HsSchedule {
  double gap = 0.0;        // Delta, lower bound on the spectral gap
  double overlap = 0.0;    // gamma
  double epsilon = 0.0;    // target infidelity
  double eta = 0.0;
  double t = 0.0;
  double z_c = 0.0;
  double z_c_prime = 0.0;
  double dz = 0.0;
  int n_z = 0;
  StepRule rule = StepRule::balanced;
  std::vector<double> coefficients;  // alpha_{-Nz} .. alpha_{Nz}

  /// Longest evolution time queried, t * z_c.
  double query_time() const { return t * z_c; }
  double l1() const;
  /// (1 / Delta) sqrt(2 log(1 / gamma eta)).
  double required_time() const;
  /// Same targets, different evolution-time scale (dz and Nz follow t).
  HsSchedule with_time(double t) const;
  /// Tail mass (2 / sqrt(2 pi)) sum_{k > Nz} dz exp(-z_k^2 / 2).
  double truncation_tail() const;
};

HsSchedule hs_schedule(double gap, double overlap, double epsilon,
                       StepRule rule = StepRule::balanced);

/// out[l] = h(x[l]).
void hs_filter(const HsSchedule& s, std::span<const double> x, std::span<Complex> out);
/// exp(-t^2 x^2 / 2).
double gaussian_filter(double t, double x);
/// max_l |h(x_l) - exp(-t^2 x_l^2 / 2)| over the given points.
double hs_operator_error(const HsSchedule& s, std::span<const double> x);

/// Truncated binomial expansion of cos^M(x - lambda_bar + tau):
/// 2^-M sum_{|k - M/2| <= m0} C(M, k) exp(-i (M - 2k)(x - lambda_bar + tau)).
struct GeSchedule {
  double gap = 0.0;
  double overlap = 0.0;
  double epsilon = 0.0;
  double eta = 0.0;
  int order = 0;  // M, even
  int m0 = 0;     // truncation radius, <= M / 2
  double tau = 0.0;
  double reference_energy = 0.0;  // lambda_bar
  std::vector<double> weights;    // 2^-M C(M, k), k = M/2 - m0 .. M/2 + m0

  /// Longest evolution time queried, 2 m0.
  double query_time() const { return 2.0 * m0; }
  /// 2 ceil((1 / Delta^2) log(1 / gamma eta)).
  int required_order() const;
  GeSchedule with_order(int order) const;
  /// 2 exp(-2 m0^2 / M), the truncation error bound (0 when nothing is cut).
  double truncation_bound() const;
};

GeSchedule ge_schedule(double gap, double overlap, double epsilon,
                       double reference_energy = 0.0);

/// Truncated filter values at x[l].
void ge_filter(const GeSchedule& s, std::span<const double> x, std::span<Complex> out);
/// Untruncated cos^M(x - lambda_bar + tau).
double cos_power_filter(const GeSchedule& s, double x);

struct PreparationResult {
  StateVector state;
  double infidelity = 1.0;    // 1 - ||P_0 psi|| for the normalized output
  double energy_error = 0.0;  // <H> - lambda_0 in normalized units
  double query_time = 0.0;
  double success_weight = 0.0;  // ||filter(H) psi_0||
};

/// Applies precomputed filter values (one per eigenvalue) to psi_0.
PreparationResult apply_filter_values(const NormalizedHamiltonian& h,
                                      std::span<const Complex> filter,
                                      const StateVector& psi0, double query_time);

PreparationResult apply_hs_lcu(const NormalizedHamiltonian& h, const HsSchedule& s,
                               const StateVector& psi0);
PreparationResult apply_exact_gaussian(const NormalizedHamiltonian& h, double t,
                                       const StateVector& psi0);
PreparationResult apply_cosM_lcu(const NormalizedHamiltonian& h, const GeSchedule& s,
                                 const StateVector& psi0);
PreparationResult apply_exact_cosM(const NormalizedHamiltonian& h, const GeSchedule& s,
                                   const StateVector& psi0);

/// Gap-amplified variants: psi0 lives on the system register and is embedded
/// in the ancilla-|0> block; the returned state lives on ancilla (x) system.
/// The infidelity counts all weight outside |0>_a (x) ground space.
PreparationResult apply_hs_lcu(const AmplifiedSpectrum& a, const HsSchedule& s,
                               const StateVector& psi0);
PreparationResult apply_exact_gaussian(const AmplifiedSpectrum& a, double t,
                                       const StateVector& psi0);

enum class GspMethod { hs, hs_gapamp, ge_cosm };
std::string_view method_name(GspMethod m);
GspMethod parse_method(std::string_view name);

/// One grid point of a preparation sweep.
struct SweepRecord {
  std::string method;
  std::string model;
  int sites = 0;
  int grid_index = 0;
  double schedule_param = 0.0;  // t for the Gaussian methods, M for cos^M
  double query_time = 0.0;
  double infidelity_exact = 0.0;
  double infidelity_lcu = 0.0;
  double energy_error_exact = 0.0;
  double energy_error_lcu = 0.0;
  double success_weight = 0.0;
};

struct SweepProblem {
  std::string model;
  int sites = 0;
  const NormalizedHamiltonian* hamiltonian = nullptr;
  const AmplifiedSpectrum* amplified = nullptr;  // required for hs_gapamp
  StateVector trial;
  double epsilon = 0.01;
  double gap = 0.0;  // 0: use the exact spectral gap
  StepRule rule = StepRule::balanced;
};

/// Evaluates `grid_points` schedule strengths from zero up to the schedule
/// endpoint. Points are independent and may run on `threads` workers; the
/// output is ordered by grid index.
std::vector<SweepRecord> fidelity_sweep(const SweepProblem& problem, GspMethod method,
                                        int grid_points = 30, int threads = 1);

/// First query time at which `value` drops to `threshold` or below, or a
/// negative number when it never does.
double first_crossing(const std::vector<SweepRecord>& records, double threshold,
                      double SweepRecord::*value);

}  // namespace lcugf
