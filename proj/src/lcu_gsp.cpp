#include "lcugf/lcu_gsp.hpp"

#include "lcugf/error.hpp"
#include "lcugf/kernels.hpp"
#include "lcugf/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace lcugf {

namespace {

constexpr double kMinSuccessWeight = 1e-14;

void check_targets(double gap, double overlap, double epsilon) {
  if (!(gap > 0.0 && gap <= 1.0)) {
    throw ValidationError("schedule: gap bound must lie in (0, 1]");
  }
  if (!(overlap > 0.0 && overlap <= 1.0)) {
    throw ValidationError("schedule: overlap must lie in (0, 1]");
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ValidationError("schedule: target infidelity must lie in (0, 1)");
  }
}

void check_state(Eigen::Index dim, const StateVector& psi0) {
  if (psi0.dim() != dim) {
    throw ValidationError("ground-state preparation: trial state dimension mismatch");
  }
  if (std::abs(psi0.norm() - 1.0) > kNormalizationTol) {
    throw ValidationError("ground-state preparation: trial state is not normalized");
  }
}

std::vector<double> eigenvalues_of(const RealVector& v) {
  return {v.data(), v.data() + v.size()};
}

}  // namespace

double eta_from_infidelity(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ValidationError("target infidelity must lie in (0, 1)");
  }
  return std::sqrt(2.0 * epsilon) / 5.0;
}

// ---------------------------------------------------------------------------
// Gaussian sum

double HsSchedule::l1() const {
  double sum = 0.0;
  for (double a : coefficients) sum += std::abs(a);
  return sum;
}

double HsSchedule::required_time() const {
  return std::sqrt(2.0 * std::log(1.0 / (overlap * eta))) / gap;
}

HsSchedule HsSchedule::with_time(double time) const {
  if (!(time >= 0.0) || !std::isfinite(time)) {
    throw ValidationError("HsSchedule::with_time: time must be finite and non-negative");
  }
  HsSchedule s = *this;
  s.t = time;
  const double cutoff = rule == StepRule::balanced ? z_c_prime : z_c;
  s.dz = 2.0 * std::numbers::pi / (cutoff + time);
  s.n_z = static_cast<int>(std::ceil(z_c / s.dz));
  s.coefficients.resize(static_cast<std::size_t>(2 * s.n_z + 1));
  const double norm = s.dz / std::sqrt(2.0 * std::numbers::pi);
  for (int k = -s.n_z; k <= s.n_z; ++k) {
    const double z = k * s.dz;
    s.coefficients[static_cast<std::size_t>(k + s.n_z)] = norm * std::exp(-0.5 * z * z);
  }
  return s;
}

double HsSchedule::truncation_tail() const {
  double sum = 0.0;
  for (int k = n_z + 1;; ++k) {
    const double z = k * dz;
    const double term = dz * std::exp(-0.5 * z * z);
    sum += term;
    if (term < 1e-300 || term < 1e-18 * sum) break;
  }
  return 2.0 / std::sqrt(2.0 * std::numbers::pi) * sum;
}

HsSchedule hs_schedule(double gap, double overlap, double epsilon, StepRule rule) {
  check_targets(gap, overlap, epsilon);
  HsSchedule s;
  s.gap = gap;
  s.overlap = overlap;
  s.epsilon = epsilon;
  s.eta = eta_from_infidelity(epsilon);
  s.rule = rule;
  const double ge = overlap * s.eta;
  s.z_c = std::sqrt(2.0 * std::log(2.0 / ge));
  s.z_c_prime = std::sqrt(s.z_c * s.z_c +
                          std::acosh(std::numbers::pi * s.z_c * s.z_c / 4.0 + 1.0));
  return s.with_time(s.required_time());
}

void hs_filter(const HsSchedule& s, std::span<const double> x, std::span<Complex> out) {
  const double step = s.dz * s.t;
  kernels::phase_sum(s.coefficients, step, x, out);
  // The kernel sums k = 0..2Nz; shift the index back to -Nz..Nz.
  const double shift = s.n_z * step;
  for (std::size_t l = 0; l < x.size(); ++l) {
    out[l] *= std::polar(1.0, shift * x[l]);
  }
}

double gaussian_filter(double t, double x) { return std::exp(-0.5 * t * t * x * x); }

double hs_operator_error(const HsSchedule& s, std::span<const double> x) {
  std::vector<Complex> h(x.size());
  hs_filter(s, x, h);
  double worst = 0.0;
  for (std::size_t l = 0; l < x.size(); ++l) {
    worst = std::max(worst, std::abs(h[l] - gaussian_filter(s.t, x[l])));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Binomial cos^M

int GeSchedule::required_order() const {
  return 2 * static_cast<int>(
                 std::ceil(std::log(1.0 / (overlap * eta)) / (gap * gap)));
}

GeSchedule GeSchedule::with_order(int m) const {
  if (m < 0 || m % 2 != 0) {
    throw ValidationError("GeSchedule::with_order: M must be a non-negative even integer");
  }
  GeSchedule s = *this;
  s.order = m;
  const int half = m / 2;
  const double radius = std::ceil(std::sqrt(half * std::log(2.0 / (overlap * eta))));
  s.m0 = std::min(static_cast<int>(radius), half);

  // Start at the central coefficient and recurse outward; the centre is the
  // largest term so no intermediate underflows before the tails do.
  s.weights.assign(static_cast<std::size_t>(2 * s.m0 + 1), 0.0);
  const double centre = std::exp(std::lgamma(m + 1.0) - 2.0 * std::lgamma(half + 1.0) -
                                 m * std::numbers::ln2);
  s.weights[static_cast<std::size_t>(s.m0)] = centre;
  double w = centre;
  for (int j = 1; j <= s.m0; ++j) {
    const int k = half + j;  // C(M, k) = C(M, k - 1) (M - k + 1) / k
    w *= static_cast<double>(m - k + 1) / k;
    s.weights[static_cast<std::size_t>(s.m0 + j)] = w;
    s.weights[static_cast<std::size_t>(s.m0 - j)] = w;
  }
  return s;
}

double GeSchedule::truncation_bound() const {
  if (m0 >= order / 2) return 0.0;
  return 2.0 * std::exp(-2.0 * m0 * m0 / static_cast<double>(order));
}

GeSchedule ge_schedule(double gap, double overlap, double epsilon,
                       double reference_energy) {
  check_targets(gap, overlap, epsilon);
  GeSchedule s;
  s.gap = gap;
  s.overlap = overlap;
  s.epsilon = epsilon;
  s.eta = eta_from_infidelity(epsilon);
  s.reference_energy = reference_energy;
  s.tau = gap / std::sqrt(2.0 * std::log(1.0 / (overlap * s.eta)));
  return s.with_order(s.required_order());
}

void ge_filter(const GeSchedule& s, std::span<const double> x, std::span<Complex> out) {
  if (x.size() != out.size()) {
    throw ValidationError("ge_filter: size mismatch");
  }
  std::vector<double> y(x.size());
  for (std::size_t l = 0; l < x.size(); ++l) y[l] = x[l] - s.reference_energy + s.tau;
  // sum_j w_j exp(-i (2 m0 - 2 j) y) = exp(-2 i m0 y) sum_j w_j exp(+2 i j y)
  kernels::phase_sum(s.weights, -2.0, y, out);
  for (std::size_t l = 0; l < x.size(); ++l) {
    out[l] *= std::polar(1.0, -2.0 * s.m0 * y[l]);
  }
}

double cos_power_filter(const GeSchedule& s, double x) {
  return std::pow(std::cos(x - s.reference_energy + s.tau), s.order);
}

// ---------------------------------------------------------------------------
// Preparation

PreparationResult apply_filter_values(const NormalizedHamiltonian& h,
                                      std::span<const Complex> filter,
                                      const StateVector& psi0, double query_time) {
  check_state(h.eig.dim(), psi0);
  if (static_cast<Eigen::Index>(filter.size()) != h.eig.dim()) {
    throw ValidationError("apply_filter_values: one filter value per eigenvalue required");
  }
  ComplexVector d = h.eig.to_eigenbasis(psi0.amplitudes());
  for (Eigen::Index l = 0; l < d.size(); ++l) d(l) *= filter[static_cast<std::size_t>(l)];

  PreparationResult r;
  r.query_time = query_time;
  r.success_weight = d.norm();
  if (!(r.success_weight >= kMinSuccessWeight)) {
    throw DegenerateInputError("ground-state preparation: filtered state vanishes");
  }
  d /= r.success_weight;
  const RealVector& lambda = h.eig.values();
  r.infidelity = std::clamp(1.0 - d.head(h.ground_dim).norm(), 0.0, 1.0);
  double energy = 0.0;
  for (Eigen::Index l = 0; l < d.size(); ++l) energy += std::norm(d(l)) * lambda(l);
  r.energy_error = std::abs(energy - h.lambda0);
  r.state = StateVector(h.eig.from_eigenbasis(d));
  return r;
}

PreparationResult apply_hs_lcu(const NormalizedHamiltonian& h, const HsSchedule& s,
                               const StateVector& psi0) {
  if (h.lambda0 * s.t > 1.0 + 1e-12) {
    throw ValidationError("apply_hs_lcu: ground energy offset exceeds 1 / t");
  }
  const auto x = eigenvalues_of(h.eig.values());
  std::vector<Complex> filter(x.size());
  hs_filter(s, x, filter);
  return apply_filter_values(h, filter, psi0, s.query_time());
}

PreparationResult apply_exact_gaussian(const NormalizedHamiltonian& h, double t,
                                       const StateVector& psi0) {
  const RealVector& x = h.eig.values();
  std::vector<Complex> filter(static_cast<std::size_t>(x.size()));
  for (Eigen::Index l = 0; l < x.size(); ++l) {
    filter[static_cast<std::size_t>(l)] = gaussian_filter(t, x(l));
  }
  return apply_filter_values(h, filter, psi0, t);
}

PreparationResult apply_cosM_lcu(const NormalizedHamiltonian& h, const GeSchedule& s,
                                 const StateVector& psi0) {
  const auto x = eigenvalues_of(h.eig.values());
  std::vector<Complex> filter(x.size());
  ge_filter(s, x, filter);
  return apply_filter_values(h, filter, psi0, s.query_time());
}

PreparationResult apply_exact_cosM(const NormalizedHamiltonian& h, const GeSchedule& s,
                                   const StateVector& psi0) {
  const RealVector& x = h.eig.values();
  std::vector<Complex> filter(static_cast<std::size_t>(x.size()));
  for (Eigen::Index l = 0; l < x.size(); ++l) {
    filter[static_cast<std::size_t>(l)] = cos_power_filter(s, x(l));
  }
  return apply_filter_values(h, filter, psi0, s.query_time());
}

namespace {

PreparationResult finish_amplified(const AmplifiedSpectrum& a,
                                   std::span<const Complex> plus,
                                   std::span<const Complex> minus,
                                   const StateVector& psi0, double query_time) {
  const NormalizedHamiltonian& h = a.system();
  check_state(h.eig.dim(), psi0);
  const ComplexVector c = h.eig.to_eigenbasis(psi0.amplitudes());
  AmplifiedSpectrum::Action act = a.act(plus, minus, c);

  PreparationResult r;
  r.query_time = query_time;
  r.success_weight = std::sqrt(act.even.squaredNorm() + act.odd.squaredNorm());
  if (!(r.success_weight >= kMinSuccessWeight)) {
    throw DegenerateInputError("ground-state preparation: filtered state vanishes");
  }
  act.even /= r.success_weight;
  act.odd /= r.success_weight;
  r.infidelity = std::clamp(1.0 - act.even.head(h.ground_dim).norm(), 0.0, 1.0);
  // <H_r^2>: H on the |0> block and Pi^dagger Pi on the bond blocks.
  const RealVector& mu = h.eig.values();
  double energy = 0.0;
  for (Eigen::Index l = 0; l < mu.size(); ++l) {
    energy += (std::norm(act.even(l)) + std::norm(act.odd(l))) * mu(l);
  }
  r.energy_error = std::abs(energy - h.lambda0);
  r.state = a.synthesize(act);
  return r;
}

}  // namespace

PreparationResult apply_hs_lcu(const AmplifiedSpectrum& a, const HsSchedule& s,
                               const StateVector& psi0) {
  const RealVector& sv = a.singular_values();
  std::vector<double> x(sv.data(), sv.data() + sv.size());
  std::vector<Complex> plus(x.size()), minus(x.size());
  hs_filter(s, x, plus);
  for (double& v : x) v = -v;
  hs_filter(s, x, minus);
  return finish_amplified(a, plus, minus, psi0, s.query_time());
}

PreparationResult apply_exact_gaussian(const AmplifiedSpectrum& a, double t,
                                       const StateVector& psi0) {
  const RealVector& sv = a.singular_values();
  std::vector<Complex> values(static_cast<std::size_t>(sv.size()));
  for (Eigen::Index l = 0; l < sv.size(); ++l) {
    values[static_cast<std::size_t>(l)] = gaussian_filter(t, sv(l));
  }
  return finish_amplified(a, values, values, psi0, t);
}

// ---------------------------------------------------------------------------
// Sweeps

std::string_view method_name(GspMethod m) {
  switch (m) {
    case GspMethod::hs: return "hs";
    case GspMethod::hs_gapamp: return "hs+gapamp";
    case GspMethod::ge_cosm: return "geCosM";
  }
  return "?";
}

GspMethod parse_method(std::string_view name) {
  if (name == "hs") return GspMethod::hs;
  if (name == "hs+gapamp") return GspMethod::hs_gapamp;
  if (name == "geCosM") return GspMethod::ge_cosm;
  throw ValidationError("unknown preparation method '" + std::string(name) + "'");
}

std::vector<SweepRecord> fidelity_sweep(const SweepProblem& p, GspMethod method,
                                        int grid_points, int threads) {
  if (p.hamiltonian == nullptr) {
    throw ValidationError("fidelity_sweep: no Hamiltonian");
  }
  if (grid_points < 2) {
    throw ValidationError("fidelity_sweep: need at least two grid points");
  }
  if (method == GspMethod::hs_gapamp && p.amplified == nullptr) {
    throw ValidationError("fidelity_sweep: hs+gapamp needs an amplified Hamiltonian");
  }
  const NormalizedHamiltonian& h = *p.hamiltonian;
  const double gap = p.gap > 0.0 ? p.gap : h.spectral_gap;
  const double overlap = ground_overlap(h, p.trial);
  const auto n = static_cast<std::size_t>(grid_points);
  const double last = static_cast<double>(grid_points - 1);

  std::vector<SweepRecord> out(n);
  auto fill = [&](std::size_t i, double param, const PreparationResult& exact,
                  const PreparationResult& lcu) {
    SweepRecord& r = out[i];
    r.method = std::string(method_name(method));
    r.model = p.model;
    r.sites = p.sites;
    r.grid_index = static_cast<int>(i);
    r.schedule_param = param;
    r.query_time = lcu.query_time;
    r.infidelity_exact = exact.infidelity;
    r.infidelity_lcu = lcu.infidelity;
    r.energy_error_exact = exact.energy_error;
    r.energy_error_lcu = lcu.energy_error;
    r.success_weight = lcu.success_weight;
  };

  switch (method) {
    case GspMethod::hs:
    case GspMethod::hs_gapamp: {
      const bool amplified = method == GspMethod::hs_gapamp;
      const HsSchedule end = hs_schedule(amplified ? std::sqrt(gap) : gap, overlap,
                                         p.epsilon, p.rule);
      parallel_for(n, threads, [&](std::size_t i) {
        const double t = end.t * static_cast<double>(i) / last;
        const HsSchedule s = i + 1 == n ? end : end.with_time(t);
        if (amplified) {
          fill(i, s.t, apply_exact_gaussian(*p.amplified, s.t, p.trial),
               apply_hs_lcu(*p.amplified, s, p.trial));
        } else {
          fill(i, s.t, apply_exact_gaussian(h, s.t, p.trial), apply_hs_lcu(h, s, p.trial));
        }
      });
      break;
    }
    case GspMethod::ge_cosm: {
      const GeSchedule end = ge_schedule(gap, overlap, p.epsilon, h.reported_lambda0);
      const int half_end = end.order / 2;
      parallel_for(n, threads, [&](std::size_t i) {
        const int half = static_cast<int>(
            std::ceil(static_cast<double>(i) * half_end / last));
        const GeSchedule s = end.with_order(2 * half);
        fill(i, s.order, apply_exact_cosM(h, s, p.trial), apply_cosM_lcu(h, s, p.trial));
      });
      break;
    }
  }
  return out;
}

double first_crossing(const std::vector<SweepRecord>& records, double threshold,
                      double SweepRecord::*value) {
  for (const auto& r : records) {
    if (r.*value <= threshold) return r.query_time;
  }
  return -1.0;
}

}  // namespace lcugf
