#include "lcugf/resolvent.hpp"

#include "lcugf/error.hpp"
#include "lcugf/kernels.hpp"
#include "lcugf/parallel.hpp"

#include <cmath>
#include <string>

namespace lcugf {

double FitSchedule::l1() const {
  double sum = 0.0;
  for (double a : coefficients) sum += a;
  return sum;
}

double FitSchedule::query_cost() const { return l1() * t_c; }

double FitSchedule::tail_sum() const {
  const double r = std::exp(-gamma * dt);
  return dt * std::pow(r, n_c + 1) / (1.0 - r);
}

FitSchedule fit_schedule(double gamma, double eps, double norm_h, TimeStepRule rule) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw ValidationError("fit_schedule: broadening Gamma must be positive");
  }
  if (!(eps > 0.0 && eps < 1.0)) {
    throw ValidationError("fit_schedule: target error eps' must lie in (0, 1)");
  }
  if (!(norm_h > 0.0) || !std::isfinite(norm_h)) {
    throw ValidationError("fit_schedule: operator norm must be positive");
  }
  FitSchedule s;
  s.gamma = gamma;
  s.eps = eps;
  s.norm_h = norm_h;
  s.rule = rule;
  s.t_c = std::log(2.0 / (gamma * eps)) / gamma;
  if (rule == TimeStepRule::practical) {
    s.dt = std::min(eps / 2.0, 3.0 / norm_h);
  } else {
    const double w = norm_h;
    s.dt = eps - (w / 3.0) * eps * eps + (2.0 * w * w / 9.0) * eps * eps * eps;
    if (!(s.dt > 0.0)) {
      throw ValidationError("fit_schedule: tightened step is not positive for this norm");
    }
  }
  s.n_c = static_cast<int>(std::ceil(s.t_c / s.dt));
  s.coefficients.resize(static_cast<std::size_t>(s.n_c) + 1);
  for (int k = 0; k <= s.n_c; ++k) {
    s.coefficients[static_cast<std::size_t>(k)] = s.dt * std::exp(-gamma * k * s.dt);
  }
  return s;
}

void lcu_resolvent_values(const FitSchedule& s, double omega,
                          std::span<const double> energies, std::span<Complex> out) {
  if (energies.size() != out.size()) {
    throw ValidationError("lcu_resolvent_values: size mismatch");
  }
  std::vector<double> detuning(energies.size());
  for (std::size_t l = 0; l < energies.size(); ++l) detuning[l] = energies[l] - omega;
  kernels::phase_sum(s.coefficients, s.dt, detuning, out);
  for (auto& v : out) v = Complex(v.imag(), -v.real());  // times -i
}

void exact_resolvent_values(double omega, double gamma,
                            std::span<const double> energies, std::span<Complex> out) {
  if (energies.size() != out.size()) {
    throw ValidationError("exact_resolvent_values: size mismatch");
  }
  if (!(gamma >= 0.0)) {
    throw ValidationError("exact_resolvent: broadening Gamma must be non-negative");
  }
  for (std::size_t l = 0; l < energies.size(); ++l) {
    const Complex z(omega - energies[l], gamma);
    if (std::abs(z) < 1e-14) {
      throw SingularityError("exact_resolvent: frequency " + std::to_string(omega) +
                             " hits an eigenvalue with zero broadening");
    }
    out[l] = 1.0 / z;
  }
}

namespace {

template <class Fill>
ComplexVector resolvent_action(const EigenDecomposition& e, const ComplexVector& v,
                               Fill&& fill) {
  if (v.size() != e.dim()) {
    throw ValidationError("resolvent: dimension mismatch");
  }
  const RealVector& lambda = e.values();
  std::vector<Complex> values(static_cast<std::size_t>(lambda.size()));
  fill(std::span<const double>(lambda.data(), static_cast<std::size_t>(lambda.size())),
       std::span<Complex>(values));
  return apply_filter(e, values, v);
}

}  // namespace

ComplexVector lcu_resolvent(const EigenDecomposition& e, double omega,
                            const FitSchedule& s, const ComplexVector& v) {
  return resolvent_action(e, v, [&](auto x, auto out) {
    lcu_resolvent_values(s, omega, x, out);
  });
}

ComplexVector exact_resolvent(const EigenDecomposition& e, double omega, double gamma,
                              const ComplexVector& v) {
  return resolvent_action(e, v, [&](auto x, auto out) {
    exact_resolvent_values(omega, gamma, x, out);
  });
}

std::vector<ResolventResult> certify(const EigenDecomposition& e,
                                     std::span<const double> omegas,
                                     const FitSchedule& s, int threads) {
  const RealVector& lambda = e.values();
  const std::span<const double> x(lambda.data(), static_cast<std::size_t>(lambda.size()));
  const double lo = lambda(0);
  const double hi = lambda(lambda.size() - 1);
  std::vector<ResolventResult> out(omegas.size());
  parallel_for(omegas.size(), threads, [&](std::size_t i) {
    std::vector<Complex> approx(x.size()), exact(x.size());
    lcu_resolvent_values(s, omegas[i], x, approx);
    exact_resolvent_values(omegas[i], s.gamma, x, exact);
    double worst = 0.0;
    for (std::size_t l = 0; l < x.size(); ++l) {
      worst = std::max(worst, std::abs(approx[l] - exact[l]));
    }
    out[i] = {omegas[i], worst, omegas[i] >= lo && omegas[i] <= hi};
  });
  return out;
}

std::vector<double> uniform_grid(double lo, double hi, int count) {
  if (count < 2 || !(hi > lo)) {
    throw ValidationError("uniform_grid: need count >= 2 and hi > lo");
  }
  std::vector<double> g(static_cast<std::size_t>(count));
  const double step = (hi - lo) / (count - 1);
  for (int i = 0; i < count; ++i) g[static_cast<std::size_t>(i)] = lo + i * step;
  g.back() = hi;
  return g;
}

}  // namespace lcugf
