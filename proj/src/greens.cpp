#include "lcugf/greens.hpp"

#include "lcugf/error.hpp"
#include "lcugf/kernels.hpp"
#include "lcugf/parallel.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace lcugf {

namespace {

// Components below this magnitude lie outside the N +- 1 sectors up to
// rounding and are skipped in the resolvent sums.
constexpr double kWeightCutoff = 1e-13;

void check_site(const FockSpectrum& fs, int j) {
  if (j < 0 || j >= fs.spec.sites) {
    throw ValidationError("greens: site index " + std::to_string(j) + " out of range");
  }
}

SparseOperator ladder(const FockSpectrum& fs, LadderKind kind, int site) {
  return jw_operator(fs.map, kind, fs.map.mode(site, Spin::up));
}

// One pole family in compressed form: energies and the two eigenbasis
// coefficient vectors whose conj(bra) * ket product is the pole weight.
struct Branch {
  std::vector<double> energy;
  std::vector<Complex> bra;
  std::vector<Complex> ket;
};

Branch make_branch(const EigenDecomposition& eig, const ComplexVector& bra_state,
                   const ComplexVector& ket_state, double e0, double sign) {
  const ComplexVector bra = eig.to_eigenbasis(bra_state);
  const ComplexVector ket = eig.to_eigenbasis(ket_state);
  Branch b;
  for (Eigen::Index l = 0; l < bra.size(); ++l) {
    if (std::abs(bra(l)) > kWeightCutoff || std::abs(ket(l)) > kWeightCutoff) {
      b.energy.push_back(sign * (eig.values()(l) - e0));
      b.bra.push_back(bra(l));
      b.ket.push_back(ket(l));
    }
  }
  return b;
}

Complex evaluate_branch(const Branch& b, double omega, double gamma, GreensMode mode,
                        const FitSchedule* schedule, std::vector<Complex>& scratch) {
  scratch.resize(b.energy.size());
  if (mode == GreensMode::resolvent_lcu) {
    lcu_resolvent_values(*schedule, omega, b.energy, scratch);
  } else {
    exact_resolvent_values(omega, gamma, b.energy, scratch);
  }
  for (std::size_t l = 0; l < scratch.size(); ++l) scratch[l] *= b.ket[l];
  return kernels::dotc(b.bra, scratch);
}

ComplexVector resolvent_action(const FockSpectrum& fs, double e0, double sign,
                               double omega, double gamma, GreensMode mode,
                               const FitSchedule* schedule, const ComplexVector& v) {
  const RealVector& lambda = fs.eig.values();
  std::vector<double> energy(static_cast<std::size_t>(lambda.size()));
  for (Eigen::Index l = 0; l < lambda.size(); ++l) {
    energy[static_cast<std::size_t>(l)] = sign * (lambda(l) - e0);
  }
  std::vector<Complex> values(energy.size());
  if (mode == GreensMode::resolvent_lcu) {
    lcu_resolvent_values(*schedule, omega, energy, values);
  } else {
    exact_resolvent_values(omega, gamma, energy, values);
  }
  return apply_filter(fs.eig, values, v);
}

}  // namespace

ComplexVector FockSpectrum::ground_state(Eigen::Index g) const {
  if (g < 0 || g >= ground_dim()) {
    throw ValidationError("FockSpectrum::ground_state: index out of range");
  }
  return eig.vectors().col(ground_indices[static_cast<std::size_t>(g)]);
}

double FockSpectrum::excitation_norm() const {
  const RealVector& v = eig.values();
  return std::max(std::abs(v(v.size() - 1) - ground_energy),
                  std::abs(v(0) - ground_energy));
}

FockSpectrum fock_spectrum(const HubbardSpec& spec, int filling) {
  validate(spec);
  const FermionModeMap map(spec.sites);
  if (filling < 0) filling = spec.sites;
  if (filling > map.num_modes()) {
    throw ValidationError("fock_spectrum: filling exceeds the number of modes");
  }
  HermitianOperator h = build_hubbard(spec);
  LabelledEigenDecomposition le =
      resolve_degeneracies(eig_hermitian(h), number_operator(map));

  std::vector<int> particles(static_cast<std::size_t>(le.labels.size()));
  for (Eigen::Index l = 0; l < le.labels.size(); ++l) {
    const double n = le.labels(l);
    const double rounded = std::round(n);
    if (std::abs(n - rounded) > 1e-6) {
      throw ConsistencyError("fock_spectrum: eigenvector without sharp particle number");
    }
    particles[static_cast<std::size_t>(l)] = static_cast<int>(rounded);
  }

  double e0 = 0.0;
  bool found = false;
  for (std::size_t l = 0; l < particles.size(); ++l) {
    if (particles[l] == filling) {
      e0 = le.eig.values()(static_cast<Eigen::Index>(l));
      found = true;
      break;
    }
  }
  if (!found) {
    throw ValidationError("fock_spectrum: empty particle-number sector");
  }
  std::vector<Eigen::Index> ground;
  const double tol = kDegeneracyTol * std::max(1.0, std::abs(e0));
  for (std::size_t l = 0; l < particles.size(); ++l) {
    const double e = le.eig.values()(static_cast<Eigen::Index>(l));
    if (particles[l] == filling && e - e0 <= tol) {
      ground.push_back(static_cast<Eigen::Index>(l));
    }
  }
  return FockSpectrum{spec,        map,     std::move(h), std::move(le.eig),
                      std::move(particles), filling, e0,  std::move(ground)};
}

std::string_view mode_name(GreensMode m) {
  switch (m) {
    case GreensMode::lehmann: return "lehmann";
    case GreensMode::resolvent_exact: return "exact";
    case GreensMode::resolvent_lcu: return "lcu";
  }
  return "?";
}

Complex LehmannData::total_weight() const {
  Complex sum = 0.0;
  for (const auto& p : particle) sum += p.weight;
  for (const auto& p : hole) sum += p.weight;
  return sum;
}

Complex LehmannData::evaluate(double omega, double delta) const {
  Complex g = 0.0;
  for (const auto& p : particle) g += p.weight / Complex(omega - p.energy, delta);
  for (const auto& p : hole) g += p.weight / Complex(omega + p.energy, delta);
  return g;
}

LehmannData lehmann_data(const FockSpectrum& fs, Eigen::Index ground, int j, int jprime) {
  check_site(fs, j);
  check_site(fs, jprime);
  const ComplexVector psi = fs.ground_state(ground);
  const ComplexVector add_j = fs.eig.to_eigenbasis(ladder(fs, LadderKind::creation, j) * psi);
  const ComplexVector add_jp =
      fs.eig.to_eigenbasis(ladder(fs, LadderKind::creation, jprime) * psi);
  const ComplexVector rem_j =
      fs.eig.to_eigenbasis(ladder(fs, LadderKind::annihilation, j) * psi);
  const ComplexVector rem_jp =
      fs.eig.to_eigenbasis(ladder(fs, LadderKind::annihilation, jprime) * psi);

  LehmannData d;
  d.ground_energy = fs.ground_energy;
  const RealVector& e = fs.eig.values();
  for (Eigen::Index l = 0; l < e.size(); ++l) {
    const int n = fs.particles[static_cast<std::size_t>(l)];
    if (n == fs.filling + 1) {
      d.particle.push_back({e(l) - fs.ground_energy, std::conj(add_jp(l)) * add_j(l)});
    } else if (n == fs.filling - 1) {
      d.hole.push_back({e(l) - fs.ground_energy, std::conj(rem_j(l)) * rem_jp(l)});
    }
  }
  if (d.particle.empty() && d.hole.empty()) {
    throw ValidationError("lehmann_data: both neighbouring sectors are empty");
  }
  return d;
}

GreensSeries lehmann_greens(const FockSpectrum& fs, int j, int jprime,
                            std::span<const double> omegas, double delta, int threads) {
  if (!(delta > 0.0)) {
    throw ValidationError("lehmann_greens: broadening must be positive");
  }
  std::vector<LehmannData> data;
  for (Eigen::Index g = 0; g < fs.ground_dim(); ++g) {
    data.push_back(lehmann_data(fs, g, j, jprime));
  }
  GreensSeries s{{omegas.begin(), omegas.end()},
                 std::vector<Complex>(omegas.size()),
                 GreensMode::lehmann, delta, j, jprime};
  const double w = 1.0 / static_cast<double>(data.size());
  parallel_for(omegas.size(), threads, [&](std::size_t i) {
    Complex g = 0.0;
    for (const auto& d : data) g += d.evaluate(omegas[i], delta);
    s.values[i] = w * g;
  });
  return s;
}

FitSchedule greens_schedule(const FockSpectrum& fs, double gamma, double eps) {
  return fit_schedule(gamma, eps, fs.excitation_norm());
}

GreensSeries resolvent_greens(const FockSpectrum& fs, const std::vector<ComplexVector>& ground,
                              int j, int jprime, std::span<const double> omegas,
                              double gamma, GreensMode mode, double eps, int threads) {
  check_site(fs, j);
  check_site(fs, jprime);
  if (mode == GreensMode::lehmann) {
    throw ValidationError("resolvent_greens: mode must be exact or lcu");
  }
  if (ground.empty()) {
    throw ValidationError("resolvent_greens: ground-state set is empty");
  }
  if (!(gamma > 0.0)) {
    throw ValidationError("resolvent_greens: broadening Gamma must be positive");
  }
  const SparseOperator cj = ladder(fs, LadderKind::creation, j);
  const SparseOperator cjp = ladder(fs, LadderKind::creation, jprime);
  const SparseOperator aj = ladder(fs, LadderKind::annihilation, j);
  const SparseOperator ajp = ladder(fs, LadderKind::annihilation, jprime);

  std::vector<Branch> particle, hole;
  for (const auto& psi : ground) {
    if (psi.size() != fs.eig.dim()) {
      throw ValidationError("resolvent_greens: ground-state dimension mismatch");
    }
    const double e0 = fs.hamiltonian.apply(psi).dot(psi).real() / psi.squaredNorm();
    particle.push_back(make_branch(fs.eig, cjp * psi, cj * psi, e0, 1.0));
    hole.push_back(make_branch(fs.eig, aj * psi, ajp * psi, e0, -1.0));
  }
  FitSchedule schedule;
  if (mode == GreensMode::resolvent_lcu) schedule = greens_schedule(fs, gamma, eps);

  GreensSeries s{{omegas.begin(), omegas.end()},
                 std::vector<Complex>(omegas.size()), mode, gamma, j, jprime};
  const double w = 1.0 / static_cast<double>(ground.size());
  parallel_for(omegas.size(), threads, [&](std::size_t i) {
    std::vector<Complex> scratch;
    Complex g = 0.0;
    for (std::size_t k = 0; k < ground.size(); ++k) {
      g += evaluate_branch(particle[k], omegas[i], gamma, mode, &schedule, scratch);
      g += evaluate_branch(hole[k], omegas[i], gamma, mode, &schedule, scratch);
    }
    s.values[i] = w * g;
  });
  return s;
}

GreensSeries resolvent_greens(const FockSpectrum& fs, int j, int jprime,
                              std::span<const double> omegas, double gamma,
                              GreensMode mode, double eps, int threads) {
  std::vector<ComplexVector> ground;
  for (Eigen::Index g = 0; g < fs.ground_dim(); ++g) ground.push_back(fs.ground_state(g));
  return resolvent_greens(fs, ground, j, jprime, omegas, gamma, mode, eps, threads);
}

std::pair<SparseOperator, SparseOperator> majorana_pair(const FermionModeMap& map, int mode) {
  const SparseOperator c = jw_operator(map, LadderKind::annihilation, mode);
  const SparseOperator cd = jw_operator(map, LadderKind::creation, mode);
  SparseOperator b0 = c + cd;
  SparseOperator b1 = Complex(0.0, 1.0) * SparseOperator(c - cd);
  return {std::move(b0), std::move(b1)};
}

MajoranaComparison majorana_check(const FockSpectrum& fs, const ComplexVector& ground,
                                  int j, int jprime, double omega, double gamma,
                                  GreensMode mode, double eps) {
  check_site(fs, j);
  check_site(fs, jprime);
  if (mode == GreensMode::lehmann) {
    throw ValidationError("majorana_check: mode must be exact or lcu");
  }
  if (ground.size() != fs.eig.dim()) {
    throw ValidationError("majorana_check: ground-state dimension mismatch");
  }
  FitSchedule schedule;
  if (mode == GreensMode::resolvent_lcu) schedule = greens_schedule(fs, gamma, eps);
  const double e0 = fs.hamiltonian.apply(ground).dot(ground).real() / ground.squaredNorm();
  auto hplus = [&](const ComplexVector& v) {
    return resolvent_action(fs, e0, 1.0, omega, gamma, mode, &schedule, v);
  };
  auto hminus = [&](const ComplexVector& v) {
    return resolvent_action(fs, e0, -1.0, omega, gamma, mode, &schedule, v);
  };
  auto expect = [&](const SparseOperator& left, const ComplexVector& middle) {
    return inner(ground, left * middle);
  };

  const SparseOperator cj = ladder(fs, LadderKind::creation, j);
  const SparseOperator ajp = ladder(fs, LadderKind::annihilation, jprime);
  MajoranaComparison out;
  out.direct = expect(ajp, hplus(cj * ground)) + expect(cj, hminus(ajp * ground));

  const auto [b0j, b1j] = majorana_pair(fs.map, fs.map.mode(j, Spin::up));
  const auto [b0p, b1p] = majorana_pair(fs.map, fs.map.mode(jprime, Spin::up));
  const Complex i(0.0, 1.0);
  const ComplexVector p0 = hplus(b0j * ground);
  const ComplexVector p1 = hplus(b1j * ground);
  const ComplexVector m0 = hminus(b0p * ground);
  const ComplexVector m1 = hminus(b1p * ground);
  out.majorana = 0.25 * (expect(b0p, p0) + i * expect(b0p, p1) - i * expect(b1p, p0) +
                         expect(b1p, p1) + expect(b0j, m0) - i * expect(b0j, m1) +
                         i * expect(b1j, m0) + expect(b1j, m1));
  return out;
}

GreensSeries degeneracy_average(const std::vector<GreensSeries>& series) {
  if (series.empty()) {
    throw ValidationError("degeneracy_average: no series");
  }
  GreensSeries out = series.front();
  for (std::size_t k = 1; k < series.size(); ++k) {
    if (series[k].omega != out.omega || series[k].mode != out.mode) {
      throw ValidationError("degeneracy_average: series differ in grid or mode");
    }
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += series[k].values[i];
  }
  const double w = 1.0 / static_cast<double>(series.size());
  for (auto& v : out.values) v *= w;
  return out;
}

LdosSeries ldos(const GreensSeries& g, double negative_tol) {
  if (g.j != g.jprime) {
    throw ValidationError("ldos: needs a diagonal Green's function (j = j')");
  }
  LdosSeries s;
  s.omega = g.omega;
  s.values.resize(g.values.size());
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    const double v = -g.values[i].imag() / std::numbers::pi;
    if (v < -negative_tol) {
      throw ConsistencyError("ldos: negative density " + std::to_string(v) +
                             " at omega = " + std::to_string(g.omega[i]));
    }
    s.values[i] = std::max(v, 0.0);
  }
  return s;
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw ValidationError("trapezoid: need at least two matching points");
  }
  double sum = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    sum += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  }
  return sum;
}

LdosSeries grid_normalize(const LdosSeries& s) {
  const double area = trapezoid(s.omega, s.values);
  if (!(area > 0.0)) {
    throw DegenerateInputError("grid_normalize: density integrates to zero");
  }
  LdosSeries out = s;
  for (auto& v : out.values) v /= area;
  out.integral = area;
  out.normalized = true;
  return out;
}

}  // namespace lcugf
