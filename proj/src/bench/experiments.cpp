#include "lcugf/bench/experiments.hpp"

#include "lcugf/error.hpp"
#include "lcugf/gap_amp.hpp"
#include "lcugf/greens.hpp"
#include "lcugf/lcu_gsp.hpp"
#include "lcugf/models.hpp"
#include "lcugf/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <optional>

namespace lcugf::bench {

namespace {

const std::vector<KeyInfo> kHubbardKeys = {
    {"hopping", "1", "hopping amplitude t"},
    {"interaction", "8", "on-site repulsion U"},
    {"chemical_potential", "0", "chemical potential mu"},
};

const std::vector<KeyInfo> kSweepKeys = {
    {"epsilon", "0.01", "target infidelity"},
    {"grid_points", "30", "schedule strengths per sweep, endpoint included"},
    {"step_rule", "balanced", "quadrature step: balanced (z'_c) or simple (z_c)"},
    {"gap", "0", "gap lower bound in normalized units; 0 uses the exact gap"},
};

std::vector<KeyInfo> concat(std::initializer_list<std::vector<KeyInfo>> parts) {
  std::vector<KeyInfo> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

const std::vector<ExperimentInfo>& build_catalog() {
  static const std::vector<ExperimentInfo> catalog = {
      {"gsp-xxz",
       "Ground-state preparation sweeps on the open q-XXZ chain, with and without gap "
       "amplification.",
       concat({{{"sites", "4, 6, 8, 10", "chain lengths"},
                {"q", "1", "deformation parameter"},
                {"weight", "-1", "Hamming weight of the trial string; -1 means L/2"},
                {"methods", "hs, geCosM, hs+gapamp", "preparation methods"}},
               kSweepKeys}),
       {"gsp-xxz.csv", "gsp-xxz-gaps.csv"}},
      {"gsp-hubbard",
       "Infidelity sweeps for the periodic Hubbard chain from a Neel trial state.",
       concat({{{"sites", "2, 3, 4, 5", "chain lengths"},
                {"precision", "0", "ground-energy precision delta_0 of the normalization"},
                {"methods", "hs, geCosM", "preparation methods"}},
               kHubbardKeys, kSweepKeys}),
       {"gsp-hubbard.csv"}},
      {"gse-hubbard",
       "Energy-error sweeps for the periodic Hubbard chain, with the exact gaps.",
       concat({{{"sites", "2, 3, 4, 5", "chain lengths"},
                {"precision", "0", "ground-energy precision delta_0 of the normalization"},
                {"methods", "hs, geCosM", "preparation methods"}},
               kHubbardKeys, kSweepKeys}),
       {"gse-hubbard.csv", "gse-hubbard-gaps.csv"}},
      {"ldos-hubbard",
       "Local density of states of the Hubbard chain from exact and LCU resolvents.",
       concat({{{"sites", "2, 3, 4, 5", "chain lengths"},
                {"site", "0", "lattice site j (spin up)"},
                {"gamma", "0.1", "broadening Gamma"},
                {"eps_prime", "0.05", "resolvent error target eps'"},
                {"omega_min", "-8", "lowest frequency"},
                {"omega_max", "8", "highest frequency"},
                {"omega_count", "801", "frequency grid points"},
                {"modes", "exact, lcu", "any of lehmann, exact, lcu"}},
               kHubbardKeys}),
       {"ldos-hubbard.csv"}},
      {"resolvent-certify",
       "Operator-norm error of the LCU resolvent of the normalized Hubbard Hamiltonian.",
       concat({{{"sites", "2, 3", "chain lengths"},
                {"gamma", "0.1", "broadening Gamma"},
                {"eps_prime", "0.05", "resolvent error target eps'"},
                {"omega_min", "0", "lowest frequency"},
                {"omega_max", "1", "highest frequency"},
                {"omega_count", "801", "frequency grid points"},
                {"step_rule", "practical", "time step: practical or tightened"}},
               kHubbardKeys}),
       {"resolvent-certify.csv"}},
  };
  return catalog;
}

// ---------------------------------------------------------------------------
// Typed parameters

struct SweepParams {
  double epsilon = 0.01;
  int grid_points = 30;
  StepRule rule = StepRule::balanced;
  double gap = 0.0;
  std::vector<GspMethod> methods;
};

struct XxzParams {
  std::vector<int> sites;
  double q = 1.0;
  int weight = -1;
  SweepParams sweep;
};

struct HubbardSweepParams {
  std::vector<int> sites;
  HubbardSpec model;
  double precision = 0.0;
  SweepParams sweep;
};

struct LdosParams {
  std::vector<int> sites;
  HubbardSpec model;
  int site = 0;
  double gamma = 0.1;
  double eps = 0.05;
  double omega_min = -8.0;
  double omega_max = 8.0;
  int omega_count = 801;
  std::vector<GreensMode> modes;
};

struct CertifyParams {
  std::vector<int> sites;
  HubbardSpec model;
  double gamma = 0.1;
  double eps = 0.05;
  double omega_min = 0.0;
  double omega_max = 1.0;
  int omega_count = 801;
  TimeStepRule rule = TimeStepRule::practical;
};

double num(const SectionReader& r, const std::string& key) {
  const auto& info = find_experiment(r.name());
  for (const auto& k : info.keys) {
    if (k.key == key) return r.real(key, std::stod(k.fallback));
  }
  throw std::logic_error("undocumented key " + key);
}

int whole(const SectionReader& r, const std::string& key) {
  const auto& info = find_experiment(r.name());
  for (const auto& k : info.keys) {
    if (k.key == key) return r.integer(key, std::stoi(k.fallback));
  }
  throw std::logic_error("undocumented key " + key);
}

std::vector<std::string> list(const SectionReader& r, const std::string& key) {
  const auto& info = find_experiment(r.name());
  for (const auto& k : info.keys) {
    if (k.key == key) return r.words(key, split_list(k.fallback));
  }
  throw std::logic_error("undocumented key " + key);
}

std::vector<int> site_list(const SectionReader& r) {
  std::vector<int> out;
  for (const auto& w : list(r, "sites")) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(w, &used));
      if (used != w.size()) throw std::invalid_argument(w);
    } catch (const std::logic_error&) {
      throw ValidationError("[" + r.name() + "] sites: expected integers, got '" + w + "'");
    }
  }
  return out;
}

HubbardSpec hubbard_model(const SectionReader& r) {
  HubbardSpec m;
  m.hopping = num(r, "hopping");
  m.interaction = num(r, "interaction");
  m.chemical_potential = num(r, "chemical_potential");
  return m;
}

SweepParams sweep_params(const SectionReader& r) {
  SweepParams p;
  p.epsilon = num(r, "epsilon");
  p.grid_points = whole(r, "grid_points");
  p.gap = num(r, "gap");
  const std::string rule = r.text("step_rule", "balanced");
  if (rule == "balanced") {
    p.rule = StepRule::balanced;
  } else if (rule == "simple") {
    p.rule = StepRule::simple;
  } else {
    throw ValidationError("[" + r.name() + "] step_rule: expected balanced or simple");
  }
  for (const auto& m : list(r, "methods")) p.methods.push_back(parse_method(m));
  if (!(p.epsilon > 0.0 && p.epsilon < 1.0)) {
    throw ValidationError("[" + r.name() + "] epsilon: target infidelity must lie in (0, 1)");
  }
  if (p.grid_points < 2) {
    throw ValidationError("[" + r.name() + "] grid_points: need at least 2");
  }
  if (!(p.gap >= 0.0 && p.gap <= 1.0)) {
    throw ValidationError("[" + r.name() + "] gap: must lie in [0, 1]");
  }
  return p;
}

void check_grid(const std::string& name, double lo, double hi, int count) {
  if (count < 2 || !(hi > lo)) {
    throw ValidationError("[" + name + "] frequency grid: need omega_count >= 2 and "
                          "omega_max > omega_min");
  }
}

XxzParams parse_xxz(const SectionReader& r) {
  XxzParams p;
  p.sites = site_list(r);
  p.q = num(r, "q");
  p.weight = whole(r, "weight");
  p.sweep = sweep_params(r);
  for (int l : p.sites) {
    validate(QxxzSpec{l, p.q});
    if (p.weight > l) {
      throw ValidationError("[gsp-xxz] weight: exceeds chain length " + std::to_string(l));
    }
  }
  return p;
}

HubbardSweepParams parse_hubbard_sweep(const SectionReader& r) {
  HubbardSweepParams p;
  p.sites = site_list(r);
  p.model = hubbard_model(r);
  p.precision = num(r, "precision");
  p.sweep = sweep_params(r);
  if (!(p.precision >= 0.0 && p.precision < 1.0)) {
    throw ValidationError("[" + r.name() + "] precision: must lie in [0, 1)");
  }
  for (int l : p.sites) {
    HubbardSpec s = p.model;
    s.sites = l;
    validate(s);
  }
  return p;
}

LdosParams parse_ldos(const SectionReader& r) {
  LdosParams p;
  p.sites = site_list(r);
  p.model = hubbard_model(r);
  p.site = whole(r, "site");
  p.gamma = num(r, "gamma");
  p.eps = num(r, "eps_prime");
  p.omega_min = num(r, "omega_min");
  p.omega_max = num(r, "omega_max");
  p.omega_count = whole(r, "omega_count");
  for (const auto& m : list(r, "modes")) {
    if (m == "lehmann") {
      p.modes.push_back(GreensMode::lehmann);
    } else if (m == "exact") {
      p.modes.push_back(GreensMode::resolvent_exact);
    } else if (m == "lcu") {
      p.modes.push_back(GreensMode::resolvent_lcu);
    } else {
      throw ValidationError("[ldos-hubbard] modes: unknown mode '" + m + "'");
    }
  }
  fit_schedule(p.gamma, p.eps, 1.0);  // resolvent preconditions on Gamma, eps'
  check_grid(r.name(), p.omega_min, p.omega_max, p.omega_count);
  for (int l : p.sites) {
    HubbardSpec s = p.model;
    s.sites = l;
    validate(s);
    if (p.site < 0 || p.site >= l) {
      throw ValidationError("[ldos-hubbard] site: out of range for L = " + std::to_string(l));
    }
  }
  return p;
}

CertifyParams parse_certify(const SectionReader& r) {
  CertifyParams p;
  p.sites = site_list(r);
  p.model = hubbard_model(r);
  p.gamma = num(r, "gamma");
  p.eps = num(r, "eps_prime");
  p.omega_min = num(r, "omega_min");
  p.omega_max = num(r, "omega_max");
  p.omega_count = whole(r, "omega_count");
  const std::string rule = r.text("step_rule", "practical");
  if (rule == "practical") {
    p.rule = TimeStepRule::practical;
  } else if (rule == "tightened") {
    p.rule = TimeStepRule::tightened;
  } else {
    throw ValidationError("[resolvent-certify] step_rule: expected practical or tightened");
  }
  fit_schedule(p.gamma, p.eps, 1.0, p.rule);
  check_grid(r.name(), p.omega_min, p.omega_max, p.omega_count);
  for (int l : p.sites) {
    HubbardSpec s = p.model;
    s.sites = l;
    validate(s);
  }
  return p;
}

// log2 of the largest Hilbert-space dimension the section will build.
int largest_log2_dim(const ConfigSection& s) {
  const SectionReader r(s);
  const auto sites = site_list(r);
  const int l = *std::max_element(sites.begin(), sites.end());
  return s.name == "gsp-xxz" ? l : 2 * l;
}

// ---------------------------------------------------------------------------
// Runs

const std::vector<std::string> kSweepHeader = {
    "method", "model", "L", "gridIndex", "scheduleParam", "t_H", "infidelity_exactOp",
    "infidelity_lcu", "energyError_exactOp", "energyError_lcu", "successWeight"};

void add_sweep_rows(CsvTable& t, const std::vector<SweepRecord>& records) {
  for (const auto& r : records) {
    for (double v : {r.infidelity_exact, r.infidelity_lcu}) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw ConsistencyError("sweep: infidelity outside [0, 1]");
      }
    }
    if (!(r.success_weight > 0.0 && r.success_weight <= 1.1)) {
      throw ConsistencyError("sweep: success weight outside (0, 1.1]");
    }
    t.add_row({r.method, r.model, std::to_string(r.sites), std::to_string(r.grid_index),
               format_double(r.schedule_param), format_double(r.query_time),
               format_double(r.infidelity_exact), format_double(r.infidelity_lcu),
               format_double(r.energy_error_exact), format_double(r.energy_error_lcu),
               format_double(r.success_weight)});
  }
}

const std::vector<std::string> kGapHeader = {"model", "L", "spectralGap", "groundDim",
                                             "overlap", "lambda0", "scale", "shift"};

void add_gap_row(CsvTable& t, const std::string& model, int sites,
                 const NormalizedHamiltonian& h, double overlap) {
  t.add_row({model, std::to_string(sites), format_double(h.spectral_gap),
             std::to_string(h.ground_dim), format_double(overlap), format_double(h.lambda0),
             format_double(h.scale), format_double(h.shift)});
}

std::vector<CsvTable> run_xxz(const XxzParams& p, const RunOptions& opt) {
  CsvTable sweeps("gsp-xxz.csv", kSweepHeader);
  CsvTable gaps("gsp-xxz-gaps.csv", kGapHeader);
  for (int l : p.sites) {
    const QxxzHamiltonian model = build_qxxz({l, p.q});
    const NormalizedHamiltonian h = normalize_spectrum(model.total);
    const StateVector trial = hamming_state(l, p.weight < 0 ? l / 2 : p.weight);

    std::optional<AmplifiedHamiltonian> amp;
    std::optional<AmplifiedSpectrum> spectrum;
    const bool needs_amp = std::find(p.sweep.methods.begin(), p.sweep.methods.end(),
                                     GspMethod::hs_gapamp) != p.sweep.methods.end();
    if (needs_amp) {
      amp.emplace(build_amplified(model.local_terms, h.scale));
      spectrum.emplace(*amp, h);
    }
    SweepProblem problem{"qxxz", l, &h, spectrum ? &*spectrum : nullptr, trial,
                         p.sweep.epsilon, p.sweep.gap, p.sweep.rule};
    for (GspMethod m : p.sweep.methods) {
      add_sweep_rows(sweeps, fidelity_sweep(problem, m, p.sweep.grid_points, opt.threads));
    }
    add_gap_row(gaps, "qxxz", l, h, ground_overlap(h, trial));
  }
  std::vector<CsvTable> out;
  out.push_back(std::move(sweeps));
  out.push_back(std::move(gaps));
  return out;
}

std::vector<CsvTable> run_hubbard_sweep(const std::string& name,
                                        const HubbardSweepParams& p,
                                        const RunOptions& opt, bool with_gaps) {
  CsvTable sweeps(name + ".csv", kSweepHeader);
  CsvTable gaps(name + "-gaps.csv", kGapHeader);
  for (int l : p.sites) {
    HubbardSpec spec = p.model;
    spec.sites = l;
    const NormalizedHamiltonian h = normalize_spectrum(build_hubbard(spec), p.precision);
    const StateVector trial = neel_state(spec);
    SweepProblem problem{"hubbard", l, &h, nullptr, trial,
                         p.sweep.epsilon, p.sweep.gap, p.sweep.rule};
    for (GspMethod m : p.sweep.methods) {
      add_sweep_rows(sweeps, fidelity_sweep(problem, m, p.sweep.grid_points, opt.threads));
    }
    add_gap_row(gaps, "hubbard", l, h, ground_overlap(h, trial));
  }
  std::vector<CsvTable> out;
  out.push_back(std::move(sweeps));
  if (with_gaps) out.push_back(std::move(gaps));
  return out;
}

std::vector<CsvTable> run_ldos(const LdosParams& p, const RunOptions& opt) {
  CsvTable t("ldos-hubbard.csv", {"model", "L", "j", "jprime", "omega", "gamma", "mode",
                                  "reG", "imG", "ldos", "ldosNormalized"});
  const auto grid = uniform_grid(p.omega_min, p.omega_max, p.omega_count);
  for (int l : p.sites) {
    HubbardSpec spec = p.model;
    spec.sites = l;
    const FockSpectrum fs = fock_spectrum(spec);
    for (GreensMode mode : p.modes) {
      GreensSeries g =
          mode == GreensMode::lehmann
              ? lehmann_greens(fs, p.site, p.site, grid, p.gamma, opt.threads)
              : resolvent_greens(fs, p.site, p.site, grid, p.gamma, mode, p.eps, opt.threads);
      // The LCU resolvent is certified to eps' in operator norm, which bounds
      // the density error by eps' / pi.
      const double tol = mode == GreensMode::resolvent_lcu ? p.eps / std::numbers::pi : 1e-9;
      const LdosSeries raw = ldos(g, tol);
      const LdosSeries norm = grid_normalize(raw);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        t.add_row({"hubbard", std::to_string(l), std::to_string(p.site),
                   std::to_string(p.site), format_double(grid[i]), format_double(p.gamma),
                   std::string(mode_name(mode)), format_double(g.values[i].real()),
                   format_double(g.values[i].imag()), format_double(raw.values[i]),
                   format_double(norm.values[i])});
      }
    }
  }
  std::vector<CsvTable> out;
  out.push_back(std::move(t));
  return out;
}

std::vector<CsvTable> run_certify(const CertifyParams& p, const RunOptions& opt) {
  CsvTable t("resolvent-certify.csv",
             {"model", "L", "omega", "gamma", "epsPrime", "N_c", "errorNorm", "l1Alpha"});
  const auto grid = uniform_grid(p.omega_min, p.omega_max, p.omega_count);
  for (int l : p.sites) {
    HubbardSpec spec = p.model;
    spec.sites = l;
    const NormalizedHamiltonian h = normalize_spectrum(build_hubbard(spec));
    const RealVector& v = h.eig.values();
    const double norm = std::max(std::abs(v(0)), std::abs(v(v.size() - 1)));
    const FitSchedule s = fit_schedule(p.gamma, p.eps, norm, p.rule);
    if (s.l1() > (1.0 / s.gamma) * (1.0 + s.gamma * s.eps)) {
      throw ConsistencyError("resolvent-certify: coefficient l1 norm exceeds its bound");
    }
    for (const auto& r : certify(h.eig, grid, s, opt.threads)) {
      t.add_row({"hubbard", std::to_string(l), format_double(r.omega),
                 format_double(p.gamma), format_double(p.eps), std::to_string(s.n_c),
                 format_double(r.error_norm), format_double(s.l1())});
    }
  }
  std::vector<CsvTable> out;
  out.push_back(std::move(t));
  return out;
}

void check_keys(const ConfigSection& s, const ExperimentInfo& info) {
  for (const auto& [key, value] : s.values) {
    const bool known = std::any_of(info.keys.begin(), info.keys.end(),
                                   [&](const KeyInfo& k) { return k.key == key; });
    if (!known) {
      throw ValidationError("[" + s.name + "] unknown key '" + key + "'");
    }
  }
}

// Parses everything the run needs; throws on the first problem.
void parse_section(const ConfigSection& s) {
  const SectionReader r(s);
  check_keys(s, find_experiment(s.name));
  if (s.name == "gsp-xxz") {
    parse_xxz(r);
  } else if (s.name == "gsp-hubbard" || s.name == "gse-hubbard") {
    const auto p = parse_hubbard_sweep(r);
    for (GspMethod m : p.sweep.methods) {
      if (m == GspMethod::hs_gapamp) {
        throw ValidationError("[" + s.name + "] methods: hs+gapamp needs a projector "
                              "decomposition; the Hubbard chain has none");
      }
    }
  } else if (s.name == "ldos-hubbard") {
    parse_ldos(r);
  } else {
    parse_certify(r);
  }
}

}  // namespace

const std::vector<ExperimentInfo>& experiment_catalog() { return build_catalog(); }

const ExperimentInfo& find_experiment(std::string_view name) {
  for (const auto& e : build_catalog()) {
    if (e.name == name) return e;
  }
  throw ValidationError("unknown experiment '" + std::string(name) + "'");
}

std::map<std::string, std::string> effective_parameters(const ConfigSection& s) {
  std::map<std::string, std::string> out;
  for (const auto& k : find_experiment(s.name).keys) out[k.key] = k.fallback;
  for (const auto& [k, v] : s.values) out[k] = v;
  return out;
}

std::vector<Diagnostic> validate_section(const ConfigSection& s, const RunOptions& opt) {
  std::vector<Diagnostic> out;
  try {
    parse_section(s);
    const int log2_dim = largest_log2_dim(s);
    if (log2_dim > kMaxLog2Dim) {
      const std::string what = "Hilbert-space dimension 2^" + std::to_string(log2_dim) +
                               " exceeds the resource limit 2^" +
                               std::to_string(kMaxLog2Dim);
      if (opt.override_size) {
        out.push_back({Diagnostic::Level::warning, s.name,
                       what + "; running anyway (--override-size)"});
      } else {
        out.push_back({Diagnostic::Level::warning, s.name,
                       what + "; run refuses it without --override-size"});
      }
    }
  } catch (const ValidationError& e) {
    out.push_back({Diagnostic::Level::error, s.name, e.what()});
  }
  return out;
}

std::vector<CsvTable> run_section(const ConfigSection& s, const RunOptions& opt) {
  for (const auto& d : validate_section(s, opt)) {
    if (d.level == Diagnostic::Level::error) throw ValidationError(d.message);
  }
  if (!opt.override_size && largest_log2_dim(s) > kMaxLog2Dim) {
    throw ValidationError("[" + s.name + "] Hilbert-space dimension 2^" +
                          std::to_string(largest_log2_dim(s)) +
                          " exceeds the resource limit; pass --override-size to run it");
  }
  const SectionReader r(s);
  if (s.name == "gsp-xxz") return run_xxz(parse_xxz(r), opt);
  if (s.name == "gsp-hubbard") return run_hubbard_sweep(s.name, parse_hubbard_sweep(r), opt, false);
  if (s.name == "gse-hubbard") return run_hubbard_sweep(s.name, parse_hubbard_sweep(r), opt, true);
  if (s.name == "ldos-hubbard") return run_ldos(parse_ldos(r), opt);
  return run_certify(parse_certify(r), opt);
}

}  // namespace lcugf::bench
