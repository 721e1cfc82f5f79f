#include "lcugf/models.hpp"

#include "lcugf/error.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

namespace lcugf {

namespace {

using Triplet = Eigen::Triplet<Complex>;

// Jordan-Wigner sign of moving past all occupied modes below `mode`.
double jw_sign(std::uint64_t state, int mode) {
  const std::uint64_t below = state & ((std::uint64_t{1} << mode) - 1);
  return (std::popcount(below) % 2 == 0) ? 1.0 : -1.0;
}

bool occupied(std::uint64_t state, int mode) {
  return ((state >> mode) & 1U) != 0;
}

SparseOperator from_triplets(Eigen::Index dim, const std::vector<Triplet>& t) {
  SparseOperator m(dim, dim);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

}  // namespace

FermionModeMap::FermionModeMap(int sites) : sites_(sites) {
  if (sites < 1 || sites > 15) {
    throw ValidationError("FermionModeMap: site count must be in [1, 15]");
  }
}

int FermionModeMap::mode(int site, Spin spin) const {
  if (site < 0 || site >= sites_) {
    throw ValidationError("FermionModeMap: site " + std::to_string(site) +
                          " out of range");
  }
  return 2 * site + static_cast<int>(spin);
}

int FermionModeMap::site_of(int mode) const {
  if (mode < 0 || mode >= num_modes()) {
    throw ValidationError("FermionModeMap: mode out of range");
  }
  return mode / 2;
}

Spin FermionModeMap::spin_of(int mode) const {
  if (mode < 0 || mode >= num_modes()) {
    throw ValidationError("FermionModeMap: mode out of range");
  }
  return static_cast<Spin>(mode % 2);
}

SparseOperator jw_operator(const FermionModeMap& map, LadderKind kind, int mode) {
  if (mode < 0 || mode >= map.num_modes()) {
    throw ValidationError("jw_operator: mode " + std::to_string(mode) +
                          " out of range for " +
                          std::to_string(map.num_modes()) + " modes");
  }
  const Eigen::Index dim = map.fock_dim();
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(dim / 2));
  for (std::uint64_t s = 0; s < static_cast<std::uint64_t>(dim); ++s) {
    if (occupied(s, mode)) continue;
    const std::uint64_t raised = s | (std::uint64_t{1} << mode);
    const double sign = jw_sign(s, mode);
    if (kind == LadderKind::creation) {
      t.emplace_back(static_cast<Eigen::Index>(raised),
                     static_cast<Eigen::Index>(s), sign);
    } else {
      t.emplace_back(static_cast<Eigen::Index>(s),
                     static_cast<Eigen::Index>(raised), sign);
    }
  }
  return from_triplets(dim, t);
}

HermitianOperator number_operator(const FermionModeMap& map) {
  const Eigen::Index dim = map.fock_dim();
  std::vector<Triplet> t;
  for (std::uint64_t s = 1; s < static_cast<std::uint64_t>(dim); ++s) {
    t.emplace_back(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s),
                   static_cast<double>(std::popcount(s)));
  }
  return HermitianOperator(from_triplets(dim, t));
}

void validate(const HubbardSpec& spec) {
  if (spec.sites < 2) {
    throw ValidationError("HubbardSpec: need at least 2 sites");
  }
  if (spec.sites > 15) {
    throw ValidationError("HubbardSpec: more than 15 sites is not addressable");
  }
  if (!std::isfinite(spec.hopping) || !std::isfinite(spec.interaction) ||
      !std::isfinite(spec.chemical_potential)) {
    throw ValidationError("HubbardSpec: parameters must be finite");
  }
}

std::vector<std::pair<int, int>> periodic_bonds(int sites) {
  std::vector<std::pair<int, int>> bonds;
  if (sites == 2) {
    bonds.emplace_back(0, 1);
    return bonds;
  }
  for (int i = 0; i < sites; ++i) {
    bonds.emplace_back(i, (i + 1) % sites);
  }
  return bonds;
}

HermitianOperator build_hubbard(const HubbardSpec& spec) {
  validate(spec);
  const FermionModeMap map(spec.sites);
  const Eigen::Index dim = map.fock_dim();
  const auto bonds = periodic_bonds(spec.sites);

  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(dim) * (1 + 4 * bonds.size()));
  for (std::uint64_t s = 0; s < static_cast<std::uint64_t>(dim); ++s) {
    double diag = 0.0;
    for (int i = 0; i < spec.sites; ++i) {
      const double nu = occupied(s, map.mode(i, Spin::up)) ? 1.0 : 0.0;
      const double nd = occupied(s, map.mode(i, Spin::down)) ? 1.0 : 0.0;
      diag += spec.interaction * (nu - 0.5) * (nd - 0.5);
      diag -= spec.chemical_potential * (nu + nd);
    }
    t.emplace_back(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s), diag);

    for (const auto& [i, j] : bonds) {
      for (Spin spin : {Spin::up, Spin::down}) {
        const int mi = map.mode(i, spin);
        const int mj = map.mode(j, spin);
        for (const auto& [to, from] : {std::pair{mi, mj}, std::pair{mj, mi}}) {
          // c^dagger_to c_from acting on |s>
          if (!occupied(s, from) || occupied(s, to)) continue;
          const std::uint64_t lowered = s ^ (std::uint64_t{1} << from);
          const double sign = jw_sign(s, from) * jw_sign(lowered, to);
          const std::uint64_t target = lowered | (std::uint64_t{1} << to);
          t.emplace_back(static_cast<Eigen::Index>(target),
                         static_cast<Eigen::Index>(s), -spec.hopping * sign);
        }
      }
    }
  }
  return HermitianOperator(from_triplets(dim, t));
}

void validate(const QxxzSpec& spec) {
  if (spec.sites < 2) {
    throw ValidationError("QxxzSpec: need at least 2 sites");
  }
  if (spec.sites > 20) {
    throw ValidationError("QxxzSpec: more than 20 sites is not addressable");
  }
  if (!(spec.q > 0.0) || !std::isfinite(spec.q)) {
    throw ValidationError("QxxzSpec: q must be positive");
  }
}

QxxzHamiltonian build_qxxz(const QxxzSpec& spec) {
  validate(spec);
  const int n = spec.sites;
  const Eigen::Index dim = Eigen::Index{1} << n;
  const double q = spec.q;
  const double q2 = q * q;
  const double flip = -q / (2.0 * (1.0 + q2));           // coefficient of XX + YY
  const double field = (1.0 - q2) / (4.0 * (1.0 + q2));  // coefficient of Z_j - Z_{j+1}

  auto bit_of = [n](int site) { return n - 1 - site; };
  auto z_of = [](std::uint64_t s, int bit) { return ((s >> bit) & 1U) ? -1.0 : 1.0; };

  std::vector<HermitianOperator> terms;
  terms.reserve(static_cast<std::size_t>(n - 1));
  SparseOperator total(dim, dim);
  for (int j = 0; j + 1 < n; ++j) {
    const int a = bit_of(j);
    const int b = bit_of(j + 1);
    std::vector<Triplet> t;
    for (std::uint64_t s = 0; s < static_cast<std::uint64_t>(dim); ++s) {
      const double za = z_of(s, a);
      const double zb = z_of(s, b);
      const double diag = 0.25 * (1.0 - za * zb) + field * (za - zb);
      if (diag != 0.0) {
        t.emplace_back(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s), diag);
      }
      // XX + YY = 2 (sigma+ sigma- + sigma- sigma+): swaps antiparallel pairs.
      if (za != zb) {
        const std::uint64_t swapped =
            s ^ ((std::uint64_t{1} << a) | (std::uint64_t{1} << b));
        t.emplace_back(static_cast<Eigen::Index>(swapped),
                       static_cast<Eigen::Index>(s), 2.0 * flip);
      }
    }
    SparseOperator local = from_triplets(dim, t);
    total += local;
    terms.emplace_back(std::move(local));
  }
  return {HermitianOperator(std::move(total)), std::move(terms)};
}

double NormalizedHamiltonian::ground_weight(const ComplexVector& v) const {
  if (v.size() != eig.dim()) {
    throw ValidationError("ground_weight: dimension mismatch");
  }
  return (eig.vectors().leftCols(ground_dim).adjoint() * v).norm();
}

NormalizedHamiltonian normalize_spectrum(const HermitianOperator& h,
                                         double precision) {
  return normalize_spectrum(h, eig_hermitian(h), precision);
}

NormalizedHamiltonian normalize_spectrum(const HermitianOperator& h,
                                         const EigenDecomposition& eig,
                                         double precision) {
  if (eig.dim() != h.dim()) {
    throw ValidationError("normalize_spectrum: decomposition does not match operator");
  }
  if (!(precision >= 0.0) || precision >= 1.0) {
    throw ValidationError("normalize_spectrum: precision must lie in [0, 1)");
  }
  const double lo = eig.values()(0);
  const double hi = eig.values()(eig.dim() - 1);
  const double width = hi - lo;
  if (!(width > kDegeneracyTol * std::max(1.0, std::abs(hi)))) {
    throw ValidationError("normalize_spectrum: spectrum is a single point");
  }

  NormalizedHamiltonian out{h, eig};
  const double offset = precision / 2.0;
  out.scale = width / (1.0 - offset);
  out.shift = -lo + offset * out.scale;
  out.precision = precision;
  out.reported_lambda0 = 0.0;

  RealVector values = (eig.values().array() + out.shift) / out.scale;
  values(0) = offset;  // exact placement; removes rounding in lo + shift
  values(values.size() - 1) = std::min(values(values.size() - 1), 1.0);
  out.lambda0 = values(0);

  Eigen::Index g = 1;
  while (g < values.size() && values(g) - out.lambda0 <= kDegeneracyTol) ++g;
  if (g == values.size()) {
    throw ValidationError("normalize_spectrum: no excited state");
  }
  out.ground_dim = g;
  out.spectral_gap = values(g) - out.lambda0;
  if (!(out.lambda0 < out.spectral_gap)) {
    throw ValidationError(
        "normalize_spectrum: ground-energy offset must be smaller than the gap");
  }

  SparseOperator shifted = h.sparse();
  SparseOperator id(h.dim(), h.dim());
  id.setIdentity();
  shifted = (shifted + out.shift * id) / out.scale;
  out.op = HermitianOperator(std::move(shifted), 1e-10);
  out.eig = eig.with_values(std::move(values));
  return out;
}

StateVector neel_state(const HubbardSpec& spec) {
  validate(spec);
  const FermionModeMap map(spec.sites);
  std::uint64_t index = 0;
  for (int j = 0; j < spec.sites; ++j) {
    const Spin spin = (j % 2 == 0) ? Spin::up : Spin::down;
    index |= std::uint64_t{1} << map.mode(j, spin);
  }
  return StateVector::basis(map.fock_dim(), static_cast<Eigen::Index>(index));
}

StateVector hamming_state(int sites, int weight) {
  if (sites < 1 || sites > 20 || weight < 0 || weight > sites) {
    throw ValidationError("hamming_state: need 0 <= weight <= sites");
  }
  std::uint64_t index = 0;
  for (int j = 0; j < weight; ++j) {
    index |= std::uint64_t{1} << (sites - 1 - j);
  }
  return StateVector::basis(Eigen::Index{1} << sites,
                            static_cast<Eigen::Index>(index));
}

TrialKind parse_trial_kind(std::string_view name) {
  if (name == "neel") return TrialKind::neel;
  if (name == "hamming") return TrialKind::hamming;
  throw ValidationError("unknown trial-state kind '" + std::string(name) + "'");
}

double ground_overlap(const NormalizedHamiltonian& h, const StateVector& trial) {
  if (std::abs(trial.norm() - 1.0) > kNormalizationTol) {
    throw ValidationError("ground_overlap: trial state is not normalized");
  }
  return h.ground_weight(trial.amplitudes());
}

}  // namespace lcugf
