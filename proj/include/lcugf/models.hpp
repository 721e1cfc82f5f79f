#pragma once

// Lattice models: the periodic Fermi-Hubbard chain (Jordan-Wigner encoded)
// and the open q-deformed XXZ chain, plus spectrum normalization and the
// product trial states used for projection.

#include "lcugf/linalg.hpp"

#include <string_view>
#include <vector>

namespace lcugf {

enum class Spin : int { up = 0, down = 1 };

/// Spin-interleaved fermion mode ordering: mode(j, sigma) = 2 j + sigma.
/// Mode m occupies bit m of a Fock-basis index.
class FermionModeMap {
 public:
  explicit FermionModeMap(int sites);

  int sites() const { return sites_; }
  int num_modes() const { return 2 * sites_; }
  Eigen::Index fock_dim() const { return Eigen::Index{1} << num_modes(); }

  int mode(int site, Spin spin) const;
  int site_of(int mode) const;
  Spin spin_of(int mode) const;

 private:
  int sites_;
};

enum class LadderKind { creation, annihilation };

/// Jordan-Wigner ladder operator on the full Fock space.
SparseOperator jw_operator(const FermionModeMap& map, LadderKind kind, int mode);

/// Total particle number N = sum_m c_m^dagger c_m.
HermitianOperator number_operator(const FermionModeMap& map);

struct HubbardSpec {
  int sites = 2;
  double hopping = 1.0;
  double interaction = 8.0;
  double chemical_potential = 0.0;
};

void validate(const HubbardSpec& spec);

/// Nearest-neighbour bonds of the periodic chain, each undirected bond listed
/// once (so L = 2 has the single bond (0, 1)).
std::vector<std::pair<int, int>> periodic_bonds(int sites);

/// -t sum_<ij>,s (c+_is c_js + h.c.) + U sum_i (n_iu - 1/2)(n_id - 1/2)
///   - mu sum_is n_is
HermitianOperator build_hubbard(const HubbardSpec& spec);

struct QxxzSpec {
  int sites = 4;
  double q = 1.0;
};

void validate(const QxxzSpec& spec);

struct QxxzHamiltonian {
  HermitianOperator total;
  std::vector<HermitianOperator> local_terms;  // H_{j,j+1}, j = 0..L-2
};

/// Open chain; qubit j is bit (L - 1 - j) of the basis index, so the basis
/// label reads |x_0 x_1 ... x_{L-1}> as a binary number, and Z|0> = |0>.
QxxzHamiltonian build_qxxz(const QxxzSpec& spec);

/// Spectrum-normalized Hamiltonian with the affine map that produced it:
/// operator = (original + shift * I) / scale.
struct NormalizedHamiltonian {
  HermitianOperator op;
  EigenDecomposition eig;
  double shift = 0.0;
  double scale = 1.0;
  double lambda0 = 0.0;          // normalized ground energy
  double spectral_gap = 0.0;     // lambda_1 - lambda_0, degeneracy-aware
  Eigen::Index ground_dim = 1;   // ground-space degeneracy
  double reported_lambda0 = 0.0; // a-priori estimate of lambda0
  double precision = 0.0;        // |lambda0 - reported_lambda0| <= precision

  double original_energy(double normalized) const {
    return normalized * scale - shift;
  }
  /// Projector weight ||P_0 v|| of v on the ground space.
  double ground_weight(const ComplexVector& v) const;
};

/// Shifts and scales the spectrum into [0, 1]. With precision > 0 the ground
/// energy is placed at precision / 2 instead of 0. Throws ValidationError when
/// the spectrum is a single point or precision is negative / too large.
NormalizedHamiltonian normalize_spectrum(const HermitianOperator& h,
                                         double precision = 0.0);
NormalizedHamiltonian normalize_spectrum(const HermitianOperator& h,
                                         const EigenDecomposition& eig,
                                         double precision = 0.0);

/// Staggered single-occupancy state |up_0, down_1, up_2, ...>.
StateVector neel_state(const HubbardSpec& spec);

/// |1...10...0> with `weight` leading ones.
StateVector hamming_state(int sites, int weight);

enum class TrialKind { neel, hamming };
TrialKind parse_trial_kind(std::string_view name);

/// gamma = ||P_0 psi||, the overlap of a normalized trial state with the
/// (possibly degenerate) ground space.
double ground_overlap(const NormalizedHamiltonian& h, const StateVector& trial);

}  // namespace lcugf
