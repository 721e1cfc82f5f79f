#pragma once

// Retarded single-particle Green's functions of the Hubbard chain (spin up),
// from the pole expansion and from the two-resolvent form
//   G_jj'(w) = <c_j' R(w + iG, H - E0) c+_j> + <c+_j R(w + iG, -(H - E0)) c_j'>.

#include "lcugf/linalg.hpp"
#include "lcugf/models.hpp"
#include "lcugf/resolvent.hpp"

#include <string_view>
#include <utility>
#include <vector>

namespace lcugf {

/// Full Fock-space eigendecomposition with particle-number labels and the
/// ground space of one particle-number sector.
struct FockSpectrum {
  HubbardSpec spec;
  FermionModeMap map;
  HermitianOperator hamiltonian;
  EigenDecomposition eig;        // rotated so N is diagonal inside clusters
  std::vector<int> particles;    // N label of each eigenvector
  int filling = 0;               // the sector N of the ground states
  double ground_energy = 0.0;    // E_0^N
  std::vector<Eigen::Index> ground_indices;

  Eigen::Index ground_dim() const {
    return static_cast<Eigen::Index>(ground_indices.size());
  }
  ComplexVector ground_state(Eigen::Index g) const;
  /// Largest |lambda - E0| over the spectrum.
  double excitation_norm() const;
};

/// filling < 0 selects half filling (N = L).
FockSpectrum fock_spectrum(const HubbardSpec& spec, int filling = -1);

enum class GreensMode { lehmann, resolvent_exact, resolvent_lcu };
std::string_view mode_name(GreensMode m);

struct GreensSeries {
  std::vector<double> omega;
  std::vector<Complex> values;
  GreensMode mode = GreensMode::lehmann;
  double gamma = 0.0;
  int j = 0;
  int jprime = 0;
};

struct Pole {
  double energy = 0.0;  // excitation energy measured from E0
  Complex weight;       // numerator of the pole term
};

/// Pole data for one ground state: particle poles from the N+1 sector with
/// weights conj(M_j'^a) M_j^a, hole poles from N-1 with conj(L_j^b) L_j'^b.
struct LehmannData {
  std::vector<Pole> particle;
  std::vector<Pole> hole;
  double ground_energy = 0.0;

  /// sum of weights; equals 1 for j = j' (anticommutator sum rule).
  Complex total_weight() const;
  Complex evaluate(double omega, double delta) const;
};

LehmannData lehmann_data(const FockSpectrum& fs, Eigen::Index ground, int j, int jprime);

/// Pole expansion, averaged uniformly over the ground space.
GreensSeries lehmann_greens(const FockSpectrum& fs, int j, int jprime,
                            std::span<const double> omegas, double delta, int threads = 1);

/// Resolvent route for given ground states; E0 for each state is its own
/// energy expectation. The LCU mode builds its schedule from (gamma, eps) and
/// the excitation norm of the spectrum. Uniform average over the states.
GreensSeries resolvent_greens(const FockSpectrum& fs, const std::vector<ComplexVector>& ground,
                              int j, int jprime, std::span<const double> omegas,
                              double gamma, GreensMode mode, double eps = 0.05,
                              int threads = 1);
/// Same, using the exact ground space of `fs`.
GreensSeries resolvent_greens(const FockSpectrum& fs, int j, int jprime,
                              std::span<const double> omegas, double gamma,
                              GreensMode mode, double eps = 0.05, int threads = 1);

/// Schedule used by the LCU mode.
FitSchedule greens_schedule(const FockSpectrum& fs, double gamma, double eps);

/// Majorana operators b0 = c + c+, b1 = i (c - c+) of an orbital.
std::pair<SparseOperator, SparseOperator> majorana_pair(const FermionModeMap& map, int mode);

/// The two-resolvent expression evaluated directly with ladder operators and
/// through the eight Majorana terms with the 1/4 prefactor.
struct MajoranaComparison {
  Complex direct;
  Complex majorana;
};
MajoranaComparison majorana_check(const FockSpectrum& fs, const ComplexVector& ground,
                                  int j, int jprime, double omega, double gamma,
                                  GreensMode mode, double eps = 0.05);

/// Uniform average of series sharing grid and mode.
GreensSeries degeneracy_average(const std::vector<GreensSeries>& series);

struct LdosSeries {
  std::vector<double> omega;
  std::vector<double> values;
  double integral = 1.0;  // trapezoid integral divided out by grid_normalize
  bool normalized = false;
};

/// -Im G_jj / pi. Values below -negative_tol raise ConsistencyError; the
/// remaining small negatives are clipped to zero.
LdosSeries ldos(const GreensSeries& g, double negative_tol = 1e-9);
double trapezoid(std::span<const double> x, std::span<const double> y);
LdosSeries grid_normalize(const LdosSeries& s);

}  // namespace lcugf
