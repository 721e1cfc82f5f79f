#pragma once

// Spectral gap amplification for Hamiltonians that are sums of projectors:
// H_r = [[0, Pi], [Pi^dagger, 0]] with Pi = (P_1 ... P_{L-1}), so that
// H_r^2 (|0>_a (x) psi) = |0>_a (x) (H psi).

#include "lcugf/linalg.hpp"
#include "lcugf/models.hpp"

#include <span>
#include <vector>

namespace lcugf {

/// Block form of H_r. The ancilla is a block index in [0, blocks): block 0
/// holds the system register, block j >= 1 pairs with bond term j.
class AmplifiedHamiltonian {
 public:
  AmplifiedHamiltonian(std::vector<SparseOperator> bond_blocks, double scale);

  int blocks() const { return static_cast<int>(bond_blocks_.size()) + 1; }
  Eigen::Index system_dim() const { return system_dim_; }
  Eigen::Index dim() const { return blocks() * system_dim_; }
  double scale() const { return scale_; }
  /// P_j / sqrt(scale), j = 1..blocks-1 (index 0 of the vector is bond 1).
  const std::vector<SparseOperator>& bond_blocks() const { return bond_blocks_; }

  /// H_r v, matrix-free.
  ComplexVector apply(const ComplexVector& v) const;
  /// Pi^dagger x stacked into blocks 1..L-1 (block 0 left zero).
  ComplexVector apply_pi_dagger(const ComplexVector& x) const;
  /// Pi Pi^dagger, which equals the (scaled) original Hamiltonian.
  SparseOperator pi_pi_dagger() const;
  /// Explicit operator; only sensible for small chains.
  HermitianOperator assemble() const;

 private:
  std::vector<SparseOperator> bond_blocks_;
  Eigen::Index system_dim_;
  double scale_;
};

/// Builds H_r from projector local terms. Every term must satisfy P^2 = P
/// within `projector_tol`; otherwise ValidationError names the bond. The
/// blocks are divided by sqrt(scale) so that H_r^2 reproduces H / scale.
AmplifiedHamiltonian build_amplified(const std::vector<HermitianOperator>& local_terms,
                                     double scale = 1.0,
                                     double projector_tol = 1e-9);

struct DickeState {
  int sites = 0;
  int weight = 0;
  StateVector state;
};

/// Uniform superposition of all weight-j strings on L qubits.
DickeState dicke(int sites, int weight);

/// |0>_a (x) psi.
StateVector embed(const StateVector& psi, int blocks);

struct ZeroBlock {
  ComplexVector block;          // ancilla-|0> component
  double residual_weight = 0.0; // squared norm outside the |0> block
};
ZeroBlock project_zero(const StateVector& full, int blocks);

/// Exact spectral action of functions of H_r on states embedded in the
/// ancilla-|0> block. On span{|0>|v_l>, Pi^dagger|v_l>/s_l} H_r acts as
/// s_l * sigma_x, where (mu_l, v_l) are the eigenpairs of Pi Pi^dagger and
/// s_l = sqrt(mu_l); kernel vectors of H stay invariant.
class AmplifiedSpectrum {
 public:
  /// `h` must be the normalized form of sum_j P_j with zero shift, scaled by
  /// the same factor as `amp`.
  AmplifiedSpectrum(const AmplifiedHamiltonian& amp, const NormalizedHamiltonian& h);

  const AmplifiedHamiltonian& amplified() const { return *amp_; }
  const NormalizedHamiltonian& system() const { return *h_; }
  /// s_l = sqrt(mu_l), ascending.
  const RealVector& singular_values() const { return singular_values_; }
  /// Smallest positive s_l, i.e. sqrt of the system gap.
  double gap() const;

  struct Action {
    ComplexVector even;  // block-0 coefficients in the eigenbasis of H
    ComplexVector odd;   // coefficients along Pi^dagger|v_l>/s_l (zero on kernel)
  };

  /// g(H_r)(|0> (x) psi) with g sampled as plus[l] = g(s_l), minus[l] = g(-s_l).
  Action act(std::span<const Complex> plus, std::span<const Complex> minus,
             const ComplexVector& system_coefficients) const;
  /// Full L * 2^L amplitude vector of an action.
  StateVector synthesize(const Action& a) const;

 private:
  const AmplifiedHamiltonian* amp_;
  const NormalizedHamiltonian* h_;
  RealVector singular_values_;
};

}  // namespace lcugf
