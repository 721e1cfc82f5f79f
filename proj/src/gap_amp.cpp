#include "lcugf/gap_amp.hpp"

#include "lcugf/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

namespace lcugf {

namespace {

double max_abs_coeff(const SparseOperator& m) {
  double worst = 0.0;
  for (Eigen::Index k = 0; k < m.outerSize(); ++k) {
    for (SparseOperator::InnerIterator it(m, k); it; ++it) {
      worst = std::max(worst, std::abs(it.value()));
    }
  }
  return worst;
}

double binomial(int n, int k) {
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                  std::lgamma(n - k + 1.0));
}

}  // namespace

AmplifiedHamiltonian::AmplifiedHamiltonian(std::vector<SparseOperator> bond_blocks,
                                           double scale)
    : bond_blocks_(std::move(bond_blocks)), system_dim_(0), scale_(scale) {
  if (bond_blocks_.empty()) {
    throw ValidationError("AmplifiedHamiltonian: need at least one bond block");
  }
  if (!(scale > 0.0)) {
    throw ValidationError("AmplifiedHamiltonian: scale must be positive");
  }
  system_dim_ = bond_blocks_.front().rows();
  for (const auto& b : bond_blocks_) {
    if (b.rows() != system_dim_ || b.cols() != system_dim_) {
      throw ValidationError("AmplifiedHamiltonian: bond blocks differ in shape");
    }
  }
}

ComplexVector AmplifiedHamiltonian::apply(const ComplexVector& v) const {
  if (v.size() != dim()) {
    throw ValidationError("AmplifiedHamiltonian::apply: dimension mismatch");
  }
  const Eigen::Index n = system_dim_;
  ComplexVector out = ComplexVector::Zero(dim());
  for (std::size_t j = 0; j < bond_blocks_.size(); ++j) {
    const Eigen::Index off = static_cast<Eigen::Index>(j + 1) * n;
    out.head(n) += bond_blocks_[j] * v.segment(off, n);
    out.segment(off, n) = bond_blocks_[j].adjoint() * v.head(n);
  }
  return out;
}

ComplexVector AmplifiedHamiltonian::apply_pi_dagger(const ComplexVector& x) const {
  if (x.size() != system_dim_) {
    throw ValidationError("apply_pi_dagger: dimension mismatch");
  }
  ComplexVector out = ComplexVector::Zero(dim());
  for (std::size_t j = 0; j < bond_blocks_.size(); ++j) {
    out.segment(static_cast<Eigen::Index>(j + 1) * system_dim_, system_dim_) =
        bond_blocks_[j].adjoint() * x;
  }
  return out;
}

SparseOperator AmplifiedHamiltonian::pi_pi_dagger() const {
  SparseOperator sum(system_dim_, system_dim_);
  for (const auto& b : bond_blocks_) {
    sum += SparseOperator(b * SparseOperator(b.adjoint()));
  }
  return sum;
}

HermitianOperator AmplifiedHamiltonian::assemble() const {
  std::vector<Eigen::Triplet<Complex>> t;
  const Eigen::Index n = system_dim_;
  for (std::size_t j = 0; j < bond_blocks_.size(); ++j) {
    const Eigen::Index off = static_cast<Eigen::Index>(j + 1) * n;
    const SparseOperator& b = bond_blocks_[j];
    for (Eigen::Index k = 0; k < b.outerSize(); ++k) {
      for (SparseOperator::InnerIterator it(b, k); it; ++it) {
        t.emplace_back(it.row(), off + it.col(), it.value());
        t.emplace_back(off + it.col(), it.row(), std::conj(it.value()));
      }
    }
  }
  SparseOperator m(dim(), dim());
  m.setFromTriplets(t.begin(), t.end());
  return HermitianOperator(std::move(m));
}

AmplifiedHamiltonian build_amplified(const std::vector<HermitianOperator>& local_terms,
                                     double scale, double projector_tol) {
  if (local_terms.empty()) {
    throw ValidationError("build_amplified: no local terms");
  }
  std::vector<SparseOperator> blocks;
  blocks.reserve(local_terms.size());
  const double factor = 1.0 / std::sqrt(scale > 0.0 ? scale : 1.0);
  for (std::size_t j = 0; j < local_terms.size(); ++j) {
    const SparseOperator& p = local_terms[j].sparse();
    const SparseOperator defect = SparseOperator(p * p) - p;
    if (max_abs_coeff(defect) > projector_tol) {
      throw ValidationError("build_amplified: local term for bond (" +
                            std::to_string(j) + ", " + std::to_string(j + 1) +
                            ") is not a projector");
    }
    blocks.emplace_back(p * factor);
  }
  return AmplifiedHamiltonian(std::move(blocks), scale);
}

DickeState dicke(int sites, int weight) {
  if (sites < 1 || sites > 20) {
    throw ValidationError("dicke: site count must be in [1, 20]");
  }
  if (weight < 0 || weight > sites) {
    throw ValidationError("dicke: Hamming weight out of range");
  }
  const Eigen::Index dim = Eigen::Index{1} << sites;
  const double amp = 1.0 / std::sqrt(binomial(sites, weight));
  ComplexVector v = ComplexVector::Zero(dim);
  for (std::uint64_t s = 0; s < static_cast<std::uint64_t>(dim); ++s) {
    if (std::popcount(s) == weight) v(static_cast<Eigen::Index>(s)) = amp;
  }
  return {sites, weight, StateVector(std::move(v))};
}

StateVector embed(const StateVector& psi, int blocks) {
  if (blocks < 1 || psi.dim() == 0) {
    throw ValidationError("embed: need a non-empty state and at least one block");
  }
  ComplexVector out = ComplexVector::Zero(blocks * psi.dim());
  out.head(psi.dim()) = psi.amplitudes();
  return StateVector(std::move(out));
}

ZeroBlock project_zero(const StateVector& full, int blocks) {
  if (blocks < 1 || full.dim() % blocks != 0) {
    throw ValidationError("project_zero: state dimension is not a multiple of the ancilla dimension");
  }
  const Eigen::Index n = full.dim() / blocks;
  ZeroBlock out;
  out.block = full.amplitudes().head(n);
  out.residual_weight = full.amplitudes().tail(full.dim() - n).squaredNorm();
  return out;
}

AmplifiedSpectrum::AmplifiedSpectrum(const AmplifiedHamiltonian& amp,
                                     const NormalizedHamiltonian& h)
    : amp_(&amp), h_(&h) {
  if (h.op.dim() != amp.system_dim()) {
    throw ValidationError("AmplifiedSpectrum: system dimension mismatch");
  }
  if (std::abs(h.shift) > 1e-9 * h.scale || h.precision != 0.0) {
    throw ValidationError(
        "AmplifiedSpectrum: system Hamiltonian must be frustration-free with zero shift");
  }
  const SparseOperator diff = amp.pi_pi_dagger() - h.op.sparse();
  if (max_abs_coeff(diff) > 1e-9) {
    throw ValidationError("AmplifiedSpectrum: Pi Pi^dagger does not reproduce H");
  }
  const RealVector& mu = h.eig.values();
  singular_values_.resize(mu.size());
  for (Eigen::Index l = 0; l < mu.size(); ++l) {
    singular_values_(l) = l < h.ground_dim ? 0.0 : std::sqrt(std::max(mu(l), 0.0));
  }
}

double AmplifiedSpectrum::gap() const { return singular_values_(h_->ground_dim); }

AmplifiedSpectrum::Action AmplifiedSpectrum::act(std::span<const Complex> plus,
                                                 std::span<const Complex> minus,
                                                 const ComplexVector& c) const {
  const auto n = static_cast<std::size_t>(singular_values_.size());
  if (plus.size() != n || minus.size() != n ||
      c.size() != singular_values_.size()) {
    throw ValidationError("AmplifiedSpectrum::act: dimension mismatch");
  }
  Action a{ComplexVector(c.size()), ComplexVector(c.size())};
  for (Eigen::Index l = 0; l < c.size(); ++l) {
    const auto i = static_cast<std::size_t>(l);
    if (l < h_->ground_dim) {
      a.even(l) = plus[i] * c(l);
      a.odd(l) = 0.0;
    } else {
      a.even(l) = 0.5 * (plus[i] + minus[i]) * c(l);
      a.odd(l) = 0.5 * (plus[i] - minus[i]) * c(l);
    }
  }
  return a;
}

StateVector AmplifiedSpectrum::synthesize(const Action& a) const {
  const Eigen::Index n = amp_->system_dim();
  ComplexVector scaled = ComplexVector::Zero(n);
  for (Eigen::Index l = h_->ground_dim; l < n; ++l) {
    scaled(l) = a.odd(l) / singular_values_(l);
  }
  ComplexVector full = amp_->apply_pi_dagger(h_->eig.from_eigenbasis(scaled));
  full.head(n) = h_->eig.from_eigenbasis(a.even);
  return StateVector(std::move(full));
}

}  // namespace lcugf
