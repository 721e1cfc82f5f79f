#pragma once

// Dense-at-desk-scale Hermitian linear algebra: operators, eigendecompositions,
// spectral application of scalar functions, and state-vector metrics.

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <complex>
#include <functional>
#include <span>

namespace lcugf {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using SparseOperator = Eigen::SparseMatrix<Complex>;

// Repository-wide default tolerances. Every function that uses one accepts an
// override argument.
inline constexpr double kHermiticityTol = 1e-12;
inline constexpr double kNormalizationTol = 1e-9;
inline constexpr double kDegeneracyTol = 1e-9;

/// A square complex matrix equal to its conjugate transpose (entrywise,
/// absolute tolerance). Built sparse; diagonalized dense.
class HermitianOperator {
 public:
  explicit HermitianOperator(SparseOperator entries,
                             double tol = kHermiticityTol);
  static HermitianOperator from_dense(const ComplexMatrix& entries,
                                      double tol = kHermiticityTol);

  Eigen::Index dim() const { return entries_.rows(); }
  const SparseOperator& sparse() const { return entries_; }
  ComplexMatrix dense() const { return ComplexMatrix(entries_); }
  ComplexVector apply(const ComplexVector& v) const;

 private:
  SparseOperator entries_;
};

/// Complex amplitude vector. Normalization is explicit; nothing here
/// renormalizes behind the caller's back.
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(ComplexVector amplitudes)
      : amplitudes_(std::move(amplitudes)) {}

  static StateVector basis(Eigen::Index dim, Eigen::Index index);

  Eigen::Index dim() const { return amplitudes_.size(); }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  ComplexVector& amplitudes() { return amplitudes_; }
  double norm() const { return amplitudes_.norm(); }

  /// Scales to unit norm. Throws DegenerateInputError on a zero vector.
  StateVector& normalize();
  StateVector normalized() const;

 private:
  ComplexVector amplitudes_;
};

/// H = V diag(values) V^dagger with ascending values and orthonormal columns.
/// Immutable after construction.
class EigenDecomposition {
 public:
  EigenDecomposition(RealVector values, ComplexMatrix vectors);

  Eigen::Index dim() const { return values_.size(); }
  const RealVector& values() const { return values_; }
  const ComplexMatrix& vectors() const { return vectors_; }

  /// V^dagger v
  ComplexVector to_eigenbasis(const ComplexVector& v) const;
  /// V c
  ComplexVector from_eigenbasis(const ComplexVector& c) const;

  /// Same eigenvectors, relabelled eigenvalues (affine maps of the spectrum).
  EigenDecomposition with_values(RealVector values) const;

 private:
  RealVector values_;
  ComplexMatrix vectors_;
};

/// Dense Hermitian eigensolver (LAPACK zheevd). Throws ValidationError on an
/// empty operator.
EigenDecomposition eig_hermitian(const HermitianOperator& h);
EigenDecomposition eig_hermitian(const ComplexMatrix& h,
                                 double tol = kHermiticityTol);

/// Rotates every cluster of eigenvalues closer than `cluster_tol` so that a
/// commuting `observable` is diagonal inside the cluster. Returns the
/// rotated decomposition and the observable's value on each eigenvector.
struct LabelledEigenDecomposition {
  EigenDecomposition eig;
  RealVector labels;
};
LabelledEigenDecomposition resolve_degeneracies(
    const EigenDecomposition& e, const HermitianOperator& observable,
    double cluster_tol = kDegeneracyTol);

using ScalarFunction = std::function<Complex(double)>;

/// sum_l f(lambda_l) <lambda_l|v> |lambda_l>. No normalization.
ComplexVector apply_function(const EigenDecomposition& e,
                             const ScalarFunction& f, const ComplexVector& v);
StateVector apply_function(const EigenDecomposition& e,
                           const ScalarFunction& f, const StateVector& v);

/// Same as apply_function with f(lambda_l) precomputed per eigenvalue.
ComplexVector apply_filter(const EigenDecomposition& e,
                           std::span<const Complex> filter,
                           const ComplexVector& v);

/// exp(-i t H) v
StateVector evolve(const EigenDecomposition& e, double t, const StateVector& v);

/// Largest singular value.
double spectral_norm(const ComplexMatrix& a);
double spectral_norm(const HermitianOperator& h);

/// <a|b>, dispatched to the SIMD kernels.
Complex inner(const ComplexVector& a, const ComplexVector& b);

/// |<u|v>| for unit vectors. Throws ValidationError if either input is off
/// unit norm by more than `tol`.
double fidelity(const StateVector& u, const StateVector& v,
                double tol = kNormalizationTol);
/// ||u - v|| for unit vectors.
double distance(const StateVector& u, const StateVector& v,
                double tol = kNormalizationTol);

}  // namespace lcugf
