#include "lcugf/linalg.hpp"

#include "lcugf/error.hpp"
#include "lcugf/kernels.hpp"

#define lapack_complex_double std::complex<double>
#define lapack_complex_float std::complex<float>
#include <lapacke.h>

#include <cmath>
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

void check_dims(Eigen::Index expected, Eigen::Index got, const char* what) {
  if (expected != got) {
    throw ValidationError(std::string(what) + ": dimension mismatch (" +
                          std::to_string(expected) + " vs " +
                          std::to_string(got) + ")");
  }
}

void check_unit(const StateVector& v, double tol, const char* what) {
  if (v.dim() == 0 || std::abs(v.norm() - 1.0) > tol) {
    throw ValidationError(std::string(what) + ": input is not normalized");
  }
}

}  // namespace

HermitianOperator::HermitianOperator(SparseOperator entries, double tol)
    : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
    throw ValidationError("HermitianOperator: matrix must be square and non-empty");
  }
  entries_.makeCompressed();
  const SparseOperator diff = entries_ - SparseOperator(entries_.adjoint());
  if (max_abs_coeff(diff) > tol) {
    throw ValidationError("HermitianOperator: matrix is not Hermitian");
  }
}

HermitianOperator HermitianOperator::from_dense(const ComplexMatrix& entries,
                                                double tol) {
  return HermitianOperator(entries.sparseView(), tol);
}

ComplexVector HermitianOperator::apply(const ComplexVector& v) const {
  check_dims(dim(), v.size(), "HermitianOperator::apply");
  return entries_ * v;
}

StateVector StateVector::basis(Eigen::Index dim, Eigen::Index index) {
  if (index < 0 || index >= dim) {
    throw ValidationError("StateVector::basis: index out of range");
  }
  ComplexVector v = ComplexVector::Zero(dim);
  v(index) = 1.0;
  return StateVector(std::move(v));
}

StateVector& StateVector::normalize() {
  const double n = norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw DegenerateInputError("StateVector::normalize: zero or non-finite vector");
  }
  amplitudes_ /= n;
  return *this;
}

StateVector StateVector::normalized() const {
  StateVector copy = *this;
  copy.normalize();
  return copy;
}

EigenDecomposition::EigenDecomposition(RealVector values, ComplexMatrix vectors)
    : values_(std::move(values)), vectors_(std::move(vectors)) {
  if (values_.size() == 0 || vectors_.rows() != values_.size() ||
      vectors_.cols() != values_.size()) {
    throw ValidationError("EigenDecomposition: inconsistent shapes");
  }
}

ComplexVector EigenDecomposition::to_eigenbasis(const ComplexVector& v) const {
  check_dims(dim(), v.size(), "to_eigenbasis");
  return vectors_.adjoint() * v;
}

ComplexVector EigenDecomposition::from_eigenbasis(const ComplexVector& c) const {
  check_dims(dim(), c.size(), "from_eigenbasis");
  return vectors_ * c;
}

EigenDecomposition EigenDecomposition::with_values(RealVector values) const {
  check_dims(dim(), values.size(), "with_values");
  return EigenDecomposition(std::move(values), vectors_);
}

EigenDecomposition eig_hermitian(const HermitianOperator& h) {
  return eig_hermitian(h.dense(), kHermiticityTol);
}

EigenDecomposition eig_hermitian(const ComplexMatrix& h, double tol) {
  if (h.rows() == 0) {
    throw ValidationError("eig_hermitian: empty operator");
  }
  if (h.rows() != h.cols()) {
    throw ValidationError("eig_hermitian: matrix is not square");
  }
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > tol) {
    throw ValidationError("eig_hermitian: matrix is not Hermitian");
  }
  const auto n = static_cast<lapack_int>(h.rows());
  ComplexMatrix a = h;
  RealVector w(n);
  const lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n,
                                         a.data(), n, w.data());
  if (info != 0) {
    throw ConsistencyError("eig_hermitian: zheevd failed with info=" +
                           std::to_string(info));
  }
  return EigenDecomposition(std::move(w), std::move(a));
}

LabelledEigenDecomposition resolve_degeneracies(
    const EigenDecomposition& e, const HermitianOperator& observable,
    double cluster_tol) {
  check_dims(e.dim(), observable.dim(), "resolve_degeneracies");
  ComplexMatrix vectors = e.vectors();
  RealVector labels(e.dim());
  const RealVector& values = e.values();
  const ComplexMatrix ov = observable.sparse() * vectors;

  Eigen::Index begin = 0;
  while (begin < e.dim()) {
    Eigen::Index end = begin + 1;
    while (end < e.dim() && values(end) - values(end - 1) <= cluster_tol) {
      ++end;
    }
    const Eigen::Index width = end - begin;
    if (width == 1) {
      labels(begin) = (vectors.col(begin).adjoint() * ov.col(begin))(0).real();
    } else {
      const ComplexMatrix block =
          vectors.middleCols(begin, width).adjoint() * ov.middleCols(begin, width);
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
          (block + block.adjoint()) / 2.0);
      vectors.middleCols(begin, width) =
          vectors.middleCols(begin, width) * solver.eigenvectors();
      labels.segment(begin, width) = solver.eigenvalues();
    }
    begin = end;
  }
  return {EigenDecomposition(values, std::move(vectors)), std::move(labels)};
}

ComplexVector apply_function(const EigenDecomposition& e,
                             const ScalarFunction& f, const ComplexVector& v) {
  std::vector<Complex> filter(static_cast<std::size_t>(e.dim()));
  for (Eigen::Index l = 0; l < e.dim(); ++l) {
    filter[static_cast<std::size_t>(l)] = f(e.values()(l));
  }
  return apply_filter(e, filter, v);
}

StateVector apply_function(const EigenDecomposition& e,
                           const ScalarFunction& f, const StateVector& v) {
  return StateVector(apply_function(e, f, v.amplitudes()));
}

ComplexVector apply_filter(const EigenDecomposition& e,
                           std::span<const Complex> filter,
                           const ComplexVector& v) {
  check_dims(e.dim(), static_cast<Eigen::Index>(filter.size()), "apply_filter");
  ComplexVector c = e.to_eigenbasis(v);
  for (Eigen::Index l = 0; l < c.size(); ++l) {
    c(l) *= filter[static_cast<std::size_t>(l)];
  }
  return e.from_eigenbasis(c);
}

StateVector evolve(const EigenDecomposition& e, double t, const StateVector& v) {
  return apply_function(
      e, [t](double lambda) { return std::polar(1.0, -t * lambda); }, v);
}

double spectral_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<ComplexMatrix> svd(a);
  return svd.singularValues()(0);
}

double spectral_norm(const HermitianOperator& h) {
  const EigenDecomposition e = eig_hermitian(h);
  return std::max(std::abs(e.values()(0)), std::abs(e.values()(e.dim() - 1)));
}

Complex inner(const ComplexVector& a, const ComplexVector& b) {
  check_dims(a.size(), b.size(), "inner");
  return kernels::dotc({a.data(), static_cast<std::size_t>(a.size())},
                       {b.data(), static_cast<std::size_t>(b.size())});
}

double fidelity(const StateVector& u, const StateVector& v, double tol) {
  check_unit(u, tol, "fidelity");
  check_unit(v, tol, "fidelity");
  check_dims(u.dim(), v.dim(), "fidelity");
  return std::min(1.0, std::abs(inner(u.amplitudes(), v.amplitudes())));
}

double distance(const StateVector& u, const StateVector& v, double tol) {
  check_unit(u, tol, "distance");
  check_unit(v, tol, "distance");
  check_dims(u.dim(), v.dim(), "distance");
  return (u.amplitudes() - v.amplitudes()).norm();
}

}  // namespace lcugf
