#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "itdsim/errors.hpp"

namespace itdsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kEnsembleTol = 1e-12;

/// Entrywise max-abs norm; the comparison norm used throughout.
template <typename Derived>
double max_norm(const Eigen::MatrixBase<Derived>& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

/// Kronecker product a ⊗ b.
template <typename DerivedA, typename DerivedB>
Matrix tensor(const Eigen::MatrixBase<DerivedA>& a,
              const Eigen::MatrixBase<DerivedB>& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
          Complex(a(i, j)) * b;
  return out;
}

/// Square matrix constrained to ‖A − A†‖_max ≤ 1e-12 (relative, floor 1e-12).
class HermitianOperator {
 public:
  explicit HermitianOperator(Matrix m) : mat_(std::move(m)) {
    if (mat_.rows() != mat_.cols())
      throw SimError(ErrorCode::NonHermitian, "Hermitian operator must be square");
    const double tol = std::max(kHermitianTol, kHermitianTol * max_norm(mat_));
    if (max_norm(mat_ - mat_.adjoint()) > tol)
      throw SimError(ErrorCode::NonHermitian, "matrix is not Hermitian");
  }

  const Matrix& mat() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }

 private:
  Matrix mat_;
};

/// Square matrix constrained to ‖U†U − 1‖_max ≤ 1e-10.
class UnitaryOperator {
 public:
  explicit UnitaryOperator(Matrix m) : mat_(std::move(m)) {
    if (mat_.rows() != mat_.cols())
      throw SimError(ErrorCode::NonHermitian, "unitary operator must be square");
    const Matrix gram = mat_.adjoint() * mat_;
    if (max_norm(gram - Matrix::Identity(mat_.rows(), mat_.cols())) > kUnitaryTol)
      throw SimError(ErrorCode::NonHermitian, "matrix is not unitary");
  }

  const Matrix& mat() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }

 private:
  Matrix mat_;
};

/// Eigensystem H = V diag(λ) V† with λ ascending and V unitary.
struct Spectrum {
  RealVector eigenvalues;
  Matrix eigenvectors;
};

Spectrum spectral_decompose(const HermitianOperator& h);

/// exp(−iHt) built from the spectral decomposition of H.
UnitaryOperator evolve_unitary(const HermitianOperator& h, double t);

/// Weighted set {p_i, |Ψ_i⟩}; weights sum to 1, vectors unit-norm.
class StateEnsemble {
 public:
  StateEnsemble(RealVector weights, Matrix vectors);

  /// Convenience: pure state, p = 1.
  static StateEnsemble pure(const Vector& psi);

  const RealVector& weights() const { return weights_; }
  /// Column i is |Ψ_i⟩.
  const Matrix& vectors() const { return vectors_; }
  Eigen::Index size() const { return weights_.size(); }
  Eigen::Index dim() const { return vectors_.rows(); }

 private:
  RealVector weights_;
  Matrix vectors_;
};

}  // namespace itdsim
