#include "itdsim/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace itdsim {

Spectrum spectral_decompose(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.mat());
  if (solver.info() != Eigen::Success)
    throw SimError(ErrorCode::NonHermitian, "eigendecomposition failed");
  return Spectrum{solver.eigenvalues(), solver.eigenvectors()};
}

UnitaryOperator evolve_unitary(const HermitianOperator& h, double t) {
  if (!std::isfinite(t))
    throw SimError(ErrorCode::BadParams, "evolution time must be finite");
  const Spectrum s = spectral_decompose(h);
  const Vector phases =
      (Complex(0.0, -t) * s.eigenvalues.cast<Complex>()).array().exp();
  return UnitaryOperator(s.eigenvectors * phases.asDiagonal() *
                         s.eigenvectors.adjoint());
}

StateEnsemble::StateEnsemble(RealVector weights, Matrix vectors)
    : weights_(std::move(weights)), vectors_(std::move(vectors)) {
  if (weights_.size() == 0 || weights_.size() != vectors_.cols())
    throw SimError(ErrorCode::DimensionMismatch,
                   "ensemble needs one weight per state vector");
  if (weights_.minCoeff() < 0.0)
    throw SimError(ErrorCode::BadParams, "ensemble weights must be nonnegative");
  if (std::abs(weights_.sum() - 1.0) > kEnsembleTol)
    throw SimError(ErrorCode::BadParams, "ensemble weights must sum to 1");
  for (Eigen::Index i = 0; i < vectors_.cols(); ++i)
    if (std::abs(vectors_.col(i).norm() - 1.0) > kEnsembleTol)
      throw SimError(ErrorCode::BadParams, "ensemble vectors must be unit norm");
}

StateEnsemble StateEnsemble::pure(const Vector& psi) {
  RealVector w(1);
  w << 1.0;
  Matrix v(psi.size(), 1);
  v.col(0) = psi;
  return StateEnsemble(std::move(w), std::move(v));
}

}  // namespace itdsim
