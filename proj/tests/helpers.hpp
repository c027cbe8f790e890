#pragma once

#include <random>

#include "itdsim/linalg.hpp"
#include "itdsim/physics.hpp"

namespace itdsim::testing {

inline Matrix random_complex(Eigen::Index rows, Eigen::Index cols,
                             std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      m(i, j) = Complex(dist(engine), dist(engine));
  return m;
}

inline HermitianOperator random_hermitian(Eigen::Index dim,
                                          std::uint64_t seed) {
  const Matrix a = random_complex(dim, dim, seed);
  return HermitianOperator(0.5 * (a + a.adjoint()));
}

inline Vector random_unit_vector(Eigen::Index dim, std::uint64_t seed) {
  Vector v = random_complex(dim, 1, seed).col(0);
  return v / v.norm();
}

/// Orthonormal ensemble of `count` random vectors with random weights.
inline StateEnsemble random_ensemble(Eigen::Index dim, Eigen::Index count,
                                     std::uint64_t seed) {
  const Matrix raw = random_complex(dim, count, seed);
  const Eigen::HouseholderQR<Matrix> qr(raw);
  const Matrix q =
      Matrix(qr.householderQ()).leftCols(count);
  std::mt19937_64 engine(seed ^ 0xABCDEF);
  std::uniform_real_distribution<double> dist(0.1, 1.0);
  RealVector w(count);
  for (Eigen::Index i = 0; i < count; ++i) w(i) = dist(engine);
  w /= w.sum();
  // Renormalize columns against round-off so the ensemble invariant holds.
  Matrix v = q;
  for (Eigen::Index i = 0; i < count; ++i) v.col(i) /= v.col(i).norm();
  return StateEnsemble(w, v);
}

/// Ensemble of random probe vectors supported on l ∈ [-window, window],
/// embedded in `basis` and orthonormalized.
inline StateEnsemble random_probe_ensemble(const OamBasis& basis, int window,
                                           Eigen::Index count,
                                           std::uint64_t seed) {
  const int sub = 2 * window + 1;
  const StateEnsemble small = random_ensemble(sub, count, seed);
  Matrix v = Matrix::Zero(basis.dim(), count);
  v.block(basis.index(-window), 0, sub, count) = small.vectors();
  return StateEnsemble(small.weights(), v);
}

/// Joint probe ⊗ ancilla ensemble (product with one pure ancilla state).
inline StateEnsemble tensor_with_ancilla(const StateEnsemble& probe,
                                         const Vector& ancilla) {
  Matrix v(2 * probe.dim(), probe.size());
  Matrix pcol(probe.dim(), 1), acol(2, 1);
  acol.col(0) = ancilla;
  for (Eigen::Index i = 0; i < probe.size(); ++i) {
    pcol.col(0) = probe.vectors().col(i);
    v.col(i) = tensor(pcol, acol).col(0);
  }
  return StateEnsemble(probe.weights(), v);
}

}  // namespace itdsim::testing
