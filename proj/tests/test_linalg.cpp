#include "itdsim/linalg.hpp"

#include "doctest.h"
#include "helpers.hpp"

using namespace itdsim;

TEST_SUITE_BEGIN("linalg");

TEST_CASE("tensor of identities is the identity") {
  const Matrix result = tensor(Matrix::Identity(2, 2), Matrix::Identity(3, 3));
  CHECK(max_norm(result - Matrix::Identity(6, 6)) == 0.0);
}

TEST_CASE("tensor with a swap gives the block anti-diagonal") {
  Matrix swap(2, 2);
  swap << 0, 1, 1, 0;
  const Matrix result = tensor(swap, Matrix::Identity(2, 2));
  Matrix expected = Matrix::Zero(4, 4);
  expected.block(0, 2, 2, 2) = Matrix::Identity(2, 2);
  expected.block(2, 0, 2, 2) = Matrix::Identity(2, 2);
  CHECK(max_norm(result - expected) == 0.0);
}

TEST_CASE("tensor is compatible with the product of factors") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const Matrix a = testing::random_complex(2, 2, seed);
    const Matrix b = testing::random_complex(2, 2, seed + 100);
    const Vector x = testing::random_complex(2, 1, seed + 200).col(0);
    const Vector y = testing::random_complex(2, 1, seed + 300).col(0);
    Matrix xc(2, 1), yc(2, 1);
    xc.col(0) = x;
    yc.col(0) = y;
    const Vector lhs = tensor(a, b) * tensor(xc, yc).col(0);
    Matrix axc(2, 1), byc(2, 1);
    axc.col(0) = a * x;
    byc.col(0) = b * y;
    const Vector rhs = tensor(axc, byc).col(0);
    CHECK(max_norm(lhs - rhs) < 1e-14);
  }
}

TEST_CASE("tensor is associative on integer matrices") {
  Matrix a(2, 2), b(2, 2), c(2, 2);
  a << 1, 2, 3, 4;
  b << 0, 1, -1, 2;
  c << 5, -3, 2, 7;
  CHECK(max_norm(tensor(tensor(a, b), c) - tensor(a, tensor(b, c))) == 0.0);
}

TEST_CASE("spectral decomposition of a diagonal matrix") {
  Matrix d = Matrix::Zero(3, 3);
  d(0, 0) = -1.0;
  d(1, 1) = 0.0;
  d(2, 2) = 2.0;
  const Spectrum s = spectral_decompose(HermitianOperator(d));
  CHECK(s.eigenvalues(0) == doctest::Approx(-1.0));
  CHECK(s.eigenvalues(1) == doctest::Approx(0.0));
  CHECK(s.eigenvalues(2) == doctest::Approx(2.0));
  // Eigenvectors of a diagonal matrix are the basis vectors up to phase.
  for (int i = 0; i < 3; ++i)
    CHECK(std::abs(s.eigenvectors(i, i)) == doctest::Approx(1.0));
}

TEST_CASE("spectral decomposition of the swap matrix") {
  Matrix swap(2, 2);
  swap << 0, 1, 1, 0;
  const Spectrum s = spectral_decompose(HermitianOperator(swap));
  CHECK(s.eigenvalues(0) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(s.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("spectral decomposition reconstructs random Hermitians") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const HermitianOperator h = testing::random_hermitian(6, seed);
    const Spectrum s = spectral_decompose(h);
    CHECK(max_norm(s.eigenvectors.adjoint() * s.eigenvectors -
                   Matrix::Identity(6, 6)) < 1e-10);
    const Matrix rebuilt = s.eigenvectors *
                           s.eigenvalues.cast<Complex>().asDiagonal() *
                           s.eigenvectors.adjoint();
    CHECK(max_norm(rebuilt - h.mat()) < 1e-9);
    for (int i = 1; i < 6; ++i) CHECK(s.eigenvalues(i) >= s.eigenvalues(i - 1));
  }
}

TEST_CASE("non-Hermitian input is rejected") {
  Matrix bad(2, 2);
  bad << 0, 1, 0, 0;
  CHECK_THROWS_WITH_AS(HermitianOperator{bad}, "matrix is not Hermitian",
                       SimError);
}

TEST_CASE("zero-time evolution is the identity") {
  const HermitianOperator h = testing::random_hermitian(5, 7);
  CHECK(max_norm(evolve_unitary(h, 0.0).mat() - Matrix::Identity(5, 5)) <
        1e-14);
}

TEST_CASE("evolution of diag(1,2) for t = pi") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 2.0;
  const Matrix u = evolve_unitary(HermitianOperator(d), std::numbers::pi).mat();
  CHECK(std::abs(u(0, 0) - Complex(-1.0, 0.0)) < 1e-14);
  CHECK(std::abs(u(1, 1) - Complex(1.0, 0.0)) < 1e-13);
  CHECK(std::abs(u(0, 1)) == 0.0);
}

TEST_CASE("forward then backward evolution is the identity") {
  const HermitianOperator h = testing::random_hermitian(6, 11);
  const Matrix round_trip =
      evolve_unitary(h, 1.7).mat() * evolve_unitary(h, -1.7).mat();
  CHECK(max_norm(round_trip - Matrix::Identity(6, 6)) < 1e-10);
}

TEST_CASE("evolution composes additively in time") {
  for (std::uint64_t seed = 20; seed < 24; ++seed) {
    const HermitianOperator h = testing::random_hermitian(16, seed);
    const double t1 = 0.3 + 0.1 * double(seed - 20);
    const double t2 = 1.1;
    const Matrix composed = evolve_unitary(h, t1).mat() * evolve_unitary(h, t2).mat();
    CHECK(max_norm(composed - evolve_unitary(h, t1 + t2).mat()) < 1e-9);
  }
}

TEST_CASE("ensemble invariants are enforced") {
  Matrix v(2, 2);
  v << 1, 0, 0, 1;
  RealVector bad_weights(2);
  bad_weights << 0.6, 0.6;
  CHECK_THROWS_AS(StateEnsemble(bad_weights, v), SimError);

  RealVector w(2);
  w << 0.5, 0.5;
  Matrix not_unit(2, 2);
  not_unit << 2, 0, 0, 1;
  CHECK_THROWS_AS(StateEnsemble(w, not_unit), SimError);
}

TEST_SUITE_END();
