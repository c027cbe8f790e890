#include "itdsim/physics.hpp"

#include <numbers>

#include "doctest.h"
#include "helpers.hpp"

using namespace itdsim;

namespace {

Vector basis_state(const OamBasis& basis, int l, const Vector& pol) {
  Vector v = Vector::Zero(2 * basis.dim());
  v(2 * basis.index(l) + 0) = pol(0);
  v(2 * basis.index(l) + 1) = pol(1);
  return v;
}

double oam_expectation(const OamBasis& basis, const Vector& joint) {
  double acc = 0.0;
  for (int i = 0; i < basis.dim(); ++i)
    acc += basis.value(i) *
           (std::norm(joint(2 * i)) + std::norm(joint(2 * i + 1)));
  return acc;
}

}  // namespace

TEST_SUITE_BEGIN("physics");

TEST_CASE("lz is diagonal with the integer ladder") {
  const OamBasis basis(-2, 2);
  const Matrix lz = build_lz(basis).mat();
  for (int i = 0; i < 5; ++i)
    CHECK(lz(i, i) == Complex(basis.value(i), 0.0));
  CHECK(lz(basis.index(0), basis.index(0)) == Complex(0.0, 0.0));
  CHECK(max_norm(lz - lz.diagonal().asDiagonal().toDenseMatrix()) == 0.0);
}

TEST_CASE("shift by zero is the identity and shifts invert exactly") {
  const OamBasis basis(-2, 2);
  CHECK(max_norm(build_shift(basis, 0).mat() - Matrix::Identity(5, 5)) == 0.0);
  const Matrix fwd = build_shift(basis, 1).mat();
  CHECK(fwd(basis.index(1), basis.index(0)) == Complex(1.0, 0.0));
  CHECK(max_norm(fwd * build_shift(basis, -1).mat() -
                 Matrix::Identity(5, 5)) == 0.0);
}

TEST_CASE("shift order at or above the dimension is rejected") {
  const OamBasis basis(-2, 2);
  CHECK_THROWS_AS(build_shift(basis, 5), SimError);
  CHECK_THROWS_AS(build_shift(basis, -7), SimError);
}

TEST_CASE("rotation phases") {
  const OamBasis basis(-2, 2);
  CHECK(max_norm(build_rotation(basis, 0.0).mat() - Matrix::Identity(5, 5)) ==
        0.0);
  const Matrix r = build_rotation(basis, std::numbers::pi).mat();
  CHECK(std::abs(r(basis.index(1), basis.index(1)) - Complex(-1.0, 0.0)) <
        1e-15);
  CHECK(r(basis.index(0), basis.index(0)) == Complex(1.0, 0.0));
}

TEST_CASE("rotation equals unitary evolution of lz") {
  const OamBasis basis(-3, 3);
  const double alpha = 0.37;
  const Matrix direct = build_rotation(basis, alpha).mat();
  const Matrix via_spectrum = evolve_unitary(build_lz(basis), alpha).mat();
  CHECK(max_norm(direct - via_spectrum) < 1e-12);
}

TEST_CASE("itd switch branches") {
  const OamBasis basis(-2, 2);
  SUBCASE("identity control degenerates to the identity") {
    const Matrix u = build_itd_switch(build_shift(basis, 0)).mat();
    CHECK(max_norm(u - Matrix::Identity(10, 10)) == 0.0);
  }
  SUBCASE("controlled shift moves the branches oppositely") {
    const Matrix u = build_itd_switch(build_shift(basis, 1)).mat();
    const Vector from_r = u * basis_state(basis, 0, polarization_r());
    const Vector from_l = u * basis_state(basis, 0, polarization_l());
    CHECK(max_norm(from_r - basis_state(basis, 1, polarization_r())) == 0.0);
    CHECK(max_norm(from_l - basis_state(basis, -1, polarization_l())) == 0.0);
  }
}

TEST_CASE("single shot with g = 0 and m = 0 is the identity") {
  SchemeConfig cfg;
  cfg.basis = OamBasis(-4, 4);
  cfg.g = 0.0;
  cfg.m = 0;
  cfg.t_c = 0.0;
  CHECK(max_norm(build_single_shot(cfg).mat() - Matrix::Identity(18, 18)) ==
        0.0);
}

TEST_CASE("single shot maps the reference state to the split pair") {
  SchemeConfig cfg;
  cfg.basis = OamBasis(-6, 6);
  cfg.g = 0.21;
  cfg.t_s = 1.0;
  cfg.m = 2;
  cfg.t_c = 2.0;
  const Vector out =
      build_single_shot(cfg).mat() * make_initial_state(cfg);
  // (1/√2)·e^{−iαL̂_z}(|−m⟩⊗|R⟩ + |+m⟩⊗|L⟩) for the l = 0 probe.
  const double alpha = cfg.alpha();
  Vector expected = Vector::Zero(out.size());
  expected(2 * cfg.basis.index(-2) + 0) =
      std::exp(Complex(0.0, -alpha * -2)) / std::numbers::sqrt2;
  expected(2 * cfg.basis.index(+2) + 1) =
      std::exp(Complex(0.0, -alpha * +2)) / std::numbers::sqrt2;
  CHECK(max_norm(out - expected) < 1e-15);
}

TEST_CASE("single shot with m = 0 degenerates to the standard scheme") {
  SchemeConfig cfg;
  cfg.basis = OamBasis(-5, 5);
  cfg.g = 0.13;
  cfg.m = 0;
  cfg.t_c = 0.0;
  const Matrix expected =
      tensor(build_rotation(cfg.basis, cfg.alpha()).mat(),
             Matrix::Identity(2, 2));
  CHECK(max_norm(build_single_shot(cfg).mat() - expected) == 0.0);
}

TEST_CASE("sequential evolution") {
  SchemeConfig cfg;
  cfg.basis = OamBasis(-9, 9);
  cfg.g = std::numbers::pi / 180.0;
  cfg.m = 1;

  SUBCASE("base case equals the single shot") {
    cfg.n_iter = 1;
    CHECK(max_norm(build_sequential(cfg).mat() - build_single_shot(cfg).mat()) ==
          0.0);
  }
  SUBCASE("two commuting passes give a pure double shift") {
    cfg.g = 0.0;
    cfg.n_iter = 2;
    const Matrix u = build_sequential(cfg).mat();
    const Vector out = u * basis_state(cfg.basis, 0, polarization_r());
    CHECK(max_norm(out - basis_state(cfg.basis, -2, polarization_r())) == 0.0);
  }
  SUBCASE("unitary for N up to 8") {
    cfg.basis = OamBasis(-17, 17);
    for (int n = 1; n <= 8; ++n) {
      cfg.n_iter = n;
      const Matrix u = build_sequential(cfg).mat();
      CHECK(max_norm(u.adjoint() * u -
                     Matrix::Identity(u.rows(), u.cols())) < 1e-10);
    }
  }
  SUBCASE("matches composing the single shot") {
    for (int n = 2; n <= 4; ++n) {
      cfg.n_iter = n;
      const Matrix single = build_single_shot(cfg).mat();
      Matrix composed = single;
      for (int k = 1; k < n; ++k) composed = single * composed;
      CHECK(max_norm(build_sequential(cfg).mat() - composed) < 1e-9);
    }
  }
  SUBCASE("branch bookkeeping: OAM expectation is ∓N·m per branch") {
    cfg.m = 2;
    cfg.n_iter = 3;
    cfg.basis = OamBasis(-13, 13);
    const Matrix u = build_sequential(cfg).mat();
    const Vector from_r = u * basis_state(cfg.basis, 0, polarization_r());
    const Vector from_l = u * basis_state(cfg.basis, 0, polarization_l());
    CHECK(oam_expectation(cfg.basis, from_r) == doctest::Approx(-6.0));
    CHECK(oam_expectation(cfg.basis, from_l) == doctest::Approx(+6.0));
  }
}

TEST_CASE("support overflow is detected") {
  SchemeConfig cfg;
  cfg.basis = OamBasis(-3, 3);
  cfg.m = 2;
  cfg.n_iter = 2;
  CHECK_THROWS_AS(build_sequential(cfg), SimError);

  cfg.basis = OamBasis(-8, 8);
  Vector probe = Vector::Zero(cfg.basis.dim());
  probe(cfg.basis.index(6)) = 1.0;  // within 4 of the edge, N·m = 4
  CHECK_THROWS_AS(make_initial_state(cfg, probe), SimError);
}

TEST_CASE("unwinder restores the probe and leaves the dial phases") {
  SchemeConfig cfg;
  cfg.basis = OamBasis(-15, 15);
  cfg.g = 0.017;
  cfg.m = 2;
  cfg.t_c = 2.0;
  cfg.n_iter = 3;
  const Vector evolved =
      build_sequential(cfg).mat() * make_initial_state(cfg);
  const Vector unwound =
      build_unwinder(cfg.basis, cfg.n_iter * cfg.m).mat() * evolved;

  // Probe returns to l = 0; ancilla carries e^{±i(N²+N)αm/2}.
  const double phase =
      0.5 * (cfg.n_iter * cfg.n_iter + cfg.n_iter) * cfg.alpha() * cfg.m;
  Vector expected = Vector::Zero(unwound.size());
  expected(2 * cfg.basis.index(0) + 0) =
      std::exp(Complex(0.0, phase)) / std::numbers::sqrt2;
  expected(2 * cfg.basis.index(0) + 1) =
      std::exp(Complex(0.0, -phase)) / std::numbers::sqrt2;
  CHECK(max_norm(unwound - expected) < 1e-12);
  CHECK(oam_expectation(cfg.basis, unwound) == doctest::Approx(0.0));
}

TEST_CASE("unwinder of order zero is the identity") {
  const OamBasis basis(-2, 2);
  CHECK(max_norm(build_unwinder(basis, 0).mat() - Matrix::Identity(10, 10)) ==
        0.0);
}

TEST_CASE("projectors") {
  const OamBasis basis(-4, 4);
  SUBCASE("order zero projects the bare polarization") {
    const ProjectorPair p = build_projectors(basis, 0);
    const Vector plus = polarization_plus();
    const Matrix expected =
        tensor(Matrix::Identity(9, 9), plus * plus.adjoint());
    CHECK(max_norm(p.plus - expected) < 1e-15);
  }
  SUBCASE("complete and idempotent") {
    const ProjectorPair p = build_projectors(basis, 2);
    CHECK(max_norm(p.plus + p.minus - Matrix::Identity(18, 18)) < 1e-12);
    CHECK(max_norm(p.plus * p.plus - p.plus) < 1e-10);
    CHECK(max_norm(p.minus * p.minus - p.minus) < 1e-10);
  }
  SUBCASE("probabilities sum to one on random states") {
    const ProjectorPair p = build_projectors(basis, 1);
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      const Vector psi = testing::random_unit_vector(18, seed);
      const double total = std::real(psi.dot(p.plus * psi)) +
                           std::real(psi.dot(p.minus * psi));
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("scheme config validation") {
  SchemeConfig cfg;
  cfg.ancilla_amp_r = 1.0;
  cfg.ancilla_amp_l = 1.0;  // not normalized
  CHECK_THROWS_AS(cfg.validate(), SimError);
}

TEST_CASE("every constructed operator is unitary") {
  SchemeConfig cfg;
  cfg.basis = OamBasis(-10, 10);
  cfg.g = 0.05;
  cfg.m = 2;
  cfg.n_iter = 2;
  for (const Matrix& u :
       {build_shift(cfg.basis, 3).mat(), build_rotation(cfg.basis, 1.3).mat(),
        build_itd_switch(build_shift(cfg.basis, 2)).mat(),
        build_single_shot(cfg).mat(), build_sequential(cfg).mat(),
        build_unwinder(cfg.basis, 4).mat()}) {
    CHECK(max_norm(u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())) <
          1e-12);
  }
}

TEST_SUITE_END();
