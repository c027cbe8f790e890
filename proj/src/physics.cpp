#include "itdsim/physics.hpp"

#include <cmath>

namespace itdsim {

namespace {

constexpr Complex kI{0.0, 1.0};

Matrix outer(const Vector& a, const Vector& b) { return a * b.adjoint(); }

void check_shift_order(const OamBasis& basis, int m) {
  if (std::abs(m) >= basis.dim())
    throw SimError(ErrorCode::ShiftTooLarge,
                   "shift order |m| must be smaller than the OAM dimension");
}

void check_support_margin(const OamBasis& basis, int n_iter, int m) {
  if (2 * n_iter * std::abs(m) + 1 > basis.dim())
    throw SimError(ErrorCode::SupportOverflow,
                   "OAM truncation too small for N·m shifts");
}

}  // namespace

Vector polarization_r() {
  Vector v(2);
  v << 1.0, 0.0;
  return v;
}

Vector polarization_l() {
  Vector v(2);
  v << 0.0, 1.0;
  return v;
}

Vector polarization_h() {
  Vector v(2);
  v << 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2;
  return v;
}

Vector polarization_plus() {
  Vector v(2);
  v << 1.0 / std::numbers::sqrt2, -kI / std::numbers::sqrt2;
  return v;
}

Vector polarization_minus() {
  Vector v(2);
  v << 1.0 / std::numbers::sqrt2, kI / std::numbers::sqrt2;
  return v;
}

void SchemeConfig::validate() const {
  if (m < 0 || n_iter < 1)
    throw SimError(ErrorCode::BadParams, "need m ≥ 0 and n_iter ≥ 1");
  const double norm = std::norm(ancilla_amp_r) + std::norm(ancilla_amp_l);
  if (std::abs(norm - 1.0) > kEnsembleTol)
    throw SimError(ErrorCode::BadParams, "ancilla amplitudes must be normalized");
  if (!std::isfinite(g) || !std::isfinite(t_s) || !std::isfinite(t_c))
    throw SimError(ErrorCode::BadParams, "scheme parameters must be finite");
}

HermitianOperator build_lz(const OamBasis& basis) {
  const int d = basis.dim();
  Matrix lz = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) lz(i, i) = Complex(basis.value(i), 0.0);
  return HermitianOperator(std::move(lz));
}

UnitaryOperator build_shift(const OamBasis& basis, int m) {
  check_shift_order(basis, m);
  const int d = basis.dim();
  Matrix s = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) s(((i + m) % d + d) % d, i) = 1.0;
  return UnitaryOperator(std::move(s));
}

UnitaryOperator build_rotation(const OamBasis& basis, double alpha) {
  if (!std::isfinite(alpha))
    throw SimError(ErrorCode::BadParams, "rotation angle must be finite");
  const int d = basis.dim();
  Matrix r = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i)
    r(i, i) = std::exp(-kI * Complex(alpha * basis.value(i), 0.0));
  return UnitaryOperator(std::move(r));
}

UnitaryOperator build_itd_switch(const UnitaryOperator& u_c) {
  const Vector r = polarization_r();
  const Vector l = polarization_l();
  return UnitaryOperator(tensor(u_c.mat(), outer(r, r)) +
                         tensor(u_c.mat().adjoint(), outer(l, l)));
}

UnitaryOperator build_single_shot(const SchemeConfig& cfg) {
  cfg.validate();
  check_support_margin(cfg.basis, 1, cfg.m);
  const Matrix rotation =
      tensor(build_rotation(cfg.basis, cfg.alpha()).mat(), Matrix::Identity(2, 2));
  const UnitaryOperator u_i = build_itd_switch(build_shift(cfg.basis, -cfg.m));
  return UnitaryOperator(rotation * u_i.mat());
}

UnitaryOperator build_sequential(const SchemeConfig& cfg) {
  cfg.validate();
  check_support_margin(cfg.basis, cfg.n_iter, cfg.m);
  const Matrix u_s = build_rotation(cfg.basis, cfg.alpha()).mat();
  const Matrix u_c = build_shift(cfg.basis, -cfg.m).mat();

  // Power each ancilla branch on the D×D OAM factor.
  const int d = cfg.basis.dim();
  Matrix branch_r = Matrix::Identity(d, d);
  Matrix branch_l = Matrix::Identity(d, d);
  const Matrix step_r = u_s * u_c;
  const Matrix step_l = u_s * u_c.adjoint();
  for (int k = 0; k < cfg.n_iter; ++k) {
    branch_r = step_r * branch_r;
    branch_l = step_l * branch_l;
  }

  const Vector r = polarization_r();
  const Vector l = polarization_l();
  return UnitaryOperator(tensor(branch_r, outer(r, r)) +
                         tensor(branch_l, outer(l, l)));
}

UnitaryOperator build_unwinder(const OamBasis& basis, int order) {
  check_shift_order(basis, order);
  const Vector r = polarization_r();
  const Vector l = polarization_l();
  return UnitaryOperator(
      tensor(build_shift(basis, order).mat(), outer(r, r)) +
      tensor(build_shift(basis, -order).mat(), outer(l, l)));
}

ProjectorPair build_projectors(const OamBasis& basis, int order) {
  const Matrix u = build_unwinder(basis, order).mat();
  const int d = basis.dim();
  const Matrix eye = Matrix::Identity(d, d);
  const Vector plus = polarization_plus();
  const Vector minus = polarization_minus();
  return ProjectorPair{
      u.adjoint() * tensor(eye, outer(plus, plus)) * u,
      u.adjoint() * tensor(eye, outer(minus, minus)) * u,
  };
}

Vector make_initial_state(const SchemeConfig& cfg,
                          const std::optional<Vector>& probe) {
  cfg.validate();
  const int d = cfg.basis.dim();

  Vector probe_amps;
  if (probe) {
    if (probe->size() != d)
      throw SimError(ErrorCode::DimensionMismatch,
                     "probe amplitude vector must match the OAM dimension");
    probe_amps = *probe;
    const double norm = probe_amps.norm();
    if (norm <= 0.0)
      throw SimError(ErrorCode::BadParams, "probe amplitudes must not vanish");
    probe_amps /= norm;
  } else {
    probe_amps = Vector::Zero(d);
    probe_amps(cfg.basis.index(0)) = 1.0;
  }

  // The probe support must stay N·m away from both edges so that no cyclic
  // shift ever wraps amplitude across the truncation boundary.
  const int margin = cfg.n_iter * cfg.m;
  for (int i = 0; i < d; ++i) {
    if (std::abs(probe_amps(i)) == 0.0) continue;
    const int l = cfg.basis.value(i);
    if (l < cfg.basis.l_min + margin || l > cfg.basis.l_max - margin)
      throw SimError(ErrorCode::SupportOverflow,
                     "probe OAM support too close to the truncation edge");
  }

  Vector ancilla(2);
  ancilla << cfg.ancilla_amp_r, cfg.ancilla_amp_l;
  Matrix probe_col(d, 1), ancilla_col(2, 1);
  probe_col.col(0) = probe_amps;
  ancilla_col.col(0) = ancilla;
  return tensor(probe_col, ancilla_col).col(0);
}

Matrix support_safe_block(const Matrix& joint_op, const OamBasis& basis,
                          int margin) {
  const int d = basis.dim();
  if (joint_op.rows() != 2 * d || joint_op.cols() != 2 * d)
    throw SimError(ErrorCode::DimensionMismatch,
                   "expected a joint-space operator of dimension 2·D");
  const int lo = basis.l_min + margin;
  const int hi = basis.l_max - margin;
  if (lo > hi)
    throw SimError(ErrorCode::SupportOverflow, "margin exceeds the basis");
  const int width = 2 * (hi - lo + 1);
  const int offset = 2 * basis.index(lo);
  return joint_op.block(offset, offset, width, width);
}

}  // namespace itdsim
