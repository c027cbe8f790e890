#pragma once

#include <numbers>
#include <optional>

#include "itdsim/linalg.hpp"

namespace itdsim {

/// Truncated OAM ladder l ∈ [l_min, l_max]; the Gaussian probe l = 0 must be
/// representable.
struct OamBasis {
  int l_min;
  int l_max;

  OamBasis(int lo, int hi) : l_min(lo), l_max(hi) {
    if (lo > 0 || hi < 0 || lo > hi)
      throw SimError(ErrorCode::BadParams, "OAM basis must contain l = 0");
  }

  int dim() const { return l_max - l_min + 1; }
  int index(int l) const { return l - l_min; }
  int value(int index) const { return l_min + index; }
};

/// Default truncation for the reference experiments; keeps every N·m ≤ 16
/// shift far from the edges.
inline OamBasis default_basis() { return OamBasis(-40, 40); }

// Polarization factor: index 0 = |R⟩, 1 = |L⟩. The diagonal measurement
// states are fixed as |+⟩ = (|R⟩ − i|L⟩)/√2 and |−⟩ = (|R⟩ + i|L⟩)/√2;
// this is the global-phase convention that yields P₊ = ½[1 + sin(2gT²)].
Vector polarization_r();
Vector polarization_l();
Vector polarization_h();
Vector polarization_plus();
Vector polarization_minus();

/// All experiment parameters for one scheme run. The rotation angle is
/// alpha = g·t_s; the generating time t_c equals the plate order m.
struct SchemeConfig {
  double g = 0.0;
  double t_s = 1.0;
  double t_c = 1.0;
  int m = 1;
  int n_iter = 1;
  Complex ancilla_amp_r{1.0 / std::numbers::sqrt2, 0.0};
  Complex ancilla_amp_l{1.0 / std::numbers::sqrt2, 0.0};
  OamBasis basis = default_basis();

  double alpha() const { return g * t_s; }
  void validate() const;
};

/// diag(l_min, …, l_max) on the OAM factor.
HermitianOperator build_lz(const OamBasis& basis);

/// Cyclic OAM shift |l⟩ → |l+m⟩ (exactly unitary). Callers must keep the
/// probe support N·m away from the truncation edges so no amplitude wraps.
UnitaryOperator build_shift(const OamBasis& basis, int m);

/// diag(e^{−iα·l}) on the OAM factor.
UnitaryOperator build_rotation(const OamBasis& basis, double alpha);

/// u_c ⊗ |R⟩⟨R| + u_c† ⊗ |L⟩⟨L| with control basis {|0⟩ ≡ |R⟩, |1⟩ ≡ |L⟩}.
UnitaryOperator build_itd_switch(const UnitaryOperator& u_c);

/// Single-shot evolution: generating shift then profile rotation. The |R⟩
/// branch shifts OAM by −m and the |L⟩ branch by +m.
UnitaryOperator build_single_shot(const SchemeConfig& cfg);

/// N-fold evolution, evaluated blockwise per ancilla branch.
UnitaryOperator build_sequential(const SchemeConfig& cfg);

/// Counter-shift that removes the accumulated topological charge:
/// shift(+order) ⊗ |R⟩⟨R| + shift(−order) ⊗ |L⟩⟨L|.
UnitaryOperator build_unwinder(const OamBasis& basis, int order);

struct ProjectorPair {
  Matrix plus;
  Matrix minus;
};

/// Π_± = U_order† (1 ⊗ |±⟩⟨±|) U_order.
ProjectorPair build_projectors(const OamBasis& basis, int order);

/// Joint probe ⊗ ancilla vector from OAM probe amplitudes (index order:
/// OAM major, polarization minor). Throws SUPPORT_OVERFLOW if the probe
/// support would wrap under n_iter shifts of order m.
Vector make_initial_state(const SchemeConfig& cfg,
                          const std::optional<Vector>& probe = std::nullopt);

/// Sub-block of a joint-space operator restricted to OAM values at least
/// `margin` away from both truncation edges (both polarizations kept).
Matrix support_safe_block(const Matrix& joint_op, const OamBasis& basis,
                          int margin);

}  // namespace itdsim
