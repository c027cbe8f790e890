#pragma once

#include <functional>

#include "itdsim/linalg.hpp"

namespace itdsim {

/// Finite-difference momentum plus the Hermitization residual of the raw
/// i U†∂U estimate (max-norm of its anti-Hermitian part).
struct NumericMomentum {
  HermitianOperator op;
  double hermitization_residual;
};

inline constexpr double kMomentumStepDefault = 1e-5;
inline constexpr double kMomentumResidualMax = 1e-6;

/// i U†(g)·[U(g+step) − U(g−step)]/(2·step), Hermitized by (A+A†)/2.
NumericMomentum momentum_numeric(
    const std::function<Matrix(double)>& u_of_g, double g,
    double step = kMomentumStepDefault);

/// ∫₀^{t_s} U†(t) V U(t) dt with U(t) = exp(−i H t), by composite Simpson.
HermitianOperator momentum_standard(const HermitianOperator& v_s,
                                    const HermitianOperator& h_s, double t_s,
                                    int quad_points);

/// Σ_{j=0}^{n−1} (U†)^j K U^j — the momentum after n sequential passes.
HermitianOperator momentum_sequential_conjugation(const HermitianOperator& k_s,
                                                  const UnitaryOperator& u_s,
                                                  int n);

/// (K_S − t_c·t_s) ⊗ |R⟩⟨R| + (K_S + t_c·t_s) ⊗ |L⟩⟨L|.
HermitianOperator momentum_itd_analytic(const HermitianOperator& k_s,
                                        double t_c, double t_s);

/// K_S^(N) ⊗ 1 − ((n²+n)/2)·t_c·t_s ⊗ σ_z.
HermitianOperator momentum_itd_sequential(const HermitianOperator& k_s_n,
                                          int n, double t_c, double t_s);

/// Δ𝒦̄ = √(Σ p_i (⟨Ψ_i|K²|Ψ_i⟩ − ⟨Ψ_i|K|Ψ_i⟩²)).
double avg_uncertainty(const StateEnsemble& ens, const HermitianOperator& k);

enum class BoundVariant { StandardT, StandardN, ItdT, ItdN };

struct BoundParams {
  double nu = 1.0;      // number of measured photons
  double dv_max = 0.0;  // maximum average uncertainty of V_S
  double t = 1.0;       // evolution time (T variants)
  int n = 1;            // iteration count (N variants)
};

/// Lower bound on δg for the requested scheme variant. Returns +inf when
/// the information denominator vanishes (e.g. dv_max = 0 in the standard
/// scheme).
double precision_bound(BoundVariant variant, const BoundParams& p);

}  // namespace itdsim
