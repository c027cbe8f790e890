#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "itdsim/physics.hpp"

namespace itdsim {

/// Two-outcome projective probabilities; p_plus + p_minus = 1.
struct ProbPair {
  double p_plus;
  double p_minus;

  ProbPair(double plus, double minus);
};

/// Detected photon counts for one repetition.
struct CountRecord {
  std::int64_t nu_plus = 0;
  std::int64_t nu_minus = 0;

  std::int64_t total() const { return nu_plus + nu_minus; }
};

/// P_± = ½[1 ± sin(2gT²)] for the single-shot scheme with T_C = T_S = t.
ProbPair probs_single_closed(double g, double t);

/// P_±^(N) = ½{1 ± sin[(N²+N)α]} for the sequential scheme (order m = 1).
ProbPair probs_sequential_closed(double alpha, int n);

/// Projective probabilities from full state-vector evolution through the
/// N-fold scheme followed by the order-N·m unwinding projectors.
ProbPair probs_simulated(const SchemeConfig& cfg,
                         const std::optional<Vector>& probe = std::nullopt);

inline constexpr double kCfiStepDefault = 1e-6;
inline constexpr double kProbFloor = 1e-12;

/// Classical Fisher information F(g) = Σ_i (∂P_i/∂g)²/P_i by central
/// difference.
double cfi(const std::function<ProbPair(double)>& prob_fn, double g,
           double step = kCfiStepDefault);

/// Quantum Fisher information F[ρ,K] = 2 Σ_{ij} (p_i−p_j)²/(p_i+p_j) |K_ij|²
/// for an ensemble given as a spectral decomposition (mutually orthogonal
/// vectors; the completion to zero-weight eigenvectors is implicit).
double qfi_ensemble(const StateEnsemble& ens, const HermitianOperator& k);

/// g̃ = arcsin((ν₊−ν₋)/(ν₊+ν₋))/(2T²); the count ratio is clamped to [−1,1].
double mle_single(const CountRecord& rec, double t);

/// α̃ = arcsin((ν₊−ν₋)/(ν₊+ν₋))/(N²+N).
double mle_sequential(const CountRecord& rec, int n);

/// √[(1/M) Σ (g̃⁽ⁱ⁾ − g₀)²].
double rmse(const std::vector<double>& estimates, double g0);

enum class ExperimentVariant { SingleT, SequentialN };

/// 1/(2√ν T²) for the single-shot scheme, 1/(√ν (N²+N)) for the sequential
/// scheme.
double experimental_bound(ExperimentVariant variant, double nu,
                          double t_or_n);

}  // namespace itdsim
