#include "itdsim/stats.hpp"

#include <algorithm>
#include <cmath>

namespace itdsim {

ProbPair::ProbPair(double plus, double minus) : p_plus(plus), p_minus(minus) {
  if (!(plus >= 0.0) || !(minus >= 0.0) || plus > 1.0 || minus > 1.0 ||
      std::abs(plus + minus - 1.0) > 1e-12)
    throw SimError(ErrorCode::BadParams,
                   "probabilities must lie in [0,1] and sum to 1");
}

ProbPair probs_single_closed(double g, double t) {
  const double s = std::sin(2.0 * g * t * t);
  return ProbPair(0.5 * (1.0 + s), 0.5 * (1.0 - s));
}

ProbPair probs_sequential_closed(double alpha, int n) {
  if (n < 1) throw SimError(ErrorCode::BadParams, "need n ≥ 1");
  const double s = std::sin((double(n) * n + n) * alpha);
  return ProbPair(0.5 * (1.0 + s), 0.5 * (1.0 - s));
}

ProbPair probs_simulated(const SchemeConfig& cfg,
                         const std::optional<Vector>& probe) {
  const Vector initial = make_initial_state(cfg, probe);
  const Vector final_state = build_sequential(cfg).mat() * initial;
  const ProjectorPair proj = build_projectors(cfg.basis, cfg.n_iter * cfg.m);
  double p_plus = std::real(final_state.dot(proj.plus * final_state));
  double p_minus = std::real(final_state.dot(proj.minus * final_state));
  p_plus = std::clamp(p_plus, 0.0, 1.0);
  p_minus = std::clamp(p_minus, 0.0, 1.0);
  return ProbPair(p_plus, p_minus);
}

double cfi(const std::function<ProbPair(double)>& prob_fn, double g,
           double step) {
  if (!(step > 0.0)) throw SimError(ErrorCode::BadParams, "need step > 0");
  const ProbPair at = prob_fn(g);
  if (at.p_plus < kProbFloor || at.p_minus < kProbFloor)
    throw SimError(ErrorCode::DegenerateProbability,
                   "probability too close to 0 for the CFI quotient");
  const ProbPair hi = prob_fn(g + step);
  const ProbPair lo = prob_fn(g - step);
  const double d_plus = (hi.p_plus - lo.p_plus) / (2.0 * step);
  const double d_minus = (hi.p_minus - lo.p_minus) / (2.0 * step);
  return std::max(
      d_plus * d_plus / at.p_plus + d_minus * d_minus / at.p_minus, 0.0);
}

double qfi_ensemble(const StateEnsemble& ens, const HermitianOperator& k) {
  if (ens.dim() != k.dim())
    throw SimError(ErrorCode::DimensionMismatch,
                   "ensemble and operator dimensions differ");
  const Matrix& v = ens.vectors();
  for (Eigen::Index i = 0; i < ens.size(); ++i)
    for (Eigen::Index j = i + 1; j < ens.size(); ++j)
      if (std::abs(v.col(i).dot(v.col(j))) > 1e-10)
        throw SimError(ErrorCode::NonOrthogonalEnsemble,
                       "ensemble vectors must be mutually orthogonal");

  // F = Σ_i 4 p_i Var_i(K) − Σ_{i≠j} 8 p_i p_j/(p_i+p_j) |K_ij|², with the
  // zero-weight completion of the basis contributing only through Var_i.
  const Matrix k_v = k.mat() * v;
  double fisher = 0.0;
  for (Eigen::Index i = 0; i < ens.size(); ++i) {
    const double mean = std::real(v.col(i).dot(k_v.col(i)));
    const double second = std::real(k_v.col(i).dot(k_v.col(i)));
    fisher += 4.0 * ens.weights()(i) * std::max(second - mean * mean, 0.0);
  }
  for (Eigen::Index i = 0; i < ens.size(); ++i) {
    for (Eigen::Index j = 0; j < ens.size(); ++j) {
      if (i == j) continue;
      const double pi = ens.weights()(i), pj = ens.weights()(j);
      if (pi + pj <= 0.0) continue;
      fisher -= 8.0 * pi * pj / (pi + pj) * std::norm(v.col(i).dot(k_v.col(j)));
    }
  }
  return std::max(fisher, 0.0);
}

namespace {

double arcsin_ratio(const CountRecord& rec) {
  if (rec.total() < 1)
    throw SimError(ErrorCode::EmptyRecord, "need at least one detected photon");
  if (rec.nu_plus < 0 || rec.nu_minus < 0)
    throw SimError(ErrorCode::BadParams, "counts must be nonnegative");
  const double ratio =
      double(rec.nu_plus - rec.nu_minus) / double(rec.total());
  return std::asin(std::clamp(ratio, -1.0, 1.0));
}

}  // namespace

double mle_single(const CountRecord& rec, double t) {
  if (!(t > 0.0)) throw SimError(ErrorCode::BadParams, "need T > 0");
  return arcsin_ratio(rec) / (2.0 * t * t);
}

double mle_sequential(const CountRecord& rec, int n) {
  if (n < 1) throw SimError(ErrorCode::BadParams, "need N ≥ 1");
  return arcsin_ratio(rec) / (double(n) * n + n);
}

double rmse(const std::vector<double>& estimates, double g0) {
  if (estimates.empty())
    throw SimError(ErrorCode::EmptyList, "need at least one estimate");
  double acc = 0.0;
  for (const double e : estimates) acc += (e - g0) * (e - g0);
  return std::sqrt(acc / double(estimates.size()));
}

double experimental_bound(ExperimentVariant variant, double nu,
                          double t_or_n) {
  if (!(nu >= 1.0)) throw SimError(ErrorCode::BadParams, "need nu ≥ 1");
  if (!(t_or_n > 0.0))
    throw SimError(ErrorCode::BadParams, "need a positive T or N");
  switch (variant) {
    case ExperimentVariant::SingleT:
      return 1.0 / (2.0 * std::sqrt(nu) * t_or_n * t_or_n);
    case ExperimentVariant::SequentialN:
      return 1.0 / (std::sqrt(nu) * (t_or_n * t_or_n + t_or_n));
  }
  throw SimError(ErrorCode::BadParams, "unknown experiment variant");
}

}  // namespace itdsim
