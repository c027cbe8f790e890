#include "itdsim/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "itdsim/rng.hpp"
#include "json.hpp"

namespace itdsim {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

CountRecord sample_counts(const ProbPair& p, std::int64_t nu,
                          std::uint64_t rng_seed) {
  if (nu < 1) throw SimError(ErrorCode::BadParams, "need nu ≥ 1");
  Rng rng(rng_seed);
  const std::int64_t plus = rng.binomial(nu, p.p_plus);
  return CountRecord{plus, nu - plus};
}

namespace {

SchemeConfig scheme_for(SweepMode mode, double g_true, int axis_value,
                        const OamBasis& basis) {
  SchemeConfig cfg;
  cfg.basis = basis;
  cfg.g = g_true;
  if (mode == SweepMode::SingleT) {
    cfg.t_s = axis_value;
    cfg.t_c = axis_value;
    cfg.m = axis_value;
    cfg.n_iter = 1;
  } else {
    cfg.t_s = 1.0;
    cfg.t_c = 1.0;
    cfg.m = 1;
    cfg.n_iter = axis_value;
  }
  return cfg;
}

}  // namespace

SweepResult run_sweep(const SweepConfig& cfg) {
  if (cfg.axis.empty())
    throw SimError(ErrorCode::BadGrid, "sweep grid must not be empty");
  for (const int v : cfg.axis)
    if (v < 1) throw SimError(ErrorCode::BadGrid, "grid values must be ≥ 1");
  if (cfg.repetitions < 1 || cfg.group_size < 1 ||
      cfg.repetitions % cfg.group_size != 0)
    throw SimError(ErrorCode::BadGrid,
                   "repetitions must be a positive multiple of group_size");
  if (cfg.nu < 1) throw SimError(ErrorCode::BadParams, "need nu ≥ 1");

  const int groups = cfg.repetitions / cfg.group_size;
  SweepResult result;
  result.mode = cfg.mode;
  result.axis = cfg.axis;
  result.groups = groups;
  result.repetitions_per_group = cfg.group_size;
  result.seed = cfg.seed;
  result.g_true = cfg.g_true;
  result.nu = cfg.nu;

  for (std::size_t point = 0; point < cfg.axis.size(); ++point) {
    const int axis_value = cfg.axis[point];
    const SchemeConfig scheme =
        scheme_for(cfg.mode, cfg.g_true, axis_value, cfg.basis);
    const ProbPair p = probs_simulated(scheme);

    std::vector<double> estimates(cfg.repetitions);
    for (int rep = 0; rep < cfg.repetitions; ++rep) {
      CountRecord rec;
      if (cfg.noiseless) {
        rec.nu_plus = std::llround(double(cfg.nu) * p.p_plus);
        rec.nu_minus = cfg.nu - rec.nu_plus;
      } else {
        rec = sample_counts(p, cfg.nu, derive_seed(cfg.seed, point, rep));
      }
      estimates[rep] = cfg.mode == SweepMode::SingleT
                           ? mle_single(rec, axis_value)
                           : mle_sequential(rec, axis_value);
    }

    std::vector<double> group_rmse(groups);
    for (int grp = 0; grp < groups; ++grp) {
      const auto begin = estimates.begin() + grp * cfg.group_size;
      group_rmse[grp] =
          rmse(std::vector<double>(begin, begin + cfg.group_size), cfg.g_true);
    }
    double mean = 0.0;
    for (const double r : group_rmse) mean += r;
    mean /= groups;
    double var = 0.0;
    for (const double r : group_rmse) var += (r - mean) * (r - mean);
    const double stderr_groups =
        groups > 1 ? std::sqrt(var / (groups - 1) / groups) : 0.0;

    result.rmse_mean.push_back(mean);
    result.rmse_stderr.push_back(stderr_groups);
    result.bound.push_back(experimental_bound(
        cfg.mode == SweepMode::SingleT ? ExperimentVariant::SingleT
                                       : ExperimentVariant::SequentialN,
        double(cfg.nu), axis_value));
  }
  return result;
}

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
  out << "axis,rmse_mean,rmse_stderr,bound\n";
  for (std::size_t i = 0; i < result.axis.size(); ++i)
    out << result.axis[i] << ',' << format_double(result.rmse_mean[i]) << ','
        << format_double(result.rmse_stderr[i]) << ','
        << format_double(result.bound[i]) << '\n';
}

void write_sweep_json(const SweepResult& result, std::ostream& out) {
  nlohmann::json j;
  j["mode"] =
      result.mode == SweepMode::SingleT ? "single-T" : "sequential-N";
  j["axis"] = result.axis;
  j["rmse_mean"] = result.rmse_mean;
  j["rmse_stderr"] = result.rmse_stderr;
  j["bound"] = result.bound;
  j["groups"] = result.groups;
  j["repetitions_per_group"] = result.repetitions_per_group;
  j["seed"] = result.seed;
  j["g_true"] = result.g_true;
  j["nu"] = result.nu;
  out << j.dump(2) << '\n';
}

void TimestampSynthConfig::validate() const {
  if (duration_ps <= 0)
    throw SimError(ErrorCode::BadParams, "duration must be positive");
  if (pair_rate_hz < 0.0 || dark_rate_herald_hz < 0.0 ||
      dark_rate_plus_hz < 0.0 || dark_rate_minus_hz < 0.0)
    throw SimError(ErrorCode::BadParams, "rates must be nonnegative");
  if (p_plus < 0.0 || p_plus > 1.0)
    throw SimError(ErrorCode::BadParams, "p_plus must lie in [0,1]");
  if (jitter_sigma_ps < 0.0)
    throw SimError(ErrorCode::BadParams, "jitter must be nonnegative");
}

namespace {

constexpr double kPsPerSecond = 1e12;

void append_poisson_events(Rng& rng, double rate_hz, std::int64_t duration_ps,
                           std::vector<std::int64_t>& out) {
  if (rate_hz <= 0.0) return;
  double t_ps = 0.0;
  for (;;) {
    t_ps += rng.exponential(rate_hz) * kPsPerSecond;
    if (t_ps > double(duration_ps)) break;
    out.push_back(std::int64_t(t_ps));
  }
}

}  // namespace

TimestampStreams synthesize_timestamps(const TimestampSynthConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  TimestampStreams streams;

  std::vector<std::int64_t> pair_times;
  append_poisson_events(rng, cfg.pair_rate_hz, cfg.duration_ps, pair_times);
  for (const std::int64_t t_pair : pair_times) {
    streams.herald.events.push_back(t_pair + cfg.herald_delay_ps);
    std::int64_t t_signal = t_pair + cfg.signal_delay_ps;
    if (cfg.jitter_sigma_ps > 0.0)
      t_signal += std::llround(rng.gaussian(cfg.jitter_sigma_ps));
    auto& arm =
        rng.bernoulli(cfg.p_plus) ? streams.signal_plus : streams.signal_minus;
    if (t_signal >= 0) arm.events.push_back(t_signal);
  }

  append_poisson_events(rng, cfg.dark_rate_herald_hz, cfg.duration_ps,
                        streams.herald.events);
  append_poisson_events(rng, cfg.dark_rate_plus_hz, cfg.duration_ps,
                        streams.signal_plus.events);
  append_poisson_events(rng, cfg.dark_rate_minus_hz, cfg.duration_ps,
                        streams.signal_minus.events);

  for (auto* ch :
       {&streams.herald, &streams.signal_plus, &streams.signal_minus})
    std::sort(ch->events.begin(), ch->events.end());
  return streams;
}

}  // namespace itdsim
