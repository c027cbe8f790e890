// Command-line front end: precision bounds, scheme probabilities, Fisher
// information, Monte Carlo sweeps, timestamp synthesis and coincidence
// counting. Emits CSV/JSON with a reproducibility manifest next to every
// file output.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "itdsim/coincidence.hpp"
#include "itdsim/momentum.hpp"
#include "itdsim/montecarlo.hpp"
#include "itdsim/physics.hpp"
#include "itdsim/stats.hpp"
#include "json.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using itdsim::ErrorCode;
using itdsim::SimError;
using nlohmann::json;

std::filesystem::path resolve_out(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_absolute()) return p;
  if (const char* dir = std::getenv("ITDSIM_OUT_DIR"))
    return std::filesystem::path(dir) / p;
  return p;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out)
    throw SimError(ErrorCode::InputFormat,
                   "cannot open output file " + path.string());
  return out;
}

void write_manifest(const std::string& command, const json& params,
                    const std::vector<std::filesystem::path>& outputs,
                    const std::filesystem::path& manifest_path) {
  json manifest;
  manifest["command"] = command;
  manifest["parameters"] = params;
  manifest["version"] = kVersion;
  std::vector<std::string> names;
  for (const auto& p : outputs) names.push_back(p.string());
  manifest["outputs"] = names;
  auto out = open_out(manifest_path);
  out << manifest.dump(2) << '\n';
}

/// "a..b" (inclusive integer range) or a single integer.
std::vector<int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) return {std::stoi(text)};
    const int lo = std::stoi(text.substr(0, dots));
    const int hi = std::stoi(text.substr(dots + 2));
    if (lo > hi)
      throw SimError(ErrorCode::BadParams, "range must be ascending");
    std::vector<int> values;
    for (int v = lo; v <= hi; ++v) values.push_back(v);
    return values;
  } catch (const std::invalid_argument&) {
    throw SimError(ErrorCode::BadParams, "cannot parse range '" + text + "'");
  } catch (const std::out_of_range&) {
    throw SimError(ErrorCode::BadParams, "range value out of range");
  }
}

std::string fmt(double v) { return itdsim::format_double(v); }

// ---------------------------------------------------------------- bounds

struct BoundsArgs {
  std::string variant;
  double nu = 2000.0;
  double dv = 0.0;
  std::string t_range = "1..4";
  std::string n_range = "1..4";
  std::string out;
};

int run_bounds(const BoundsArgs& args) {
  itdsim::BoundVariant variant;
  bool uses_t = false;
  if (args.variant == "standard-T") {
    variant = itdsim::BoundVariant::StandardT;
    uses_t = true;
  } else if (args.variant == "standard-N") {
    variant = itdsim::BoundVariant::StandardN;
  } else if (args.variant == "itd-T") {
    variant = itdsim::BoundVariant::ItdT;
    uses_t = true;
  } else if (args.variant == "itd-N") {
    variant = itdsim::BoundVariant::ItdN;
  } else {
    throw SimError(ErrorCode::BadParams,
                   "variant must be standard-T, standard-N, itd-T or itd-N");
  }

  std::string csv = "x,bound\n";
  for (const int x : parse_range(uses_t ? args.t_range : args.n_range)) {
    itdsim::BoundParams p;
    p.nu = args.nu;
    p.dv_max = args.dv;
    p.t = x;
    p.n = x;
    csv += std::to_string(x) + ',' + fmt(itdsim::precision_bound(variant, p)) +
           '\n';
  }

  if (args.out.empty()) {
    std::cout << csv;
  } else {
    const auto path = resolve_out(args.out);
    open_out(path) << csv;
    write_manifest("bounds",
                   json{{"variant", args.variant},
                        {"nu", args.nu},
                        {"dv", args.dv},
                        {"t", args.t_range},
                        {"n", args.n_range}},
                   {path}, path.string() + ".manifest.json");
  }
  return 0;
}

// ----------------------------------------------------------------- probs

struct ProbsArgs {
  std::string mode;
  double g = std::numbers::pi / 180.0;
  std::string t_range = "1..4";
  double alpha = std::numbers::pi / 180.0;
  std::string n_range = "1..4";
  bool simulate = false;
  std::string out;
};

int run_probs(const ProbsArgs& args) {
  const bool single = args.mode == "single";
  if (!single && args.mode != "sequential")
    throw SimError(ErrorCode::BadParams, "mode must be single or sequential");

  std::string csv = args.simulate
                        ? "x,p_plus,p_minus,sim_p_plus,sim_p_minus,delta\n"
                        : "x,p_plus,p_minus\n";
  for (const int x : parse_range(single ? args.t_range : args.n_range)) {
    const itdsim::ProbPair closed =
        single ? itdsim::probs_single_closed(args.g, x)
               : itdsim::probs_sequential_closed(args.alpha, x);
    csv += std::to_string(x) + ',' + fmt(closed.p_plus) + ',' +
           fmt(closed.p_minus);
    if (args.simulate) {
      itdsim::SchemeConfig cfg;
      if (single) {
        cfg.g = args.g;
        cfg.t_s = x;
        cfg.t_c = x;
        cfg.m = x;
        cfg.n_iter = 1;
      } else {
        cfg.g = args.alpha;
        cfg.t_s = 1.0;
        cfg.t_c = 1.0;
        cfg.m = 1;
        cfg.n_iter = x;
      }
      const itdsim::ProbPair sim = itdsim::probs_simulated(cfg);
      const double delta = std::max(std::abs(sim.p_plus - closed.p_plus),
                                    std::abs(sim.p_minus - closed.p_minus));
      csv += ',' + fmt(sim.p_plus) + ',' + fmt(sim.p_minus) + ',' + fmt(delta);
    }
    csv += '\n';
  }

  if (args.out.empty()) {
    std::cout << csv;
  } else {
    const auto path = resolve_out(args.out);
    open_out(path) << csv;
    write_manifest("probs",
                   json{{"mode", args.mode},
                        {"g", args.g},
                        {"alpha", args.alpha},
                        {"t", args.t_range},
                        {"n", args.n_range},
                        {"simulate", args.simulate}},
                   {path}, path.string() + ".manifest.json");
  }
  return 0;
}

// ---------------------------------------------------------------- fisher

struct FisherArgs {
  std::string mode;
  double g = std::numbers::pi / 180.0;
  std::string t_range = "1..4";
  std::string n_range = "1..4";
  std::string out;
};

int run_fisher(const FisherArgs& args) {
  const bool single = args.mode == "single";
  if (!single && args.mode != "sequential")
    throw SimError(ErrorCode::BadParams, "mode must be single or sequential");

  const itdsim::OamBasis basis = itdsim::default_basis();
  const itdsim::HermitianOperator lz = itdsim::build_lz(basis);
  const itdsim::Vector probe = [&] {
    itdsim::Vector v = itdsim::Vector::Zero(basis.dim());
    v(basis.index(0)) = 1.0;
    return v;
  }();
  const itdsim::Vector h_pol = itdsim::polarization_h();
  itdsim::Matrix probe_col(basis.dim(), 1), pol_col(2, 1);
  probe_col.col(0) = probe;
  pol_col.col(0) = h_pol;
  const itdsim::Vector joint = itdsim::tensor(probe_col, pol_col).col(0);
  const itdsim::StateEnsemble state = itdsim::StateEnsemble::pure(joint);

  std::string csv = "x,cfi,qfi,four_delta_k_sq\n";
  for (const int x : parse_range(single ? args.t_range : args.n_range)) {
    const double t = x;
    const double fisher_classical =
        single ? itdsim::cfi(
                     [&](double g) { return itdsim::probs_single_closed(g, t); },
                     args.g)
               : itdsim::cfi(
                     [&](double a) {
                       return itdsim::probs_sequential_closed(a, x);
                     },
                     args.g);
    const itdsim::HermitianOperator momentum =
        single ? itdsim::momentum_itd_analytic(
                     itdsim::HermitianOperator(t * lz.mat()), t, t)
               : itdsim::momentum_itd_sequential(
                     itdsim::HermitianOperator(t * lz.mat()), x, 1.0, 1.0);
    const double qfi = itdsim::qfi_ensemble(state, momentum);
    const double delta_k = itdsim::avg_uncertainty(state, momentum);
    const double four_var = 4.0 * delta_k * delta_k;
    if (fisher_classical > qfi + 1e-6 || qfi > four_var + 1e-6)
      throw SimError(ErrorCode::BadParams,
                     "information ordering cfi ≤ qfi ≤ 4Δ𝒦̄² violated");
    csv += std::to_string(x) + ',' + fmt(fisher_classical) + ',' + fmt(qfi) +
           ',' + fmt(four_var) + '\n';
  }

  if (args.out.empty()) {
    std::cout << csv;
  } else {
    const auto path = resolve_out(args.out);
    open_out(path) << csv;
    write_manifest("fisher",
                   json{{"mode", args.mode},
                        {"g", args.g},
                        {"t", args.t_range},
                        {"n", args.n_range}},
                   {path}, path.string() + ".manifest.json");
  }
  return 0;
}

// ----------------------------------------------------------------- sweep

struct SweepArgs {
  std::string mode;
  std::string grid = "1..4";
  std::int64_t nu = 2000;
  int reps = 600;
  int group = 30;
  std::uint64_t seed = 1;
  double g0 = std::numbers::pi / 180.0;
  bool noiseless = false;
  std::string out = "sweep";
};

int run_sweep_cmd(const SweepArgs& args) {
  itdsim::SweepConfig cfg;
  if (args.mode == "single-T") {
    cfg.mode = itdsim::SweepMode::SingleT;
  } else if (args.mode == "sequential-N") {
    cfg.mode = itdsim::SweepMode::SequentialN;
  } else {
    throw SimError(ErrorCode::BadParams,
                   "mode must be single-T or sequential-N");
  }
  cfg.axis = parse_range(args.grid);
  cfg.nu = args.nu;
  cfg.repetitions = args.reps;
  cfg.group_size = args.group;
  cfg.seed = args.seed;
  cfg.g_true = args.g0;
  cfg.noiseless = args.noiseless;

  const itdsim::SweepResult result = itdsim::run_sweep(cfg);

  const auto csv_path = resolve_out(args.out + ".csv");
  const auto json_path = resolve_out(args.out + ".json");
  {
    auto out = open_out(csv_path);
    itdsim::write_sweep_csv(result, out);
  }
  {
    auto out = open_out(json_path);
    itdsim::write_sweep_json(result, out);
  }
  write_manifest("sweep",
                 json{{"mode", args.mode},
                      {"grid", args.grid},
                      {"nu", args.nu},
                      {"reps", args.reps},
                      {"group", args.group},
                      {"seed", args.seed},
                      {"g0", args.g0},
                      {"noiseless", args.noiseless}},
                 {csv_path, json_path},
                 resolve_out(args.out + ".manifest.json"));
  return 0;
}

// ----------------------------------------------------------------- synth

struct SynthArgs {
  itdsim::TimestampSynthConfig cfg;
  std::string out = "timestamps.csv";
};

int run_synth(const SynthArgs& args) {
  const itdsim::TimestampStreams streams =
      itdsim::synthesize_timestamps(args.cfg);
  const auto path = resolve_out(args.out);
  {
    auto out = open_out(path);
    itdsim::write_timestamp_csv(streams, out);
  }
  write_manifest("synth",
                 json{{"duration_ps", args.cfg.duration_ps},
                      {"pair_rate_hz", args.cfg.pair_rate_hz},
                      {"herald_delay_ps", args.cfg.herald_delay_ps},
                      {"signal_delay_ps", args.cfg.signal_delay_ps},
                      {"jitter_sigma_ps", args.cfg.jitter_sigma_ps},
                      {"dark_rate_herald_hz", args.cfg.dark_rate_herald_hz},
                      {"dark_rate_plus_hz", args.cfg.dark_rate_plus_hz},
                      {"dark_rate_minus_hz", args.cfg.dark_rate_minus_hz},
                      {"p_plus", args.cfg.p_plus},
                      {"seed", args.cfg.seed}},
                 {path}, path.string() + ".manifest.json");
  return 0;
}

// -------------------------------------------------------------- coincide

struct CoincideArgs {
  std::string in;
  std::int64_t delay_min = itdsim::kDefaultDelayMin;
  std::int64_t delay_max = itdsim::kDefaultDelayMax;
  std::int64_t step = itdsim::kDefaultStep;
  std::int64_t gate = itdsim::kDefaultGate;
  std::int64_t segment_ms = 0;
  std::string out = "coincide";
};

int run_coincide(const CoincideArgs& args) {
  std::ifstream in(args.in);
  if (!in)
    throw SimError(ErrorCode::InputFormat,
                   "cannot open input file " + args.in);
  const itdsim::TimestampStreams streams = itdsim::read_timestamp_csv(in);

  std::vector<std::filesystem::path> outputs;
  json summary;

  const auto histogram_for = [&](const itdsim::TimestampChannel& signals) {
    return itdsim::histogram(
        itdsim::pair_intervals(streams.herald, signals), args.delay_min,
        args.delay_max, args.step, args.gate);
  };

  const struct {
    const char* name;
    const itdsim::TimestampChannel& signals;
  } pairs[] = {{"plus", streams.signal_plus}, {"minus", streams.signal_minus}};

  for (const auto& pair : pairs) {
    const itdsim::CoincidenceHistogram h = histogram_for(pair.signals);
    const itdsim::Peak peak = itdsim::peak_extract(h);
    const auto path =
        resolve_out(args.out + "_" + pair.name + ".csv");
    auto out = open_out(path);
    itdsim::write_histogram_csv(h, out);
    outputs.push_back(path);
    summary[pair.name] = {{"peak_delay_ps", peak.delay_ps},
                          {"peak_count", peak.count}};
  }

  if (args.segment_ms > 0) {
    const std::int64_t segment_ps = args.segment_ms * 1'000'000'000;
    const auto groups = itdsim::segment_streams(streams, segment_ps);
    const auto path = resolve_out(args.out + "_groups.csv");
    auto out = open_out(path);
    out << "group,peak_delay_ps_plus,nu_plus,peak_delay_ps_minus,nu_minus\n";
    for (std::size_t i = 0; i < groups.size(); ++i) {
      const auto h_plus = itdsim::histogram(
          itdsim::pair_intervals(groups[i].herald, groups[i].signal_plus),
          args.delay_min, args.delay_max, args.step, args.gate);
      const auto h_minus = itdsim::histogram(
          itdsim::pair_intervals(groups[i].herald, groups[i].signal_minus),
          args.delay_min, args.delay_max, args.step, args.gate);
      const itdsim::Peak p_plus = itdsim::peak_extract(h_plus);
      const itdsim::Peak p_minus = itdsim::peak_extract(h_minus);
      out << i << ',' << p_plus.delay_ps << ',' << p_plus.count << ','
          << p_minus.delay_ps << ',' << p_minus.count << '\n';
    }
    outputs.push_back(path);
    summary["groups"] = groups.size();
  }

  const auto summary_path = resolve_out(args.out + "_summary.json");
  open_out(summary_path) << summary.dump(2) << '\n';
  outputs.push_back(summary_path);

  write_manifest("coincide",
                 json{{"in", args.in},
                      {"delay_min", args.delay_min},
                      {"delay_max", args.delay_max},
                      {"step", args.step},
                      {"gate", args.gate},
                      {"segment_ms", args.segment_ms}},
                 outputs, resolve_out(args.out + ".manifest.json"));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-switch metrology simulator and timestamp toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  BoundsArgs bounds_args;
  auto* bounds = app.add_subcommand("bounds", "Precision lower bounds on δg");
  bounds->add_option("--variant", bounds_args.variant,
                     "standard-T | standard-N | itd-T | itd-N")
      ->required();
  bounds->add_option("--nu", bounds_args.nu, "photon budget ν");
  bounds->add_option("--dv", bounds_args.dv, "max average uncertainty ΔV");
  bounds->add_option("--t", bounds_args.t_range, "T value or range a..b");
  bounds->add_option("--n", bounds_args.n_range, "N value or range a..b");
  bounds->add_option("--out", bounds_args.out, "output CSV path");

  ProbsArgs probs_args;
  auto* probs = app.add_subcommand("probs", "Projective probabilities");
  probs->add_option("--mode", probs_args.mode, "single | sequential")
      ->required();
  probs->add_option("--g", probs_args.g, "unknown parameter g (rad)");
  probs->add_option("--alpha", probs_args.alpha, "rotation angle α (rad)");
  probs->add_option("--t", probs_args.t_range, "T = m value or range");
  probs->add_option("--n", probs_args.n_range, "N value or range");
  probs->add_flag("--simulate", probs_args.simulate,
                  "also run the full state-vector pipeline");
  probs->add_option("--out", probs_args.out, "output CSV path");

  FisherArgs fisher_args;
  auto* fisher = app.add_subcommand("fisher", "CFI, QFI and 4Δ𝒦̄²");
  fisher->add_option("--mode", fisher_args.mode, "single | sequential")
      ->required();
  fisher->add_option("--g", fisher_args.g, "evaluation point (rad)");
  fisher->add_option("--t", fisher_args.t_range, "T value or range");
  fisher->add_option("--n", fisher_args.n_range, "N value or range");
  fisher->add_option("--out", fisher_args.out, "output CSV path");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Monte Carlo RMSE sweep");
  sweep->add_option("--mode", sweep_args.mode, "single-T | sequential-N")
      ->required();
  sweep->add_option("--grid", sweep_args.grid, "axis range, e.g. 1..4");
  sweep->add_option("--nu", sweep_args.nu, "photons per repetition");
  sweep->add_option("--reps", sweep_args.reps, "total repetitions");
  sweep->add_option("--group", sweep_args.group, "repetitions per group");
  sweep->add_option("--seed", sweep_args.seed, "master RNG seed");
  sweep->add_option("--g0", sweep_args.g0, "true parameter value (rad)");
  sweep->add_flag("--noiseless", sweep_args.noiseless,
                  "use rounded expected counts instead of sampling");
  sweep->add_option("--out", sweep_args.out, "output path prefix");

  SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth", "Synthesize detector timestamps");
  synth->add_option("--duration-ps", synth_args.cfg.duration_ps);
  synth->add_option("--pair-rate", synth_args.cfg.pair_rate_hz,
                    "pairs per second");
  synth->add_option("--herald-delay", synth_args.cfg.herald_delay_ps);
  synth->add_option("--signal-delay", synth_args.cfg.signal_delay_ps);
  synth->add_option("--jitter", synth_args.cfg.jitter_sigma_ps,
                    "gaussian jitter sigma (ps)");
  synth->add_option("--dark-herald", synth_args.cfg.dark_rate_herald_hz);
  synth->add_option("--dark-plus", synth_args.cfg.dark_rate_plus_hz);
  synth->add_option("--dark-minus", synth_args.cfg.dark_rate_minus_hz);
  synth->add_option("--p-plus", synth_args.cfg.p_plus);
  synth->add_option("--seed", synth_args.cfg.seed);
  synth->add_option("--out", synth_args.out, "output CSV path");

  CoincideArgs coincide_args;
  auto* coincide =
      app.add_subcommand("coincide", "Delay-binned coincidence counting");
  coincide->add_option("--in", coincide_args.in, "timestamp CSV")->required();
  coincide->add_option("--delay-min", coincide_args.delay_min);
  coincide->add_option("--delay-max", coincide_args.delay_max);
  coincide->add_option("--step", coincide_args.step);
  coincide->add_option("--gate", coincide_args.gate);
  coincide->add_option("--segment-ms", coincide_args.segment_ms,
                       "split into groups of this many milliseconds");
  coincide->add_option("--out", coincide_args.out, "output path prefix");

  try {
    app.parse(argc, argv);
    if (bounds->parsed()) return run_bounds(bounds_args);
    if (probs->parsed()) return run_probs(probs_args);
    if (fisher->parsed()) return run_fisher(fisher_args);
    if (sweep->parsed()) return run_sweep_cmd(sweep_args);
    if (synth->parsed()) return run_synth(synth_args);
    if (coincide->parsed()) return run_coincide(coincide_args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const SimError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
