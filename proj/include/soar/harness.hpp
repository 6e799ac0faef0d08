#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "soar/baselines.hpp"
#include "soar/core.hpp"
#include "soar/movielens.hpp"
#include "soar/soar.hpp"

namespace soar {

enum class AlgoKind { soar, uucb, etc_ucb };

// Stable names used in configs, CSV rows, and JSON reports.
const char* algo_name(AlgoKind k);                       // soar | uucb | etc
AlgoKind algo_from_name(const std::string& name);        // "unknown-algorithm"

// Describes how run_experiment obtains its problem instance.  `kind`
// selects the generator; only the fields that generator reads matter.
struct InstanceSpec {
  std::string kind = "explicit";  // explicit | wc1 | wc2 | random | movielens

  // kind == explicit: full description.
  std::vector<double> arm_means;
  std::vector<double> source_variances;

  // Dimensions for the generated kinds.
  int num_arms = 0;
  int num_sources = 0;

  // kind == wc1: one clean source (sigma_star2, last index), the rest
  // spread down from sigma_max2.
  double sigma_star2 = 1.0;
  double sigma_max2 = 10.0;

  // kind == wc2: near-equal variances base, base + spread/(M-1), ...
  double base_variance = 1.0;
  double spread = 0.7;

  // Mean draws for wc1/wc2/random: uniform on [mean_lo, mean_hi], rounded
  // to mean_decimals digits (negative = no rounding).
  double mean_lo = 0.0;
  double mean_hi = 1.0;
  int mean_decimals = -1;

  // kind == random: variances uniform on [var_lo, var_hi].
  double var_lo = 1.0;
  double var_hi = 3.0;

  // Noise family for the synthetic kinds.
  std::string family = "gaussian";
  double eta_bar = 0.0;  // 0 = derive from the realized variances
  double mu_bar = 0.0;   // 0 = derive from the realized means

  // kind == movielens.
  std::string ratings_path;
  int num_reviewers = 15;
  int num_movies = 500;
  bool replay_noise = false;  // false = Gaussian fit per reviewer
};

struct ExperimentConfig {
  std::string name = "experiment";
  InstanceSpec instance;
  std::vector<AlgoKind> algorithms{AlgoKind::soar};
  AlgoParams params;
  int repetitions = 1;
  std::uint64_t master_seed = 1;
  std::string out_dir = "out";
  bool save_traces = false;

  // Knobs forwarded to SoarConfig.
  std::string regime = "auto";  // auto | standard | low-noise
  std::optional<long long> alpha_override, beta_override;
  bool allow_truncated_exploration = false;
  double exploration_fraction = 0.4;
  bool warm_start_from_preprocess = false;

  SoarConfig soar_config() const;  // validates `regime`
};

// Strict parser for the JSON config document: field names mirror the
// structs above; any unrecognized key raises "bad-config-key" naming it.
ExperimentConfig parse_experiment_config(const std::string& json_text);
ExperimentConfig load_experiment_config(const std::string& path);

// Realizes the instance.  Random draws (means, random variances) consume
// the dedicated stream (master_seed, stream 0), so repetition streams
// (master_seed, 1 + rep) never overlap it.  For movielens kinds the panel
// is also returned through `panel` when non-null.
ProblemInstance build_instance(const InstanceSpec& spec,
                               std::uint64_t master_seed,
                               MoviePanel* panel = nullptr);

// One repetition's bookkeeping, common across algorithms; algorithm
// specific fields are left at their defaults elsewhere.
struct RepSummary {
  double final_regret = 0.0;
  std::vector<long long> source_pulls;  // whole run, per source

  // soar
  long long preprocess_end = 0, exploration_end = 0;
  double preprocess_regret = 0.0, exploration_regret = 0.0,
         adaptive_regret = 0.0;
  std::string regime;                  // resolved; empty for baselines
  std::optional<int> reliable_source;  // 0-based
  std::vector<int> surviving;          // 0-based, ascending
  std::vector<long long> adaptive_source_pulls;

  // etc
  std::optional<int> committed_source;  // 0-based
  long long phase1_len = 0;
};

struct AlgoAggregate {
  AlgoKind kind = AlgoKind::soar;
  // Per-round mean cumulative regret with a 95% normal-approximation band
  // (mean +- 1.96 sd/sqrt(R)); all length T.
  std::vector<double> mean_curve, ci_low, ci_high;
  std::vector<double> mean_source_pulls;  // per source, averaged over reps
  std::vector<RepSummary> reps;
  SoarBudgets budgets;          // soar only; rep 0 (identical across reps)
  PreprocessReport preprocess;  // soar only; rep 0
  std::vector<RunTrace> traces;  // kept only when save_traces

  double mean_final() const { return mean_curve.empty() ? 0.0 : mean_curve.back(); }
  double ci_low_final() const { return ci_low.empty() ? 0.0 : ci_low.back(); }
  double ci_high_final() const { return ci_high.empty() ? 0.0 : ci_high.back(); }
};

struct AggregateResult {
  ExperimentConfig config;
  ProblemInstance instance;
  std::vector<AlgoAggregate> algos;  // config order
  // movielens metadata (empty otherwise)
  std::vector<long long> panel_reviewers;
  long long panel_ratings_used = 0;
};

// Runs R repetitions of every configured algorithm.  Repetition r of every
// algorithm uses the stream (master_seed, 1 + r), so algorithms see
// identical noise and differ only in their decisions.  Aggregation sorts
// each round's repetition values before summing, making the statistics
// invariant under any permutation of repetition indices.
AggregateResult run_experiment(const ExperimentConfig& cfg);

// Writes <name>_curves.csv (round,algorithm,mean_cum_regret,ci_low,ci_high),
// <name>_summary.json, and, when requested, one
// <name>_<algo>_rep<r>_trace.csv per repetition
// (round,arm,source,reward,cum_regret).  All indices are 1-based in files.
// Returns the paths written.  Numeric CSV fields use %.17g (round-trip
// exact); no timestamps anywhere, so identical inputs give identical bytes.
std::vector<std::string> export_results(const AggregateResult& result,
                                        const std::string& out_dir);

// Reads a curves CSV back; used by the round-trip tests.
struct CurveTable {
  std::vector<std::string> algorithms;  // order of first appearance
  // curve[a] aligned with algorithms[a]; each column vector has length T.
  std::vector<std::vector<double>> mean, lo, hi;
};
CurveTable parse_curves_csv(const std::string& path);

// Pinned benchmark configurations ("wc1", "wc2", "varying-k", "varying-m");
// varying suites return one config per swept value.  Unknown names raise
// "unknown-suite".
std::vector<ExperimentConfig> bench_suite(const std::string& which);

}  // namespace soar
