#pragma once
#include <cmath>
#include <optional>
#include <vector>

#include "soar/core.hpp"

namespace soar {

// Neumaier-compensated accumulator: keeps running sums over millions of
// bounded terms accurate to a few ulps, so one-pass variance formulas stay
// within 1e-9 of a two-pass recomputation.
struct Acc {
  double sum = 0.0, comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

// Running moments of one (arm, source) cell.
struct PairStat {
  long long n = 0;
  Acc s;   // sum of rewards
  Acc ss;  // sum of squared rewards
};

// Sufficient statistics for one run.  Preprocess-phase samples (fixed arm,
// every source) live in separate accumulators from adaptive-phase samples:
// the adaptive estimators must not silently reuse calibration data.
class EstimatorState {
public:
  explicit EstimatorState(const ProblemInstance& inst);

  void add_sample(int arm, int source, double x);    // adaptive phase
  void add_preprocess_sample(int source, double x);  // fixed-arm calibration

  const PairStat& at(int arm, int source) const {
    return cell[static_cast<std::size_t>(arm) * M + source];
  }

  int K = 0, M = 0;
  double eta_bar = 0.0;
  std::vector<std::optional<double>> kappa;  // per source, when known

  // Adaptive-phase statistics.
  CountTable counts;
  std::vector<PairStat> cell;  // row-major arm*M + source
  std::vector<Acc> arm_sum;    // per-arm reward sum

  // Preprocess-phase statistics (fixed arm only).  The overall preprocess
  // mean is derived from the per-source sums on demand; nothing else is
  // accumulated in the calibration hot loop.
  std::vector<long long> pre_m;  // per-source sample count
  std::vector<Acc> pre_s, pre_ss;
  long long pre_n_total = 0;  // all preprocess samples of the fixed arm
};

// mu-hat_i: mean reward of arm i over the adaptive phase.  Requires n_i >= 1.
double arm_mean(const EstimatorState& st, int arm);

// Preprocess variance estimate for source j: average squared deviation of
// the source's preprocess samples from the fixed arm's overall preprocess
// mean (pooled across sources, which is what makes it consistent even
// though each source contributes only tau_p samples).  Requires m_j >= 1.
double preproc_source_variance(const EstimatorState& st, int source);

// Half-width of the preprocess confidence band:
//   8 eta_bar^2 sqrt(log(12 M / delta) / tau_p).
double preproc_width(double eta_bar, int M, double delta, long long tau_p);

// Band around the preprocess estimate; the LCB is clamped at zero.
// Requires the source to hold exactly tau_p preprocess samples.
double preproc_var_ucb(const EstimatorState& st, int source, long long tau_p,
                       double delta);
double preproc_var_lcb(const EstimatorState& st, int source, long long tau_p,
                       double delta);

// Pooled within-cell variance of source j: cells with >= 2 samples
// contribute their centered sum of squares; degrees of freedom are
// sum_i max(0, n_ij - 1).  Throws "insufficient-samples" when dof == 0.
double pooled_source_variance(const EstimatorState& st, int source);
long long pooled_dof(const EstimatorState& st, int source);

// Fourth-moment proxy Q_j: max(kappa_j, nu) when the fourth moment is
// known, otherwise max(eta_bar^2 * pooled variance, nu).
double q_value(const EstimatorState& st, int source, const AlgoParams& p);

// Lower confidence bound on sigma_j^2 during the adaptive phase:
//   pooled_j - 2 sqrt(Q_j log(3 M T / delta) / (m_j - K)).
// Returns -infinity while m_j <= K + 1, so starved sources win the argmin
// and get sampled until the bound is meaningful.
double source_var_lcb(const EstimatorState& st, int source,
                      const AlgoParams& p, long long T);

// Per-source variance plugged into UCB widths: pooled estimate when
// defined, else the preprocess estimate (>= 2 samples), else eta_bar^2.
double source_variance_for_width(const EstimatorState& st, int source);

// Variance-adaptive upper confidence bound for arm i's mean:
//   mu-hat_i + 2 sqrt(2 log(3 K T / delta) sum_j n_ij v_j) / n_i.
double arm_mean_ucb(const EstimatorState& st, int arm, const AlgoParams& p,
                    long long T);

// Batch version: computes every arm's UCB with the per-source variances
// evaluated once, so a selection round costs O(K M) instead of O(K M K).
void all_arm_ucbs(const EstimatorState& st, const AlgoParams& p, long long T,
                  std::vector<double>& out);

// Fixed-width bound used in the low-noise regime, where every surviving
// source is already known to have variance below c*^2:
//   mu-hat_i + 2 c* sqrt(log(3 K T / delta) / n_i).
double arm_mean_ucb_low_noise(const EstimatorState& st, int arm,
                              const AlgoParams& p, long long T);

}  // namespace soar
