#include "soar/estimators.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace soar {

EstimatorState::EstimatorState(const ProblemInstance& inst)
    : K(inst.num_arms()),
      M(inst.num_sources()),
      eta_bar(inst.eta_bar),
      counts(inst.num_arms(), inst.num_sources()),
      cell(static_cast<std::size_t>(inst.num_arms()) * inst.num_sources()),
      arm_sum(inst.num_arms()),
      pre_m(inst.num_sources(), 0),
      pre_s(inst.num_sources()),
      pre_ss(inst.num_sources()) {
  kappa.reserve(M);
  for (const SourceSpec& s : inst.sources) kappa.push_back(s.kappa);
}

void EstimatorState::add_sample(int arm, int source, double x) {
  record_pull(counts, arm, source);  // bounds-checked
  PairStat& c = cell[static_cast<std::size_t>(arm) * M + source];
  ++c.n;
  c.s.add(x);
  c.ss.add(x * x);
  arm_sum[arm].add(x);
}

void EstimatorState::add_preprocess_sample(int source, double x) {
  if (source < 0 || source >= M)
    fail("index-out-of-range", "preprocess sample for source " + std::to_string(source));
  ++pre_m[source];
  pre_s[source].add(x);
  pre_ss[source].add(x * x);
  ++pre_n_total;
}

double arm_mean(const EstimatorState& st, int arm) {
  if (arm < 0 || arm >= st.K) fail("index-out-of-range", "arm_mean");
  const long long n = st.counts.arm[arm];
  if (n < 1) fail("no-samples", "arm has no adaptive samples");
  return st.arm_sum[arm].value() / static_cast<double>(n);
}

double preproc_source_variance(const EstimatorState& st, int source) {
  if (source < 0 || source >= st.M) fail("index-out-of-range", "preproc_source_variance");
  const long long m = st.pre_m[source];
  if (m < 2) fail("insufficient-samples", "source needs two preprocess samples");
  // (1/m) sum (x - mu)^2 with mu the fixed arm's mean over ALL preprocess
  // samples; expanded to ss/m - 2 mu s/m + mu^2 on compensated sums.
  Acc total;
  for (int j = 0; j < st.M; ++j) total.add(st.pre_s[j].value());
  const double mu = total.value() / static_cast<double>(st.pre_n_total);
  const double s = st.pre_s[source].value();
  const double ss = st.pre_ss[source].value();
  const double v = ss / static_cast<double>(m) -
                   2.0 * mu * s / static_cast<double>(m) + mu * mu;
  return std::max(0.0, v);
}

double preproc_width(double eta_bar, int M, double delta, long long tau_p) {
  if (tau_p < 1) fail("bad-budget", "preprocess budget must be positive");
  if (M < 1) fail("empty-sources", "need at least one source");
  if (delta <= 0.0 || delta >= 1.0) fail("bad-delta", "delta must lie in (0, 1)");
  return 8.0 * eta_bar * eta_bar *
         std::sqrt(std::log(12.0 * M / delta) / static_cast<double>(tau_p));
}

double preproc_var_ucb(const EstimatorState& st, int source, long long tau_p,
                       double delta) {
  if (st.pre_m[source] != tau_p)
    fail("insufficient-samples", "source does not hold exactly tau_p preprocess samples");
  return preproc_source_variance(st, source) +
         preproc_width(st.eta_bar, st.M, delta, tau_p);
}

double preproc_var_lcb(const EstimatorState& st, int source, long long tau_p,
                       double delta) {
  if (st.pre_m[source] != tau_p)
    fail("insufficient-samples", "source does not hold exactly tau_p preprocess samples");
  return std::max(0.0, preproc_source_variance(st, source) -
                           preproc_width(st.eta_bar, st.M, delta, tau_p));
}

long long pooled_dof(const EstimatorState& st, int source) {
  long long dof = 0;
  for (int i = 0; i < st.K; ++i) {
    const long long n = st.at(i, source).n;
    if (n > 1) dof += n - 1;
  }
  return dof;
}

double pooled_source_variance(const EstimatorState& st, int source) {
  if (source < 0 || source >= st.M) fail("index-out-of-range", "pooled_source_variance");
  // Within-cell centering removes the arm means; cells with one sample
  // carry no variance information and are skipped.
  Acc num;
  long long dof = 0;
  for (int i = 0; i < st.K; ++i) {
    const PairStat& c = st.at(i, source);
    if (c.n > 1) {
      const double s = c.s.value();
      num.add(c.ss.value() - s * s / static_cast<double>(c.n));
      dof += c.n - 1;
    }
  }
  if (dof <= 0)
    fail("insufficient-dof",
         "pooled variance needs at least one cell with two samples");
  return std::max(0.0, num.value() / static_cast<double>(dof));
}

double q_value(const EstimatorState& st, int source, const AlgoParams& p) {
  if (source < 0 || source >= st.M) fail("index-out-of-range", "q_value");
  if (st.kappa[source]) return std::max(*st.kappa[source], p.nu);
  return std::max(st.eta_bar * st.eta_bar * pooled_source_variance(st, source),
                  p.nu);
}

double source_var_lcb(const EstimatorState& st, int source,
                      const AlgoParams& p, long long T) {
  if (source < 0 || source >= st.M) fail("index-out-of-range", "source_var_lcb");
  const long long m = st.counts.source[source];
  if (m <= st.K + 1) return -std::numeric_limits<double>::infinity();
  const double q = q_value(st, source, p);
  const double log_term = std::log(3.0 * st.M * static_cast<double>(T) / p.delta);
  return pooled_source_variance(st, source) -
         2.0 * std::sqrt(q * log_term / static_cast<double>(m - st.K));
}

double source_variance_for_width(const EstimatorState& st, int source) {
  // Single scan instead of pooled_dof + pooled_source_variance: this runs
  // once per source per selection round.
  Acc num;
  long long dof = 0;
  for (int i = 0; i < st.K; ++i) {
    const PairStat& c = st.at(i, source);
    if (c.n > 1) {
      const double s = c.s.value();
      num.add(c.ss.value() - s * s / static_cast<double>(c.n));
      dof += c.n - 1;
    }
  }
  if (dof > 0) return std::max(0.0, num.value() / static_cast<double>(dof));
  if (st.pre_m[source] >= 2) return preproc_source_variance(st, source);
  return st.eta_bar * st.eta_bar;
}

namespace {

double ucb_from_widths(const EstimatorState& st, int arm, double log_term,
                       const std::vector<double>& var_for_width) {
  const long long n = st.counts.arm[arm];
  if (n < 1) fail("no-samples", "arm has no adaptive samples");
  Acc w;
  for (int j = 0; j < st.M; ++j) {
    const long long nij = st.at(arm, j).n;
    if (nij > 0) w.add(static_cast<double>(nij) * var_for_width[j]);
  }
  const double mean = st.arm_sum[arm].value() / static_cast<double>(n);
  return mean + 2.0 * std::sqrt(2.0 * log_term * std::max(0.0, w.value())) /
                    static_cast<double>(n);
}

}  // namespace

double arm_mean_ucb(const EstimatorState& st, int arm, const AlgoParams& p,
                    long long T) {
  if (arm < 0 || arm >= st.K) fail("index-out-of-range", "arm_mean_ucb");
  if (T < 1) fail("bad-horizon", "horizon T must be at least 1");
  std::vector<double> v(st.M);
  for (int j = 0; j < st.M; ++j) v[j] = source_variance_for_width(st, j);
  const double log_term = std::log(3.0 * st.K * static_cast<double>(T) / p.delta);
  return ucb_from_widths(st, arm, log_term, v);
}

void all_arm_ucbs(const EstimatorState& st, const AlgoParams& p, long long T,
                  std::vector<double>& out) {
  if (T < 1) fail("bad-horizon", "horizon T must be at least 1");
  std::vector<double> v(st.M);
  for (int j = 0; j < st.M; ++j) v[j] = source_variance_for_width(st, j);
  const double log_term = std::log(3.0 * st.K * static_cast<double>(T) / p.delta);
  out.resize(st.K);
  for (int i = 0; i < st.K; ++i) out[i] = ucb_from_widths(st, i, log_term, v);
}

double arm_mean_ucb_low_noise(const EstimatorState& st, int arm,
                              const AlgoParams& p, long long T) {
  if (arm < 0 || arm >= st.K) fail("index-out-of-range", "arm_mean_ucb_low_noise");
  if (T < 1) fail("bad-horizon", "horizon T must be at least 1");
  const long long n = st.counts.arm[arm];
  if (n < 1) fail("no-samples", "arm has no adaptive samples");
  const double log_term = std::log(3.0 * st.K * static_cast<double>(T) / p.delta);
  const double mean = st.arm_sum[arm].value() / static_cast<double>(n);
  return mean + 2.0 * p.c_star * std::sqrt(log_term / static_cast<double>(n));
}

}  // namespace soar
