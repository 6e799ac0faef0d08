#include "soar/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace soar {

UucbResult run_uniform_ucb(const ProblemInstance& inst, const AlgoParams& p,
                           RngStream& rng) {
  validate_instance(inst);
  validate_params(p, /*need_horizon=*/true);
  const long long T = p.horizon;
  const int K = inst.num_arms();
  const int M = inst.num_sources();
  const double mu_star = inst.max_mean();

  UucbResult res;
  res.trace.reserve(T);
  res.source_pulls.assign(M, 0);
  EstimatorState st(inst);
  std::vector<double> ucbs;

  for (long long t = 0; t < T; ++t) {
    const int j = static_cast<int>(rng.next_below(M));
    int i;
    if (t < K) {
      i = static_cast<int>(t);
    } else {
      all_arm_ucbs(st, p, T, ucbs);
      i = 0;
      for (int a = 1; a < K; ++a)
        if (ucbs[a] > ucbs[i]) i = a;  // strict > keeps the lowest index
    }
    const double x = sample_reward(inst, i, j, rng);
    st.add_sample(i, j, x);
    res.trace.append(i, j, x, mu_star - inst.arm_means[i]);
    ++res.source_pulls[j];
  }

  Acc eff;
  for (int j = 0; j < M; ++j)
    if (st.counts.source[j] > 0)
      eff.add(static_cast<double>(st.counts.source[j]) *
              source_variance_for_width(st, j));
  res.effective_variance = eff.value() / static_cast<double>(T);
  return res;
}

EtcResult run_etc_ucb(const ProblemInstance& inst, const AlgoParams& p,
                      RngStream& rng) {
  validate_instance(inst);
  validate_params(p, /*need_horizon=*/true);
  if (p.epsilon <= 0.0)
    fail("bad-epsilon", "ETC needs a positive elimination tolerance epsilon");
  const long long T = p.horizon;
  const int K = inst.num_arms();
  const int M = inst.num_sources();
  const double mu_star = inst.max_mean();
  const double gap0 = mu_star - inst.arm_means[0];

  EtcResult res;
  res.trace.reserve(T);
  res.source_pulls.assign(M, 0);
  EstimatorState st(inst);

  const double log_term = std::log(3.0 * M * static_cast<double>(T) / p.delta);
  const double e2 = inst.eta_bar * inst.eta_bar;
  auto width_at = [&](long long m) {
    return 8.0 * e2 * std::sqrt(log_term / static_cast<double>(m));
  };

  // Phase 1: variance best-arm identification across sources on arm 0.
  // Calibration-style estimates; every sweep samples all survivors once.
  std::vector<int> survivors(M);
  for (int j = 0; j < M; ++j) survivors[j] = j;
  std::optional<int> committed;
  long long sweeps = 0;
  while (res.trace.rounds() < T && !committed) {
    for (int j : survivors) {
      if (res.trace.rounds() >= T) break;
      const double x = sample_reward(inst, 0, j, rng);
      st.add_preprocess_sample(j, x);
      res.trace.append(0, j, x, gap0);
      ++res.source_pulls[j];
    }
    ++sweeps;
    if (sweeps < 2 || res.trace.rounds() >= T) continue;  // variance needs 2 samples

    double min_ucb = std::numeric_limits<double>::infinity();
    for (int j : survivors) {
      const double w = width_at(st.pre_m[j]);
      min_ucb = std::min(min_ucb, preproc_source_variance(st, j) + w);
    }
    std::vector<int> keep;
    for (int j : survivors)
      if (preproc_source_variance(st, j) - width_at(st.pre_m[j]) <=
          min_ucb + p.epsilon)
        keep.push_back(j);
    survivors = std::move(keep);

    if (survivors.size() == 1) {
      committed = survivors[0];
    } else {
      bool all_narrow = true;
      for (int j : survivors)
        if (width_at(st.pre_m[j]) >= 0.5 * p.epsilon) {
          all_narrow = false;
          break;
        }
      if (all_narrow) {
        int best = survivors[0];
        for (int j : survivors)
          if (preproc_source_variance(st, j) < preproc_source_variance(st, best))
            best = j;
        committed = best;
      }
    }
  }

  res.report.committed_source = committed;
  res.report.phase1_len = res.trace.rounds();
  res.report.survivors_at_stop = survivors;
  res.report.var_estimates.resize(M);
  res.report.widths.resize(M);
  for (int j = 0; j < M; ++j) {
    res.report.var_estimates[j] =
        st.pre_m[j] >= 2 ? preproc_source_variance(st, j) : e2;
    res.report.widths[j] =
        st.pre_m[j] >= 1 ? width_at(st.pre_m[j])
                         : std::numeric_limits<double>::infinity();
  }

  // Phase 2: standard variance-adaptive UCB, committed source only.  The
  // committed source's width variance falls back to its calibration
  // estimate until its pooled estimate is defined (shared code path).
  if (committed) {
    const int jc = *committed;
    std::vector<double> ucbs;
    for (int i = 0; i < K && res.trace.rounds() < T; ++i) {
      const double x = sample_reward(inst, i, jc, rng);
      st.add_sample(i, jc, x);
      res.trace.append(i, jc, x, mu_star - inst.arm_means[i]);
      ++res.source_pulls[jc];
    }
    while (res.trace.rounds() < T) {
      all_arm_ucbs(st, p, T, ucbs);
      int i = 0;
      for (int a = 1; a < K; ++a)
        if (ucbs[a] > ucbs[i]) i = a;
      const double x = sample_reward(inst, i, jc, rng);
      st.add_sample(i, jc, x);
      res.trace.append(i, jc, x, mu_star - inst.arm_means[i]);
      ++res.source_pulls[jc];
    }
  }
  return res;
}

}  // namespace soar
