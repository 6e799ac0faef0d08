#include "soar/preprocess.hpp"

#include <algorithm>
#include <cmath>

namespace soar {

long long required_preproc_budget(int M, double delta, double c_star,
                                  double eta_bar) {
  if (M < 1) fail("empty-sources", "need at least one source");
  if (!std::isfinite(delta) || delta <= 0.0 || delta >= 1.0)
    fail("bad-delta", "delta must lie in (0, 1)");
  if (!std::isfinite(c_star) || c_star <= 0.0)
    fail("bad-c-star", "c_star must be finite and positive");
  if (!std::isfinite(eta_bar) || eta_bar <= 0.0)
    fail("bad-eta-bar", "eta_bar must be finite and positive");
  const double e2 = eta_bar * eta_bar;
  const double c2 = c_star * c_star;
  const double v = 1024.0 * e2 * e2 * std::log(12.0 * M / delta) / (c2 * c2);
  if (!(v < 4e18)) fail("budget-overflow", "preprocess budget exceeds representable range");
  // Smallest integer strictly above the bound (= ceiling off the lattice).
  const long long tau = static_cast<long long>(std::floor(v)) + 1;
  return std::max<long long>(tau, 2);
}

bool PreprocessReport::survives(int j) const {
  return std::binary_search(surviving.begin(), surviving.end(), j);
}

PreprocessReport run_preprocess(const ProblemInstance& inst,
                                const AlgoParams& p, long long tau_p,
                                RngStream& rng, EstimatorState* state,
                                RunTrace* trace, bool warm_start) {
  validate_instance(inst);
  validate_params(p, /*need_horizon=*/false);
  if (tau_p < 2) fail("bad-budget", "preprocess needs at least two pulls per source");

  EstimatorState local(inst);
  EstimatorState& st = state ? *state : local;

  const int M = inst.num_sources();
  const int fixed_arm = 0;
  const double gap = inst.max_mean() - inst.arm_means[fixed_arm];

  for (int j = 0; j < M; ++j) {
    for (long long s = 0; s < tau_p; ++s) {
      const double x = sample_reward(inst, fixed_arm, j, rng);
      st.add_preprocess_sample(j, x);
      if (warm_start) st.add_sample(fixed_arm, j, x);
      if (trace) trace->append(fixed_arm, j, x, gap);
    }
  }

  PreprocessReport rep;
  rep.tau_p = tau_p;
  rep.fixed_arm = fixed_arm;
  rep.pulls = static_cast<long long>(M) * tau_p;
  rep.var_estimates.resize(M);
  rep.ucb.resize(M);
  rep.lcb.resize(M);
  for (int j = 0; j < M; ++j) {
    rep.var_estimates[j] = preproc_source_variance(st, j);
    rep.ucb[j] = preproc_var_ucb(st, j, tau_p, p.delta);
    rep.lcb[j] = preproc_var_lcb(st, j, tau_p, p.delta);
  }
  const double min_ucb = *std::min_element(rep.ucb.begin(), rep.ucb.end());
  for (int j = 0; j < M; ++j)
    if (rep.lcb[j] <= min_ucb) rep.surviving.push_back(j);
  return rep;
}

}  // namespace soar
