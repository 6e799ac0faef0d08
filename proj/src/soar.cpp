#include "soar/soar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace soar {

namespace {

// Smallest integer strictly greater than v, guarded against overflow.
long long strict_int_above(double v, const char* what) {
  if (!(v < 4e18))
    fail("budget-overflow", std::string(what) + " exceeds representable range");
  return static_cast<long long>(std::floor(v)) + 1;
}

}  // namespace

long long alpha_budget(const AlgoParams& p, double eta_bar, int K,
                       long long T) {
  validate_params(p, /*need_horizon=*/false);
  if (K < 1) fail("empty-arms", "need at least one arm");
  if (T < 1) fail("bad-horizon", "horizon T must be at least 1");
  if (!std::isfinite(eta_bar) || eta_bar <= 0.0)
    fail("bad-eta-bar", "eta_bar must be finite and positive");
  const double v = eta_bar * eta_bar *
                   std::log(3.0 * K * static_cast<double>(T) / p.delta) /
                   (p.c_star * p.c_star);
  return std::max<long long>(strict_int_above(v, "alpha budget"), 1);
}

long long beta_budget(const AlgoParams& p, double eta_bar, int K, int M,
                      long long T) {
  validate_params(p, /*need_horizon=*/false);
  if (K < 1) fail("empty-arms", "need at least one arm");
  if (M < 1) fail("empty-sources", "need at least one source");
  if (T < 1) fail("bad-horizon", "horizon T must be at least 1");
  if (!std::isfinite(eta_bar) || eta_bar <= 0.0)
    fail("bad-eta-bar", "eta_bar must be finite and positive");
  const double e4 = eta_bar * eta_bar * eta_bar * eta_bar;
  const double c2 = p.c_star * p.c_star;
  const double log_term = std::log(3.0 * M * static_cast<double>(T) / p.delta);
  const double v = 2.0 * K + 4.0 * e4 * log_term / p.nu +
                   16.0 * e4 * log_term / (c2 * c2);
  return std::max<long long>(strict_int_above(v, "beta budget"), 2);
}

std::optional<int> find_reliable_source(const PreprocessReport& rep,
                                        double c_star) {
  const double threshold = 0.5 * c_star * c_star;
  for (int j : rep.surviving)  // ascending, so the first hit is lowest-index
    if (rep.lcb[j] >= threshold) return j;
  return std::nullopt;
}

namespace {

// Budgets scaled by a common factor s, with the structural minimums that
// keep every phase meaningful (two calibration pulls per source, one alpha
// pull per arm, two beta pulls per source).
struct PhaseBudgets {
  long long tau_p = 0, alpha = 0, beta = 0;
};

PhaseBudgets scale_budgets(double s, const PhaseBudgets& full) {
  auto scaled = [s](long long v, long long min_v) {
    return std::max(min_v, static_cast<long long>(
                               std::ceil(s * static_cast<double>(v))));
  };
  return {scaled(full.tau_p, 2), scaled(full.alpha, 1), scaled(full.beta, 2)};
}

long long phase_cost(const PhaseBudgets& b, int K, int M, bool include_beta) {
  return M * b.tau_p + K * b.alpha + (include_beta ? M * b.beta : 0);
}

}  // namespace

SoarResult run_soar(const ProblemInstance& inst, const SoarConfig& cfg,
                    RngStream& rng) {
  validate_instance(inst);
  const AlgoParams& p = cfg.params;
  validate_params(p, /*need_horizon=*/true);
  const long long T = p.horizon;
  const int K = inst.num_arms();
  const int M = inst.num_sources();

  PhaseBudgets full;
  full.tau_p = required_preproc_budget(M, p.delta, p.c_star, inst.eta_bar);
  full.alpha = cfg.alpha_override ? *cfg.alpha_override
                                  : alpha_budget(p, inst.eta_bar, K, T);
  full.beta = cfg.beta_override ? *cfg.beta_override
                                : beta_budget(p, inst.eta_bar, K, M, T);
  if (full.alpha < 1) fail("bad-budget", "alpha override must be at least 1");
  if (full.beta < 2) fail("bad-budget", "beta override must be at least 2");

  // The beta phase only exists in the standard regime; a forced low-noise
  // run must not be charged for it when budgets are sized or checked.
  const bool include_beta = cfg.regime != SoarRegime::low_noise;

  PhaseBudgets use = full;
  SoarBudgets budgets;
  budgets.truncated = false;
  budgets.scale = 1.0;
  if (cfg.allow_truncated_exploration) {
    if (!(cfg.exploration_fraction > 0.0) || cfg.exploration_fraction > 1.0)
      fail("bad-exploration-fraction", "exploration_fraction must lie in (0, 1]");
    const long long cap =
        static_cast<long long>(std::floor(cfg.exploration_fraction *
                                          static_cast<double>(T)));
    if (phase_cost(full, K, M, include_beta) > cap) {
      if (phase_cost(scale_budgets(0.0, full), K, M, include_beta) > cap)
        fail("horizon-too-small",
             "even minimal exploration budgets exceed the exploration cap " +
                 std::to_string(cap));
      // Largest s whose scaled budgets fit the cap; cost is a nondecreasing
      // step function of s, so bisection keeps `lo` feasible throughout.
      double lo = 0.0, hi = 1.0;
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        (phase_cost(scale_budgets(mid, full), K, M, include_beta) <= cap ? lo
                                                                         : hi) =
            mid;
      }
      use = scale_budgets(lo, full);
      budgets.truncated = true;
      budgets.scale = lo;
    }
  }
  budgets.tau_p = use.tau_p;
  budgets.alpha = use.alpha;
  budgets.beta = use.beta;

  // Upfront exploration floor with the worst case M-tilde = M; pruning can
  // only shrink the beta phase, so passing here guarantees completion.
  const long long floor_rounds = phase_cost(use, K, M, include_beta);
  if (floor_rounds > T)
    fail("horizon-too-small",
         "exploration needs at least " + std::to_string(floor_rounds) +
             " rounds but the horizon is " + std::to_string(T));

  SoarResult res;
  res.budgets = budgets;
  res.trace.reserve(T);
  EstimatorState st(inst);

  res.preprocess =
      run_preprocess(inst, p, use.tau_p, rng, &st, &res.trace,
                     cfg.warm_start_from_preprocess);
  res.preprocess_end = res.trace.rounds();
  res.preprocess_regret = res.trace.final_regret();

  const std::vector<int>& sg = res.preprocess.surviving;
  res.reliable_source = find_reliable_source(res.preprocess, p.c_star);

  const SoarRegime regime =
      cfg.regime == SoarRegime::auto_detect
          ? (res.reliable_source ? SoarRegime::standard : SoarRegime::low_noise)
          : cfg.regime;
  res.resolved_regime = regime;

  const double mu_star = inst.max_mean();
  auto pull = [&](int i, int j) {
    const double x = sample_reward(inst, i, j, rng);
    st.add_sample(i, j, x);
    res.trace.append(i, j, x, mu_star - inst.arm_means[i]);
  };

  if (regime == SoarRegime::standard) {
    int jbar;
    if (res.reliable_source) {
      jbar = *res.reliable_source;
    } else {
      // Forced-standard run with no certified-noisy survivor: explore on
      // the most plausibly clean source (smallest calibration UCB).
      jbar = sg[0];
      for (int j : sg)
        if (res.preprocess.ucb[j] < res.preprocess.ucb[jbar]) jbar = j;
    }
    res.exploration_source = jbar;
    for (int i = 0; i < K; ++i)
      for (long long a = 0; a < use.alpha; ++a) pull(i, jbar);
    for (int j : sg)
      for (long long b = 0; b < use.beta; ++b) pull(res.preprocess.fixed_arm, j);
  } else {
    // Low-noise regime: no beta phase; exploration sources are drawn
    // uniformly from the survivors.
    for (int i = 0; i < K; ++i)
      for (long long a = 0; a < use.alpha; ++a)
        pull(i, sg[rng.next_below(sg.size())]);
  }
  res.exploration_end = res.trace.rounds();
  res.exploration_regret = res.trace.final_regret() - res.preprocess_regret;

  res.adaptive_source_pulls.assign(M, 0);
  std::vector<double> ucbs;
  while (res.trace.rounds() < T) {
    int i_t = 0, j_t = sg[0];
    if (regime == SoarRegime::standard) {
      all_arm_ucbs(st, p, T, ucbs);
      for (int i = 1; i < K; ++i)
        if (ucbs[i] > ucbs[i_t]) i_t = i;  // strict > keeps the lowest index
      double best = std::numeric_limits<double>::infinity();
      for (int j : sg) {
        const double lcb = source_var_lcb(st, j, p, T);
        if (lcb < best) {
          best = lcb;
          j_t = j;
        }
      }
    } else {
      double best = -std::numeric_limits<double>::infinity();
      for (int i = 0; i < K; ++i) {
        const double u = arm_mean_ucb_low_noise(st, i, p, T);
        if (u > best) {
          best = u;
          i_t = i;
        }
      }
      j_t = sg[rng.next_below(sg.size())];
    }
    pull(i_t, j_t);
    ++res.adaptive_source_pulls[j_t];
  }
  res.adaptive_regret =
      res.trace.final_regret() - res.preprocess_regret - res.exploration_regret;
  return res;
}

}  // namespace soar
