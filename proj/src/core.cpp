#include "soar/core.hpp"

#include <cmath>

namespace soar {

void fail(const std::string& code, const std::string& msg) {
  throw error(code, msg);
}

int ProblemInstance::best_arm() const {
  int best = 0;
  for (int i = 1; i < num_arms(); ++i)
    if (arm_means[i] > arm_means[best]) best = i;
  return best;
}

double ProblemInstance::max_mean() const { return arm_means[best_arm()]; }

void validate_instance(const ProblemInstance& inst) {
  if (inst.arm_means.empty()) fail("empty-arms", "instance has no arms");
  if (inst.sources.empty()) fail("empty-sources", "instance has no sources");
  if (!std::isfinite(inst.eta_bar) || inst.eta_bar <= 0.0)
    fail("bad-eta-bar", "noise scale bound eta_bar must be finite and positive");
  if (!std::isfinite(inst.mu_bar) || inst.mu_bar <= 0.0)
    fail("bad-mu-bar", "mean bound mu_bar must be finite and positive");
  const double eta2 = inst.eta_bar * inst.eta_bar;
  for (int i = 0; i < inst.num_arms(); ++i) {
    const double mu = inst.arm_means[i];
    if (!std::isfinite(mu) || mu < 0.0 || mu > inst.mu_bar)
      fail("arm-mean-out-of-range",
           "arm " + std::to_string(i + 1) + " mean " + std::to_string(mu) +
               " outside [0, mu_bar]");
  }
  for (int j = 0; j < inst.num_sources(); ++j) {
    const SourceSpec& s = inst.sources[j];
    const std::string label = "source " + std::to_string(j + 1);
    if (!std::isfinite(s.variance) || s.variance < 0.0 ||
        s.variance > eta2 * (1.0 + 1e-12))
      fail("source-variance-out-of-range",
           label + " variance " + std::to_string(s.variance) +
               " outside [0, eta_bar^2]");
    if (s.kappa) {
      const double k = *s.kappa;
      if (!std::isfinite(k) || k < s.variance * s.variance * (1.0 - 1e-12))
        fail("kappa-too-small",
             label + " fourth moment below variance^2 (impossible)");
    }
    if (s.family == NoiseFamily::replay) {
      if (s.pool.empty()) fail("replay-pool-empty", label + " has an empty replay pool");
      double sum = 0.0;
      for (double v : s.pool) {
        if (!std::isfinite(v) || std::fabs(v) > inst.eta_bar * (1.0 + 1e-9))
          fail("replay-pool-out-of-range",
               label + " replay value outside [-eta_bar, eta_bar]");
        sum += v;
      }
      if (std::fabs(sum / static_cast<double>(s.pool.size())) >
          1e-9 * std::max(1.0, inst.eta_bar))
        fail("replay-pool-not-centered", label + " replay pool mean is not zero");
    }
    if (s.scale < 0.0)
      fail("sources-not-finalized",
           "finalize_sources must run before the instance is used");
  }
}

void validate_params(const AlgoParams& p, bool need_horizon) {
  if (!std::isfinite(p.delta) || p.delta <= 0.0 || p.delta >= 1.0)
    fail("bad-delta", "delta must lie in (0, 1)");
  if (!std::isfinite(p.c_star) || p.c_star <= 0.0)
    fail("bad-c-star", "c_star must be finite and positive");
  if (!std::isfinite(p.nu) || p.nu <= 0.0)
    fail("bad-nu", "nu must be finite and positive");
  if (!std::isfinite(p.gamma) || p.gamma <= 0.0)
    fail("bad-gamma", "gamma must be finite and positive");
  if (!std::isfinite(p.epsilon) || p.epsilon < 0.0)
    fail("bad-epsilon", "epsilon must be finite and non-negative");
  if (need_horizon && p.horizon < 1)
    fail("bad-horizon", "horizon T must be at least 1");
}

void record_pull(CountTable& counts, int arm, int source) {
  if (arm < 0 || arm >= counts.K || source < 0 || source >= counts.M)
    fail("index-out-of-range",
         "pull (" + std::to_string(arm) + ", " + std::to_string(source) +
             ") outside " + std::to_string(counts.K) + " arms x " +
             std::to_string(counts.M) + " sources");
  ++counts.arm[arm];
  ++counts.source[source];
  ++counts.pair[static_cast<std::size_t>(arm) * counts.M + source];
  ++counts.total;
}

void RunTrace::reserve(long long T) {
  if (T <= 0) return;
  const auto n = static_cast<std::size_t>(T);
  arm.reserve(n);
  source.reserve(n);
  reward.reserve(n);
  cum_regret.reserve(n);
}

void RunTrace::append(int i, int j, double x, double gap) {
  arm.push_back(i);
  source.push_back(j);
  reward.push_back(x);
  cum_regret.push_back((cum_regret.empty() ? 0.0 : cum_regret.back()) + gap);
}

}  // namespace soar
