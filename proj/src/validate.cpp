#include "soar/validate.hpp"

#include <cmath>

#include "soar/environment.hpp"
#include "soar/estimators.hpp"
#include "soar/preprocess.hpp"
#include "soar/soar.hpp"

namespace soar {

std::vector<std::string> concentration_checks() {
  return {"preprocess-variance", "source-variance",  "arm-mean",
          "variance-sandwich",   "mean-ucb-coverage", "variance-lcb-coverage"};
}

namespace {

ProblemInstance gaussian_instance(std::vector<double> means,
                                  std::vector<double> vars, double eta_bar) {
  InstanceOptions opt;
  opt.family = NoiseFamily::gaussian;
  opt.eta_bar = eta_bar;
  return make_explicit_instance(std::move(means), std::move(vars), opt);
}

long long ceil_ll(double v) { return static_cast<long long>(std::ceil(v)); }

}  // namespace

CoverageReport validate_concentration(const std::string& check,
                                      long long trials, const AlgoParams& p,
                                      std::uint64_t seed) {
  validate_params(p, /*need_horizon=*/true);
  if (trials < 1) fail("bad-trials", "need at least one trial");
  const long long T = p.horizon;

  CoverageReport rep;
  rep.check = check;
  rep.trials = trials;

  if (check == "preprocess-variance") {
    // Joint two-sided band on the calibration variance estimates at the
    // prescribed calibration budget: sigma^2 = 1 on M = 3 sources, eta = 2.
    const double eta = 2.0, sigma2 = 1.0;
    const int M = 3;
    const auto inst = gaussian_instance({0.5}, {sigma2, sigma2, sigma2}, eta);
    const long long tau_p = required_preproc_budget(M, p.delta, p.c_star, eta);
    const double width = preproc_width(eta, M, p.delta, tau_p);
    rep.nominal = 1.0 - p.delta / 3.0;
    for (long long t = 0; t < trials; ++t) {
      RngStream rng(seed, static_cast<std::uint64_t>(t));
      const auto pre = run_preprocess(inst, p, tau_p, rng);
      bool ok = true;
      for (int j = 0; j < M; ++j)
        if (std::fabs(pre.var_estimates[j] - sigma2) > width) ok = false;
      rep.hits += ok;
    }
  } else if (check == "source-variance" || check == "variance-lcb-coverage") {
    // Pooled variance band at the adaptive-phase sample floor
    // m >= K + 4 eta^4 log(3MT/delta) / nu, samples spread across arms.
    const double eta = 2.0, sigma2 = 1.0;
    const int K = 3;
    const auto inst = gaussian_instance({0.2, 0.5, 0.8}, {sigma2}, eta);
    const double log_term = std::log(3.0 * 1 * static_cast<double>(T) / p.delta);
    const long long m =
        K + ceil_ll(4.0 * eta * eta * eta * eta * log_term / p.nu);
    rep.nominal = check == "source-variance" ? 1.0 - p.delta / 3.0
                                             : 1.0 - p.delta;
    for (long long t = 0; t < trials; ++t) {
      RngStream rng(seed, static_cast<std::uint64_t>(t));
      EstimatorState st(inst);
      for (long long s = 0; s < m; ++s)
        st.add_sample(static_cast<int>(s % K), 0,
                      sample_reward(inst, static_cast<int>(s % K), 0, rng));
      if (check == "source-variance") {
        const double q = q_value(st, 0, p);
        const double width =
            2.0 * std::sqrt(q * log_term / static_cast<double>(m - K));
        rep.hits += std::fabs(pooled_source_variance(st, 0) - sigma2) <= width;
      } else {
        rep.hits += source_var_lcb(st, 0, p, T) <= sigma2;
      }
    }
  } else if (check == "arm-mean" || check == "mean-ucb-coverage") {
    // Arm-mean band after alpha pulls per arm on a source with variance
    // exactly c*^2 (the boundary the exploration budget is sized for).
    const double eta = 2.0 * p.c_star;
    const double sigma2 = p.c_star * p.c_star;
    const std::vector<double> means{0.1, 0.3, 0.5, 0.7, 0.9};
    const int K = static_cast<int>(means.size());
    const auto inst = gaussian_instance(means, {sigma2}, eta);
    const long long alpha = alpha_budget(p, eta, K, T);
    const double log_term = std::log(3.0 * K * static_cast<double>(T) / p.delta);
    // Width with the true variance: 2 sqrt(2 L n sigma^2) / n.
    const double width =
        2.0 *
        std::sqrt(2.0 * log_term * static_cast<double>(alpha) * sigma2) /
        static_cast<double>(alpha);
    rep.nominal = check == "arm-mean" ? 1.0 - p.delta / 3.0 : 1.0 - p.delta;
    for (long long t = 0; t < trials; ++t) {
      RngStream rng(seed, static_cast<std::uint64_t>(t));
      EstimatorState st(inst);
      for (int i = 0; i < K; ++i)
        for (long long a = 0; a < alpha; ++a)
          st.add_sample(i, 0, sample_reward(inst, i, 0, rng));
      bool ok = true;
      for (int i = 0; i < K; ++i) {
        if (check == "arm-mean") {
          if (std::fabs(arm_mean(st, i) - means[i]) > width) ok = false;
        } else {
          if (arm_mean_ucb(st, i, p, T) < means[i]) ok = false;
        }
      }
      rep.hits += ok;
    }
  } else if (check == "variance-sandwich") {
    // sigma^2 <= 2 sigma-hat^2 <= 3 sigma^2 once the pooled count clears
    // K + 16 eta^4 log(3MT/delta) / c*^4, for sigma^2 = c*^2.
    const double eta = 2.0 * p.c_star;
    const double sigma2 = p.c_star * p.c_star;
    const int K = 3;
    const auto inst = gaussian_instance({0.2, 0.5, 0.8}, {sigma2}, eta);
    const double log_term = std::log(3.0 * 1 * static_cast<double>(T) / p.delta);
    const double e4 = eta * eta * eta * eta;
    const double c4 = sigma2 * sigma2;
    const long long m = K + ceil_ll(16.0 * e4 * log_term / c4);
    rep.nominal = 1.0 - p.delta;
    for (long long t = 0; t < trials; ++t) {
      RngStream rng(seed, static_cast<std::uint64_t>(t));
      EstimatorState st(inst);
      for (long long s = 0; s < m; ++s)
        st.add_sample(static_cast<int>(s % K), 0,
                      sample_reward(inst, static_cast<int>(s % K), 0, rng));
      const double two_est = 2.0 * pooled_source_variance(st, 0);
      rep.hits += (sigma2 <= two_est && two_est <= 3.0 * sigma2);
    }
  } else {
    std::string names;
    for (const auto& n : concentration_checks()) names += " " + n;
    fail("unknown-check", "unknown concentration check '" + check +
                              "'; valid names:" + names);
  }

  rep.empirical = static_cast<double>(rep.hits) / static_cast<double>(trials);
  rep.threshold =
      rep.nominal - 3.0 * std::sqrt(rep.nominal * (1.0 - rep.nominal) /
                                    static_cast<double>(trials));
  rep.pass = rep.empirical >= rep.threshold;
  return rep;
}

}  // namespace soar
