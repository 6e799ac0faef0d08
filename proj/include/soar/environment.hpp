#pragma once
#include <cstdint>

#include "soar/core.hpp"
#include "soar/rng.hpp"

namespace soar {

// Solves for the scale s of an underlying N(0, s^2) such that conditioning
// on [-eta_bar, eta_bar] leaves exactly `variance`.  Feasible only for
// variance < eta_bar^2 / 3 (the flat limit of the truncated family);
// throws "truncation-infeasible" otherwise.
double truncated_gaussian_scale(double variance, double eta_bar);

// Fills in family-specific sampling scales, plus the fourth moments the
// family itself pins down (gaussian: 3 sigma^4, uniform: 1.8 sigma^4,
// replay: the pool's empirical fourth moment).  The truncated-gaussian
// fourth moment is left unknown on purpose: algorithms must then fall back
// to the estimated-Q branch.  Instance factories call this themselves.
void finalize_sources(ProblemInstance& inst);

// Draws one mean-zero noise value from source j.
double sample_noise(const ProblemInstance& inst, int source, RngStream& rng);

// Draws one reward X = mu_arm + noise_source; bounds-checked.
double sample_reward(const ProblemInstance& inst, int arm, int source,
                     RngStream& rng);

// Knobs shared by the instance factories.
struct InstanceOptions {
  NoiseFamily family = NoiseFamily::gaussian;
  double eta_bar = 0.0;  // 0 = auto: smallest feasible bound for the family
  double mu_bar = 0.0;   // 0 = auto: max arm mean (or 1 if that is 0)
};

// Worst case A: one clean source with variance sigma_star2 placed at the
// LAST index, M-1 noisy sources at sigma_max2 before it.  Putting the clean
// source last keeps lowest-index tie-breaking from handing it to the
// algorithms for free.
ProblemInstance make_wc1_instance(int K, int M, double sigma_star2,
                                  double sigma_max2,
                                  const std::vector<double>& arm_means,
                                  const InstanceOptions& opt = {});

// Worst case B: near-indistinguishable sources, variances ascending on an
// even grid over [base_variance, base_variance + spread].
ProblemInstance make_wc2_instance(int K, int M, double base_variance,
                                  double spread,
                                  const std::vector<double>& arm_means,
                                  const InstanceOptions& opt = {});

// Fully explicit instance from given means and variances.
ProblemInstance make_explicit_instance(const std::vector<double>& arm_means,
                                       const std::vector<double>& variances,
                                       const InstanceOptions& opt = {});

// Random instance: means uniform on [mean_lo, mean_hi] (optionally rounded
// to `mean_decimals` places), variances uniform on [var_lo, var_hi].
// Consumes exactly K + M doubles from `rng`.
ProblemInstance make_random_instance(int K, int M, double mean_lo,
                                     double mean_hi, int mean_decimals,
                                     double var_lo, double var_hi,
                                     RngStream& rng,
                                     const InstanceOptions& opt = {});

}  // namespace soar
