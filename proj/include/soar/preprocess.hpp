#pragma once
#include "soar/core.hpp"
#include "soar/environment.hpp"
#include "soar/estimators.hpp"
#include "soar/rng.hpp"

namespace soar {

// Pulls per source in the calibration phase: the smallest integer strictly
// greater than 1024 eta_bar^4 log(12 M / delta) / c*^4, never below 2.
long long required_preproc_budget(int M, double delta, double c_star,
                                  double eta_bar);

struct PreprocessReport {
  long long tau_p = 0;
  int fixed_arm = 0;
  long long pulls = 0;                // rounds consumed = M * tau_p
  std::vector<double> var_estimates;  // per source
  std::vector<double> ucb, lcb;       // per source (LCB clamped at 0)
  std::vector<int> surviving;         // S_G, ascending

  bool survives(int j) const;
};

// Calibration phase: pulls the fixed arm (index 0) tau_p times on every
// source in ascending source order, estimates every source's variance, and
// eliminates each source whose LCB exceeds the smallest UCB.  The UCB
// minimizer always survives, so S_G is never empty.
//
// `state` (optional) receives the samples into its preprocess accumulators;
// with warm_start they are also fed to the adaptive-phase cells of the
// fixed arm.  `trace` (optional) records the rounds; large Monte-Carlo
// loops pass nullptr, which skips the bookkeeping without changing the
// random stream.
PreprocessReport run_preprocess(const ProblemInstance& inst,
                                const AlgoParams& p, long long tau_p,
                                RngStream& rng,
                                EstimatorState* state = nullptr,
                                RunTrace* trace = nullptr,
                                bool warm_start = false);

}  // namespace soar
