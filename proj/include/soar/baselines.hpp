#pragma once
#include <optional>

#include "soar/core.hpp"
#include "soar/environment.hpp"
#include "soar/estimators.hpp"
#include "soar/rng.hpp"

namespace soar {

struct UucbResult {
  RunTrace trace;
  std::vector<long long> source_pulls;
  // Realized effective variance sum_j m_j sigma-hat_j^2 / T: what uniform
  // mixing actually cost, comparable against (1/M) sum_j sigma_j^2.
  double effective_variance = 0.0;
};

// Uniform-UCB: every round draws the source uniformly from [M] (before the
// arm is chosen), then picks the arm by the same variance-adaptive UCB that
// the adaptive algorithm uses (shared code path); the first K rounds pull
// each arm once.
UucbResult run_uniform_ucb(const ProblemInstance& inst, const AlgoParams& p,
                           RngStream& rng);

struct EtcPhaseReport {
  std::optional<int> committed_source;  // unset when phase 1 exhausts T
  long long phase1_len = 0;             // rounds spent identifying a source
  std::vector<double> var_estimates;    // per source, at stop
  std::vector<double> widths;           // per source, at stop
  std::vector<int> survivors_at_stop;   // ascending
};

struct EtcResult {
  RunTrace trace;
  EtcPhaseReport report;
  std::vector<long long> source_pulls;
};

// Explore-then-commit UCB.  Phase 1: epsilon-tolerant successive
// elimination over sources on the fixed arm (index 0), sweeping the
// survivors in ascending order with calibration-style variance estimates
// and widths 8 eta_bar^2 sqrt(log(3 M T / delta) / m_j); a source is
// eliminated when its LCB exceeds min UCB + epsilon, and the phase stops
// when one survivor remains or every width falls below epsilon / 2 (then
// commits to the smallest-variance-estimate survivor).  Near-equal
// variances keep the widths above epsilon / 2 for a long time, so phase 1
// may consume the whole horizon — that is the algorithm's documented
// failure mode, not an error.  Phase 2: pulls each arm once on the
// committed source, then standard variance-adaptive UCB restricted to it.
EtcResult run_etc_ucb(const ProblemInstance& inst, const AlgoParams& p,
                      RngStream& rng);

}  // namespace soar
