#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "soar/core.hpp"

namespace soar {

struct CoverageReport {
  std::string check;
  long long trials = 0;
  long long hits = 0;
  double empirical = 0.0;
  double nominal = 0.0;    // the bound's stated success probability
  double threshold = 0.0;  // nominal - 3 sqrt(nominal (1 - nominal) / trials)
  bool pass = false;
};

// Names accepted by validate_concentration:
//   preprocess-variance    joint two-sided band on calibration estimates
//   source-variance        two-sided band on the pooled variance estimate
//   arm-mean               joint band on arm means after alpha exploration
//   variance-sandwich      sigma^2 <= 2 sigma-hat^2 <= 3 sigma^2 at the floor
//   mean-ucb-coverage      the algorithm's own UCB covers the true mean
//   variance-lcb-coverage  the algorithm's own LCB stays below the truth
std::vector<std::string> concentration_checks();

// Runs `trials` seeded replications of one named check at its prescribed
// sample floor and reports empirical coverage against the nominal level
// minus 3-sigma binomial slack.  Unknown names raise "unknown-check".
CoverageReport validate_concentration(const std::string& check,
                                      long long trials, const AlgoParams& p,
                                      std::uint64_t seed);

}  // namespace soar
