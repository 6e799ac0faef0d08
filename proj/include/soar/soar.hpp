#pragma once
#include <optional>

#include "soar/preprocess.hpp"

namespace soar {

// Regime selection: `auto_detect` consults the calibration estimates (a
// source certified noisy => standard, otherwise low-noise); the other two
// values force a branch.
enum class SoarRegime { auto_detect, standard, low_noise };

struct SoarConfig {
  AlgoParams params;
  SoarRegime regime = SoarRegime::auto_detect;
  // Replace the formula-derived exploration budgets (floors still apply).
  std::optional<long long> alpha_override, beta_override;
  // Off by default: scale all exploration budgets by a common factor so
  // they fit into exploration_fraction * T when the theory-sized budgets
  // exceed the horizon.  Guarantees of the full budgets no longer apply.
  bool allow_truncated_exploration = false;
  double exploration_fraction = 0.4;
  // Off by default: additionally feed calibration samples into the
  // adaptive-phase estimators as fixed-arm observations.
  bool warm_start_from_preprocess = false;
};

struct SoarBudgets {
  long long tau_p = 0, alpha = 0, beta = 0;
  bool truncated = false;  // true when budgets were scaled to fit
  double scale = 1.0;      // applied scaling factor
};

struct SoarResult {
  RunTrace trace;
  PreprocessReport preprocess;
  SoarBudgets budgets;
  SoarRegime resolved_regime = SoarRegime::standard;
  std::optional<int> reliable_source;  // certified-noisy source, if any
  int exploration_source = -1;         // source used for the alpha phase (standard)
  long long preprocess_end = 0;        // rounds at end of calibration
  long long exploration_end = 0;       // rounds at end of forced exploration
  std::vector<long long> adaptive_source_pulls;  // adaptive loop only
  double preprocess_regret = 0.0;
  double exploration_regret = 0.0;
  double adaptive_regret = 0.0;
};

// Per-arm exploration budget: smallest integer strictly above
//   eta_bar^2 log(3 K T / delta) / c*^2,  and at least 1.
long long alpha_budget(const AlgoParams& p, double eta_bar, int K, long long T);

// Per-source exploration budget: smallest integer strictly above
//   2 K + 4 eta_bar^4 log(3 M T / delta) / nu
//       + 16 eta_bar^4 log(3 M T / delta) / c*^4,  and at least 2.
long long beta_budget(const AlgoParams& p, double eta_bar, int K, int M,
                      long long T);

// Lowest-index surviving source whose calibration LCB certifies
// sigma_j^2 >= c*^2 / 2; nullopt when every survivor is plausibly clean.
std::optional<int> find_reliable_source(const PreprocessReport& rep,
                                        double c_star);

// Full run: calibration, forced exploration, then the adaptive loop that
// couples a max-UCB arm choice with a min-LCB source choice.
SoarResult run_soar(const ProblemInstance& inst, const SoarConfig& cfg,
                    RngStream& rng);

}  // namespace soar
