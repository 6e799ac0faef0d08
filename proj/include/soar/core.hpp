#pragma once
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace soar {

// Library-wide exception.  `code` is a stable machine-readable identifier
// (the CLI surfaces it as JSON on stderr); what() carries the prose.
struct error : std::runtime_error {
  std::string code;
  error(std::string code_, const std::string& msg)
      : std::runtime_error(msg), code(std::move(code_)) {}
};

[[noreturn]] void fail(const std::string& code, const std::string& msg);

// Noise families supported by the simulation environment.  All are
// mean-zero; `variance` below is the exact noise variance in every case.
enum class NoiseFamily {
  gaussian,            // N(0, variance); fourth moment known (3 sigma^4)
  truncated_gaussian,  // N(0, s^2) conditioned on [-eta_bar, eta_bar],
                       // s calibrated so the truncated variance matches
  uniform,             // U[-a, a] with a = sqrt(3 variance)
  replay               // resample a fixed, centered residual pool
};

struct SourceSpec {
  NoiseFamily family = NoiseFamily::gaussian;
  double variance = 1.0;         // sigma_j^2
  std::optional<double> kappa;   // fourth central moment when known
  double scale = -1.0;           // sampling scale; set by finalize_sources
  std::vector<double> pool;      // replay only: centered residual pool
};

// K arms with means mu_i in [0, mu_bar]; M noise sources with
// variance_j <= eta_bar^2.  Rewards are mu_arm + noise_source.
struct ProblemInstance {
  std::vector<double> arm_means;
  std::vector<SourceSpec> sources;
  double eta_bar = 1.0;  // bound on noise scale: sigma_j <= eta_bar
  double mu_bar = 1.0;   // upper bound on arm means

  int num_arms() const { return static_cast<int>(arm_means.size()); }
  int num_sources() const { return static_cast<int>(sources.size()); }
  int best_arm() const;    // lowest-index argmax of arm_means
  double max_mean() const;
};

// Checks structural and numeric invariants; throws soar::error with a
// specific code on the first violation.
void validate_instance(const ProblemInstance& inst);

// Parameters shared by the algorithms.
struct AlgoParams {
  double delta = 0.1;     // overall failure-probability budget
  double c_star = 1.0;    // low-noise threshold: variances below c*^2 are "clean"
  double nu = 1.0;        // lower bound on the fourth-moment proxy Q_j
  double gamma = 1.0;     // reserved regularity constant; echoed in reports
  long long horizon = 0;  // T
  double epsilon = 0.1;   // ETC elimination tolerance
};

void validate_params(const AlgoParams& p, bool need_horizon);

// Joint pull counts: n_i per arm, m_j per source, n_ij per pair.
struct CountTable {
  int K = 0, M = 0;
  long long total = 0;
  std::vector<long long> arm;     // n_i
  std::vector<long long> source;  // m_j
  std::vector<long long> pair;    // n_ij, row-major arm*M + source

  CountTable() = default;
  CountTable(int K_, int M_)
      : K(K_), M(M_), arm(K_, 0), source(M_, 0),
        pair(static_cast<std::size_t>(K_) * M_, 0) {}

  long long pair_count(int i, int j) const {
    return pair[static_cast<std::size_t>(i) * M + j];
  }
};

// Registers one pull of (arm, source); bounds-checked.
void record_pull(CountTable& counts, int arm, int source);

// Per-round record of one run: chosen pair, observed reward, and the
// cumulative pseudo-regret after the round.
struct RunTrace {
  std::vector<int> arm;
  std::vector<int> source;
  std::vector<double> reward;
  std::vector<double> cum_regret;

  void reserve(long long T);
  void append(int i, int j, double x, double gap);
  long long rounds() const { return static_cast<long long>(arm.size()); }
  double final_regret() const { return cum_regret.empty() ? 0.0 : cum_regret.back(); }
};

}  // namespace soar
