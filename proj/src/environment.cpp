#include "soar/environment.hpp"

#include <cmath>
#include <string>

namespace soar {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779;  // 1/sqrt(2*pi)

// Variance of N(0, s^2) conditioned on |x| <= eta: s^2 (1 - 2 a phi(a) / erf(a/sqrt 2))
// with a = eta / s.  Increasing in s, with supremum eta^2 / 3 as s -> inf.
double truncated_variance(double s, double eta) {
  if (s <= 0.0) return 0.0;
  const double a = eta / s;
  const double phi = kInvSqrt2Pi * std::exp(-0.5 * a * a);
  const double mass = std::erf(a / std::sqrt(2.0));  // P(|x| <= eta) for s = 1 scale
  return s * s * (1.0 - 2.0 * a * phi / mass);
}

}  // namespace

double truncated_gaussian_scale(double variance, double eta_bar) {
  if (variance == 0.0) return 0.0;
  const double limit = eta_bar * eta_bar / 3.0;
  if (variance >= limit * (1.0 - 1e-9))
    fail("truncation-infeasible",
         "truncated gaussian cannot reach variance " + std::to_string(variance) +
             " under |noise| <= " + std::to_string(eta_bar) +
             " (flat limit eta_bar^2/3 = " + std::to_string(limit) + ")");
  double lo = std::sqrt(variance);  // truncation shrinks variance, so Var(lo) < target
  double hi = lo;
  while (truncated_variance(hi, eta_bar) < variance) {
    hi *= 2.0;
    if (hi > 1e12 * eta_bar)
      fail("truncation-infeasible", "variance too close to the flat limit");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (truncated_variance(mid, eta_bar) < variance ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

void finalize_sources(ProblemInstance& inst) {
  for (SourceSpec& s : inst.sources) {
    switch (s.family) {
      case NoiseFamily::gaussian:
        s.scale = std::sqrt(s.variance);
        if (!s.kappa) s.kappa = 3.0 * s.variance * s.variance;
        break;
      case NoiseFamily::uniform:
        s.scale = std::sqrt(3.0 * s.variance);
        if (!s.kappa) s.kappa = 1.8 * s.variance * s.variance;
        break;
      case NoiseFamily::truncated_gaussian:
        // Fourth moment intentionally left unknown: exercises the
        // estimated-Q code path.
        s.scale = truncated_gaussian_scale(s.variance, inst.eta_bar);
        break;
      case NoiseFamily::replay:
        s.scale = 1.0;  // unused marker; replay indexes the pool directly
        break;
    }
  }
}

double sample_noise(const ProblemInstance& inst, int source, RngStream& rng) {
  const SourceSpec& s = inst.sources[source];
  switch (s.family) {
    case NoiseFamily::gaussian:
      return s.scale * rng.next_normal();
    case NoiseFamily::truncated_gaussian: {
      if (s.scale == 0.0) return 0.0;
      double z;
      do {
        z = s.scale * rng.next_normal();
      } while (std::fabs(z) > inst.eta_bar);
      return z;
    }
    case NoiseFamily::uniform:
      return s.scale * (2.0 * rng.next_double() - 1.0);
    case NoiseFamily::replay:
      return s.pool[rng.next_below(s.pool.size())];
  }
  fail("bad-noise-family", "unknown noise family");
}

double sample_reward(const ProblemInstance& inst, int arm, int source,
                     RngStream& rng) {
  if (arm < 0 || arm >= inst.num_arms() || source < 0 ||
      source >= inst.num_sources())
    fail("index-out-of-range",
         "sample_reward(" + std::to_string(arm) + ", " + std::to_string(source) + ")");
  return inst.arm_means[arm] + sample_noise(inst, source, rng);
}

namespace {

// Smallest noise-scale bound compatible with one source's family: gaussians
// are treated as eta_bar-sub-gaussian (variance cap), bounded families need
// their actual support inside [-eta_bar, eta_bar].
double required_eta(const SourceSpec& s) {
  const double sd = std::sqrt(s.variance);
  switch (s.family) {
    case NoiseFamily::gaussian: return sd;
    case NoiseFamily::uniform: return std::sqrt(3.0) * sd;
    case NoiseFamily::truncated_gaussian: return 2.0 * sd;  // keeps variance < eta^2/3
    case NoiseFamily::replay: {
      double m = 0.0;
      for (double v : s.pool) m = std::max(m, std::fabs(v));
      return m;
    }
  }
  return sd;
}

void apply_bounds(ProblemInstance& inst, const InstanceOptions& opt) {
  if (opt.eta_bar > 0.0) {
    inst.eta_bar = opt.eta_bar;
  } else {
    double e = 0.0;
    for (const SourceSpec& s : inst.sources) e = std::max(e, required_eta(s));
    inst.eta_bar = (e > 0.0) ? e : 1.0;
  }
  if (opt.mu_bar > 0.0) {
    inst.mu_bar = opt.mu_bar;
  } else {
    double m = 0.0;
    for (double mu : inst.arm_means) m = std::max(m, mu);
    inst.mu_bar = (m > 0.0) ? m : 1.0;
  }
  finalize_sources(inst);
  validate_instance(inst);
}

}  // namespace

ProblemInstance make_wc1_instance(int K, int M, double sigma_star2,
                                  double sigma_max2,
                                  const std::vector<double>& arm_means,
                                  const InstanceOptions& opt) {
  if (K < 1 || M < 1) fail("bad-dimensions", "need K >= 1 arms and M >= 1 sources");
  if (static_cast<int>(arm_means.size()) != K)
    fail("bad-dimensions", "arm_means length does not match K");
  if (sigma_star2 < 0.0 || sigma_max2 < sigma_star2)
    fail("bad-variance-order", "need 0 <= sigma_star2 <= sigma_max2");
  ProblemInstance inst;
  inst.arm_means = arm_means;
  inst.sources.resize(M);
  for (int j = 0; j < M; ++j) {
    inst.sources[j].family = opt.family;
    inst.sources[j].variance = (j == M - 1) ? sigma_star2 : sigma_max2;
  }
  apply_bounds(inst, opt);
  return inst;
}

ProblemInstance make_wc2_instance(int K, int M, double base_variance,
                                  double spread,
                                  const std::vector<double>& arm_means,
                                  const InstanceOptions& opt) {
  if (K < 1 || M < 1) fail("bad-dimensions", "need K >= 1 arms and M >= 1 sources");
  if (static_cast<int>(arm_means.size()) != K)
    fail("bad-dimensions", "arm_means length does not match K");
  if (base_variance < 0.0 || spread < 0.0)
    fail("bad-variance-order", "need base_variance >= 0 and spread >= 0");
  ProblemInstance inst;
  inst.arm_means = arm_means;
  inst.sources.resize(M);
  for (int j = 0; j < M; ++j) {
    inst.sources[j].family = opt.family;
    inst.sources[j].variance =
        base_variance + (M > 1 ? spread * j / (M - 1) : 0.0);
  }
  apply_bounds(inst, opt);
  return inst;
}

ProblemInstance make_explicit_instance(const std::vector<double>& arm_means,
                                       const std::vector<double>& variances,
                                       const InstanceOptions& opt) {
  ProblemInstance inst;
  inst.arm_means = arm_means;
  inst.sources.resize(variances.size());
  for (std::size_t j = 0; j < variances.size(); ++j) {
    inst.sources[j].family = opt.family;
    inst.sources[j].variance = variances[j];
  }
  apply_bounds(inst, opt);
  return inst;
}

ProblemInstance make_random_instance(int K, int M, double mean_lo,
                                     double mean_hi, int mean_decimals,
                                     double var_lo, double var_hi,
                                     RngStream& rng,
                                     const InstanceOptions& opt) {
  if (K < 1 || M < 1) fail("bad-dimensions", "need K >= 1 arms and M >= 1 sources");
  if (mean_lo < 0.0 || mean_hi < mean_lo)
    fail("bad-mean-range", "need 0 <= mean_lo <= mean_hi");
  if (var_lo < 0.0 || var_hi < var_lo)
    fail("bad-variance-order", "need 0 <= var_lo <= var_hi");
  ProblemInstance inst;
  inst.arm_means.resize(K);
  for (int i = 0; i < K; ++i) {
    double mu = mean_lo + (mean_hi - mean_lo) * rng.next_double();
    if (mean_decimals >= 0) {
      const double p = std::pow(10.0, mean_decimals);
      mu = std::round(mu * p) / p;
    }
    inst.arm_means[i] = mu;
  }
  inst.sources.resize(M);
  for (int j = 0; j < M; ++j) {
    inst.sources[j].family = opt.family;
    inst.sources[j].variance = var_lo + (var_hi - var_lo) * rng.next_double();
  }
  apply_bounds(inst, opt);
  return inst;
}

}  // namespace soar
