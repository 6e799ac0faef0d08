#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oracles.hpp"
#include "soar/harness.hpp"
#include "soar/validate.hpp"

using namespace soar;

namespace {

namespace fs = std::filesystem;

std::string tmp_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / name;
  fs::remove_all(p);
  return p.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Small instance whose natural calibration budgets fit a short horizon.
ExperimentConfig tiny_config() {
  ExperimentConfig cfg;
  cfg.name = "tiny";
  cfg.instance.kind = "explicit";
  cfg.instance.arm_means = {0.2, 0.8};
  cfg.instance.source_variances = {0.02, 0.05};
  cfg.algorithms = {AlgoKind::soar, AlgoKind::uucb, AlgoKind::etc_ucb};
  cfg.params.delta = 0.1;
  cfg.params.c_star = 1.0;
  cfg.params.nu = 1.0;
  cfg.params.epsilon = 1.0;
  cfg.params.horizon = 300;
  cfg.repetitions = 4;
  cfg.master_seed = 7;
  return cfg;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("config parser reads every field") {
  const std::string text = R"({
    "name": "demo",
    "instance": {
      "kind": "wc1", "num_arms": 4, "num_sources": 3,
      "sigma_star2": 1.5, "sigma_max2": 9.0,
      "mean_lo": 0.1, "mean_hi": 0.9, "mean_decimals": 2,
      "family": "gaussian", "eta_bar": 4.0, "mu_bar": 1.0
    },
    "algorithms": ["soar", "uucb", "etc"],
    "params": {"delta": 0.05, "c_star": 1.5, "nu": 2.0, "gamma": 0.25,
               "horizon": 5000, "epsilon": 0.2},
    "repetitions": 7,
    "master_seed": 42,
    "out_dir": "results",
    "save_traces": true,
    "regime": "standard",
    "alpha_override": null,
    "beta_override": 12,
    "allow_truncated_exploration": true,
    "exploration_fraction": 0.25,
    "warm_start_from_preprocess": true
  })";
  ExperimentConfig cfg = parse_experiment_config(text);
  CHECK(cfg.name == "demo");
  CHECK(cfg.instance.kind == "wc1");
  CHECK(cfg.instance.num_arms == 4);
  CHECK(cfg.instance.num_sources == 3);
  CHECK(cfg.instance.sigma_star2 == 1.5);
  CHECK(cfg.instance.sigma_max2 == 9.0);
  CHECK(cfg.instance.mean_lo == 0.1);
  CHECK(cfg.instance.mean_hi == 0.9);
  CHECK(cfg.instance.mean_decimals == 2);
  CHECK(cfg.instance.family == "gaussian");
  CHECK(cfg.instance.eta_bar == 4.0);
  CHECK(cfg.instance.mu_bar == 1.0);
  REQUIRE(cfg.algorithms.size() == 3);
  CHECK(cfg.algorithms[0] == AlgoKind::soar);
  CHECK(cfg.algorithms[1] == AlgoKind::uucb);
  CHECK(cfg.algorithms[2] == AlgoKind::etc_ucb);
  CHECK(cfg.params.delta == 0.05);
  CHECK(cfg.params.c_star == 1.5);
  CHECK(cfg.params.nu == 2.0);
  CHECK(cfg.params.gamma == 0.25);
  CHECK(cfg.params.horizon == 5000);
  CHECK(cfg.params.epsilon == 0.2);
  CHECK(cfg.repetitions == 7);
  CHECK(cfg.master_seed == 42);
  CHECK(cfg.out_dir == "results");
  CHECK(cfg.save_traces);
  CHECK(cfg.regime == "standard");
  CHECK(!cfg.alpha_override.has_value());
  REQUIRE(cfg.beta_override.has_value());
  CHECK(*cfg.beta_override == 12);
  CHECK(cfg.allow_truncated_exploration);
  CHECK(cfg.exploration_fraction == 0.25);
  CHECK(cfg.warm_start_from_preprocess);
  CHECK(cfg.soar_config().regime == SoarRegime::standard);
}

TEST_CASE("config parser rejects unknown keys, naming the scope") {
  CHECK(code_of([] { (void)parse_experiment_config(R"({"horizonn": 3})"); }) ==
        "bad-config-key");
  CHECK(code_of([] {
          (void)parse_experiment_config(R"({"instance": {"knd": "wc1"}})");
        }) == "bad-config-key");
  CHECK(code_of([] {
          (void)parse_experiment_config(R"({"params": {"делта": 0.1}})");
        }) == "bad-config-key");
}

TEST_CASE("config parser structural errors") {
  CHECK(code_of([] { (void)parse_experiment_config("{oops"); }) == "bad-config");
  CHECK(code_of([] { (void)parse_experiment_config("[1,2]"); }) == "bad-config");
  CHECK(code_of([] {
          (void)parse_experiment_config(R"({"repetitions": 0})");
        }) == "bad-config");
  CHECK(code_of([] {
          (void)parse_experiment_config(R"({"algorithms": ["sarsa"]})");
        }) == "unknown-algorithm");
  CHECK(code_of([] {
          (void)parse_experiment_config(R"({"regime": "fast"})");
        }) == "bad-regime");
}

TEST_CASE("algorithm names round-trip") {
  for (AlgoKind k : {AlgoKind::soar, AlgoKind::uucb, AlgoKind::etc_ucb})
    CHECK(algo_from_name(algo_name(k)) == k);
}

TEST_CASE("build_instance realizes each generator kind") {
  InstanceSpec ex;
  ex.kind = "explicit";
  ex.arm_means = {0.3, 0.6};
  ex.source_variances = {1.0};
  ex.family = "uniform";
  ex.eta_bar = 3.0;
  const ProblemInstance e = build_instance(ex, 1);
  CHECK(e.arm_means == std::vector<double>{0.3, 0.6});
  CHECK(e.sources[0].family == NoiseFamily::uniform);
  CHECK(e.eta_bar == 3.0);

  InstanceSpec w;
  w.kind = "wc1";
  w.num_arms = 6;
  w.num_sources = 3;
  w.mean_lo = 0.0;
  w.mean_hi = 1.0;
  w.mean_decimals = 2;
  const ProblemInstance a = build_instance(w, 5);
  const ProblemInstance b = build_instance(w, 5);
  const ProblemInstance c = build_instance(w, 6);
  CHECK(a.arm_means == b.arm_means);  // same master seed, same means
  CHECK(a.arm_means != c.arm_means);
  for (double m : a.arm_means) {
    CHECK(m >= 0.0);
    CHECK(m <= 1.0);
    CHECK(m * 100.0 == doctest::Approx(std::round(m * 100.0)).epsilon(1e-9));
  }
  CHECK(a.sources.back().variance == 1.0);  // clean source sits last

  InstanceSpec r;
  r.kind = "random";
  r.num_arms = 3;
  r.num_sources = 2;
  r.mean_lo = 0.0;
  r.mean_hi = 1.0;
  r.mean_decimals = 2;
  r.var_lo = 1.0;
  r.var_hi = 2.0;
  const ProblemInstance r1 = build_instance(r, 9);
  const ProblemInstance r2 = build_instance(r, 9);
  CHECK(r1.arm_means == r2.arm_means);
  CHECK(r1.sources[0].variance == r2.sources[0].variance);
  CHECK(r1.sources[1].variance == r2.sources[1].variance);

  InstanceSpec ml;
  ml.kind = "movielens";  // no ratings_path
  CHECK(code_of([&] { (void)build_instance(ml, 1); }) == "bad-config");

  InstanceSpec unk;
  unk.kind = "surprise";
  CHECK(code_of([&] { (void)build_instance(unk, 1); }) == "bad-config");
}

TEST_CASE("run_experiment aggregates all algorithms over shared seeds") {
  const ExperimentConfig cfg = tiny_config();
  AggregateResult res = run_experiment(cfg);

  REQUIRE(res.algos.size() == 3);
  const long long T = cfg.params.horizon;
  const int R = cfg.repetitions;
  for (const AlgoAggregate& a : res.algos) {
    REQUIRE(a.mean_curve.size() == static_cast<std::size_t>(T));
    REQUIRE(a.ci_low.size() == static_cast<std::size_t>(T));
    REQUIRE(a.ci_high.size() == static_cast<std::size_t>(T));
    REQUIRE(a.reps.size() == static_cast<std::size_t>(R));
    for (long long t = 0; t < T; ++t) {
      CHECK(a.ci_low[t] <= a.mean_curve[t]);
      CHECK(a.mean_curve[t] <= a.ci_high[t]);
      if (t > 0) CHECK(a.mean_curve[t] >= a.mean_curve[t - 1]);
    }
    for (const RepSummary& rs : a.reps) {
      long long pulls = 0;
      for (long long v : rs.source_pulls) pulls += v;
      CHECK(pulls == T);
    }

    // The final mean must equal the sorted-accumulate reduction of the
    // repetition finals, bit for bit, in any input order.
    std::vector<double> finals;
    for (const RepSummary& rs : a.reps) finals.push_back(rs.final_regret);
    std::reverse(finals.begin(), finals.end());
    std::sort(finals.begin(), finals.end());
    Acc sum;
    for (double v : finals) sum.add(v);
    CHECK(a.mean_final() == sum.value() / R);
  }

  // soar bookkeeping made it into the aggregate.
  const AlgoAggregate& s = res.algos[0];
  CHECK(s.kind == AlgoKind::soar);
  CHECK(s.budgets.tau_p >= 2);
  CHECK(!s.preprocess.surviving.empty());
  for (const RepSummary& rs : s.reps) {
    CHECK(rs.preprocess_end > 0);
    CHECK(rs.exploration_end >= rs.preprocess_end);
    CHECK((rs.regime == "standard" || rs.regime == "low-noise"));
  }
  const AlgoAggregate& etc = res.algos[2];
  for (const RepSummary& rs : etc.reps) CHECK(rs.phase1_len > 0);
}

TEST_CASE("confidence band tightens with more repetitions") {
  ExperimentConfig cfg = tiny_config();
  cfg.algorithms = {AlgoKind::uucb};
  AggregateResult r4 = run_experiment(cfg);
  cfg.repetitions = 16;
  AggregateResult r16 = run_experiment(cfg);
  const double w4 = r4.algos[0].ci_high_final() - r4.algos[0].ci_low_final();
  const double w16 = r16.algos[0].ci_high_final() - r16.algos[0].ci_low_final();
  CHECK(w16 < w4);
}

TEST_CASE("export writes curves, summary, and traces; CSV round-trips") {
  ExperimentConfig cfg = tiny_config();
  cfg.save_traces = true;
  AggregateResult res = run_experiment(cfg);
  const std::string dir = tmp_dir("soar_h_export/nested/deep");
  const std::vector<std::string> files = export_results(res, dir);

  // curves + summary + one trace per (algorithm, repetition)
  REQUIRE(files.size() == 2 + 3 * 4);
  for (const std::string& f : files) CHECK(fs::exists(f));

  const std::string curves_path = dir + "/tiny_curves.csv";
  CurveTable table = parse_curves_csv(curves_path);
  REQUIRE(table.algorithms ==
          std::vector<std::string>{"soar", "uucb", "etc"});
  for (std::size_t a = 0; a < table.algorithms.size(); ++a) {
    REQUIRE(table.mean[a].size() == static_cast<std::size_t>(cfg.params.horizon));
    for (std::size_t t = 0; t < table.mean[a].size(); ++t) {
      // %.17g print + stod parse is an exact double round trip.
      CHECK(table.mean[a][t] == res.algos[a].mean_curve[t]);
      CHECK(table.lo[a][t] == res.algos[a].ci_low[t]);
      CHECK(table.hi[a][t] == res.algos[a].ci_high[t]);
    }
  }

  // Traces: header + T rows, 1-based round/arm/source columns.
  const std::string trace = slurp(dir + "/tiny_soar_rep1_trace.csv");
  std::istringstream tin(trace);
  std::string line;
  long long rows = 0;
  REQUIRE(std::getline(tin, line));
  CHECK(line == "round,arm,source,reward,cum_regret");
  long long expect_round = 1;
  while (std::getline(tin, line)) {
    ++rows;
    std::istringstream rowin(line);
    std::string round_s, arm_s, source_s;
    std::getline(rowin, round_s, ',');
    std::getline(rowin, arm_s, ',');
    std::getline(rowin, source_s, ',');
    REQUIRE(std::stoll(round_s) == expect_round++);
    CHECK(std::stoll(arm_s) >= 1);
    CHECK(std::stoll(source_s) >= 1);
  }
  CHECK(rows == cfg.params.horizon);

  // Summary JSON contents.
  const std::string summary = slurp(dir + "/tiny_summary.json");
  CHECK(summary.find("timestamp") == std::string::npos);
  const nlohmann::json j = nlohmann::json::parse(summary);
  CHECK(j.at("config").at("params").at("gamma").get<double>() ==
        cfg.params.gamma);
  CHECK(j.at("config").at("name").get<std::string>() == "tiny");
  CHECK(j.at("instance").at("best_arm").get<int>() == 2);  // 1-based
  REQUIRE(j.at("algorithms").size() == 3);
  const auto& js = j.at("algorithms").at(0);
  CHECK(js.at("name").get<std::string>() == "soar");
  CHECK(js.at("budgets").contains("tau_p"));
  CHECK(js.at("preprocess").at("fixed_arm").get<int>() == 1);  // 1-based
  for (int v : js.at("preprocess").at("surviving")) CHECK(v >= 1);
  REQUIRE(js.at("reps").size() == 4);
  CHECK(js.at("reps").at(0).contains("phase_regret"));
  const auto& je = j.at("algorithms").at(2);
  CHECK(je.at("name").get<std::string>() == "etc");
  CHECK(je.at("reps").at(0).contains("committed_source"));
}

TEST_CASE("export with no algorithms writes a header-only curves file") {
  ExperimentConfig cfg = tiny_config();
  cfg.algorithms.clear();
  AggregateResult res = run_experiment(cfg);
  const std::string dir = tmp_dir("soar_h_empty");
  export_results(res, dir);
  CHECK(slurp(dir + "/tiny_curves.csv") ==
        "round,algorithm,mean_cum_regret,ci_low,ci_high\n");
}

TEST_CASE("identical configs export byte-identical files") {
  ExperimentConfig cfg = tiny_config();
  cfg.save_traces = true;
  const std::string d1 = tmp_dir("soar_h_rerun_a");
  const std::string d2 = tmp_dir("soar_h_rerun_b");
  const auto f1 = export_results(run_experiment(cfg), d1);
  const auto f2 = export_results(run_experiment(cfg), d2);
  REQUIRE(f1.size() == f2.size());
  for (std::size_t i = 0; i < f1.size(); ++i)
    CHECK(slurp(f1[i]) == slurp(f2[i]));
}

TEST_CASE("bench suites expose the pinned configurations") {
  const auto wc1 = bench_suite("wc1");
  REQUIRE(wc1.size() == 1);
  CHECK(wc1[0].instance.kind == "wc1");
  REQUIRE(wc1[0].algorithms.size() == 2);
  CHECK(wc1[0].algorithms[0] == AlgoKind::soar);
  CHECK(wc1[0].algorithms[1] == AlgoKind::uucb);
  CHECK(wc1[0].params.horizon == 20000);
  CHECK(wc1[0].repetitions == 25);

  const auto wc2 = bench_suite("wc2");
  REQUIRE(wc2.size() == 1);
  CHECK(wc2[0].algorithms[1] == AlgoKind::etc_ucb);
  CHECK(wc2[0].params.epsilon == 0.1);

  const auto vk = bench_suite("varying-k");
  REQUIRE(vk.size() == 3);
  CHECK(vk[0].instance.arm_means.size() == 5);
  CHECK(vk[1].instance.arm_means.size() == 15);
  CHECK(vk[2].instance.arm_means.size() == 30);

  const auto vm = bench_suite("varying-m");
  REQUIRE(vm.size() == 3);
  CHECK(vm[0].instance.source_variances.size() == 5);
  CHECK(vm[1].instance.source_variances.size() == 15);
  CHECK(vm[2].instance.source_variances.size() == 30);

  CHECK(code_of([] { (void)bench_suite("wc3"); }) == "unknown-suite");
}

TEST_CASE("concentration validation smoke run") {
  AlgoParams p;
  p.delta = 0.1;
  p.c_star = 2.0;
  p.nu = 3.0;
  p.horizon = 10000;
  CoverageReport rep = validate_concentration("preprocess-variance", 200, p, 5);
  CHECK(rep.check == "preprocess-variance");
  CHECK(rep.trials == 200);
  CHECK(rep.nominal == doctest::Approx(1.0 - p.delta / 3.0).epsilon(1e-15));
  const double want_threshold =
      rep.nominal - 3.0 * std::sqrt(rep.nominal * (1.0 - rep.nominal) / 200.0);
  CHECK(rep.threshold == doctest::Approx(want_threshold).epsilon(1e-12));
  CHECK(rep.empirical == static_cast<double>(rep.hits) / 200.0);
  CHECK(rep.pass);

  CHECK(concentration_checks() ==
        std::vector<std::string>{"preprocess-variance", "source-variance",
                                 "arm-mean", "variance-sandwich",
                                 "mean-ucb-coverage",
                                 "variance-lcb-coverage"});
  CHECK(code_of([&] { (void)validate_concentration("armmean", 10, p, 1); }) ==
        "unknown-check");
  CHECK(code_of([&] {
          (void)validate_concentration("arm-mean", 0, p, 1);
        }) == "bad-trials");
}

}  // TEST_SUITE
