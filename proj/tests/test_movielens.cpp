#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "soar/movielens.hpp"

using namespace soar;

namespace {

std::string fixture_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  out << body;
}

// Three users share four movies; two more rated only one movie each.
std::string tiny_csv(const char* eol) {
  std::string s;
  auto row = [&](const char* u, const char* m, const char* r) {
    s += u;
    s += ',';
    s += m;
    s += ',';
    s += r;
    s += ",1000";
    s += eol;
  };
  s += "userId,movieId,rating,timestamp";
  s += eol;
  row("1", "3", "5.0");
  row("2", "3", "4");  // integer ratings must parse too
  row("2", "7", "3.5");
  row("2", "9", "5.0");
  row("2", "11", "2.0");
  row("3", "3", "3.0");
  row("3", "7", "4.0");
  row("3", "9", "4.5");
  row("3", "11", "3.5");
  row("4", "3", "0.5");
  row("5", "3", "2.5");
  row("5", "7", "3.0");
  row("5", "9", "4.0");
  row("5", "11", "1.0");
  return s;
}

// Returns "<code>: <message>" so tests can assert on both parts.
template <class F>
std::string message_of(F&& f) {
  try {
    f();
  } catch (const error& e) {
    return e.code + ": " + e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("movielens") {

TEST_CASE("panel selection picks the users that share enough movies") {
  const std::string path = fixture_path("soar_ml_tiny.csv");
  write_file(path, tiny_csv("\n"));
  MoviePanel panel = load_movielens_panel(path, 3, 4);

  CHECK(panel.reviewer_ids == std::vector<long long>{2, 3, 5});
  CHECK(panel.movie_ids == std::vector<long long>{3, 7, 9, 11});
  CHECK(panel.ratings_used == 12);

  // Row order follows the ascending reviewer ids.
  CHECK(panel.ratings[0] == std::vector<double>{4.0, 3.5, 5.0, 2.0});
  CHECK(panel.ratings[1] == std::vector<double>{3.0, 4.0, 4.5, 3.5});
  CHECK(panel.ratings[2] == std::vector<double>{2.5, 3.0, 4.0, 1.0});

  // Spot-check the derived stats, then recompute all of them plainly.
  CHECK(panel.movie_means[1] == doctest::Approx(3.5).epsilon(1e-15));
  CHECK(panel.reviewer_variances[0] == doctest::Approx(1.5625).epsilon(1e-15));

  const int M = 3, K = 4;
  for (int i = 0; i < K; ++i) {
    double s = 0;
    for (int j = 0; j < M; ++j) s += panel.ratings[j][i];
    CHECK(panel.movie_means[i] == doctest::Approx(s / M).epsilon(1e-12));
  }
  for (int j = 0; j < M; ++j) {
    double s = 0;
    for (int i = 0; i < K; ++i) s += panel.ratings[j][i];
    const double mean = s / K;
    double ss = 0;
    for (int i = 0; i < K; ++i)
      ss += (panel.ratings[j][i] - mean) * (panel.ratings[j][i] - mean);
    CHECK(panel.reviewer_variances[j] ==
          doctest::Approx(ss / (K - 1)).epsilon(1e-12));

    // Residual pools: rating minus movie mean, recentered to mean zero.
    REQUIRE(panel.residual_pools[j].size() == static_cast<std::size_t>(K));
    double raw_mean = 0;
    for (int i = 0; i < K; ++i)
      raw_mean += (panel.ratings[j][i] - panel.movie_means[i]) / K;
    double pool_mean = 0;
    for (int i = 0; i < K; ++i) {
      const double want =
          panel.ratings[j][i] - panel.movie_means[i] - raw_mean;
      CHECK(panel.residual_pools[j][i] == doctest::Approx(want).epsilon(1e-12));
      pool_mean += panel.residual_pools[j][i] / K;
    }
    CHECK(std::fabs(pool_mean) <= 1e-9);
  }
}

TEST_CASE("panel loader reports how many users qualify when short") {
  const std::string path = fixture_path("soar_ml_tiny.csv");
  write_file(path, tiny_csv("\n"));
  const std::string msg =
      message_of([&] { (void)load_movielens_panel(path, 4, 4); });
  CHECK(msg.find("infeasible-panel") != std::string::npos);
  CHECK(msg.find("only 3 users rated >= 4 movies; need 4") != std::string::npos);
}

TEST_CASE("panel loader reports the best intersection when groups are disjoint") {
  // Two 2-user cliques rate disjoint movie sets; no 4-user panel exists.
  std::string s = "userId,movieId,rating,timestamp\n";
  for (int u : {1, 2})
    for (int m : {10, 11, 12, 13})
      s += std::to_string(u) + "," + std::to_string(m) + ",3.0,0\n";
  for (int u : {3, 4})
    for (int m : {20, 21, 22, 23})
      s += std::to_string(u) + "," + std::to_string(m) + ",4.0,0\n";
  const std::string path = fixture_path("soar_ml_disjoint.csv");
  write_file(path, s);
  const std::string msg =
      message_of([&] { (void)load_movielens_panel(path, 4, 4); });
  CHECK(msg.find("infeasible-panel") != std::string::npos);
  CHECK(msg.find("best achievable") != std::string::npos);
}

TEST_CASE("panel loader file errors") {
  CHECK(code_of([] {
          (void)load_movielens_panel(fixture_path("soar_ml_missing.csv"), 3, 4);
        }) == "file-not-found");

  const std::string empty = fixture_path("soar_ml_empty.csv");
  write_file(empty, "");
  CHECK(code_of([&] { (void)load_movielens_panel(empty, 3, 4); }) ==
        "file-format");

  const std::string header = fixture_path("soar_ml_header.csv");
  write_file(header, "movieId,userId,rating\n1,2,3.0\n");
  CHECK(code_of([&] { (void)load_movielens_panel(header, 3, 4); }) ==
        "file-format");

  const std::string bad = fixture_path("soar_ml_bad.csv");
  write_file(bad, "userId,movieId,rating,timestamp\n1,3,4.0,0\n5,abc,3.0,0\n");
  const std::string msg =
      message_of([&] { (void)load_movielens_panel(bad, 3, 4); });
  CHECK(msg.find("file-format") != std::string::npos);
  CHECK(msg.find("line 3") != std::string::npos);

  CHECK(code_of([&] { (void)load_movielens_panel(bad, 3, 1); }) ==
        "bad-dimensions");
}

TEST_CASE("panel loader accepts CRLF line endings") {
  const std::string path = fixture_path("soar_ml_crlf.csv");
  write_file(path, tiny_csv("\r\n"));
  MoviePanel panel = load_movielens_panel(path, 3, 4);
  CHECK(panel.reviewer_ids == std::vector<long long>{2, 3, 5});
  CHECK(panel.ratings[0][0] == 4.0);
}

TEST_CASE("full-size panel extraction and both bandit views") {
  // 18 users rate all of 520 movies; 40 casual users rate 3 movies each.
  std::string s = "userId,movieId,rating,timestamp\n";
  auto rating_of = [](long long u, long long m) {
    return 0.5 + 0.5 * static_cast<double>((u * 31 + m * 17) % 10);
  };
  for (long long u = 1; u <= 18; ++u)
    for (long long m = 1; m <= 520; ++m)
      s += std::to_string(u) + "," + std::to_string(m) + "," +
           std::to_string(rating_of(u, m)) + ",0\n";
  for (long long u = 100; u < 140; ++u)
    for (long long m = 1; m <= 3; ++m)
      s += std::to_string(u) + "," + std::to_string(m) + ",3.0,0\n";
  const std::string path = fixture_path("soar_ml_big.csv");
  write_file(path, s);

  MoviePanel panel = load_movielens_panel(path, 15, 500);
  REQUIRE(panel.reviewer_ids.size() == 15);
  REQUIRE(panel.movie_ids.size() == 500);
  CHECK(panel.ratings_used == 7500);
  for (std::size_t j = 1; j < panel.reviewer_ids.size(); ++j)
    CHECK(panel.reviewer_ids[j] > panel.reviewer_ids[j - 1]);
  for (std::size_t i = 1; i < panel.movie_ids.size(); ++i)
    CHECK(panel.movie_ids[i] > panel.movie_ids[i - 1]);
  for (long long u : panel.reviewer_ids) CHECK(u <= 18);  // casuals excluded
  REQUIRE(panel.ratings.size() == 15);
  for (const auto& row : panel.ratings)
    REQUIRE(row.size() == 500);
  // The matrix holds the true file ratings.
  for (int j = 0; j < 15; ++j)
    for (int i = 0; i < 500; i += 97)
      CHECK(panel.ratings[j][i] ==
            rating_of(panel.reviewer_ids[j], panel.movie_ids[i]));

  ProblemInstance fit = panel_instance(panel, true);
  CHECK(fit.arm_means == panel.movie_means);
  CHECK(fit.eta_bar == 5.0);
  CHECK(fit.mu_bar == 5.0);
  REQUIRE(fit.sources.size() == 15);
  for (int j = 0; j < 15; ++j) {
    CHECK(fit.sources[j].family == NoiseFamily::gaussian);
    CHECK(fit.sources[j].variance == panel.reviewer_variances[j]);
  }
  validate_instance(fit);

  ProblemInstance rep = panel_instance(panel, false);
  REQUIRE(rep.sources.size() == 15);
  for (int j = 0; j < 15; ++j) {
    CHECK(rep.sources[j].family == NoiseFamily::replay);
    CHECK(rep.sources[j].pool == panel.residual_pools[j]);
  }
  validate_instance(rep);
}

TEST_CASE("panel_instance rejects an empty panel") {
  MoviePanel panel;
  CHECK(code_of([&] { (void)panel_instance(panel, true); }) == "empty-panel");
}

}  // TEST_SUITE
