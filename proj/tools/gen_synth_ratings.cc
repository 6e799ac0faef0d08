// Generates a synthetic ratings file in the MovieLens layout
// (userId,movieId,rating,timestamp) with a planted reviewer panel: the
// first `panel-users` users rate every movie, so a panel of 15 reviewers
// sharing 500+ movies always exists; the remaining users rate random
// subsets.  Used by tests to exercise the ingestion pipeline without
// shipping the real dataset.
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "soar/rng.hpp"

namespace {

double clamp_half_steps(double x) {
  double r = 0.5 * std::round(2.0 * x);
  if (r < 0.5) r = 0.5;
  if (r > 5.0) r = 5.0;
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"synthetic MovieLens-format ratings generator"};
  std::string out_path = "synth_ratings.csv";
  int users = 60, movies = 550, panel_users = 20;
  std::uint64_t seed = 7;
  app.add_option("--out", out_path, "output CSV path");
  app.add_option("--users", users, "total user count");
  app.add_option("--movies", movies, "total movie count");
  app.add_option("--panel-users", panel_users,
                 "users who rate every movie (the planted panel)");
  app.add_option("--seed", seed, "generator seed");
  CLI11_PARSE(app, argc, argv);
  if (users < 1 || movies < 1 || panel_users < 0 || panel_users > users) {
    std::fprintf(stderr, "invalid dimensions\n");
    return 1;
  }

  soar::RngStream rng(seed, 0);

  // Movie qualities and per-user (bias, noise scale); user 1 is planted as
  // the near-deterministic reviewer so a clean source exists.
  std::vector<double> quality(movies);
  for (double& q : quality) q = 1.5 + 3.0 * rng.next_double();
  std::vector<double> bias(users), noise(users);
  for (int u = 0; u < users; ++u) {
    bias[u] = -0.4 + 0.8 * rng.next_double();
    noise[u] = 0.2 + 0.8 * rng.next_double();
  }
  if (!noise.empty()) noise[0] = 0.05;

  std::FILE* out = std::fopen(out_path.c_str(), "wb");
  if (!out) {
    std::fprintf(stderr, "cannot open %s\n", out_path.c_str());
    return 1;
  }
  std::fprintf(out, "userId,movieId,rating,timestamp\n");
  long long row = 0;
  for (int u = 0; u < users; ++u) {
    const bool in_panel = u < panel_users;
    for (int m = 0; m < movies; ++m) {
      if (!in_panel) {
        // Casual users rate roughly 40% of the catalog.
        if (rng.next_double() > 0.4) continue;
      }
      const double r = clamp_half_steps(quality[m] + bias[u] +
                                        noise[u] * rng.next_normal());
      std::fprintf(out, "%d,%d,%.1f,%lld\n", u + 1, m + 1, r,
                   1000000000LL + row);
      ++row;
    }
  }
  std::fclose(out);
  std::printf("wrote %s (%lld ratings, %d users, %d movies)\n",
              out_path.c_str(), row, users, movies);
  return 0;
}
