#pragma once
#include <string>

#include "soar/core.hpp"

namespace soar {

// A reviewer panel extracted from a MovieLens-format ratings file:
// `num_reviewers` users who all rated the same `num_movies` movies.
struct MoviePanel {
  std::vector<long long> reviewer_ids;  // selected userIds, ascending
  std::vector<long long> movie_ids;     // selected movieIds, ascending
  // ratings[j][i] = reviewer j's rating of movie i.
  std::vector<std::vector<double>> ratings;
  std::vector<double> movie_means;          // per movie, panel mean
  std::vector<double> reviewer_variances;   // per reviewer, sample variance
  std::vector<std::vector<double>> residual_pools;  // centered residuals
  long long ratings_used = 0;               // num_reviewers * num_movies
};

// Ingests a ratings CSV (header `userId,movieId,rating,timestamp`) and
// selects the panel deterministically: candidate users ranked by rating
// count, then a greedy largest-common-intersection build; several seeds
// from the top of the ranking are tried and the first that reaches the
// requested panel size wins.  Errors: "file-not-found", "file-format",
// "infeasible-panel" (reports the best achievable intersection).
MoviePanel load_movielens_panel(const std::string& path, int num_reviewers = 15,
                                int num_movies = 500);

// Bandit view of the panel: arms = movies with the panel-mean ratings as
// true means, sources = reviewers.  gaussian_fit=true models reviewer noise
// as N(0, reviewer variance); false replays the reviewer's centered
// residual pool.  Bounds: mu_bar = 5 (rating scale), eta_bar = 5.
ProblemInstance panel_instance(const MoviePanel& panel, bool gaussian_fit);

}  // namespace soar
