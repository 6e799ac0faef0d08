#include "soar/movielens.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <unordered_map>

#include "soar/environment.hpp"
#include "soar/estimators.hpp"

namespace soar {

namespace {

// Parses "userId,movieId,rating[,timestamp]"; the timestamp is ignored.
bool parse_row(const char* s, const char* end, long long& user,
               long long& movie, double& rating) {
  auto r1 = std::from_chars(s, end, user);
  if (r1.ec != std::errc{} || r1.ptr == end || *r1.ptr != ',') return false;
  auto r2 = std::from_chars(r1.ptr + 1, end, movie);
  if (r2.ec != std::errc{} || r2.ptr == end || *r2.ptr != ',') return false;
  auto r3 = std::from_chars(r2.ptr + 1, end, rating);
  return r3.ec == std::errc{};
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

MoviePanel load_movielens_panel(const std::string& path, int num_reviewers,
                                int num_movies) {
  if (num_reviewers < 1 || num_movies < 2)
    fail("bad-dimensions", "need at least 1 reviewer and 2 movies");
  std::ifstream in(path);
  if (!in) fail("file-not-found", "cannot open ratings file: " + path);

  std::string line;
  if (!std::getline(in, line)) fail("file-format", "ratings file is empty");
  strip_cr(line);
  if (line.rfind("userId,movieId,rating", 0) != 0)
    fail("file-format",
         "expected header starting with 'userId,movieId,rating', got: " + line);

  // Pass 1: ratings per user.
  std::unordered_map<long long, long long> user_counts;
  user_counts.reserve(1 << 18);
  long long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    long long user, movie;
    double rating;
    if (!parse_row(line.data(), line.data() + line.size(), user, movie, rating))
      fail("file-format", "malformed row at line " + std::to_string(line_no));
    ++user_counts[user];
  }

  // Candidates: users with enough ratings, ranked by count then id.
  std::vector<std::pair<long long, long long>> ranked;  // (count, user)
  for (const auto& [user, count] : user_counts)
    if (count >= num_movies) ranked.emplace_back(count, user);
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  if (static_cast<int>(ranked.size()) < num_reviewers)
    fail("infeasible-panel",
         "only " + std::to_string(ranked.size()) + " users rated >= " +
             std::to_string(num_movies) + " movies; need " +
             std::to_string(num_reviewers));
  const std::size_t pool_cap =
      std::max<std::size_t>(static_cast<std::size_t>(num_reviewers) * 40, 400);
  if (ranked.size() > pool_cap) ranked.resize(pool_cap);

  std::unordered_map<long long, int> cand_index;
  cand_index.reserve(ranked.size() * 2);
  for (std::size_t c = 0; c < ranked.size(); ++c)
    cand_index.emplace(ranked[c].second, static_cast<int>(c));

  // Pass 2: collect candidate ratings, sorted by movieId per user.
  std::vector<std::vector<std::pair<long long, double>>> cand_ratings(
      ranked.size());
  for (std::size_t c = 0; c < ranked.size(); ++c)
    cand_ratings[c].reserve(static_cast<std::size_t>(ranked[c].first));
  in.clear();
  in.seekg(0);
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    strip_cr(line);
    if (line.empty()) continue;
    long long user, movie;
    double rating;
    parse_row(line.data(), line.data() + line.size(), user, movie, rating);
    const auto it = cand_index.find(user);
    if (it != cand_index.end()) cand_ratings[it->second].emplace_back(movie, rating);
  }
  for (auto& v : cand_ratings)
    std::sort(v.begin(), v.end());  // unique (user, movie) pairs assumed

  auto movie_list = [&](int c) {
    std::vector<long long> m;
    m.reserve(cand_ratings[c].size());
    for (const auto& pr : cand_ratings[c]) m.push_back(pr.first);
    return m;
  };
  auto intersect_count = [](const std::vector<long long>& a,
                            const std::vector<long long>& b) {
    std::size_t i = 0, j = 0, n = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i] < b[j]) ++i;
      else if (a[i] > b[j]) ++j;
      else { ++n; ++i; ++j; }
    }
    return n;
  };

  // Greedy panel build: grow from a seed candidate, always adding the
  // candidate that keeps the common-movie intersection largest.  Seeds are
  // tried in ranking order; the first that reaches the target wins.
  const int tries = std::min<int>(10, static_cast<int>(ranked.size()));
  std::size_t best_achieved = 0;
  std::vector<int> chosen;
  for (int seed = 0; seed < tries && chosen.empty(); ++seed) {
    std::vector<int> sel{seed};
    std::vector<long long> common = movie_list(seed);
    std::vector<char> used(ranked.size(), 0);
    used[seed] = 1;
    while (static_cast<int>(sel.size()) < num_reviewers &&
           common.size() >= static_cast<std::size_t>(num_movies)) {
      int pick = -1;
      std::size_t pick_n = 0;
      for (std::size_t c = 0; c < ranked.size(); ++c) {
        if (used[c]) continue;
        const std::size_t n = intersect_count(common, movie_list(static_cast<int>(c)));
        if (n > pick_n) {  // strict > keeps the highest-ranked candidate
          pick_n = n;
          pick = static_cast<int>(c);
        }
      }
      if (pick < 0) break;
      used[pick] = 1;
      sel.push_back(pick);
      std::vector<long long> next;
      const std::vector<long long> pm = movie_list(pick);
      next.reserve(std::min(common.size(), pm.size()));
      std::set_intersection(common.begin(), common.end(), pm.begin(), pm.end(),
                            std::back_inserter(next));
      common = std::move(next);
    }
    if (static_cast<int>(sel.size()) == num_reviewers &&
        common.size() >= static_cast<std::size_t>(num_movies))
      chosen = sel;
    else
      best_achieved = std::max(best_achieved, common.size());
  }
  if (chosen.empty())
    fail("infeasible-panel",
         "no panel of " + std::to_string(num_reviewers) + " reviewers shares " +
             std::to_string(num_movies) + " movies; best achievable was " +
             std::to_string(best_achieved));

  // Final intersection and the panel matrices.
  std::vector<long long> common = movie_list(chosen[0]);
  for (std::size_t k = 1; k < chosen.size(); ++k) {
    std::vector<long long> next;
    const std::vector<long long> pm = movie_list(chosen[k]);
    std::set_intersection(common.begin(), common.end(), pm.begin(), pm.end(),
                          std::back_inserter(next));
    common = std::move(next);
  }
  common.resize(num_movies);  // lowest movieIds, ascending

  MoviePanel panel;
  panel.movie_ids = common;
  std::vector<long long> users;
  for (int c : chosen) users.push_back(ranked[c].second);
  std::sort(users.begin(), users.end());
  panel.reviewer_ids = users;

  panel.ratings.assign(users.size(), std::vector<double>(common.size(), 0.0));
  for (std::size_t j = 0; j < users.size(); ++j) {
    const auto& rv = cand_ratings[cand_index.at(users[j])];
    for (std::size_t i = 0; i < common.size(); ++i) {
      const auto it = std::lower_bound(
          rv.begin(), rv.end(), std::make_pair(common[i], -1.0));
      panel.ratings[j][i] = it->second;
    }
  }
  panel.ratings_used =
      static_cast<long long>(users.size()) * static_cast<long long>(common.size());

  const int M = static_cast<int>(users.size());
  const int K = static_cast<int>(common.size());
  panel.movie_means.resize(K);
  for (int i = 0; i < K; ++i) {
    Acc s;
    for (int j = 0; j < M; ++j) s.add(panel.ratings[j][i]);
    panel.movie_means[i] = s.value() / M;
  }
  panel.reviewer_variances.resize(M);
  panel.residual_pools.assign(M, std::vector<double>(K));
  for (int j = 0; j < M; ++j) {
    Acc s;
    for (int i = 0; i < K; ++i) s.add(panel.ratings[j][i]);
    const double mean = s.value() / K;
    Acc ss;
    for (int i = 0; i < K; ++i) {
      const double d = panel.ratings[j][i] - mean;
      ss.add(d * d);
    }
    panel.reviewer_variances[j] = ss.value() / (K - 1);
    // Residuals against movie means, centered so replay noise is mean-zero.
    Acc rs;
    for (int i = 0; i < K; ++i) {
      panel.residual_pools[j][i] = panel.ratings[j][i] - panel.movie_means[i];
      rs.add(panel.residual_pools[j][i]);
    }
    const double shift = rs.value() / K;
    for (int i = 0; i < K; ++i) panel.residual_pools[j][i] -= shift;
  }
  return panel;
}

ProblemInstance panel_instance(const MoviePanel& panel, bool gaussian_fit) {
  if (panel.movie_means.empty() || panel.reviewer_variances.empty())
    fail("empty-panel", "panel has no movies or reviewers");
  ProblemInstance inst;
  inst.arm_means = panel.movie_means;
  inst.mu_bar = 5.0;   // rating scale
  inst.eta_bar = 5.0;  // noise bound: eta_bar^2 = 25
  const int M = static_cast<int>(panel.reviewer_variances.size());
  inst.sources.resize(M);
  for (int j = 0; j < M; ++j) {
    SourceSpec& s = inst.sources[j];
    if (gaussian_fit) {
      s.family = NoiseFamily::gaussian;
      s.variance = panel.reviewer_variances[j];
    } else {
      s.family = NoiseFamily::replay;
      s.pool = panel.residual_pools[j];
      Acc v;
      for (double r : s.pool) v.add(r * r);
      s.variance = v.value() / static_cast<double>(s.pool.size());
    }
  }
  finalize_sources(inst);
  validate_instance(inst);
  return inst;
}

}  // namespace soar
