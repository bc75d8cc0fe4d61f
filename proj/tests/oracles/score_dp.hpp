#pragma once

// Exact score distribution of a fixed test by dynamic programming over
// earned points.

#include <cmath>
#include <utility>
#include <vector>

namespace oracle {

struct Item {
  int points = 1;
  double p_correct = 0.5;
};

/// dist[e] = probability of earning exactly e points.
inline std::vector<double> earned_distribution(const std::vector<Item>& items) {
  int total = 0;
  for (const auto& it : items) total += it.points;
  std::vector<double> dist(static_cast<std::size_t>(total) + 1, 0.0);
  dist[0] = 1.0;
  int reach = 0;
  for (const auto& it : items) {
    for (int e = reach; e >= 0; --e) {
      const double here = dist[static_cast<std::size_t>(e)];
      dist[static_cast<std::size_t>(e + it.points)] += here * it.p_correct;
      dist[static_cast<std::size_t>(e)] = here * (1.0 - it.p_correct);
    }
    reach += it.points;
  }
  return dist;
}

/// The 0..100 score for e of m points, rounding halves up, in integers.
inline int score_of(int e, int m) { return (200 * e + m) / (2 * m); }

/// dist over scores 0..100.
inline std::vector<double> score_distribution(const std::vector<Item>& items) {
  const auto earned = earned_distribution(items);
  const int m = static_cast<int>(earned.size()) - 1;
  std::vector<double> out(101, 0.0);
  for (int e = 0; e <= m; ++e) out[static_cast<std::size_t>(score_of(e, m))] += earned[static_cast<std::size_t>(e)];
  return out;
}

inline double expected_score(const std::vector<Item>& items) {
  const auto dist = score_distribution(items);
  double mean = 0.0;
  for (int s = 0; s <= 100; ++s) mean += s * dist[static_cast<std::size_t>(s)];
  return mean;
}

/// P(score >= threshold).
inline double prob_at_least(const std::vector<Item>& items, int threshold) {
  const auto dist = score_distribution(items);
  double p = 0.0;
  for (int s = threshold; s <= 100; ++s) p += dist[static_cast<std::size_t>(s)];
  return p;
}

inline double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace oracle
