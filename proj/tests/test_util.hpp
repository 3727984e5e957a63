#ifndef PITCHCUT_TEST_UTIL_HPP
#define PITCHCUT_TEST_UTIL_HPP

#include <algorithm>
#include <random>
#include <vector>

#include "pitchcut/core.hpp"

namespace testutil {

using pitchcut::Rational;

// Random cover instance with no nested supports (create() rejects nesting).
inline pitchcut::core::CoverInstance random_cover(std::mt19937& rng, int n,
                                                  int m) {
  std::vector<std::vector<int>> rows;
  std::uniform_int_distribution<int> size_dist(2, std::min(n, 4));
  std::uniform_int_distribution<int> var_dist(0, n - 1);
  int attempts = 0;
  while (static_cast<int>(rows.size()) < m && attempts < 500) {
    ++attempts;
    const int s = size_dist(rng);
    std::vector<int> row;
    while (static_cast<int>(row.size()) < s) {
      const int v = var_dist(rng);
      if (std::find(row.begin(), row.end(), v) == row.end()) row.push_back(v);
    }
    std::sort(row.begin(), row.end());
    bool nested = false;
    for (const auto& other : rows) {
      const auto& a = row.size() <= other.size() ? row : other;
      const auto& b = row.size() <= other.size() ? other : row;
      if (std::includes(b.begin(), b.end(), a.begin(), a.end())) {
        nested = true;
        break;
      }
    }
    if (!nested) rows.push_back(std::move(row));
  }
  return pitchcut::core::CoverInstance::create(n, std::move(rows));
}

inline pitchcut::core::KnapsackInstance random_knapsack(std::mt19937& rng,
                                                        int n,
                                                        std::int64_t wmax) {
  std::uniform_int_distribution<std::int64_t> w_dist(1, wmax);
  std::vector<std::int64_t> w(n);
  std::int64_t total = 0;
  for (auto& x : w) {
    x = w_dist(rng);
    total += x;
  }
  const std::int64_t hi = std::max<std::int64_t>(
      *std::max_element(w.begin(), w.end()), total / 2);
  std::uniform_int_distribution<std::int64_t> rhs_dist(
      *std::max_element(w.begin(), w.end()), std::max<std::int64_t>(hi, 1));
  return pitchcut::core::KnapsackInstance::create(std::move(w), rhs_dist(rng));
}

// Entries a/b with b <= max_denom, clamped to [0,1].
inline pitchcut::core::FractionalPoint random_point(std::mt19937& rng, int n,
                                                    int max_denom = 64) {
  std::uniform_int_distribution<int> den_dist(1, max_denom);
  pitchcut::core::FractionalPoint pt;
  pt.entries.reserve(n);
  for (int j = 0; j < n; ++j) {
    const int b = den_dist(rng);
    std::uniform_int_distribution<int> num_dist(0, b);
    pt.entries.emplace_back(Rational(num_dist(rng)) / b);
  }
  return pt;
}

}  // namespace testutil

#endif
