#pragma once

// Deliberately naive reference implementations for tests. Nothing here uses
// the library: plain matrices, probabilities indexed by vertex, and a tour
// given as a vertex sequence starting at the root.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

// Total latency of the active vertices when walking `tour` and skipping the
// inactive ones.
inline double WalkLatency(const Matrix& d, const std::vector<int>& tour,
                          const std::vector<bool>& active) {
  double clock = 0.0;
  double total = 0.0;
  int at = tour[0];
  for (std::size_t i = 1; i < tour.size(); ++i) {
    const int v = tour[i];
    if (!active[v]) continue;
    clock += d[at][v];
    total += clock;
    at = v;
  }
  return total;
}

// Expected total latency by summing over all 2^(n-1) activation patterns.
inline double Elat(const Matrix& d, const std::vector<double>& prob,
                   const std::vector<int>& tour) {
  const int n = static_cast<int>(tour.size());
  const int m = n - 1;
  double expected = 0.0;
  for (unsigned long mask = 0; mask < (1UL << m); ++mask) {
    std::vector<bool> active(d.size(), false);
    active[tour[0]] = true;
    double weight = 1.0;
    for (int i = 0; i < m; ++i) {
      const int v = tour[i + 1];
      const bool on = (mask >> i) & 1UL;
      active[v] = on;
      weight *= on ? prob[v] : 1.0 - prob[v];
    }
    if (weight == 0.0) continue;
    expected += weight * WalkLatency(d, tour, active);
  }
  return expected;
}

struct Best {
  std::vector<int> tour;
  double value = std::numeric_limits<double>::infinity();
};

// Minimum of Elat over every tour that starts at `root`.
inline Best Optimum(const Matrix& d, const std::vector<double>& prob, int root) {
  std::vector<int> rest;
  for (int v = 0; v < static_cast<int>(d.size()); ++v) {
    if (v != root) rest.push_back(v);
  }
  Best best;
  do {
    std::vector<int> tour{root};
    tour.insert(tour.end(), rest.begin(), rest.end());
    const double value = Elat(d, prob, tour);
    if (value < best.value) best = {tour, value};
  } while (std::next_permutation(rest.begin(), rest.end()));
  return best;
}

}  // namespace oracle
