#pragma once

// Expected-latency evaluation for a master tour under independent
// activations: an O(n^2) edge-decomposition formula, a subset-enumeration
// oracle, a seeded Monte Carlo estimator, and an evaluator over runs of
// co-located copies.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "aptrp/metric.h"

namespace aptrp {

enum class EstimateMethod { kExact, kBrute, kMonteCarlo, kBlock };

std::string_view ToString(EstimateMethod method);

struct LatencyEstimate {
  double value = 0.0;
  double standard_error = 0.0;  // zero for the exact methods
  EstimateMethod method = EstimateMethod::kExact;
  std::int64_t samples = 0;     // Monte Carlo only
};

// Expected total latency of `order` (root first) when order[i] is active with
// probability prob[i]; position 0 is always active. Uses
//   sum_{i<j} d(i,j) q_i q_j prod_{i<k<j}(1-q_k) (1 + sum_{l>j} q_l).
double EdgeDecompositionElat(const Metric& metric,
                             std::span<const Vertex> order,
                             std::span<const double> prob_in_order);

LatencyEstimate ExactElat(const AprioriInstance& instance,
                          const MasterTour& tour);

inline constexpr int kDefaultBruteForceLimit = 15;

// Sums realized latency over all 2^(n-1) active sets. Throws SizeLimitError
// when the instance has more than `limit` non-root vertices.
LatencyEstimate BruteForceElat(const AprioriInstance& instance,
                               const MasterTour& tour,
                               int limit = kDefaultBruteForceLimit);

// Mean and standard error over `samples` independent active sets. Sample i
// draws from its own stream seeded by DeriveSeed(seed, i), so the result does
// not depend on `threads`.
LatencyEstimate MonteCarloElat(const AprioriInstance& instance,
                               const MasterTour& tour, std::int64_t samples,
                               std::uint64_t seed, int threads = 1);

// A run of `size` co-located copies at vertex `rep`, each active with
// probability `p`.
struct Block {
  Vertex rep = 0;
  std::int64_t size = 1;
  double p = 0.0;
};

// Blocks in tour order. The first block is the root (rep == metric root,
// size 1) and is always active.
using BlockSequence = std::vector<Block>;

// Exact expected latency of the flattened copy tour, in O(b^2) for b blocks.
// Throws InputError for a malformed sequence.
LatencyEstimate BlockElat(const Metric& reps, std::span<const Block> blocks);

// 1 - (1-p)^k, accurate for small p.
double HitProbability(double p, std::int64_t k);

}  // namespace aptrp
