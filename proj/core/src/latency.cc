#include "aptrp/latency.h"

#include <cmath>
#include <string>
#include <thread>

#include "aptrp/random.h"

namespace aptrp {
namespace {

void CheckTourMatches(const AprioriInstance& instance, const MasterTour& tour) {
  if (tour.size() != instance.size()) {
    throw InputError("tour has " + std::to_string(tour.size()) +
                     " vertices but the instance has " +
                     std::to_string(instance.size()));
  }
  if (tour.root() != instance.root()) {
    throw InputError("tour does not start at the instance root");
  }
}

std::vector<double> ProbInTourOrder(const AprioriInstance& instance,
                                    const MasterTour& tour) {
  std::vector<double> q(tour.size());
  for (int i = 0; i < tour.size(); ++i) q[i] = instance.prob(tour[i]);
  q[0] = 1.0;
  return q;
}

}  // namespace

std::string_view ToString(EstimateMethod method) {
  switch (method) {
    case EstimateMethod::kExact: return "exact";
    case EstimateMethod::kBrute: return "brute";
    case EstimateMethod::kMonteCarlo: return "mc";
    case EstimateMethod::kBlock: return "block";
  }
  return "unknown";
}

double HitProbability(double p, std::int64_t k) {
  if (p >= 1.0) return k > 0 ? 1.0 : 0.0;
  return -std::expm1(static_cast<double>(k) * std::log1p(-p));
}

double EdgeDecompositionElat(const Metric& metric,
                             std::span<const Vertex> order,
                             std::span<const double> prob_in_order) {
  const std::size_t n = order.size();
  // suffix[j] = sum_{l >= j} q_l
  std::vector<double> suffix(n + 1, 0.0);
  for (std::size_t j = n; j-- > 0;) suffix[j] = suffix[j + 1] + prob_in_order[j];

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double qi = i == 0 ? 1.0 : prob_in_order[i];
    if (qi == 0.0) continue;
    // gap = prod_{i<k<j} (1 - q_k); once it hits zero no later edge from i
    // can be used.
    double gap = 1.0;
    for (std::size_t j = i + 1; j < n && gap > 0.0; ++j) {
      const double qj = prob_in_order[j];
      if (qj > 0.0) {
        total += metric(order[i], order[j]) * qi * qj * gap *
                 (1.0 + suffix[j + 1]);
      }
      gap *= 1.0 - qj;
    }
  }
  return total;
}

LatencyEstimate ExactElat(const AprioriInstance& instance,
                          const MasterTour& tour) {
  CheckTourMatches(instance, tour);
  const auto q = ProbInTourOrder(instance, tour);
  return {EdgeDecompositionElat(instance.metric(), tour.order(), q), 0.0,
          EstimateMethod::kExact, 0};
}

LatencyEstimate BruteForceElat(const AprioriInstance& instance,
                               const MasterTour& tour, int limit) {
  CheckTourMatches(instance, tour);
  const int free_count = tour.size() - 1;
  if (free_count > limit || free_count > 30) {
    throw SizeLimitError("brute-force evaluation supports at most " +
                         std::to_string(limit) + " non-root vertices; got " +
                         std::to_string(free_count));
  }
  const auto q = ProbInTourOrder(instance, tour);
  const auto order = tour.order();
  const std::uint64_t scenarios = std::uint64_t{1} << free_count;
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < scenarios; ++mask) {
    // Bit b of mask is tour position b+1.
    double weight = 1.0;
    for (int b = 0; b < free_count && weight > 0.0; ++b) {
      weight *= (mask >> b) & 1 ? q[b + 1] : 1.0 - q[b + 1];
    }
    if (weight == 0.0) continue;
    total += weight * TotalLatencyAlong(instance.metric(), order,
                                        [mask](std::size_t i) {
                                          return ((mask >> (i - 1)) & 1) != 0;
                                        });
  }
  return {total, 0.0, EstimateMethod::kBrute, 0};
}

LatencyEstimate MonteCarloElat(const AprioriInstance& instance,
                               const MasterTour& tour, std::int64_t samples,
                               std::uint64_t seed, int threads) {
  CheckTourMatches(instance, tour);
  if (samples < 2) throw InputError("Monte Carlo needs at least 2 samples");
  const auto q = ProbInTourOrder(instance, tour);
  const auto order = tour.order();
  std::vector<double> values(static_cast<std::size_t>(samples));

  auto run_range = [&](std::int64_t begin, std::int64_t end) {
    std::vector<char> active(order.size(), 0);
    for (std::int64_t s = begin; s < end; ++s) {
      SplitMix64 stream(DeriveSeed(seed, static_cast<std::uint64_t>(s)));
      for (std::size_t i = 1; i < order.size(); ++i) {
        active[i] = UniformUnit(stream) < q[i];
      }
      values[s] = TotalLatencyAlong(instance.metric(), order,
                                    [&active](std::size_t i) { return active[i] != 0; });
    }
  };

  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(samples)));
  if (workers == 1) {
    run_range(0, samples);
  } else {
    std::vector<std::jthread> pool;
    const std::int64_t chunk = (samples + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const std::int64_t begin = w * chunk;
      const std::int64_t end = std::min(samples, begin + chunk);
      if (begin < end) pool.emplace_back(run_range, begin, end);
    }
  }

  // Reductions run in sample order so the result is schedule-independent.
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(samples);
  double sq = 0.0;
  for (double v : values) sq += (v - mean) * (v - mean);
  const double variance = sq / static_cast<double>(samples - 1);
  return {mean, std::sqrt(variance / static_cast<double>(samples)),
          EstimateMethod::kMonteCarlo, samples};
}

LatencyEstimate BlockElat(const Metric& reps, std::span<const Block> blocks) {
  if (blocks.empty()) throw InputError("block sequence is empty");
  if (blocks.front().rep != reps.root() || blocks.front().size != 1) {
    throw InputError("first block must be the size-1 root block");
  }
  const std::size_t b = blocks.size();
  std::vector<double> hit(b);
  std::vector<double> mean_active(b);  // expected active copies in block
  for (std::size_t k = 0; k < b; ++k) {
    const Block& block = blocks[k];
    if (block.size <= 0) {
      throw InputError("block " + std::to_string(k) +
                       " has non-positive size " + std::to_string(block.size));
    }
    if (block.rep < 0 || block.rep >= reps.size()) {
      throw InputError("block " + std::to_string(k) +
                       " refers to an unknown representative");
    }
    if (!(block.p >= 0.0 && block.p <= 1.0)) {
      throw InputError("block " + std::to_string(k) +
                       " probability outside [0,1]");
    }
    hit[k] = k == 0 ? 1.0 : HitProbability(block.p, block.size);
    mean_active[k] = k == 0 ? 0.0 : static_cast<double>(block.size) * block.p;
  }
  std::vector<double> suffix(b + 1, 0.0);
  for (std::size_t k = b; k-- > 1;) suffix[k] = suffix[k + 1] + mean_active[k];

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < b; ++i) {
    if (hit[i] == 0.0) continue;
    double gap = 1.0;
    for (std::size_t j = i + 1; j < b && gap > 0.0; ++j) {
      if (hit[j] > 0.0) {
        // Active copies at or after block j, given block j is reached.
        const double weight = mean_active[j] / hit[j] + suffix[j + 1];
        total += reps(blocks[i].rep, blocks[j].rep) * hit[i] * hit[j] * gap *
                 weight;
      }
      gap *= 1.0 - hit[j];
    }
  }
  return {total, 0.0, EstimateMethod::kBlock, 0};
}

}  // namespace aptrp
