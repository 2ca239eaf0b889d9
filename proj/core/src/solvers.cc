#include "aptrp/solvers.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "aptrp/latency.h"
#include "aptrp/random.h"

namespace aptrp {
namespace {

constexpr double kImprovementTolerance = 1e-12;

std::vector<double> ProbsAlong(const AprioriInstance& instance,
                               std::span<const Vertex> order) {
  std::vector<double> q(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) q[i] = instance.prob(order[i]);
  return q;
}

// Greedy closest-unvisited ordering of 0..n-1 starting at `start`.
template <typename Distance>
std::vector<Vertex> GreedyOrder(int n, Vertex start, Distance&& dist) {
  std::vector<Vertex> order{start};
  std::vector<bool> visited(n, false);
  visited[start] = true;
  Vertex current = start;
  for (int step = 1; step < n; ++step) {
    Vertex best = -1;
    double best_dist = 0.0;
    for (Vertex v = 0; v < n; ++v) {
      if (visited[v]) continue;
      const double dv = dist(current, v);
      if (best < 0 || dv < best_dist) {
        best = v;
        best_dist = dv;
      }
    }
    visited[best] = true;
    order.push_back(best);
    current = best;
  }
  return order;
}

MasterTour NearestNeighborCopies(const ScaledInstance& scaled) {
  // Greedy over group representatives (copies of one group are at distance
  // zero, so the copy-level greedy visits them together).
  const int groups = scaled.group_count();
  const auto& d = scaled.base_metric();
  auto location = [&](int node) {
    return node == 0 ? d.root() : scaled.group(node - 1).vertex;
  };
  const auto nodes = GreedyOrder(groups + 1, 0, [&](int a, int b) {
    return d(location(a), location(b));
  });
  std::vector<int> group_order;
  for (std::size_t i = 1; i < nodes.size(); ++i) group_order.push_back(nodes[i] - 1);
  return scaled.ConsecutiveTour(group_order);
}

void ApplyMove(std::vector<Vertex>& tour, std::uint64_t move) {
  const auto m = static_cast<std::uint64_t>(tour.size());
  const std::uint64_t relocations = (m - 1) * (m - 2);
  if (move < relocations) {
    const auto from = static_cast<std::size_t>(1 + move / (m - 2));
    auto to = static_cast<std::size_t>(1 + move % (m - 2));
    if (to >= from) ++to;
    const Vertex v = tour[from];
    tour.erase(tour.begin() + static_cast<std::ptrdiff_t>(from));
    tour.insert(tour.begin() + static_cast<std::ptrdiff_t>(to), v);
    return;
  }
  // 2-opt: reverse positions [i, j] for the k-th pair 1 <= i < j <= m-1.
  std::uint64_t k = move - relocations;
  std::uint64_t i = 1;
  while (k >= m - 1 - i) {
    k -= m - 1 - i;
    ++i;
  }
  const std::uint64_t j = i + 1 + k;
  std::reverse(tour.begin() + static_cast<std::ptrdiff_t>(i),
               tour.begin() + static_cast<std::ptrdiff_t>(j + 1));
}

}  // namespace

const std::vector<SolverDescriptor>& AvailableSolvers() {
  static const std::vector<SolverDescriptor> solvers = {
      {"brute", 1.0, kDefaultOptLimit},
      {"nn", std::numeric_limits<double>::infinity(), 0},
      {"local", std::numeric_limits<double>::infinity(), 0},
  };
  return solvers;
}

const SolverDescriptor& FindSolver(std::string_view name) {
  for (const auto& s : AvailableSolvers()) {
    if (s.name == name) return s;
  }
  throw InputError("unknown solver '" + std::string(name) +
                   "' (expected brute, nn or local)");
}

MasterTour SolveUniform(const ScaledInstance& scaled,
                        const SolverDescriptor& solver, std::uint64_t seed,
                        std::int64_t budget) {
  if (solver.name == "brute") {
    return BruteForceOpt(scaled, solver.size_limit).tour;
  }
  MasterTour start = NearestNeighborCopies(scaled);
  if (solver.name == "nn") return start;
  if (solver.name == "local") {
    std::vector<Vertex> order(start.order().begin(), start.order().end());
    auto evaluate = [&scaled](std::span<const Vertex> tour) {
      return BlockElat(scaled.base_metric(), CompressRuns(scaled, tour)).value;
    };
    return MasterTour(ImproveTour(std::move(order), evaluate, seed, budget));
  }
  throw InputError("unknown solver '" + solver.name + "'");
}

UniformSolverFn MakeUniformSolver(const SolverDescriptor& solver,
                                  std::uint64_t seed, std::int64_t budget) {
  return [solver, seed, budget](const ScaledInstance& scaled) {
    return SolveUniform(scaled, solver, seed, budget);
  };
}

TourValue BruteForceOpt(const AprioriInstance& instance, int limit) {
  const int free_count = instance.size() - 1;
  if (free_count > limit) {
    throw SizeLimitError("brute-force optimum supports at most " +
                         std::to_string(limit) + " non-root vertices; got " +
                         std::to_string(free_count));
  }
  std::vector<Vertex> order{instance.root()};
  for (Vertex v = 0; v < instance.size(); ++v) {
    if (v != instance.root()) order.push_back(v);
  }
  std::vector<Vertex> best = order;
  double best_value = std::numeric_limits<double>::infinity();
  do {
    const auto q = ProbsAlong(instance, order);
    const double value = EdgeDecompositionElat(instance.metric(), order, q);
    if (value < best_value) {
      best_value = value;
      best = order;
    }
  } while (std::next_permutation(order.begin() + 1, order.end()));
  return {MasterTour(std::move(best)), best_value};
}

TourValue BruteForceOpt(const ScaledInstance& scaled, int limit) {
  const int groups = scaled.group_count();
  if (limit > 0 && groups > limit) {
    throw SizeLimitError("brute-force optimum supports at most " +
                         std::to_string(limit) + " groups; got " +
                         std::to_string(groups));
  }
  std::vector<int> order(groups);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> best = order;
  double best_value = std::numeric_limits<double>::infinity();
  BlockSequence blocks(groups + 1);
  blocks[0] = {scaled.base_metric().root(), 1, 1.0};
  do {
    for (int k = 0; k < groups; ++k) {
      const auto& g = scaled.group(order[k]);
      blocks[k + 1] = {g.vertex, g.size, scaled.p()};
    }
    const double value = BlockElat(scaled.base_metric(), blocks).value;
    if (value < best_value) {
      best_value = value;
      best = order;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return {scaled.ConsecutiveTour(best), best_value};
}

MasterTour NearestNeighbor(const AprioriInstance& instance) {
  const auto& d = instance.metric();
  return MasterTour(GreedyOrder(instance.size(), instance.root(),
                                [&d](Vertex a, Vertex b) { return d(a, b); }));
}

std::vector<Vertex> ImproveTour(std::vector<Vertex> start,
                                const TourEvaluator& evaluate,
                                std::uint64_t seed, std::int64_t budget,
                                SearchStats* stats) {
  double current = evaluate(start);
  if (stats) {
    stats->evaluations = 0;
    stats->trajectory = {current};
  }
  const auto m = static_cast<std::uint64_t>(start.size());
  if (m < 3 || budget <= 0) return start;
  const std::uint64_t move_count = (m - 1) * (m - 2) + (m - 1) * (m - 2) / 2;
  SplitMix64 rng(seed);
  std::uint64_t move = UniformIndex(rng, move_count);
  std::uint64_t since_improvement = 0;
  std::int64_t evaluations = 0;
  std::vector<Vertex> candidate;
  while (evaluations < budget && since_improvement < move_count) {
    candidate = start;
    ApplyMove(candidate, move);
    const double value = evaluate(candidate);
    ++evaluations;
    if (value < current - kImprovementTolerance * (1.0 + std::abs(current))) {
      start.swap(candidate);
      current = value;
      since_improvement = 0;
      if (stats) stats->trajectory.push_back(current);
    } else {
      ++since_improvement;
    }
    move = (move + 1) % move_count;
  }
  if (stats) stats->evaluations = evaluations;
  return start;
}

MasterTour LocalSearch(const AprioriInstance& instance, std::uint64_t seed,
                       std::int64_t budget, SearchStats* stats) {
  const MasterTour start = NearestNeighbor(instance);
  auto evaluate = [&instance](std::span<const Vertex> tour) {
    return EdgeDecompositionElat(instance.metric(), tour,
                                 ProbsAlong(instance, tour));
  };
  std::vector<Vertex> order(start.order().begin(), start.order().end());
  return MasterTour(ImproveTour(std::move(order), evaluate, seed, budget, stats));
}

}  // namespace aptrp
