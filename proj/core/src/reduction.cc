#include "aptrp/reduction.h"

#include <cmath>
#include <exception>
#include <string>

#include "aptrp/latency.h"

namespace aptrp {

double EOverEMinusOne() {
  const double e = std::exp(1.0);
  return e / (e - 1.0);
}

double ApproximationBound(int n, double rho) {
  return std::pow(EOverEMinusOne(), 4) * std::pow(1.0 + 1.0 / n, 7) * rho;
}

double OptimumComparisonFactor(int n) {
  return EOverEMinusOne() * std::pow(1.0 + 1.0 / n, 4);
}

double CollapseComparisonFactor(int n) {
  return std::pow(EOverEMinusOne(), 3) * std::pow(1.0 + 1.0 / n, 3);
}

double SubsequenceElat(const AprioriInstance& instance,
                       std::span<const Vertex> order) {
  if (order.empty() || order.front() != instance.root()) {
    throw InputError("subsequence must start at the root");
  }
  std::vector<double> q(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i] < 0 || order[i] >= instance.size()) {
      throw InputError("subsequence vertex out of range");
    }
    q[i] = instance.prob(order[i]);
  }
  return EdgeDecompositionElat(instance.metric(), order, q);
}

ReductionResult AprioriSolve(const AprioriInstance& instance,
                             const UniformSolverFn& solver,
                             const ReductionConfig& config) {
  ReductionArtifacts art;
  art.partition = PartitionXY(instance);
  art.y_order = YTail(instance, art.partition.y);

  if (art.partition.x.size() <= 1) {
    art.x_order = {instance.root()};
  } else {
    art.params = ComputeScalingParams(instance, art.partition);
    art.scaled = ScaledInstance::Build(instance, *art.params, config.copy_cap);
    const ScaledInstance& scaled = *art.scaled;

    std::optional<MasterTour> uniform;
    try {
      uniform = solver(scaled);
    } catch (const std::exception& e) {
      std::throw_with_nested(SolverError(
          "uniform solver failed on a scaled instance with " +
          std::to_string(scaled.copy_count()) + " copies: " + e.what()));
    }
    if (uniform->size() != scaled.copy_count() || uniform->root() != 0) {
      throw SolverError("uniform solver returned a tour over " +
                        std::to_string(uniform->size()) +
                        " vertices; expected " +
                        std::to_string(scaled.copy_count()) +
                        " copies starting at the root copy");
    }
    art.uniform_tour = uniform;
    auto repaired = MakeConsecutive(scaled, *uniform);
    art.merges = std::move(repaired.merges);
    art.consecutive_tour = repaired.tour;
    art.x_order = CollapseTour(scaled, repaired.tour);
  }

  art.final_order = art.x_order;
  art.final_order.insert(art.final_order.end(), art.y_order.begin(),
                         art.y_order.end());
  MasterTour tour(art.final_order);
  return {std::move(tour), std::move(art)};
}

YTailAudit AuditYTail(const AprioriInstance& instance, const MasterTour& tour,
                      const Partition& partition, int limit) {
  if (tour.size() != instance.size() || tour.root() != instance.root()) {
    throw InputError("tour does not match the instance");
  }
  const int n = instance.size();
  std::vector<char> is_y(n, 0);
  for (Vertex v : partition.y) is_y[v] = 1;
  bool seen_y = false;
  for (Vertex v : tour.order()) {
    if (is_y[v]) {
      seen_y = true;
    } else if (seen_y) {
      throw InputError("tour visits a Y vertex before an X vertex");
    }
  }
  const int free_count = n - 1;
  if (free_count > limit) {
    throw SizeLimitError("Y-tail audit supports at most " +
                         std::to_string(limit) + " non-root vertices");
  }

  YTailAudit audit;
  const auto& d = instance.metric();
  const Vertex root = instance.root();
  for (Vertex v : partition.y) {
    audit.y_distance_term += instance.prob(v) * d(root, v);
  }
  const auto order = tour.order();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free_count); ++mask) {
    double weight = 1.0;
    for (int b = 0; b < free_count; ++b) {
      const double p = instance.prob(order[b + 1]);
      weight *= (mask >> b) & 1 ? p : 1.0 - p;
    }
    if (weight == 0.0) continue;
    double clock = 0.0;
    double x_sum = 0.0;
    double y_sum = 0.0;
    double prefix = 0.0;
    Vertex last = root;
    for (int i = 1; i < n; ++i) {
      if (!((mask >> (i - 1)) & 1)) continue;
      const Vertex v = order[i];
      clock += d(last, v);
      last = v;
      if (is_y[v]) {
        y_sum += clock;
      } else {
        x_sum += clock;
        prefix = clock;
      }
    }
    audit.x_part += weight * x_sum;
    audit.y_part += weight * y_sum;
    audit.prefix_length += weight * prefix;
    audit.total += weight * (x_sum + y_sum);
  }
  audit.bound = audit.prefix_length / n +
                (1.0 + 2.0 / n) * audit.y_distance_term;
  return audit;
}

}  // namespace aptrp
