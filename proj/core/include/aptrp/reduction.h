#pragma once

// End-to-end reduction from non-uniform to uniform activation probabilities:
// split off low-probability vertices, solve a scaled uniform instance with a
// pluggable solver, repair the result to be consecutive, collapse it back to
// the original vertices, and append the low-probability tail.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "aptrp/consecutive.h"
#include "aptrp/metric.h"
#include "aptrp/scaled_instance.h"

namespace aptrp {

// Any algorithm for the uniform-probability problem; returns a tour over the
// copies of the scaled instance (root copy first). Need not be consecutive.
using UniformSolverFn = std::function<MasterTour(const ScaledInstance&)>;

// The plugged-in uniform solver threw; the original exception is nested.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ReductionConfig {
  std::int64_t copy_cap = kDefaultCopyCap;
};

struct ReductionArtifacts {
  Partition partition;
  std::optional<ScalingParams> params;    // absent when X = {root}
  std::optional<ScaledInstance> scaled;
  std::optional<MasterTour> uniform_tour;  // solver output
  std::optional<MasterTour> consecutive_tour;
  std::vector<MergeStep> merges;
  std::vector<Vertex> x_order;  // collapsed tour over X, root first
  std::vector<Vertex> y_order;  // Y sorted by distance from the root
  std::vector<Vertex> final_order;
};

struct ReductionResult {
  MasterTour tour;
  ReductionArtifacts artifacts;
};

ReductionResult AprioriSolve(const AprioriInstance& instance,
                             const UniformSolverFn& solver,
                             const ReductionConfig& config = {});

// e / (e - 1)
double EOverEMinusOne();

// (e/(e-1))^4 (1+1/n)^7 rho: certified ratio of the reduction.
double ApproximationBound(int n, double rho);
// (e/(e-1)) (1+1/n)^4: optimum of the scaled instance vs the original.
double OptimumComparisonFactor(int n);
// (e/(e-1))^3 (1+1/n)^3: collapsed tour vs its consecutive copy tour.
double CollapseComparisonFactor(int n);

// Exact expected latency of a root-first vertex subsequence, i.e. the tour
// on the instance restricted to those vertices.
double SubsequenceElat(const AprioriInstance& instance,
                       std::span<const Vertex> order);

// Brute-force decomposition of a tour that visits all of X before any Y
// vertex. Every expectation is a sum over all active sets.
struct YTailAudit {
  double total = 0.0;           // ELAT of the whole tour
  double x_part = 0.0;          // E[sum of X latencies]
  double y_part = 0.0;          // E[sum of Y latencies]
  double prefix_length = 0.0;   // E[L], L = arrival at the last active X vertex
  double y_distance_term = 0.0; // sum over Y of p_v d(r, v)
  double bound = 0.0;           // (1/n) E[L] + (1 + 2/n) y_distance_term
};

// Throws InputError if some Y vertex precedes an X vertex, SizeLimitError
// above `limit` non-root vertices.
YTailAudit AuditYTail(const AprioriInstance& instance, const MasterTour& tour,
                      const Partition& partition, int limit = 15);

}  // namespace aptrp
