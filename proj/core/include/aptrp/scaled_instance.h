#pragma once

// Building blocks of the non-uniform to uniform reduction: the split into
// normal (X) and low-probability (Y) vertices, the uniform copy probability,
// and the scaled instance in which every X vertex becomes a group of
// co-located copies.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "aptrp/latency.h"
#include "aptrp/metric.h"

namespace aptrp {

// X holds vertices with p_v >= 1/n^2 (plus the root), Y the rest; both sorted.
struct Partition {
  std::vector<Vertex> x;
  std::vector<Vertex> y;
};

// 1/n^2 with n = |V| (root included).
double LowProbabilityThreshold(int n);

Partition PartitionXY(const AprioriInstance& instance);

struct VertexScaling {
  Vertex vertex = 0;
  double prob = 0.0;        // p_v
  std::int64_t copies = 0;  // t_v = ceil(p_v / p)
  double hit_prob = 0.0;    // q_v = 1 - (1-p)^t_v
  double upper_prob = 0.0;  // min{(1 + 1/n) p_v, 1}
};

struct ScalingParams {
  int n = 0;
  double p = 0.0;  // (1/n) * min over X \ {root} of p_v
  std::vector<VertexScaling> vertices;  // X \ {root}, ascending vertex order
};

// X \ {root} is empty, so there is nothing to hand to a uniform solver.
class DegenerateReductionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ScalingParams ComputeScalingParams(const AprioriInstance& instance,
                                   const Partition& partition);

// ceil(x) that ignores an overshoot of up to 1e-9 above an integer.
std::int64_t SlackCeil(double x);

inline constexpr std::int64_t kDefaultCopyCap = 20000;

// Uniform instance over copies. Copy 0 is the root; group g owns a contiguous
// range of copy ids. Distances are served through the original metric and
// never materialized.
class ScaledInstance {
 public:
  struct Group {
    Vertex vertex = 0;  // original vertex
    int first_copy = 0;
    int size = 0;
  };

  // Throws SizeLimitError if the total number of copies exceeds `cap`.
  static ScaledInstance Build(const AprioriInstance& instance,
                              const ScalingParams& params,
                              std::int64_t cap = kDefaultCopyCap);

  // Groups of `sizes[g]` copies of `vertices[g]`, each active with
  // probability `p`. `vertices` must be distinct non-root vertices.
  static ScaledInstance FromGroups(Metric metric,
                                   std::span<const Vertex> vertices,
                                   std::span<const int> sizes, double p,
                                   std::int64_t cap = kDefaultCopyCap);

  double p() const { return p_; }
  int copy_count() const { return static_cast<int>(owner_group_.size()); }
  int group_count() const { return static_cast<int>(groups_.size()); }
  const std::vector<Group>& groups() const { return groups_; }
  const Group& group(int g) const { return groups_[g]; }
  const Metric& base_metric() const { return metric_; }

  // -1 for the root copy.
  int group_of(int copy) const { return owner_group_[copy]; }
  Vertex owner(int copy) const {
    const int g = owner_group_[copy];
    return g < 0 ? metric_.root() : groups_[g].vertex;
  }
  std::vector<int> copies_of(int g) const;

  double distance(int a, int b) const { return metric_(owner(a), owner(b)); }

  // Tour visiting the groups in `group_order`, each contiguously.
  MasterTour ConsecutiveTour(std::span<const int> group_order) const;

  // Materialized instance over copies. Throws SizeLimitError above `limit`
  // copies.
  AprioriInstance Flatten(int limit = 64) const;

 private:
  explicit ScaledInstance(Metric metric) : metric_(std::move(metric)) {}

  Metric metric_;
  double p_ = 0.0;
  std::vector<Group> groups_;
  std::vector<int> owner_group_;
};

// Runs of equal owner along a copy tour, as blocks over the original metric.
BlockSequence CompressRuns(const ScaledInstance& scaled,
                           std::span<const Vertex> copy_tour);

// Exact expected latency of a copy tour via BlockElat over its maximal runs
// of co-located copies.
LatencyEstimate ScaledTourElat(const ScaledInstance& scaled,
                               const MasterTour& copy_tour);

// True when every group occupies one contiguous stretch of the tour.
bool IsConsecutive(const ScaledInstance& scaled, const MasterTour& copy_tour);

// Original X vertices (root first) in the order their groups are visited.
// Throws InputError unless the tour is consecutive.
std::vector<Vertex> CollapseTour(const ScaledInstance& scaled,
                                 const MasterTour& copy_tour);

// `y` sorted by distance from the root, ties by vertex index.
std::vector<Vertex> YTail(const AprioriInstance& instance,
                          std::span<const Vertex> y);

}  // namespace aptrp
