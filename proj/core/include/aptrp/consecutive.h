#pragma once

// Repairing copy tours so that every group of co-located copies is visited
// contiguously without increasing expected latency, plus the per-merge
// quantities used to audit each repair step.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "aptrp/metric.h"
#include "aptrp/scaled_instance.h"

namespace aptrp {

// Positions [begin, begin + length) of a tour.
struct Run {
  std::size_t begin = 0;
  std::size_t length = 0;
  std::size_t end() const { return begin + length; }
  friend bool operator==(const Run&, const Run&) = default;
};

// Maximal runs of `group` members along `tour`, in tour order. Empty when no
// member occurs in the tour.
std::vector<Run> FindRuns(std::span<const Vertex> tour,
                          std::span<const Vertex> group);

enum class RelocateMode {
  kAfterFirst,    // move the second part right after the first
  kBeforeSecond,  // move the first part right before the second
};

// Throws InputError when the runs overlap, are out of range, or `first` does
// not precede `second`.
std::vector<Vertex> Relocate(std::span<const Vertex> tour, Run first,
                             Run second, RelocateMode mode);

struct MergeStep {
  int group = 0;
  std::int64_t first_size = 0;   // k_i
  std::int64_t second_size = 0;  // k_j
  double before = 0.0;
  double after_first = 0.0;   // ELAT of the kAfterFirst candidate
  double after_second = 0.0;  // ELAT of the kBeforeSecond candidate
  RelocateMode chosen = RelocateMode::kAfterFirst;
  // Filled only when tours are traced.
  std::vector<Vertex> tour_before;
  std::vector<Vertex> tour_after_first;
  std::vector<Vertex> tour_after_second;
};

struct ConsecutiveResult {
  MasterTour tour;
  std::vector<MergeStep> merges;
};

// Merges split groups one pair of parts at a time, keeping whichever of the
// two relocations has the lower exact expected latency (ties and values
// within 1e-12 relative keep the earlier position). Groups are processed in
// index order, always merging their first two parts.
ConsecutiveResult MakeConsecutive(const ScaledInstance& scaled,
                                  const MasterTour& copy_tour,
                                  bool trace_tours = false);

// (1 - (1-p)^k_i) / (1 - (1-p)^(k_i + k_j)). Throws InputError for p <= 0.
double LambdaValue(double p, std::int64_t k_first, std::int64_t k_second);

struct LambdaCheck {
  double lambda = 0.0;
  // Each slack is rhs - lhs of one required inequality.
  double slack_alpha_first = 0.0;   // lambda <= a_i / (a_i + a_j - a_i a_j)
  double slack_alpha_second = 0.0;  // 1 - lambda <= a_j / (a_i + a_j - a_i a_j)
  double slack_sizes = 0.0;         // 1 - lambda <= k_j / (k_i + k_j)
  double union_residual = 0.0;      // |f(k_i+k_j) - (f_i + f_j - f_i f_j)|
  bool ratio_decreasing = false;    // f(k)/k non-increasing on [1, k_i+k_j]
  bool holds = false;
};

LambdaCheck CheckLambda(double p, std::int64_t k_first, std::int64_t k_second,
                        double tolerance = 1e-12);

enum class VertexClass { kBefore, kBetween, kAfter, kFirstPart, kSecondPart };
enum class TourVariant { kOriginal, kAfterFirst, kBeforeSecond };

// Scalars describing one conditioning set B around two parts of a group.
struct TableRow {
  std::vector<Vertex> before;   // B1
  std::vector<Vertex> between;  // B2
  std::vector<Vertex> after;    // B3
  std::int64_t first_size = 0;   // k_i
  std::int64_t second_size = 0;  // k_j
  double first_arrival = 0.0;    // T_i
  double second_arrival = 0.0;   // T_j
  double first_detour = 0.0;     // Delta_i
  double second_detour = 0.0;    // Delta_j (0 when B3 is empty)
  double first_hit = 0.0;        // alpha_i
  double second_hit = 0.0;       // alpha_j
  double p = 0.0;
};

struct TablePrediction {
  Vertex vertex = 0;
  VertexClass cls = VertexClass::kBefore;
  double base = 0.0;  // l_w (T_i / T_j for part members)
  // Indexed by TourVariant.
  std::array<double, 3> expected{};
};

struct TablePredictions {
  TableRow row;
  std::vector<TablePrediction> entries;  // B1, B2, B3, then both parts
};

// Closed-form conditional expected latencies for every vertex of B and of the
// two parts, under the tour and both relocations. `tour` is a vertex sequence
// over `metric` starting at the root; `first`/`second` are disjoint runs of
// mutually co-located vertices; `conditioning` (B) is the active set outside
// the parts. When no B vertex lies between the parts all three tours agree on
// B and the parts, and the relocated-tour formulas are reported for every
// variant.
TablePredictions PredictTable(const Metric& metric,
                              std::span<const Vertex> tour,
                              std::span<const Vertex> conditioning, Run first,
                              Run second, double p);

inline constexpr int kConditionalEnumerationLimit = 20;

// sum over C subset of U of p^|C| (1-p)^|U\C| * latency of w in `tour` when
// B + C (and the root) is active; 0 when w is not active.
double ConditionalExpectedLatency(const Metric& metric,
                                  std::span<const Vertex> tour,
                                  std::span<const Vertex> conditioning,
                                  std::span<const Vertex> uncertain, double p,
                                  Vertex w);

}  // namespace aptrp
