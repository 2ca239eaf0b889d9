#pragma once

// Data model for a priori latency problems: a finite metric with a root,
// independent activation probabilities, master tours and active sets.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace aptrp {

using Vertex = int;

// Malformed or inconsistent input (bad matrix, bad tour, schema errors).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An exhaustive routine was asked to handle an instance beyond its limit.
class SizeLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Describes every way `dist` fails to be a metric: ragged or non-square rows,
// negative or non-finite entries, a non-zero diagonal, asymmetry, and (unless
// disabled) triangle-inequality violations. Comparisons use a relative
// tolerance of `tolerance * (1 + |rhs|)`. An empty result means valid.
std::vector<std::string> ValidateMetric(
    const std::vector<std::vector<double>>& dist, bool check_triangle = true,
    double tolerance = 1e-9);

class Metric {
 public:
  // Throws InputError carrying all violations found by ValidateMetric.
  static Metric FromMatrix(const std::vector<std::vector<double>>& dist,
                           Vertex root = 0, bool check_triangle = true);

  int size() const { return n_; }
  Vertex root() const { return root_; }

  double operator()(Vertex a, Vertex b) const {
    return dist_[static_cast<std::size_t>(a) * n_ + b];
  }

  std::vector<std::vector<double>> ToMatrix() const;

  friend bool operator==(const Metric&, const Metric&) = default;

 private:
  Metric(int n, Vertex root, std::vector<double> dist)
      : n_(n), root_(root), dist_(std::move(dist)) {}

  int n_ = 0;
  Vertex root_ = 0;
  std::vector<double> dist_;
};

// A metric plus independent activation probabilities. The root is always
// active: a root probability other than 1 is replaced by 1 and the override
// is reported through root_probability_overridden().
class AprioriInstance {
 public:
  AprioriInstance(Metric metric, std::vector<double> prob);

  const Metric& metric() const { return metric_; }
  int size() const { return metric_.size(); }
  Vertex root() const { return metric_.root(); }
  double prob(Vertex v) const { return prob_[v]; }
  std::span<const double> probs() const { return prob_; }
  bool root_probability_overridden() const { return root_overridden_; }

  // Same metric, different probabilities (root is re-normalized).
  AprioriInstance WithProbabilities(std::vector<double> prob) const;

  friend bool operator==(const AprioriInstance& a, const AprioriInstance& b) {
    return a.metric_ == b.metric_ && a.prob_ == b.prob_;
  }

 private:
  Metric metric_;
  std::vector<double> prob_;
  bool root_overridden_ = false;
};

// Permutation of all vertices 0..n-1; the first entry is the root.
class MasterTour {
 public:
  explicit MasterTour(std::vector<Vertex> order);

  int size() const { return static_cast<int>(order_.size()); }
  Vertex root() const { return order_.front(); }
  Vertex operator[](int i) const { return order_[i]; }
  std::span<const Vertex> order() const { return order_; }

  // position[v] = index of v in the tour.
  std::vector<int> Positions() const;

  friend bool operator==(const MasterTour&, const MasterTour&) = default;

 private:
  std::vector<Vertex> order_;
};

// Subset of vertices that always contains the root.
class ActiveSet {
 public:
  static ActiveSet FromMembers(int n, Vertex root,
                               std::span<const Vertex> members);
  static ActiveSet FromMask(std::vector<bool> mask, Vertex root);

  int universe_size() const { return static_cast<int>(mask_.size()); }
  bool contains(Vertex v) const { return mask_[v]; }
  std::vector<Vertex> members() const;
  const std::vector<bool>& mask() const { return mask_; }

 private:
  explicit ActiveSet(std::vector<bool> mask) : mask_(std::move(mask)) {}
  std::vector<bool> mask_;
};

// Active vertices in tour order (root first).
std::vector<Vertex> Shortcut(const MasterTour& tour, const ActiveSet& active);

struct RealizedLatency {
  // (vertex, arrival time) for every active non-root vertex, in visit order.
  std::vector<std::pair<Vertex, double>> per_vertex;
  double total = 0.0;
};

RealizedLatency ComputeRealizedLatency(const Metric& metric,
                                       const MasterTour& tour,
                                       const ActiveSet& active);

// Total latency of the active positions of `order` (a vertex sequence over
// `metric`, root first). `active_at(i)` reports whether order[i] is active;
// position 0 is treated as active regardless.
template <typename ActiveAt>
double TotalLatencyAlong(const Metric& metric, std::span<const Vertex> order,
                         ActiveAt&& active_at) {
  double clock = 0.0;
  double total = 0.0;
  Vertex last = order.front();
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (!active_at(i)) continue;
    clock += metric(last, order[i]);
    total += clock;
    last = order[i];
  }
  return total;
}

struct RestrictedInstance {
  AprioriInstance instance;
  // original[i] is the vertex of the parent instance that became vertex i.
  std::vector<Vertex> original;
};

// Induced sub-instance on `subset` (duplicates ignored, sorted by original
// index). Throws InputError if the root is missing or an index is invalid.
RestrictedInstance RestrictInstance(const AprioriInstance& instance,
                                    std::span<const Vertex> subset);

}  // namespace aptrp
