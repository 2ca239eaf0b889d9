#include "aptrp/scaled_instance.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace aptrp {

double LowProbabilityThreshold(int n) {
  return 1.0 / (static_cast<double>(n) * static_cast<double>(n));
}

Partition PartitionXY(const AprioriInstance& instance) {
  const double threshold = LowProbabilityThreshold(instance.size());
  Partition out;
  for (Vertex v = 0; v < instance.size(); ++v) {
    if (v == instance.root() || instance.prob(v) >= threshold) {
      out.x.push_back(v);
    } else {
      out.y.push_back(v);
    }
  }
  return out;
}

std::int64_t SlackCeil(double x) {
  return static_cast<std::int64_t>(std::ceil(x - 1e-9));
}

ScalingParams ComputeScalingParams(const AprioriInstance& instance,
                                   const Partition& partition) {
  ScalingParams params;
  params.n = instance.size();
  double min_prob = 1.0;
  bool any = false;
  for (Vertex v : partition.x) {
    if (v == instance.root()) continue;
    min_prob = std::min(min_prob, instance.prob(v));
    any = true;
  }
  if (!any) {
    throw DegenerateReductionError(
        "no non-root vertex has probability >= 1/n^2; nothing to scale");
  }
  const double n = params.n;
  params.p = min_prob / n;
  for (Vertex v : partition.x) {
    if (v == instance.root()) continue;
    VertexScaling s;
    s.vertex = v;
    s.prob = instance.prob(v);
    // p_v / p == n * p_v / min_prob; the slack keeps exact multiples exact.
    s.copies = std::max<std::int64_t>(1, SlackCeil(n * s.prob / min_prob));
    s.hit_prob = HitProbability(params.p, s.copies);
    s.upper_prob = std::min((1.0 + 1.0 / n) * s.prob, 1.0);
    params.vertices.push_back(s);
  }
  return params;
}

ScaledInstance ScaledInstance::Build(const AprioriInstance& instance,
                                     const ScalingParams& params,
                                     std::int64_t cap) {
  std::int64_t total = 0;
  for (const auto& s : params.vertices) total += s.copies;
  if (total > cap) {
    throw SizeLimitError("scaled instance needs sum t_v = " +
                         std::to_string(total) + " copies, above the cap of " +
                         std::to_string(cap));
  }
  std::vector<Vertex> vertices;
  std::vector<int> sizes;
  for (const auto& s : params.vertices) {
    vertices.push_back(s.vertex);
    sizes.push_back(static_cast<int>(s.copies));
  }
  return FromGroups(instance.metric(), vertices, sizes, params.p, cap);
}

ScaledInstance ScaledInstance::FromGroups(Metric metric,
                                          std::span<const Vertex> vertices,
                                          std::span<const int> sizes, double p,
                                          std::int64_t cap) {
  if (vertices.size() != sizes.size()) {
    throw InputError("group vertices and sizes differ in length");
  }
  if (!(p > 0.0 && p <= 1.0)) {
    throw InputError("uniform copy probability must lie in (0,1]");
  }
  std::int64_t total = 0;
  for (int s : sizes) {
    if (s <= 0) throw InputError("group sizes must be positive");
    total += s;
  }
  if (total > cap) {
    throw SizeLimitError("scaled instance needs " + std::to_string(total) +
                         " copies, above the cap of " + std::to_string(cap));
  }
  const int root = metric.root();
  const int n = metric.size();
  ScaledInstance out(std::move(metric));
  out.p_ = p;
  out.owner_group_.assign(1, -1);
  std::vector<bool> used(n, false);
  for (std::size_t g = 0; g < vertices.size(); ++g) {
    const Vertex v = vertices[g];
    if (v < 0 || v >= n || v == root || used[v]) {
      throw InputError("group vertex " + std::to_string(v) +
                       " is invalid, the root, or repeated");
    }
    used[v] = true;
    out.groups_.push_back({v, out.copy_count(), sizes[g]});
    out.owner_group_.insert(out.owner_group_.end(), sizes[g],
                            static_cast<int>(g));
  }
  return out;
}

std::vector<int> ScaledInstance::copies_of(int g) const {
  std::vector<int> out(groups_[g].size);
  std::iota(out.begin(), out.end(), groups_[g].first_copy);
  return out;
}

MasterTour ScaledInstance::ConsecutiveTour(
    std::span<const int> group_order) const {
  std::vector<Vertex> order{0};
  order.reserve(copy_count());
  for (int g : group_order) {
    if (g < 0 || g >= group_count()) throw InputError("unknown group index");
    for (int c = 0; c < groups_[g].size; ++c) {
      order.push_back(groups_[g].first_copy + c);
    }
  }
  if (static_cast<int>(order.size()) != copy_count()) {
    throw InputError("group order must list every group exactly once");
  }
  return MasterTour(std::move(order));
}

AprioriInstance ScaledInstance::Flatten(int limit) const {
  if (copy_count() > limit) {
    throw SizeLimitError("flattening " + std::to_string(copy_count()) +
                         " copies exceeds the limit of " +
                         std::to_string(limit));
  }
  const int m = copy_count();
  std::vector<std::vector<double>> dist(m, std::vector<double>(m));
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) dist[a][b] = distance(a, b);
  }
  std::vector<double> prob(m, p_);
  prob[0] = 1.0;
  return AprioriInstance(Metric::FromMatrix(dist, 0, /*check_triangle=*/false),
                         std::move(prob));
}

BlockSequence CompressRuns(const ScaledInstance& scaled,
                           std::span<const Vertex> copy_tour) {
  BlockSequence blocks;
  blocks.push_back({scaled.base_metric().root(), 1, 1.0});
  for (std::size_t i = 1; i < copy_tour.size(); ++i) {
    const int g = scaled.group_of(copy_tour[i]);
    if (g < 0) throw InputError("root copy appears after the tour start");
    const Vertex v = scaled.group(g).vertex;
    if (blocks.size() > 1 && blocks.back().rep == v) {
      ++blocks.back().size;
    } else {
      blocks.push_back({v, 1, scaled.p()});
    }
  }
  return blocks;
}

LatencyEstimate ScaledTourElat(const ScaledInstance& scaled,
                               const MasterTour& copy_tour) {
  if (copy_tour.size() != scaled.copy_count() || copy_tour.root() != 0) {
    throw InputError("copy tour does not match the scaled instance");
  }
  const auto blocks = CompressRuns(scaled, copy_tour.order());
  return BlockElat(scaled.base_metric(), blocks);
}

bool IsConsecutive(const ScaledInstance& scaled, const MasterTour& copy_tour) {
  std::vector<bool> closed(scaled.group_count(), false);
  int current = -1;
  for (Vertex c : copy_tour.order()) {
    const int g = scaled.group_of(c);
    if (g == current) continue;
    if (current >= 0) closed[current] = true;
    if (g >= 0 && closed[g]) return false;
    current = g;
  }
  return true;
}

std::vector<Vertex> CollapseTour(const ScaledInstance& scaled,
                                 const MasterTour& copy_tour) {
  if (copy_tour.size() != scaled.copy_count() || copy_tour.root() != 0) {
    throw InputError("copy tour does not match the scaled instance");
  }
  if (!IsConsecutive(scaled, copy_tour)) {
    throw InputError(
        "copy tour is not consecutive; run MakeConsecutive before collapsing");
  }
  std::vector<Vertex> out{scaled.base_metric().root()};
  int current = -1;
  for (Vertex c : copy_tour.order()) {
    const int g = scaled.group_of(c);
    if (g >= 0 && g != current) out.push_back(scaled.group(g).vertex);
    current = g;
  }
  return out;
}

std::vector<Vertex> YTail(const AprioriInstance& instance,
                          std::span<const Vertex> y) {
  std::vector<Vertex> out(y.begin(), y.end());
  const auto& d = instance.metric();
  const Vertex r = instance.root();
  std::sort(out.begin(), out.end(), [&](Vertex a, Vertex b) {
    if (d(r, a) != d(r, b)) return d(r, a) < d(r, b);
    return a < b;
  });
  return out;
}

}  // namespace aptrp
