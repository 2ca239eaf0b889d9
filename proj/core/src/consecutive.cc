#include "aptrp/consecutive.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace aptrp {
namespace {

double CopyTourValue(const ScaledInstance& scaled,
                     std::span<const Vertex> order) {
  return BlockElat(scaled.base_metric(), CompressRuns(scaled, order)).value;
}

void CheckRunPair(std::size_t tour_size, Run first, Run second) {
  if (first.length == 0 || second.length == 0) {
    throw InputError("parts must be non-empty");
  }
  if (first.end() > second.begin) {
    throw InputError("parts overlap or are out of order");
  }
  if (second.end() > tour_size) throw InputError("part extends past the tour");
}

// Latency of `w` along `tour` when exactly the vertices flagged in `active`
// (plus tour[0]) are active; 0 if w is inactive.
double LatencyOf(const Metric& metric, std::span<const Vertex> tour,
                 const std::vector<char>& active, Vertex w) {
  if (w == tour.front()) return 0.0;
  if (!active[w]) return 0.0;
  double clock = 0.0;
  Vertex last = tour.front();
  for (std::size_t i = 1; i < tour.size(); ++i) {
    const Vertex v = tour[i];
    if (!active[v]) continue;
    clock += metric(last, v);
    last = v;
    if (v == w) return clock;
  }
  return 0.0;
}

}  // namespace

std::vector<Run> FindRuns(std::span<const Vertex> tour,
                          std::span<const Vertex> group) {
  Vertex max_vertex = 0;
  for (Vertex v : tour) max_vertex = std::max(max_vertex, v);
  std::vector<char> member(static_cast<std::size_t>(max_vertex) + 1, 0);
  for (Vertex v : group) {
    if (v >= 0 && v <= max_vertex) member[v] = 1;
  }
  std::vector<Run> runs;
  bool inside = false;
  for (std::size_t i = 0; i < tour.size(); ++i) {
    if (member[tour[i]]) {
      if (inside) {
        ++runs.back().length;
      } else {
        runs.push_back({i, 1});
        inside = true;
      }
    } else {
      inside = false;
    }
  }
  return runs;
}

std::vector<Vertex> Relocate(std::span<const Vertex> tour, Run first,
                             Run second, RelocateMode mode) {
  CheckRunPair(tour.size(), first, second);
  std::vector<Vertex> out;
  out.reserve(tour.size());
  auto append = [&](std::size_t from, std::size_t to) {
    out.insert(out.end(), tour.begin() + from, tour.begin() + to);
  };
  if (mode == RelocateMode::kAfterFirst) {
    append(0, first.end());
    append(second.begin, second.end());
    append(first.end(), second.begin);
  } else {
    append(0, first.begin);
    append(first.end(), second.begin);
    append(first.begin, first.end());
    append(second.begin, second.end());
  }
  append(second.end(), tour.size());
  return out;
}

ConsecutiveResult MakeConsecutive(const ScaledInstance& scaled,
                                  const MasterTour& copy_tour,
                                  bool trace_tours) {
  if (copy_tour.size() != scaled.copy_count() || copy_tour.root() != 0) {
    throw InputError("copy tour does not match the scaled instance");
  }
  std::vector<Vertex> order(copy_tour.order().begin(), copy_tour.order().end());
  std::vector<MergeStep> merges;
  for (int g = 0; g < scaled.group_count(); ++g) {
    const auto members = scaled.copies_of(g);
    for (;;) {
      const auto runs = FindRuns(order, members);
      if (runs.size() <= 1) break;
      MergeStep step;
      step.group = g;
      step.first_size = static_cast<std::int64_t>(runs[0].length);
      step.second_size = static_cast<std::int64_t>(runs[1].length);
      auto after_first =
          Relocate(order, runs[0], runs[1], RelocateMode::kAfterFirst);
      auto after_second =
          Relocate(order, runs[0], runs[1], RelocateMode::kBeforeSecond);
      step.before = CopyTourValue(scaled, order);
      step.after_first = CopyTourValue(scaled, after_first);
      step.after_second = CopyTourValue(scaled, after_second);
      const double scale =
          std::max(std::abs(step.after_first), std::abs(step.after_second));
      step.chosen = step.after_second < step.after_first - 1e-12 * scale
                        ? RelocateMode::kBeforeSecond
                        : RelocateMode::kAfterFirst;
      if (trace_tours) {
        step.tour_before = order;
        step.tour_after_first = after_first;
        step.tour_after_second = after_second;
      }
      order = step.chosen == RelocateMode::kAfterFirst ? std::move(after_first)
                                                       : std::move(after_second);
      merges.push_back(std::move(step));
    }
  }
  return {MasterTour(std::move(order)), std::move(merges)};
}

double LambdaValue(double p, std::int64_t k_first, std::int64_t k_second) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw InputError("lambda is undefined unless 0 < p <= 1");
  }
  if (k_first < 1 || k_second < 1) {
    throw InputError("part sizes must be at least 1");
  }
  return HitProbability(p, k_first) / HitProbability(p, k_first + k_second);
}

LambdaCheck CheckLambda(double p, std::int64_t k_first, std::int64_t k_second,
                        double tolerance) {
  LambdaCheck out;
  out.lambda = LambdaValue(p, k_first, k_second);
  const double a_i = HitProbability(p, k_first);
  const double a_j = HitProbability(p, k_second);
  const double either = a_i + a_j - a_i * a_j;
  out.slack_alpha_first = a_i / either - out.lambda;
  out.slack_alpha_second = a_j / either - (1.0 - out.lambda);
  out.slack_sizes = static_cast<double>(k_second) /
                        static_cast<double>(k_first + k_second) -
                    (1.0 - out.lambda);
  out.union_residual =
      std::abs(HitProbability(p, k_first + k_second) - either);
  out.ratio_decreasing = true;
  double previous = HitProbability(p, 1);
  for (std::int64_t k = 2; k <= k_first + k_second; ++k) {
    const double ratio = HitProbability(p, k) / static_cast<double>(k);
    if (ratio > previous + tolerance * previous) out.ratio_decreasing = false;
    previous = ratio;
  }
  out.holds = out.slack_alpha_first >= -tolerance &&
              out.slack_alpha_second >= -tolerance &&
              out.slack_sizes >= -tolerance &&
              out.union_residual <= tolerance && out.ratio_decreasing;
  return out;
}

TablePredictions PredictTable(const Metric& metric,
                              std::span<const Vertex> tour,
                              std::span<const Vertex> conditioning, Run first,
                              Run second, double p) {
  CheckRunPair(tour.size(), first, second);
  if (first.begin == 0) throw InputError("the root cannot be part of a group");
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("p must lie in [0,1]");
  const Vertex anchor = tour[first.begin];
  for (Run run : {first, second}) {
    for (std::size_t i = run.begin; i < run.end(); ++i) {
      if (metric(anchor, tour[i]) != 0.0) {
        throw InputError("part members are not co-located");
      }
    }
  }
  const int n = metric.size();
  std::vector<int> position(n, -1);
  for (std::size_t i = 0; i < tour.size(); ++i) {
    position[tour[i]] = static_cast<int>(i);
  }
  auto in_parts = [&](int pos) {
    const auto u = static_cast<std::size_t>(pos);
    return (u >= first.begin && u < first.end()) ||
           (u >= second.begin && u < second.end());
  };

  TablePredictions out;
  TableRow& row = out.row;
  std::vector<char> base_active(n, 0);
  base_active[tour.front()] = 1;
  std::vector<Vertex> b_sorted;
  for (Vertex w : conditioning) {
    if (w < 0 || w >= n || position[w] < 0) {
      throw InputError("conditioning vertex is not on the tour");
    }
    if (in_parts(position[w])) {
      throw InputError("conditioning set overlaps the parts");
    }
    if (w == tour.front() || base_active[w]) continue;
    base_active[w] = 1;
    b_sorted.push_back(w);
  }
  std::sort(b_sorted.begin(), b_sorted.end(),
            [&](Vertex a, Vertex b) { return position[a] < position[b]; });
  for (Vertex w : b_sorted) {
    const auto pos = static_cast<std::size_t>(position[w]);
    if (pos < first.begin) {
      row.before.push_back(w);
    } else if (pos < second.begin) {
      row.between.push_back(w);
    } else {
      row.after.push_back(w);
    }
  }

  auto with_run = [&](std::vector<char> active, Run run) {
    for (std::size_t i = run.begin; i < run.end(); ++i) active[tour[i]] = 1;
    return active;
  };
  const auto active_first = with_run(base_active, first);
  const auto active_second = with_run(base_active, second);

  row.first_size = static_cast<std::int64_t>(first.length);
  row.second_size = static_cast<std::int64_t>(second.length);
  row.p = p;
  row.first_hit = HitProbability(p, row.first_size);
  row.second_hit = HitProbability(p, row.second_size);
  row.first_arrival = LatencyOf(metric, tour, active_first, anchor);
  row.second_arrival =
      LatencyOf(metric, tour, active_second, tour[second.begin]);

  auto base_latency = [&](Vertex w) {
    return LatencyOf(metric, tour, base_active, w);
  };
  if (!row.between.empty() || !row.after.empty()) {
    const Vertex probe =
        !row.between.empty() ? row.between.front() : row.after.front();
    row.first_detour =
        LatencyOf(metric, tour, active_first, probe) - base_latency(probe);
  }
  if (!row.after.empty()) {
    const Vertex probe = row.after.front();
    row.second_detour =
        LatencyOf(metric, tour, active_second, probe) - base_latency(probe);
  }

  const double a_i = row.first_hit;
  const double a_j = row.second_hit;
  const double either = a_i + a_j - a_i * a_j;
  const double d_i = row.first_detour;
  const double d_j = row.second_detour;
  const double t_i = row.first_arrival;
  const double t_j = row.second_arrival;
  const bool split = !row.between.empty();

  auto add = [&](Vertex w, VertexClass cls, double base,
                 std::array<double, 3> expected) {
    if (!split) expected[0] = expected[2] = expected[1];
    out.entries.push_back({w, cls, base, expected});
  };
  for (Vertex w : row.before) {
    const double l = base_latency(w);
    add(w, VertexClass::kBefore, l, {l, l, l});
  }
  for (Vertex w : row.between) {
    const double l = base_latency(w);
    add(w, VertexClass::kBetween, l, {l + d_i * a_i, l + d_i * either, l});
  }
  for (Vertex w : row.after) {
    const double l = base_latency(w);
    add(w, VertexClass::kAfter, l,
        {l + d_i * a_i + d_j * a_j, l + d_i * either, l + d_j * either});
  }
  for (std::size_t i = first.begin; i < first.end(); ++i) {
    add(tour[i], VertexClass::kFirstPart, t_i, {t_i * p, t_i * p, t_j * p});
  }
  for (std::size_t i = second.begin; i < second.end(); ++i) {
    add(tour[i], VertexClass::kSecondPart, t_j,
        {t_j * p + d_i * a_i * p, t_i * p, t_j * p});
  }
  return out;
}

double ConditionalExpectedLatency(const Metric& metric,
                                  std::span<const Vertex> tour,
                                  std::span<const Vertex> conditioning,
                                  std::span<const Vertex> uncertain, double p,
                                  Vertex w) {
  if (static_cast<int>(uncertain.size()) > kConditionalEnumerationLimit) {
    throw SizeLimitError("conditional enumeration supports at most " +
                         std::to_string(kConditionalEnumerationLimit) +
                         " uncertain vertices");
  }
  const int n = metric.size();
  std::vector<char> active(n, 0);
  active[tour.front()] = 1;
  for (Vertex v : conditioning) {
    if (v < 0 || v >= n) throw InputError("conditioning vertex out of range");
    active[v] = 1;
  }
  for (Vertex u : uncertain) {
    if (u < 0 || u >= n) throw InputError("uncertain vertex out of range");
  }
  const std::size_t k = uncertain.size();
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    double weight = 1.0;
    for (std::size_t b = 0; b < k; ++b) {
      const bool on = (mask >> b) & 1;
      weight *= on ? p : 1.0 - p;
      active[uncertain[b]] = on;
    }
    if (weight == 0.0) continue;
    total += weight * LatencyOf(metric, tour, active, w);
  }
  return total;
}

}  // namespace aptrp
