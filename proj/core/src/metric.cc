#include "aptrp/metric.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace aptrp {
namespace {

std::string JoinViolations(const std::vector<std::string>& violations) {
  std::ostringstream out;
  out << "invalid metric:";
  for (const auto& v : violations) out << "\n  " << v;
  return out.str();
}

}  // namespace

std::vector<std::string> ValidateMetric(
    const std::vector<std::vector<double>>& dist, bool check_triangle,
    double tolerance) {
  std::vector<std::string> violations;
  const std::size_t n = dist.size();
  if (n == 0) {
    violations.emplace_back("empty matrix: at least the root is required");
    return violations;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i].size() != n) {
      std::ostringstream msg;
      msg << "dimension mismatch: row " << i << " has " << dist[i].size()
          << " entries, expected " << n;
      violations.push_back(msg.str());
    }
  }
  if (!violations.empty()) return violations;

  auto close = [tolerance](double a, double b) {
    return std::abs(a - b) <= tolerance * (1.0 + std::max(std::abs(a), std::abs(b)));
  };
  bool entries_ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double d = dist[i][j];
      std::ostringstream msg;
      if (!std::isfinite(d)) {
        msg << "non-finite distance at (" << i << "," << j << ")";
      } else if (d < 0) {
        msg << "negative distance at (" << i << "," << j << "): " << d;
      } else if (i == j && d != 0.0) {
        msg << "non-zero diagonal at (" << i << "," << i << "): " << d;
      } else if (i < j && !close(d, dist[j][i])) {
        msg << "asymmetry at (" << i << "," << j << "): " << d
            << " != " << dist[j][i];
      } else {
        continue;
      }
      violations.push_back(msg.str());
      entries_ok = false;
    }
  }
  if (!check_triangle || !entries_ok) return violations;

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        const double via = dist[i][j] + dist[j][k];
        if (dist[i][k] > via + tolerance * (1.0 + via)) {
          std::ostringstream msg;
          msg << "triangle violation (" << i << "," << j << "," << k
              << "): " << dist[i][k] << " > " << dist[i][j] << "+"
              << dist[j][k];
          violations.push_back(msg.str());
        }
      }
    }
  }
  return violations;
}

Metric Metric::FromMatrix(const std::vector<std::vector<double>>& dist,
                          Vertex root, bool check_triangle) {
  auto violations = ValidateMetric(dist, check_triangle);
  if (!violations.empty()) throw InputError(JoinViolations(violations));
  const int n = static_cast<int>(dist.size());
  if (root < 0 || root >= n) {
    throw InputError("root " + std::to_string(root) + " out of range [0," +
                     std::to_string(n) + ")");
  }
  std::vector<double> flat(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      // Symmetrize exactly so evaluators see d(i,j) == d(j,i).
      flat[static_cast<std::size_t>(i) * n + j] =
          i <= j ? dist[i][j] : dist[j][i];
    }
  }
  return Metric(n, root, std::move(flat));
}

std::vector<std::vector<double>> Metric::ToMatrix() const {
  std::vector<std::vector<double>> out(n_, std::vector<double>(n_));
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) out[i][j] = (*this)(i, j);
  }
  return out;
}

AprioriInstance::AprioriInstance(Metric metric, std::vector<double> prob)
    : metric_(std::move(metric)), prob_(std::move(prob)) {
  if (static_cast<int>(prob_.size()) != metric_.size()) {
    throw InputError("probabilities: expected " +
                     std::to_string(metric_.size()) + " entries, got " +
                     std::to_string(prob_.size()));
  }
  for (std::size_t v = 0; v < prob_.size(); ++v) {
    if (!(prob_[v] >= 0.0 && prob_[v] <= 1.0)) {
      std::ostringstream msg;
      msg << "probabilities[" << v << "] = " << prob_[v]
          << " is outside [0,1]";
      throw InputError(msg.str());
    }
  }
  double& root_prob = prob_[metric_.root()];
  if (root_prob != 1.0) {
    root_prob = 1.0;
    root_overridden_ = true;
  }
}

AprioriInstance AprioriInstance::WithProbabilities(
    std::vector<double> prob) const {
  return AprioriInstance(metric_, std::move(prob));
}

MasterTour::MasterTour(std::vector<Vertex> order) : order_(std::move(order)) {
  if (order_.empty()) throw InputError("tour is empty");
  std::vector<bool> seen(order_.size(), false);
  for (Vertex v : order_) {
    if (v < 0 || v >= static_cast<Vertex>(order_.size())) {
      throw InputError("tour vertex " + std::to_string(v) +
                       " out of range for a tour of " +
                       std::to_string(order_.size()) + " vertices");
    }
    if (seen[v]) {
      throw InputError("tour visits vertex " + std::to_string(v) + " twice");
    }
    seen[v] = true;
  }
}

std::vector<int> MasterTour::Positions() const {
  std::vector<int> pos(order_.size());
  for (std::size_t i = 0; i < order_.size(); ++i) pos[order_[i]] = static_cast<int>(i);
  return pos;
}

ActiveSet ActiveSet::FromMembers(int n, Vertex root,
                                 std::span<const Vertex> members) {
  if (root < 0 || root >= n) throw InputError("active set: root out of range");
  std::vector<bool> mask(n, false);
  mask[root] = true;
  for (Vertex v : members) {
    if (v < 0 || v >= n) {
      throw InputError("active vertex " + std::to_string(v) +
                       " is not a vertex of the tour");
    }
    mask[v] = true;
  }
  return ActiveSet(std::move(mask));
}

ActiveSet ActiveSet::FromMask(std::vector<bool> mask, Vertex root) {
  if (root < 0 || root >= static_cast<Vertex>(mask.size())) {
    throw InputError("active set: root out of range");
  }
  mask[root] = true;
  return ActiveSet(std::move(mask));
}

std::vector<Vertex> ActiveSet::members() const {
  std::vector<Vertex> out;
  for (std::size_t v = 0; v < mask_.size(); ++v) {
    if (mask_[v]) out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

std::vector<Vertex> Shortcut(const MasterTour& tour, const ActiveSet& active) {
  if (active.universe_size() != tour.size()) {
    throw InputError("active set ranges over " +
                     std::to_string(active.universe_size()) +
                     " vertices but the tour has " +
                     std::to_string(tour.size()));
  }
  if (!active.contains(tour.root())) {
    throw InputError("active set does not contain the tour root");
  }
  std::vector<Vertex> out;
  for (Vertex v : tour.order()) {
    if (active.contains(v)) out.push_back(v);
  }
  return out;
}

RealizedLatency ComputeRealizedLatency(const Metric& metric,
                                       const MasterTour& tour,
                                       const ActiveSet& active) {
  if (metric.size() != tour.size()) {
    throw InputError("tour size does not match the metric");
  }
  if (tour.root() != metric.root()) {
    throw InputError("tour does not start at the metric root");
  }
  const auto path = Shortcut(tour, active);
  RealizedLatency out;
  double clock = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) {
    clock += metric(path[i - 1], path[i]);
    out.per_vertex.emplace_back(path[i], clock);
    out.total += clock;
  }
  return out;
}

RestrictedInstance RestrictInstance(const AprioriInstance& instance,
                                    std::span<const Vertex> subset) {
  std::vector<Vertex> keep(subset.begin(), subset.end());
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  for (Vertex v : keep) {
    if (v < 0 || v >= instance.size()) {
      throw InputError("restrict: vertex " + std::to_string(v) +
                       " out of range");
    }
  }
  const auto root_it =
      std::find(keep.begin(), keep.end(), instance.root());
  if (root_it == keep.end()) {
    throw InputError("restrict: subset must contain the root");
  }
  const auto m = keep.size();
  std::vector<std::vector<double>> dist(m, std::vector<double>(m));
  std::vector<double> prob(m);
  for (std::size_t i = 0; i < m; ++i) {
    prob[i] = instance.prob(keep[i]);
    for (std::size_t j = 0; j < m; ++j) {
      dist[i][j] = instance.metric()(keep[i], keep[j]);
    }
  }
  const auto root = static_cast<Vertex>(root_it - keep.begin());
  return RestrictedInstance{
      AprioriInstance(Metric::FromMatrix(dist, root, /*check_triangle=*/false),
                      std::move(prob)),
      std::move(keep)};
}

}  // namespace aptrp
