#include "aptrp/generators.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "aptrp/random.h"

namespace aptrp {
namespace {

std::vector<std::string_view> Split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double ParseProbability(std::string_view text, std::string_view spec) {
  const std::string s(text);
  char* end = nullptr;
  const double value = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !(value >= 0.0 && value <= 1.0)) {
    throw InputError("bad probability '" + s + "' in model '" +
                     std::string(spec) + "'");
  }
  return value;
}

}  // namespace

MetricModel ParseMetricModel(std::string_view text) {
  if (text == "euclidean" || text == "euclidean-uniform") {
    return MetricModel::kEuclideanUniform;
  }
  if (text == "matrix" || text == "matrix-shortestpath") {
    return MetricModel::kMatrixShortestPath;
  }
  throw InputError("unknown metric model '" + std::string(text) +
                   "' (expected euclidean-uniform or matrix-shortestpath)");
}

std::string_view ToString(MetricModel model) {
  return model == MetricModel::kEuclideanUniform ? "euclidean-uniform"
                                                 : "matrix-shortestpath";
}

ProbabilityModel ParseProbabilityModel(std::string_view text) {
  const auto parts = Split(text, ':');
  if (parts.size() != 3) {
    throw InputError("probability model must look like uniform:A:B or "
                     "two-tier:HIGH:LOW, got '" + std::string(text) + "'");
  }
  ProbabilityModel model;
  if (parts[0] == "uniform") {
    model.kind = ProbabilityModel::Kind::kUniform;
  } else if (parts[0] == "two-tier") {
    model.kind = ProbabilityModel::Kind::kTwoTier;
  } else {
    throw InputError("unknown probability model '" + std::string(parts[0]) + "'");
  }
  model.a = ParseProbability(parts[1], text);
  model.b = ParseProbability(parts[2], text);
  if (model.kind == ProbabilityModel::Kind::kUniform && model.a > model.b) {
    throw InputError("uniform probability model needs A <= B");
  }
  return model;
}

std::string ToString(const ProbabilityModel& model) {
  const char* kind =
      model.kind == ProbabilityModel::Kind::kUniform ? "uniform" : "two-tier";
  char buffer[96];
  std::snprintf(buffer, sizeof buffer, "%s:%.17g:%.17g", kind, model.a, model.b);
  return buffer;
}

NamedInstance GenerateInstance(int n, std::uint64_t seed, MetricModel metric,
                               const ProbabilityModel& probabilities) {
  if (n < 1) throw InputError("instance size must be positive");
  Rng rng(seed);
  NamedInstance out{"", std::nullopt,
                    AprioriInstance(Metric::FromMatrix({{0.0}}), {1.0})};
  std::vector<std::vector<double>> dist;
  if (metric == MetricModel::kEuclideanUniform) {
    std::vector<Point> points(n);
    for (auto& p : points) {
      p[0] = UniformReal(rng, 0.0, 100.0);
      p[1] = UniformReal(rng, 0.0, 100.0);
    }
    dist = EuclideanDistances(points);
    out.points = std::move(points);
  } else {
    dist.assign(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        dist[i][j] = dist[j][i] = UniformReal(rng, 1.0, 100.0);
      }
    }
    // Floyd-Warshall closure; the result satisfies the triangle inequality.
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          dist[i][j] = std::min(dist[i][j], dist[i][k] + dist[k][j]);
        }
      }
    }
  }

  std::vector<double> prob(n, 1.0);
  if (probabilities.kind == ProbabilityModel::Kind::kUniform) {
    for (int v = 1; v < n; ++v) {
      prob[v] = UniformReal(rng, probabilities.a, probabilities.b);
    }
  } else {
    const double high = probabilities.a;
    const double low = probabilities.b;
    std::vector<bool> is_low(n, false);
    bool any_low = false;
    for (int v = 1; v < n; ++v) {
      is_low[v] = UniformUnit(rng) < 0.5;
      any_low = any_low || is_low[v];
    }
    if (!any_low && n > 1) is_low[UniformInt(rng, 1, n - 1)] = true;
    for (int v = 1; v < n; ++v) {
      const double top = is_low[v] ? low : high;
      prob[v] = UniformReal(rng, top / 2.0, top);
      if (prob[v] == 0.0) prob[v] = top;
    }
  }
  out.name = "gen-" + std::string(ToString(metric)) + "-n" + std::to_string(n) +
             "-s" + std::to_string(seed);
  // Metric by construction; skip the cubic triangle scan.
  out.instance = AprioriInstance(Metric::FromMatrix(dist, 0, /*check_triangle=*/false),
                                 std::move(prob));
  return out;
}

}  // namespace aptrp
