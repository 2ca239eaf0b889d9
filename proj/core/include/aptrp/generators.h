#pragma once

// Seeded random instances for tests, verification and benchmarks.

#include <cstdint>
#include <string>
#include <string_view>

#include "aptrp/instance_io.h"

namespace aptrp {

enum class MetricModel {
  kEuclideanUniform,    // points uniform in [0,100]^2
  kMatrixShortestPath,  // random symmetric weights in [1,100], then closure
};

struct ProbabilityModel {
  enum class Kind {
    kUniform,  // p_v ~ U(a, b)
    kTwoTier,  // p_v ~ U(a/2, a) or U(b/2, b); at least one low-tier vertex
  };
  Kind kind = Kind::kUniform;
  double a = 0.1;
  double b = 0.9;
};

// "euclidean" / "euclidean-uniform" / "matrix" / "matrix-shortestpath".
MetricModel ParseMetricModel(std::string_view text);
std::string_view ToString(MetricModel model);

// "uniform:A:B" or "two-tier:HIGH:LOW".
ProbabilityModel ParseProbabilityModel(std::string_view text);
std::string ToString(const ProbabilityModel& model);

// Deterministic for a fixed (n, seed, models). Root is vertex 0.
NamedInstance GenerateInstance(int n, std::uint64_t seed, MetricModel metric,
                               const ProbabilityModel& probabilities);

}  // namespace aptrp
