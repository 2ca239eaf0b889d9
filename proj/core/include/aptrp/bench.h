#pragma once

// Batch benchmark: solve generated or file instances with each configured
// solver through the reduction and report ALG, OPT and the certified bound.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aptrp/generators.h"
#include "aptrp/solvers.h"

namespace aptrp {

inline constexpr std::string_view kBenchCsvHeader =
    "instance,n,seed,solver,rho,alg,opt,ratio,bound,ms";

struct BenchInstanceSpec {
  int n = 8;
  int count = 1;
  MetricModel metric = MetricModel::kEuclideanUniform;
  ProbabilityModel probabilities;
};

struct BenchConfig {
  std::vector<BenchInstanceSpec> generated;
  std::vector<std::filesystem::path> files;
  std::vector<std::string> solvers{"local"};
  std::uint64_t seed = 1;
  // OPT is computed by enumeration up to this many non-root vertices.
  int opt_limit = 8;
  // Wall time is nondeterministic, so the ms column stays empty unless set.
  bool timing = false;
  int threads = 1;
  std::int64_t budget = kDefaultSearchBudget;
};

struct BenchRecord {
  std::string instance;
  int n = 0;
  std::uint64_t seed = 0;
  std::string solver;
  double rho = 0.0;
  std::optional<double> alg;  // absent when the solver failed
  std::optional<double> opt;
  std::optional<double> ratio;
  double bound = 0.0;
  std::optional<double> ms;
};

// {"seed", "solvers", "opt_limit", "threads", "budget", "timing",
//  "instances": [{"n", "count", "metric", "probabilities"}], "files": [...]}.
// Every key is optional; "{}" yields an empty run. Throws InputError.
BenchConfig ParseBenchConfig(std::string_view text);

// Instance i (generated specs first, then files) gets seed
// DeriveSeed(config.seed, i); records come back in instance-index order
// regardless of `threads`.
std::vector<BenchRecord> RunBench(const BenchConfig& config);

std::string ToCsv(const std::vector<BenchRecord>& records);

}  // namespace aptrp
