#pragma once

// Randomized verification suites. Each suite checks one family of
// inequalities or identities of the reduction on seeded random
// constructions, comparing closed forms against exhaustive enumeration.
// A failing check writes a replayable JSON artifact (instance fields at top
// level, "tour" when applicable, and a "verify" block describing the check).

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "aptrp/metric.h"

namespace aptrp {

using ElatFn = std::function<double(const AprioriInstance&, const MasterTour&)>;

struct VerifyOptions {
  std::uint64_t seed = 1;
  // Number of random constructions; 0 selects the suite default.
  std::int64_t trials = 0;
  std::filesystem::path artifact_dir = "verify-artifacts";
  int max_artifacts_per_property = 5;
  // Expected-latency evaluator under test; defaults to ExactElat.
  ElatFn evaluator;
};

struct PropertyResult {
  std::string suite;
  std::string property;
  bool passed = true;
  std::int64_t checks = 0;
  std::int64_t failures = 0;
  std::string summary;
  std::vector<std::filesystem::path> artifacts;
};

// sandwich, monotone, beta3, oracle, block, consec, table, lambda, optineq,
// algineq, ytail, endtoend, mc.
const std::vector<std::string>& VerifySuites();

// Default number of random constructions for `suite`.
std::int64_t DefaultTrials(std::string_view suite);

// Runs one suite, or every suite for "all". Throws InputError for an unknown
// suite name.
std::vector<PropertyResult> RunVerify(std::string_view suite,
                                      const VerifyOptions& options);

// "PASS suite/property (checks) summary" lines.
std::string FormatReport(const std::vector<PropertyResult>& results);

bool AllPassed(const std::vector<PropertyResult>& results);

}  // namespace aptrp
