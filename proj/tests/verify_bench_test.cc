#include <gtest/gtest.h>

#include <filesystem>

#include "aptrp/bench.h"
#include "aptrp/instance_io.h"
#include "aptrp/latency.h"
#include "aptrp/verify.h"

namespace aptrp {
namespace {

std::filesystem::path TempDir(const char* name) {
  auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  return dir;
}

TEST(Verify, SuiteListAndErrors) {
  EXPECT_EQ(VerifySuites().size(), 13u);
  EXPECT_THROW(RunVerify("nope", {}), InputError);
  EXPECT_THROW(DefaultTrials("nope"), InputError);
  EXPECT_EQ(DefaultTrials("table"), 200);
}

TEST(Verify, SmallRunsPass) {
  VerifyOptions options;
  options.trials = 10;
  options.artifact_dir = TempDir("aptrp-verify-pass");
  for (const auto& suite : VerifySuites()) {
    if (suite == "lambda") continue;
    const auto results = RunVerify(suite, options);
    EXPECT_TRUE(AllPassed(results)) << FormatReport(results);
  }
  EXPECT_FALSE(std::filesystem::exists(options.artifact_dir));
}

TEST(Verify, CorruptedEvaluatorFailsWithReplayableArtifact) {
  VerifyOptions options;
  options.trials = 20;
  options.artifact_dir = TempDir("aptrp-verify-corrupt");
  // Off by 1% from the true value.
  options.evaluator = [](const AprioriInstance& i, const MasterTour& t) {
    return ExactElat(i, t).value * 1.01 + 1e-3;
  };
  const auto results = RunVerify("oracle", options);
  ASSERT_FALSE(AllPassed(results));
  const auto report = FormatReport(results);
  EXPECT_NE(report.find("FAIL oracle/exact_matches_enumeration"), std::string::npos) << report;
  ASSERT_FALSE(results[0].artifacts.empty());
  EXPECT_LE(results[0].artifacts.size(), 5u);

  const auto text = ReadFile(results[0].artifacts.front());
  const auto named = ParseInstance(text);
  const auto tour = ParseTour(text, named.instance.size());
  // Replaying with the real evaluator shows the discrepancy.
  const double exact = ExactElat(named.instance, tour).value;
  const double brute = BruteForceElat(named.instance, tour).value;
  EXPECT_NEAR(exact, brute, 1e-9 * (1 + brute));
  EXPECT_NE(text.find("\"verify\""), std::string::npos);
  std::filesystem::remove_all(options.artifact_dir);
}

TEST(Bench, EmptyConfigIsHeaderOnly) {
  const auto config = ParseBenchConfig("{}");
  EXPECT_EQ(ToCsv(RunBench(config)), std::string(kBenchCsvHeader) + "\n");
  EXPECT_EQ(kBenchCsvHeader, "instance,n,seed,solver,rho,alg,opt,ratio,bound,ms");
}

TEST(Bench, ConfigErrors) {
  EXPECT_THROW(ParseBenchConfig("[]"), InputError);
  EXPECT_THROW(ParseBenchConfig(R"({"solvers": ["magic"]})"), InputError);
  EXPECT_THROW(ParseBenchConfig(R"({"seed": "x"})"), InputError);
  EXPECT_THROW(ParseBenchConfig(R"({"instances": [{"n": 0}]})"), InputError);
  EXPECT_THROW(ParseBenchConfig(R"({"instances": [{"metric": "tsplib"}]})"), InputError);
}

TEST(Bench, BruteRatiosWithinBound) {
  const auto config = ParseBenchConfig(
      R"({"seed": 3, "solvers": ["brute", "nn"],
          "instances": [{"n": 6, "count": 4, "probabilities": "uniform:0.1:0.9"}]})");
  const auto records = RunBench(config);
  ASSERT_EQ(records.size(), 8u);
  for (const auto& r : records) {
    ASSERT_TRUE(r.alg && r.opt && r.ratio);
    EXPECT_GE(*r.ratio, 1.0 - 1e-9);
    EXPECT_LE(*r.ratio, r.bound);
    EXPECT_FALSE(r.ms);
  }
  EXPECT_EQ(records[0].solver, "brute");
  EXPECT_EQ(records[1].solver, "nn");
  EXPECT_EQ(records[0].seed, records[1].seed);
}

TEST(Bench, OptUnavailableLeavesFieldsEmpty) {
  BenchConfig config;
  config.generated.push_back({12, 1, MetricModel::kEuclideanUniform, {}});
  config.solvers = {"nn"};
  const auto csv = ToCsv(RunBench(config));
  const auto row = csv.substr(csv.find('\n') + 1);
  // alg present; opt and ratio empty; bound inf for a heuristic; ms empty.
  EXPECT_NE(row.find(",nn,inf,"), std::string::npos) << row;
  EXPECT_NE(row.find(",,,inf,\n"), std::string::npos) << row;
}

TEST(Bench, ByteIdenticalAcrossRunsAndThreads) {
  const auto dir = TempDir("aptrp-bench-files");
  WriteFile(dir / "a.json",
            R"({"n": 3, "distances": [[0,1,2],[1,0,1],[2,1,0]], "probabilities": [1,0.5,0.5]})");
  auto config = ParseBenchConfig(
      R"({"seed": 11, "solvers": ["local", "brute"],
          "instances": [{"n": 7, "count": 3, "metric": "matrix"},
                        {"n": 5, "count": 2, "probabilities": "two-tier:0.9:0.01"}]})");
  config.files.push_back(dir / "a.json");
  const auto first = ToCsv(RunBench(config));
  config.threads = 4;
  const auto second = ToCsv(RunBench(config));
  EXPECT_EQ(first, second);
  EXPECT_NE(first.find("\na,3,"), std::string::npos) << first;
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace aptrp
