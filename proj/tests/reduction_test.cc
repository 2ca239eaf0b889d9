#include "aptrp/reduction.h"

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "aptrp/generators.h"
#include "aptrp/latency.h"
#include "aptrp/scaled_instance.h"
#include "aptrp/solvers.h"
#include "oracle.h"

namespace aptrp {
namespace {

Metric ZeroMetric(int n) {
  return Metric::FromMatrix(
      std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0)));
}

TEST(PartitionXY, ThresholdSplit) {
  const AprioriInstance inst(ZeroMetric(4), {1, 0.5, 0.05, 0.001});
  const auto part = PartitionXY(inst);
  EXPECT_EQ(part.x, (std::vector<Vertex>{0, 1}));
  EXPECT_EQ(part.y, (std::vector<Vertex>{2, 3}));
  EXPECT_TRUE(PartitionXY(AprioriInstance(ZeroMetric(3), {1, 1, 1})).y.empty());
  const auto degenerate = PartitionXY(AprioriInstance(ZeroMetric(3), {1, 0, 0}));
  EXPECT_EQ(degenerate.x, (std::vector<Vertex>{0}));
  EXPECT_EQ(degenerate.y, (std::vector<Vertex>{1, 2}));
}

TEST(PartitionXY, ThresholdItselfBelongsToX) {
  const AprioriInstance inst(ZeroMetric(4), {1, 1.0 / 16, 0.5, 0.5});
  EXPECT_EQ(PartitionXY(inst).x, (std::vector<Vertex>{0, 1, 2, 3}));
}

TEST(ScalingParams, WorkedExample) {
  const AprioriInstance inst(ZeroMetric(3), {1, 0.4, 0.8});
  const auto params = ComputeScalingParams(inst, PartitionXY(inst));
  EXPECT_EQ(params.n, 3);
  EXPECT_NEAR(params.p, 0.4 / 3, 1e-15);
  ASSERT_EQ(params.vertices.size(), 2u);
  EXPECT_EQ(params.vertices[0].copies, 3);
  EXPECT_EQ(params.vertices[1].copies, 6);
  // 1 - (1 - 0.4/3)^3 = 0.349037...
  EXPECT_NEAR(params.vertices[0].hit_prob, 0.349037037037037, 1e-12);
  EXPECT_NEAR(params.vertices[0].upper_prob, 0.4 * 4 / 3, 1e-12);
  EXPECT_EQ(params.vertices[1].upper_prob, 1.0);
}

TEST(ScalingParams, MinimumVertexGetsExactlyNCopies) {
  for (int n = 2; n <= 40; ++n) {
    std::vector<double> prob(n, 0.9);
    prob[0] = 1.0;
    prob[n - 1] = 0.3 + 0.01 * n;
    const AprioriInstance inst(ZeroMetric(n), prob);
    const auto params = ComputeScalingParams(inst, PartitionXY(inst));
    EXPECT_EQ(params.vertices.back().copies, n) << "n=" << n;
  }
}

TEST(ScalingParams, DegenerateThrows) {
  const AprioriInstance inst(ZeroMetric(3), {1, 0, 0});
  EXPECT_THROW(ComputeScalingParams(inst, PartitionXY(inst)), DegenerateReductionError);
}

TEST(SlackCeil, AbsorbsRoundingNoise) {
  EXPECT_EQ(SlackCeil(3.0 + 1e-12), 3);
  EXPECT_EQ(SlackCeil(3.0), 3);
  EXPECT_EQ(SlackCeil(3.1), 4);
}

TEST(ScaledInstance, BuildFromWorkedExample) {
  const AprioriInstance inst(ZeroMetric(3), {1, 0.4, 0.8});
  const auto scaled = ScaledInstance::Build(inst, ComputeScalingParams(inst, PartitionXY(inst)));
  EXPECT_EQ(scaled.copy_count(), 10);
  ASSERT_EQ(scaled.group_count(), 2);
  EXPECT_EQ(scaled.group(0).size, 3);
  EXPECT_EQ(scaled.group(1).size, 6);
  EXPECT_EQ(scaled.group_of(0), -1);
  EXPECT_EQ(scaled.owner(0), 0);
  EXPECT_EQ(scaled.copies_of(0), (std::vector<int>{1, 2, 3}));
  EXPECT_THROW(ScaledInstance::Build(inst, ComputeScalingParams(inst, PartitionXY(inst)), 5),
               SizeLimitError);
}

TEST(ScaledInstance, SingleCopyAndIntraGroupDistance) {
  const Metric m = Metric::FromMatrix({{0, 3, 4}, {3, 0, 5}, {4, 5, 0}});
  const std::vector<Vertex> one{2};
  const std::vector<int> size_one{1};
  const auto single = ScaledInstance::FromGroups(m, one, size_one, 0.3);
  const auto flat = single.Flatten();
  EXPECT_EQ(flat.size(), 2);
  EXPECT_EQ(flat.metric()(0, 1), 4.0);
  EXPECT_EQ(flat.prob(1), 0.3);

  const std::vector<Vertex> two{1, 2};
  const std::vector<int> sizes{2, 3};
  const auto scaled = ScaledInstance::FromGroups(m, two, sizes, 0.3);
  EXPECT_EQ(scaled.distance(3, 5), 0.0);
  EXPECT_EQ(scaled.distance(1, 2), 0.0);
  EXPECT_EQ(scaled.distance(1, 3), 5.0);
}

TEST(CollapseTour, Examples) {
  const Metric m = Metric::FromMatrix({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
  const std::vector<Vertex> vertices{1, 2};  // a, b
  const std::vector<int> sizes{2, 3};
  const auto scaled = ScaledInstance::FromGroups(m, vertices, sizes, 0.5);
  // Copies: a = {1,2}, b = {3,4,5}.
  EXPECT_EQ(CollapseTour(scaled, MasterTour({0, 3, 4, 5, 1, 2})),
            (std::vector<Vertex>{0, 2, 1}));
  EXPECT_THROW(CollapseTour(scaled, MasterTour({0, 1, 3, 2, 4, 5})), InputError);
  const std::vector<Vertex> only{1};
  const std::vector<int> three{3};
  const auto single = ScaledInstance::FromGroups(m, only, three, 0.5);
  EXPECT_EQ(CollapseTour(single, MasterTour({0, 2, 1, 3})), (std::vector<Vertex>{0, 1}));
}

TEST(YTail, SortedByDistanceThenIndex) {
  const AprioriInstance inst(
      Metric::FromMatrix({{0, 5, 3, 3}, {5, 0, 4, 4}, {3, 4, 0, 2}, {3, 4, 2, 0}}),
      {1, 0, 0, 0});
  const std::vector<Vertex> y{1, 2};
  EXPECT_EQ(YTail(inst, y), (std::vector<Vertex>{2, 1}));
  EXPECT_TRUE(YTail(inst, {}).empty());
  const std::vector<Vertex> tie{3, 2};
  EXPECT_EQ(YTail(inst, tie), (std::vector<Vertex>{2, 3}));
}

TEST(Bounds, Constants) {
  EXPECT_NEAR(std::pow(EOverEMinusOne(), 4), 6.26326, 1e-5);
  EXPECT_NEAR(ApproximationBound(8, 1.0), std::pow(EOverEMinusOne(), 4) * std::pow(9.0 / 8, 7),
              1e-12);
  EXPECT_TRUE(std::isinf(ApproximationBound(8, std::numeric_limits<double>::infinity())));
  EXPECT_NEAR(OptimumComparisonFactor(4), EOverEMinusOne() * std::pow(1.25, 4), 1e-12);
  EXPECT_NEAR(CollapseComparisonFactor(4), std::pow(EOverEMinusOne() * 1.25, 3), 1e-12);
}

TEST(AprioriSolve, AllCertainInstance) {
  const auto base = GenerateInstance(4, 3, MetricModel::kEuclideanUniform, {}).instance;
  const auto inst = base.WithProbabilities({1, 1, 1, 1});
  const auto result = AprioriSolve(inst, MakeUniformSolver(FindSolver("brute"), 0));
  ASSERT_TRUE(result.artifacts.params);
  EXPECT_NEAR(result.artifacts.params->p, 0.25, 1e-15);
  for (const auto& s : result.artifacts.params->vertices) EXPECT_EQ(s.copies, 4);
  EXPECT_TRUE(result.artifacts.partition.y.empty());
  EXPECT_EQ(result.tour.size(), 4);
  EXPECT_TRUE(IsConsecutive(*result.artifacts.scaled, *result.artifacts.consecutive_tour));
}

TEST(AprioriSolve, DegenerateReturnsSortedTail) {
  const AprioriInstance inst(
      Metric::FromMatrix({{0, 5, 3, 4}, {5, 0, 4, 3}, {3, 4, 0, 5}, {4, 3, 5, 0}}),
      {1, 0.01, 0.0, 0.02});
  bool called = false;
  const auto result = AprioriSolve(inst, [&](const ScaledInstance&) {
    called = true;
    return MasterTour({0});
  });
  EXPECT_FALSE(called);
  EXPECT_EQ(result.tour, MasterTour({0, 2, 3, 1}));
  EXPECT_FALSE(result.artifacts.scaled);
}

TEST(AprioriSolve, XBeforeYAndValidTour) {
  const auto inst = GenerateInstance(7, 12, MetricModel::kEuclideanUniform,
                                     {ProbabilityModel::Kind::kTwoTier, 0.8, 0.01})
                        .instance;
  const auto result = AprioriSolve(inst, MakeUniformSolver(FindSolver("local"), 1));
  const auto& a = result.artifacts;
  ASSERT_FALSE(a.partition.y.empty());
  const auto pos = result.tour.Positions();
  for (Vertex x : a.partition.x) {
    for (Vertex y : a.partition.y) EXPECT_LT(pos[x], pos[y]);
  }
  EXPECT_EQ(a.final_order, std::vector<Vertex>(result.tour.order().begin(),
                                               result.tour.order().end()));
}

TEST(AprioriSolve, BruteSolverWithinBound) {
  const auto inst = GenerateInstance(6, 5, MetricModel::kMatrixShortestPath, {}).instance;
  const auto result = AprioriSolve(inst, MakeUniformSolver(FindSolver("brute"), 0));
  const double alg = ExactElat(inst, result.tour).value;
  const auto opt = oracle::Optimum(inst.metric().ToMatrix(),
                                   {inst.probs().begin(), inst.probs().end()}, 0);
  EXPECT_GE(alg, opt.value - 1e-9);
  EXPECT_LE(alg / opt.value, ApproximationBound(6, 1.0) * 1.01);
}

TEST(AprioriSolve, SolverFailuresAreWrapped) {
  const auto inst = GenerateInstance(5, 5, MetricModel::kEuclideanUniform, {}).instance;
  try {
    AprioriSolve(inst, [](const ScaledInstance&) -> MasterTour {
      throw std::runtime_error("boom");
    });
    FAIL() << "expected SolverError";
  } catch (const SolverError& e) {
    try {
      std::rethrow_if_nested(e);
      FAIL() << "expected a nested exception";
    } catch (const std::runtime_error& inner) {
      EXPECT_STREQ(inner.what(), "boom");
    }
  }
  EXPECT_THROW(AprioriSolve(inst, [](const ScaledInstance&) { return MasterTour({0, 1}); }),
               SolverError);
}

TEST(AprioriSolve, CopyCapIsEnforced) {
  // Extreme probability ratio: t_v grows like n^3 * ratio.
  const AprioriInstance inst(ZeroMetric(5), {1, 0.05, 1, 1, 1});
  EXPECT_THROW(AprioriSolve(inst, MakeUniformSolver(FindSolver("nn"), 0), {50}),
               SizeLimitError);
}

TEST(YTailAudit, MatchesSubsequenceAndBound) {
  const auto inst = GenerateInstance(6, 8, MetricModel::kEuclideanUniform,
                                     {ProbabilityModel::Kind::kTwoTier, 0.9, 0.02})
                        .instance;
  const auto partition = PartitionXY(inst);
  const auto result = AprioriSolve(inst, MakeUniformSolver(FindSolver("nn"), 0));
  const auto audit = AuditYTail(inst, result.tour, partition);
  EXPECT_NEAR(audit.total, ExactElat(inst, result.tour).value, 1e-9);
  EXPECT_NEAR(audit.x_part + audit.y_part, audit.total, 1e-9);
  EXPECT_NEAR(audit.x_part, SubsequenceElat(inst, result.artifacts.x_order), 1e-9);
  EXPECT_LE(audit.y_part, audit.bound + 1e-9);

  std::vector<Vertex> bad(result.tour.order().begin(), result.tour.order().end());
  std::swap(bad[1], bad.back());
  EXPECT_THROW(AuditYTail(inst, MasterTour(bad), partition), InputError);
}

}  // namespace
}  // namespace aptrp
