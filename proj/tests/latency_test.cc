#include "aptrp/latency.h"

#include <gtest/gtest.h>

#include <cmath>

#include "aptrp/generators.h"
#include "aptrp/random.h"
#include "oracle.h"

namespace aptrp {
namespace {

const std::vector<std::vector<double>> kLine = {{0, 1, 2}, {1, 0, 1}, {2, 1, 0}};

AprioriInstance LineInstance(double pa, double pb) {
  return AprioriInstance(Metric::FromMatrix(kLine), {1.0, pa, pb});
}

TEST(ExactElat, LineExamples) {
  const MasterTour forward({0, 1, 2});
  EXPECT_DOUBLE_EQ(ExactElat(LineInstance(1, 1), forward).value, 3.0);
  EXPECT_DOUBLE_EQ(ExactElat(LineInstance(0.5, 0.5), forward).value, 1.5);
  EXPECT_DOUBLE_EQ(ExactElat(LineInstance(0, 0.5), forward).value, 1.0);
  EXPECT_DOUBLE_EQ(ExactElat(LineInstance(0.5, 0.5), MasterTour({0, 2, 1})).value, 2.0);
}

TEST(BruteForceElat, LineExamples) {
  EXPECT_DOUBLE_EQ(BruteForceElat(LineInstance(0.5, 0.5), MasterTour({0, 1, 2})).value, 1.5);
  EXPECT_DOUBLE_EQ(BruteForceElat(LineInstance(0.5, 0.5), MasterTour({0, 2, 1})).value, 2.0);
  EXPECT_DOUBLE_EQ(BruteForceElat(LineInstance(1, 0), MasterTour({0, 2, 1})).value, 1.0);
}

TEST(BruteForceElat, SizeLimit) {
  const auto inst = GenerateInstance(6, 1, MetricModel::kEuclideanUniform, {}).instance;
  const MasterTour tour({0, 1, 2, 3, 4, 5});
  EXPECT_THROW(BruteForceElat(inst, tour, 4), SizeLimitError);
  EXPECT_NO_THROW(BruteForceElat(inst, tour, 5));
}

TEST(ExactElat, MatchesOracleOnRandomInstances) {
  Rng rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = UniformInt(rng, 1, 8);
    const auto inst = GenerateInstance(n, rng(), MetricModel::kMatrixShortestPath,
                                       {ProbabilityModel::Kind::kUniform, 0.0, 1.0})
                          .instance;
    std::vector<Vertex> order(n);
    for (int v = 0; v < n; ++v) order[v] = v;
    Shuffle(rng, std::span<Vertex>(order).subspan(1));
    const auto expected = oracle::Elat(inst.metric().ToMatrix(),
                                       {inst.probs().begin(), inst.probs().end()}, order);
    EXPECT_NEAR(ExactElat(inst, MasterTour(order)).value, expected, 1e-9 * (1 + expected));
  }
}

TEST(ExactElat, CertainAndImpossibleVerticesInTheMiddle) {
  const Metric m = Metric::FromMatrix(
      {{0, 1, 2, 3}, {1, 0, 1, 2}, {2, 1, 0, 1}, {3, 2, 1, 0}});
  for (const auto& p : std::vector<std::vector<double>>{
           {1, 0.3, 1.0, 0.6}, {1, 0.3, 0.0, 0.6}, {1, 1, 1, 1}, {1, 0, 0, 0}}) {
    const AprioriInstance inst(m, p);
    const MasterTour tour({0, 1, 2, 3});
    EXPECT_NEAR(ExactElat(inst, tour).value,
                oracle::Elat(m.ToMatrix(), p, {0, 1, 2, 3}), 1e-12);
  }
}

TEST(ExactElat, NonZeroRoot) {
  const AprioriInstance inst(Metric::FromMatrix(kLine, 2), {0.5, 0.5, 1.0});
  const MasterTour tour({2, 0, 1});
  EXPECT_NEAR(ExactElat(inst, tour).value, oracle::Elat(kLine, {0.5, 0.5, 1.0}, {2, 0, 1}),
              1e-12);
  EXPECT_THROW(ExactElat(inst, MasterTour({0, 1, 2})), InputError);
}

TEST(MonteCarloElat, DeterministicInstanceHasZeroError) {
  const auto est = MonteCarloElat(LineInstance(1, 1), MasterTour({0, 1, 2}), 100, 3);
  EXPECT_EQ(est.value, 3.0);
  EXPECT_EQ(est.standard_error, 0.0);
  EXPECT_EQ(est.samples, 100);
}

TEST(MonteCarloElat, LineWithinFourSigma) {
  const auto est = MonteCarloElat(LineInstance(0.5, 0.5), MasterTour({0, 1, 2}), 100000, 7);
  EXPECT_LE(std::abs(est.value - 1.5), 4 * est.standard_error);
  EXPECT_GT(est.standard_error, 0.0);
}

TEST(MonteCarloElat, ReproducibleAndThreadIndependent) {
  const auto inst = GenerateInstance(7, 9, MetricModel::kEuclideanUniform, {}).instance;
  const MasterTour tour({0, 3, 1, 6, 2, 5, 4});
  const auto a = MonteCarloElat(inst, tour, 2, 11);
  const auto b = MonteCarloElat(inst, tour, 2, 11);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.standard_error, b.standard_error);
  EXPECT_TRUE(std::isfinite(a.standard_error));
  const auto one = MonteCarloElat(inst, tour, 5000, 5, 1);
  const auto four = MonteCarloElat(inst, tour, 5000, 5, 4);
  EXPECT_EQ(one.value, four.value);
  EXPECT_EQ(one.standard_error, four.standard_error);
  EXPECT_THROW(MonteCarloElat(inst, tour, 1, 5), InputError);
}

TEST(BlockElat, WorkedExample) {
  // r, u, z with d(r,u)=1, d(r,z)=2, d(u,z)=1.
  const Metric reps = Metric::FromMatrix(kLine);
  const BlockSequence blocks{{0, 1, 1.0}, {1, 1, 0.5}, {2, 2, 0.5}};
  EXPECT_DOUBLE_EQ(BlockElat(reps, blocks).value, 2.5);

  // Flat copies r, u, z1, z2: consecutive vs interleaved.
  const AprioriInstance flat(
      Metric::FromMatrix({{0, 1, 2, 2}, {1, 0, 1, 1}, {2, 1, 0, 0}, {2, 1, 0, 0}}),
      {1, 0.5, 0.5, 0.5});
  EXPECT_DOUBLE_EQ(ExactElat(flat, MasterTour({0, 1, 2, 3})).value, 2.5);
  EXPECT_DOUBLE_EQ(ExactElat(flat, MasterTour({0, 2, 1, 3})).value, 3.25);
}

TEST(BlockElat, UnitBlocksMatchExact) {
  const auto inst = GenerateInstance(6, 4, MetricModel::kEuclideanUniform, {}).instance;
  const std::vector<Vertex> order{0, 5, 2, 4, 1, 3};
  BlockSequence blocks;
  for (Vertex v : order) blocks.push_back({v, 1, inst.prob(v)});
  EXPECT_NEAR(BlockElat(inst.metric(), blocks).value,
              ExactElat(inst, MasterTour(order)).value, 1e-9);
}

TEST(BlockElat, RejectsMalformedBlocks) {
  const Metric reps = Metric::FromMatrix(kLine);
  EXPECT_THROW(BlockElat(reps, BlockSequence{{1, 1, 0.5}}), InputError);
  EXPECT_THROW(BlockElat(reps, BlockSequence{{0, 1, 1.0}, {1, 0, 0.5}}), InputError);
  EXPECT_THROW(BlockElat(reps, BlockSequence{{0, 1, 1.0}, {1, 1, 1.5}}), InputError);
  EXPECT_THROW(BlockElat(reps, BlockSequence{}), InputError);
}

TEST(HitProbability, Basics) {
  EXPECT_DOUBLE_EQ(HitProbability(0.5, 2), 0.75);
  EXPECT_EQ(HitProbability(1.0, 3), 1.0);
  EXPECT_EQ(HitProbability(0.0, 3), 0.0);
  EXPECT_NEAR(HitProbability(1e-12, 1000), 1e-9, 1e-18);
}

}  // namespace
}  // namespace aptrp
