#include "aptrp/metric.h"

#include <gtest/gtest.h>

#include <cmath>

namespace aptrp {
namespace {

// r - a - b on a line.
Metric Line() { return Metric::FromMatrix({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}); }

TEST(ValidateMetric, AcceptsSmallestMetric) {
  EXPECT_TRUE(ValidateMetric({{0, 1}, {1, 0}}).empty());
}

TEST(ValidateMetric, ReportsAsymmetry) {
  const auto v = ValidateMetric({{0, 1}, {2, 0}});
  ASSERT_EQ(v.size(), 1u);
  EXPECT_NE(v[0].find("(0,1)"), std::string::npos) << v[0];
}

TEST(ValidateMetric, ReportsTriangleViolation) {
  const auto v = ValidateMetric({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}});
  ASSERT_FALSE(v.empty());
  EXPECT_NE(v[0].find("(0,1,2)"), std::string::npos) << v[0];
  EXPECT_TRUE(ValidateMetric({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}}, false).empty());
}

TEST(ValidateMetric, ReportsShapeAndValues) {
  EXPECT_FALSE(ValidateMetric({{0, 1}, {1}}).empty());
  EXPECT_FALSE(ValidateMetric({{1, 1}, {1, 0}}).empty());
  EXPECT_FALSE(ValidateMetric({{0, -1}, {-1, 0}}).empty());
  EXPECT_FALSE(ValidateMetric({{0, NAN}, {NAN, 0}}).empty());
  EXPECT_FALSE(ValidateMetric({}).empty());
}

TEST(ValidateMetric, ToleratesRoundingNoise) {
  EXPECT_TRUE(ValidateMetric({{0, 1, 2 + 1e-12}, {1, 0, 1}, {2 + 1e-12, 1, 0}}).empty());
}

TEST(Metric, FromMatrixThrowsOnViolation) {
  EXPECT_THROW(Metric::FromMatrix({{0, 1}, {2, 0}}), InputError);
  EXPECT_THROW(Metric::FromMatrix({{0, 1}, {1, 0}}, 2), InputError);
}

TEST(AprioriInstance, NormalizesRootProbability) {
  const AprioriInstance inst(Line(), {0.3, 0.5, 0.5});
  EXPECT_TRUE(inst.root_probability_overridden());
  EXPECT_EQ(inst.prob(0), 1.0);
  const AprioriInstance clean(Line(), {1.0, 0.5, 0.5});
  EXPECT_FALSE(clean.root_probability_overridden());
}

TEST(AprioriInstance, RejectsBadProbabilities) {
  EXPECT_THROW(AprioriInstance(Line(), {1.0, 0.5}), InputError);
  EXPECT_THROW(AprioriInstance(Line(), {1.0, 1.5, 0.5}), InputError);
  EXPECT_THROW(AprioriInstance(Line(), {1.0, -0.1, 0.5}), InputError);
}

TEST(MasterTour, ValidatesPermutation) {
  EXPECT_THROW(MasterTour({0, 1, 1}), InputError);
  EXPECT_THROW(MasterTour({0, 3}), InputError);
  EXPECT_THROW(MasterTour(std::vector<Vertex>{}), InputError);
  const MasterTour t({2, 0, 1});
  EXPECT_EQ(t.root(), 2);
  EXPECT_EQ(t.Positions(), (std::vector<int>{1, 2, 0}));
}

TEST(Shortcut, SkipsInactiveVertices) {
  const MasterTour tour({0, 1, 2, 3});
  const std::vector<Vertex> b{2};
  EXPECT_EQ(Shortcut(tour, ActiveSet::FromMembers(4, 0, b)), (std::vector<Vertex>{0, 2}));
  const MasterTour short_tour({0, 1, 2});
  const std::vector<Vertex> all{1, 2};
  EXPECT_EQ(Shortcut(short_tour, ActiveSet::FromMembers(3, 0, all)),
            (std::vector<Vertex>{0, 1, 2}));
  EXPECT_EQ(Shortcut(short_tour, ActiveSet::FromMembers(3, 0, {})),
            (std::vector<Vertex>{0}));
}

TEST(RealizedLatency, LineExamples) {
  const MasterTour tour({0, 1, 2});
  const std::vector<Vertex> all{1, 2};
  auto full = ComputeRealizedLatency(Line(), tour, ActiveSet::FromMembers(3, 0, all));
  EXPECT_EQ(full.total, 3.0);
  ASSERT_EQ(full.per_vertex.size(), 2u);
  EXPECT_EQ(full.per_vertex[0], (std::pair<Vertex, double>{1, 1.0}));
  EXPECT_EQ(full.per_vertex[1], (std::pair<Vertex, double>{2, 2.0}));

  const std::vector<Vertex> b{2};
  auto skip = ComputeRealizedLatency(Line(), tour, ActiveSet::FromMembers(3, 0, b));
  EXPECT_EQ(skip.total, 2.0);
  ASSERT_EQ(skip.per_vertex.size(), 1u);
  EXPECT_EQ(skip.per_vertex[0].second, 2.0);

  EXPECT_EQ(ComputeRealizedLatency(Line(), tour, ActiveSet::FromMembers(3, 0, {})).total,
            0.0);
}

TEST(RestrictInstance, InducedSubmatrix) {
  const AprioriInstance inst(
      Metric::FromMatrix({{0, 1, 2, 3}, {1, 0, 1, 2}, {2, 1, 0, 1}, {3, 2, 1, 0}}),
      {1.0, 0.1, 0.2, 0.3});
  const std::vector<Vertex> subset{3, 0, 2, 3};
  const auto sub = RestrictInstance(inst, subset);
  EXPECT_EQ(sub.original, (std::vector<Vertex>{0, 2, 3}));
  EXPECT_EQ(sub.instance.metric().ToMatrix(),
            (std::vector<std::vector<double>>{{0, 2, 3}, {2, 0, 1}, {3, 1, 0}}));
  EXPECT_EQ(std::vector<double>(sub.instance.probs().begin(), sub.instance.probs().end()),
            (std::vector<double>{1.0, 0.2, 0.3}));

  const std::vector<Vertex> root_only{0};
  EXPECT_EQ(RestrictInstance(inst, root_only).instance.size(), 1);
  const std::vector<Vertex> everything{0, 1, 2, 3};
  EXPECT_EQ(RestrictInstance(inst, everything).instance, inst);
  const std::vector<Vertex> no_root{1, 2};
  EXPECT_THROW(RestrictInstance(inst, no_root), InputError);
}

}  // namespace
}  // namespace aptrp
