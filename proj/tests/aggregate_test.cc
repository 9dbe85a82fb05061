#include "discdep/aggregate.h"

#include <gtest/gtest.h>

#include "discdep/error.h"
#include "discdep/rng.h"

namespace discdep {
namespace {

AttentionRecord random_record(int layers, int heads, int k,
                              std::vector<TokenSpan> spans, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<float> v(static_cast<std::size_t>(layers) * heads * k * k);
  for (float& x : v) x = static_cast<float>(rng.uniform01());
  return AttentionRecord("r", layers, heads, k, std::move(v), std::move(spans));
}

TEST(AggregateTest, HandComputedBlockMeans) {
  std::vector<float> v(16);
  for (int i = 0; i < 16; ++i) v[i] = static_cast<float>(i + 1);
  AttentionRecord rec("h", 1, 1, 4, v, {{0, 2}, {2, 4}});
  const auto m = aggregate_head(rec, {0, 0});
  ASSERT_EQ(m.size(), 2);
  EXPECT_DOUBLE_EQ(m.at(0, 0), 3.5);
  EXPECT_DOUBLE_EQ(m.at(0, 1), 5.5);
  EXPECT_DOUBLE_EQ(m.at(1, 0), 11.5);
  EXPECT_DOUBLE_EQ(m.at(1, 1), 13.5);
}

TEST(AggregateTest, SingletonSpansCopyTokenMatrix) {
  const auto rec = random_record(2, 2, 5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}}, 1);
  const auto m = aggregate_head(rec, {1, 0});
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      EXPECT_DOUBLE_EQ(m.at(i, j), rec.at(1, 0, i, j));
}

TEST(AggregateTest, ConstantHeadGivesConstantMatrix) {
  AttentionRecord rec("c", 1, 1, 9, std::vector<float>(81, 0.25f),
                      {{1, 3}, {3, 4}, {5, 9}});
  const auto m = aggregate_head(rec, {0, 0});
  for (double x : m.scores()) EXPECT_DOUBLE_EQ(x, 0.25);
}

TEST(AggregateTest, TokensOutsideSpansAreIgnored) {
  std::vector<float> v(25, 0.0f);
  // Token 0 and token 4 are outside every span; give them huge weights.
  for (int t = 0; t < 5; ++t) {
    v[t] = v[t * 5] = v[4 * 5 + t] = v[t * 5 + 4] = 100.0f;
  }
  v[1 * 5 + 2] = 1.0f;
  AttentionRecord rec("o", 1, 1, 5, v, {{1, 2}, {2, 4}});
  const auto m = aggregate_head(rec, {0, 0});
  EXPECT_DOUBLE_EQ(m.at(0, 1), 0.5);
  EXPECT_DOUBLE_EQ(m.at(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(m.at(1, 1), 0.0);
}

TEST(AggregateTest, CommutesWithScaling) {
  const std::vector<TokenSpan> spans{{0, 3}, {3, 4}, {4, 8}};
  const auto rec = random_record(1, 1, 8, spans, 2);
  std::vector<float> scaled(rec.values().begin(), rec.values().end());
  for (float& x : scaled) x *= 2.0f;
  AttentionRecord rec2("r", 1, 1, 8, scaled, spans);
  const auto a = aggregate_head(rec, {0, 0});
  const auto b = aggregate_head(rec2, {0, 0});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(b.at(i, j), 2.0 * a.at(i, j), 1e-12);
}

TEST(AggregateTest, LayerAverageIsMeanOfHeads) {
  const auto rec = random_record(3, 16, 12, {{1, 4}, {4, 5}, {5, 9}, {9, 12}}, 3);
  for (int layer = 0; layer < 3; ++layer) {
    const auto avg = aggregate_head(rec, HeadId::layer_average(layer));
    EduMatrix mean(4, 0.0);
    for (int h = 0; h < 16; ++h) {
      const auto m = aggregate_head(rec, {layer, h});
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) mean.at(i, j) += m.at(i, j) / 16.0;
    }
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) EXPECT_NEAR(avg.at(i, j), mean.at(i, j), 1e-6);
  }
}

TEST(AggregateTest, InvalidHeadThrows) {
  const auto rec = random_record(2, 3, 4, {{0, 4}}, 4);
  EXPECT_THROW(aggregate_head(rec, {2, 0}), InvalidArgument);
  EXPECT_THROW(aggregate_head(rec, {0, 3}), InvalidArgument);
  EXPECT_THROW(aggregate_head(rec, {-1, 0}), InvalidArgument);
}

TEST(ForwardConstraintTest, AllOnes) {
  const auto m = apply_forward_constraint(EduMatrix(3, 1.0));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i < j) {
        EXPECT_EQ(m.at(i, j), 1.0);
      } else {
        EXPECT_EQ(m.at(i, j), kImpossible);
      }
    }
  EXPECT_TRUE(m.forward_only());
  EXPECT_FALSE(EduMatrix(3, 1.0).forward_only());
}

TEST(ForwardConstraintTest, IdempotentAndSmall) {
  Rng rng(5);
  std::vector<double> s(36);
  for (double& x : s) x = rng.uniform01();
  const auto once = apply_forward_constraint(EduMatrix(6, s));
  EXPECT_EQ(apply_forward_constraint(once), once);

  const auto two = apply_forward_constraint(EduMatrix(2, 0.3));
  EXPECT_TRUE(two.is_admissible(0, 1));
  EXPECT_FALSE(two.is_admissible(1, 0));
  EXPECT_FALSE(two.is_admissible(0, 0));
}

TEST(EduMatrixTest, RejectsWrongSize) {
  EXPECT_THROW(EduMatrix(3, std::vector<double>(8)), InvalidArgument);
}

}  // namespace
}  // namespace discdep
