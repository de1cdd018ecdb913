// Copyright 2026 The dprss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dprss/random.hpp"

#include <cmath>
#include <set>
#include <vector>

#include "dprss/errors.hpp"
#include "gtest/gtest.h"

namespace dprss {
namespace {

struct SampleMoments {
  double mean;
  double variance;
};

SampleMoments LaplaceMoments(double b, int draws, uint64_t seed) {
  RandomStream stream(seed, 0);
  const LaplaceScale scale(b);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double v = LaplaceSample(stream, scale);
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / draws;
  return {mean, (sum_sq - draws * mean * mean) / (draws - 1)};
}

TEST(LaplaceScaleTest, RejectsNonPositiveScale) {
  EXPECT_THROW(LaplaceScale(0.0), InvalidParameterError);
  EXPECT_THROW(LaplaceScale(-1.0), InvalidParameterError);
  EXPECT_THROW(LaplaceScale(std::nan("")), InvalidParameterError);
  EXPECT_THROW(LaplaceScale{INFINITY}, InvalidParameterError);
  EXPECT_DOUBLE_EQ(LaplaceScale(3.0).variance(), 18.0);
}

TEST(LaplaceSampleTest, UnitScaleVariance) {
  const SampleMoments m = LaplaceMoments(1.0, 1000000, 11);
  EXPECT_NEAR(m.variance, 2.0, 0.02);
  EXPECT_NEAR(m.mean, 0.0, 5.0 * std::sqrt(2.0 / 1e6));
}

TEST(LaplaceSampleTest, BudgetScaleVariance) {
  // b = 2 / eps with eps = 1.
  const SampleMoments m = LaplaceMoments(2.0, 1000000, 12);
  EXPECT_NEAR(m.variance, 8.0, 0.1);
}

TEST(LaplaceSampleTest, VarianceWithinCltBandAcrossScales) {
  constexpr int kDraws = 1000000;
  for (double b : {0.05, 0.5, 4.0, 40.0}) {
    const SampleMoments m = LaplaceMoments(b, kDraws, 100 + static_cast<uint64_t>(b * 100));
    const double expected = 2.0 * b * b;
    // sd of the sample variance is sqrt(5 / N) * expected for Laplace (excess
    // kurtosis 3); 3 sigma.
    EXPECT_LE(std::abs(m.variance - expected), 3.0 * std::sqrt(5.0 / kDraws) * expected)
        << "b = " << b;
  }
}

TEST(RandomStreamTest, SameSeedAndIndexReplays) {
  RandomStream a(42, 0);
  RandomStream b(42, 0);
  for (int i = 0; i < 1000; ++i) {
    ASSERT_EQ(a.Laplace(LaplaceScale(1.0)), b.Laplace(LaplaceScale(1.0)));
    ASSERT_EQ(a.UniformIndex(17), b.UniformIndex(17));
  }
}

TEST(RandomStreamTest, DistinctIndicesAreUncorrelated) {
  RandomStream a(42, 0);
  RandomStream b(42, 1);
  constexpr int kDraws = 200000;
  double cross = 0.0;
  for (int i = 0; i < kDraws; ++i) cross += (a.Uniform() - 0.5) * (b.Uniform() - 0.5);
  // Var((U - 1/2)(V - 1/2)) = 1/144 under independence.
  EXPECT_LE(std::abs(cross / kDraws), 5.0 * std::sqrt(1.0 / 144.0 / kDraws));
}

TEST(RandomStreamTest, UniformStaysInOpenInterval) {
  RandomStream stream(7, 3);
  for (int i = 0; i < 100000; ++i) {
    const double u = stream.Uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(RandomStreamTest, UniformIndexCoversRange) {
  RandomStream stream(9, 0);
  std::vector<int> counts(5, 0);
  for (int i = 0; i < 50000; ++i) ++counts[stream.UniformIndex(5)];
  for (int c : counts) EXPECT_NEAR(c, 10000, 500);
  EXPECT_THROW(stream.UniformIndex(0), InvalidParameterError);
}

TEST(ZeroLaplaceSourceTest, ReturnsZeroButValidatesScale) {
  RandomStream inner(1, 0);
  ZeroLaplaceSource zero(inner);
  EXPECT_EQ(LaplaceSample(zero, LaplaceScale(5.0)), 0.0);
  EXPECT_THROW(LaplaceSample(zero, LaplaceScale(-5.0)), InvalidParameterError);
}

TEST(LedgerSourceTest, RecordsDrawsAndCharges) {
  RandomStream inner(1, 0);
  LedgerSource ledger(inner);
  ledger.Charge("a", 0.25);
  const double v = ledger.Laplace(LaplaceScale(4.0));
  ledger.Charge("b", 0.75);
  ASSERT_EQ(ledger.draws().size(), 1u);
  EXPECT_EQ(ledger.draws()[0].scale, 4.0);
  EXPECT_EQ(ledger.draws()[0].value, v);
  EXPECT_DOUBLE_EQ(ledger.TotalCharged(), 1.0);
}

}  // namespace
}  // namespace dprss
