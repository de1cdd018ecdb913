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

#include "dprss/evaluation.hpp"

#include <cmath>
#include <vector>

#include "dprss/errors.hpp"
#include "gtest/gtest.h"

namespace dprss {
namespace {

// Midpoint rule on `points` cells of [0, 1].
template <typename F>
double Quadrature(F f, int points) {
  double total = 0.0;
  for (int i = 0; i < points; ++i) total += f((i + 0.5) / points);
  return total / points;
}

TEST(GenerateSetupTest, StandardSetupsRespectBoundsAndSize) {
  for (const SetupConfig& cfg : {Setup1(), Setup2()}) {
    const std::vector<Record> data = GenerateSetup(cfg);
    ASSERT_EQ(static_cast<int64_t>(data.size()), cfg.n);
    for (const Record& r : data) {
      ASSERT_GE(r.x, 0.0);
      ASSERT_LE(r.x, 1.0);
      ASSERT_GE(r.y, 0.0);
      ASSERT_LE(r.y, 1.0);
    }
  }
  EXPECT_EQ(Setup1().n, 5000);
  EXPECT_EQ(Setup1().alpha, -0.7);
  EXPECT_EQ(Setup1().beta, 0.8);
  EXPECT_EQ(Setup1().sigma, 0.05);
  EXPECT_EQ(Setup2().n, 10000);
  EXPECT_EQ(Setup2().alpha, 0.5);
  EXPECT_EQ(Setup2().beta, 0.2);
  EXPECT_EQ(Setup2().sigma, 0.1);
}

TEST(GenerateSetupTest, NoiselessConstantLine) {
  for (const Record& r : GenerateSetup({500, 0.0, 0.5, 0.0, 9})) EXPECT_EQ(r.y, 0.5);
}

TEST(GenerateSetupTest, DeterministicInSeed) {
  const auto a = GenerateSetup({100, 0.5, 0.2, 0.1, 3});
  const auto b = GenerateSetup({100, 0.5, 0.2, 0.1, 3});
  const auto c = GenerateSetup({100, 0.5, 0.2, 0.1, 4});
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].x, b[i].x);
    EXPECT_EQ(a[i].y, b[i].y);
  }
  EXPECT_NE(a[0].x, c[0].x);
}

TEST(GenerateSetupTest, ResidualsLookGaussian) {
  // Far from the clipping edges the residual mean is 0 and its sd is sigma.
  const auto data = GenerateSetup({200000, 0.0, 0.5, 0.1, 5});
  double sum = 0, sq = 0;
  for (const Record& r : data) {
    sum += r.y - 0.5;
    sq += (r.y - 0.5) * (r.y - 0.5);
  }
  EXPECT_NEAR(sum / data.size(), 0.0, 5 * 0.1 / std::sqrt(200000.0));
  EXPECT_NEAR(std::sqrt(sq / data.size()), 0.1, 0.001);
}

TEST(GenerateSetupTest, RejectsBadConfig) {
  EXPECT_THROW(GenerateSetup({-1, 0, 0.5, 0.1, 1}), ConfigError);
  EXPECT_THROW(GenerateSetup({10, 0, 0.5, -0.1, 1}), ConfigError);
}

TEST(L1ErrorTest, Examples) {
  EXPECT_EQ(L1Error({0.3, 0.4}, {0.3, 0.4}), 0.0);
  // (1/1000) * sum_{i=1}^{1000} i / 1000 = 1001 / 2000.
  EXPECT_NEAR(L1Error({1.0, 0.0}, {0.0, 0.0}), 0.5005, 1e-12);
  EXPECT_NEAR(L1Error({0.0, 0.1}, {0.0, 0.0}), 0.1, 1e-12);
}

TEST(L1ErrorTest, AgreesWithQuadratureWithinGridBound) {
  RandomStream gen(1, 0);
  for (int i = 0; i < 200; ++i) {
    const double a = -2 + 4 * gen.Uniform();
    const double b = -2 + 4 * gen.Uniform();
    const double q = Quadrature([&](double x) { return std::abs(a * x + b); }, 1000000);
    EXPECT_NEAR(L1Error({a, b}, {0, 0}), q, 1e-3);
  }
}

TEST(L2ErrorTest, Examples) {
  EXPECT_NEAR(L2Error({1.0, 0.0}, {0.0, 0.0}), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(L2Error({0.0, 0.1}, {0.0, 0.0}), 0.01, 1e-15);
  EXPECT_NEAR(L2Error({-0.1, 0.05}, {0.0, 0.0}), 0.01 / 3 - 0.005 + 0.0025, 1e-15);
  EXPECT_EQ(L2Error({0.2, 0.7}, {0.2, 0.7}), 0.0);
}

TEST(L2ErrorTest, AgreesWithQuadrature) {
  RandomStream gen(2, 0);
  for (int i = 0; i < 100; ++i) {
    const double a = -2 + 4 * gen.Uniform();
    const double b = -2 + 4 * gen.Uniform();
    const double q = Quadrature([&](double x) { return (a * x + b) * (a * x + b); }, 1000000);
    EXPECT_NEAR(L2Error({a, b}, {0, 0}), q, 1e-9);
    EXPECT_GE(L2Error({a, b}, {0, 0}), 0.0);
  }
}

TEST(MethodTest, NamesRoundTrip) {
  for (Method m : {Method::kDpRss, Method::kDpSs, Method::kDpTheilSen}) {
    EXPECT_EQ(ParseMethod(MethodName(m)), m);
  }
  EXPECT_THROW(ParseMethod("dp_sgd"), ConfigError);
}

TEST(ExperimentGridTest, Validation) {
  ExperimentGrid grid;
  grid.epsilons = {1.0, 0.5};
  EXPECT_THROW(grid.Validate(), ConfigError);
  grid.epsilons = {0.5, 0.5};
  EXPECT_THROW(grid.Validate(), ConfigError);
  grid.epsilons = {0.5, 1.0};
  grid.iterations = 0;
  EXPECT_THROW(grid.Validate(), ConfigError);
  grid.iterations = 1;
  grid.methods.clear();
  EXPECT_THROW(grid.Validate(), ConfigError);
}

TEST(RunExperimentTest, RowsSortedAndReproducible) {
  ExperimentGrid grid;
  grid.epsilons = {0.5, 2.0};
  grid.iterations = 30;
  grid.methods = {Method::kDpTheilSen, Method::kDpRss, Method::kDpSs};
  const SetupConfig setup{400, 0.5, 0.2, 0.1, 7};
  const auto rows = RunExperiment(setup, grid);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0].method, Method::kDpRss);
  EXPECT_EQ(rows[2].method, Method::kDpSs);
  EXPECT_EQ(rows[4].method, Method::kDpTheilSen);
  EXPECT_EQ(rows[0].epsilon, 0.5);
  EXPECT_EQ(rows[1].epsilon, 2.0);

  grid.threads = 4;
  const auto threaded = RunExperiment(setup, grid);
  for (size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].mean_l1, threaded[i].mean_l1);
    EXPECT_EQ(rows[i].std_l2, threaded[i].std_l2);
    EXPECT_EQ(rows[i].median_l2, threaded[i].median_l2);
  }
}

TEST(RunExperimentTest, SingleIterationHasUndefinedSpread) {
  ExperimentGrid grid;
  grid.epsilons = {1.0};
  grid.iterations = 1;
  grid.methods = {Method::kDpRss};
  const auto rows = RunExperiment({100, 0.5, 0.2, 0.1, 1}, grid);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_TRUE(std::isnan(rows[0].std_l1));
  EXPECT_EQ(rows[0].mean_l1, rows[0].median_l1);
}

TEST(RunExperimentTest, FreshDataChangesResultsButStaysDeterministic) {
  ExperimentGrid grid;
  grid.epsilons = {1.0};
  grid.iterations = 20;
  grid.methods = {Method::kDpRss};
  const SetupConfig setup{300, 0.5, 0.2, 0.1, 1};
  const auto shared = RunExperiment(setup, grid);
  grid.fresh_data_per_iteration = true;
  const auto fresh = RunExperiment(setup, grid);
  const auto fresh_again = RunExperiment(setup, grid);
  EXPECT_NE(shared[0].mean_l1, fresh[0].mean_l1);
  EXPECT_EQ(fresh[0].mean_l1, fresh_again[0].mean_l1);
}

TEST(VarianceTest, TheoreticalEntries) {
  EXPECT_DOUBLE_EQ(TheoreticalVariance(Statistic::kN, Method::kDpRss, 1.0), 12.0);
  EXPECT_DOUBLE_EQ(TheoreticalVariance(Statistic::kSx2, Method::kDpRss, 1.0), 20.0 / 3.0);
  EXPECT_DOUBLE_EQ(TheoreticalVariance(Statistic::kSxy, Method::kDpRss, 1.0), 20.0 / 3.0);
  EXPECT_DOUBLE_EQ(TheoreticalVariance(Statistic::kSx, Method::kDpRss, 1.0), 32.0 / 3.0);
  EXPECT_DOUBLE_EQ(TheoreticalVariance(Statistic::kSy, Method::kDpRss, 1.0), 32.0 / 3.0);
  EXPECT_DOUBLE_EQ(TheoreticalVariance(Statistic::kN, Method::kDpSs, 1.0), 16.0);
  for (Statistic s : {Statistic::kSx2, Statistic::kSxy, Statistic::kSx, Statistic::kSy}) {
    EXPECT_DOUBLE_EQ(TheoreticalVariance(s, Method::kDpSs, 1.0), 32.0);
  }
  for (Statistic s : {Statistic::kN, Statistic::kSx2, Statistic::kSx}) {
    for (Method m : {Method::kDpRss, Method::kDpSs}) {
      EXPECT_DOUBLE_EQ(TheoreticalVariance(s, m, 2.0), TheoreticalVariance(s, m, 1.0) / 4);
    }
  }
  EXPECT_THROW(TheoreticalVariance(Statistic::kN, Method::kDpTheilSen, 1.0),
               InvalidParameterError);
}

TEST(VarianceTest, RejectsTooFewTrials) {
  RandomStream stream(1, 0);
  EXPECT_THROW(VerifyVariances(1.0, 1000, stream), InvalidParameterError);
}

TEST(VarianceTest, EmpiricalMatchesTheoryAtHalfEpsilon) {
  RandomStream stream(3, 0);
  const auto rows = VerifyVariances(0.5, 200000, stream);
  ASSERT_EQ(rows.size(), 10u);
  for (const VarianceRow& row : rows) {
    EXPECT_EQ(row.theoretical_var, TheoreticalVariance(row.statistic, row.method, 0.5));
    EXPECT_LT(row.relative_error, 0.03) << StatisticName(row.statistic);
  }
}

}  // namespace
}  // namespace dprss
