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

#ifndef DPRSS_EVALUATION_HPP_
#define DPRSS_EVALUATION_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dprss/mechanisms.hpp"
#include "dprss/random.hpp"
#include "dprss/simplex.hpp"

namespace dprss {

// Synthetic linear-model setup: x ~ U[0, 1], y = clip(alpha x + beta + e, 0, 1)
// with e ~ N(0, sigma^2).
struct SetupConfig {
  int64_t n;
  double alpha;
  double beta;
  double sigma;
  uint64_t seed;

  void Validate() const;
};

inline SetupConfig Setup1(uint64_t seed = 1) { return {5000, -0.7, 0.8, 0.05, seed}; }
inline SetupConfig Setup2(uint64_t seed = 2) { return {10000, 0.5, 0.2, 0.1, seed}; }

// Stream index reserved for the shared dataset of a setup; mechanism
// iterations use small indices.
inline constexpr uint64_t kDataStreamBase = uint64_t{1} << 63;

// Deterministic in cfg.seed; draws from stream (seed, kDataStreamBase).
std::vector<Record> GenerateSetup(const SetupConfig& cfg);

// Same model, drawing from an explicit source.
std::vector<Record> GenerateSetup(const SetupConfig& cfg, NoiseSource& source);

struct Line {
  double alpha;
  double beta;
};

// Mean of |(alpha - alpha_hat) x + (beta - beta_hat)| over x = i / 1000,
// i = 1..1000.
double L1Error(const Line& truth, const Line& estimate);

// Closed form of the integral over [0, 1] of ((alpha - alpha_hat) x + (beta - beta_hat))^2.
double L2Error(const Line& truth, const Line& estimate);

enum class Method { kDpRss, kDpSs, kDpTheilSen };

std::string_view MethodName(Method method);
// Throws ConfigError for anything other than dp_rss, dp_ss, dp_theil_sen.
Method ParseMethod(std::string_view name);

FitResult RunMethod(Method method, std::span<const Record> data, const PrivacyBudget& budget,
                    NoiseSource& source);

struct ExperimentGrid {
  std::vector<double> epsilons;  // strictly increasing, positive
  int64_t iterations = 1000;
  std::vector<Method> methods = {Method::kDpRss, Method::kDpSs, Method::kDpTheilSen};
  // Regenerate the dataset for every iteration instead of sharing one.
  bool fresh_data_per_iteration = false;
  // 0 uses std::thread::hardware_concurrency().
  unsigned threads = 0;

  void Validate() const;
};

inline std::vector<double> DefaultEpsilonGrid() { return {0.1, 0.25, 0.5, 1, 2, 4, 8}; }

struct ExperimentRow {
  Method method;
  double epsilon;
  int64_t iterations;
  double mean_l1;
  double std_l1;  // sample standard deviation; NaN for a single iteration
  double mean_l2;
  double std_l2;
  double median_l1;
  double median_l2;
  double fallback_rate;
};

// Every (method, epsilon) cell over grid.iterations runs. Iteration i uses
// stream (setup.seed, i) for every method and epsilon. Rows are sorted by
// (method name, epsilon). Iterations may run on several threads; results are
// written into an indexed buffer and reduced in index order.
std::vector<ExperimentRow> RunExperiment(const SetupConfig& setup, const ExperimentGrid& grid);

enum class Statistic { kN, kSx2, kSxy, kSx, kSy };
std::string_view StatisticName(Statistic statistic);

struct VarianceRow {
  Statistic statistic;
  Method method;  // kDpRss or kDpSs
  double empirical_var;
  double theoretical_var;
  double relative_error;
  double improvement_ratio;  // empirical DP-SS var / empirical DP-RSS var
};

inline constexpr int64_t kMinVarianceTrials = 100000;

// Repeatedly privatizes one fixed dataset with both DP-RSS (refined) and
// DP-SS and compares the empirical variance of each released statistic with
// its closed form. Rows come statistic by statistic, DP-RSS before DP-SS.
std::vector<VarianceRow> VerifyVariances(double epsilon, int64_t trials, NoiseSource& source);

// Closed-form variances at budget epsilon.
double TheoreticalVariance(Statistic statistic, Method method, double epsilon);

}  // namespace dprss

#endif  // DPRSS_EVALUATION_HPP_
