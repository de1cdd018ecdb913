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

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "dprss/errors.hpp"

namespace dprss {
namespace {

struct Moments {
  double mean;
  double stddev;
  double median;
};

Moments Summarize(std::vector<double> values) {
  const auto count = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= count;
  double stddev = std::numeric_limits<double>::quiet_NaN();
  if (values.size() > 1) {
    double squares = 0.0;
    for (double v : values) squares += (v - mean) * (v - mean);
    stddev = std::sqrt(squares / (count - 1.0));
  }
  std::sort(values.begin(), values.end());
  const size_t mid = values.size() / 2;
  const double median =
      values.size() % 2 == 1 ? values[mid] : (values[mid - 1] + values[mid]) / 2.0;
  return {mean, stddev, median};
}

// Welford accumulator.
class RunningVariance {
 public:
  void Add(double value) {
    ++count_;
    const double delta = value - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (value - mean_);
  }
  double mean() const { return mean_; }
  double variance() const { return m2_ / static_cast<double>(count_ - 1); }

 private:
  int64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace

void SetupConfig::Validate() const {
  if (n < 0) throw ConfigError("n must be non-negative");
  if (!std::isfinite(alpha)) throw ConfigError("alpha must be finite");
  if (!std::isfinite(beta)) throw ConfigError("beta must be finite");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw ConfigError("sigma must be finite and non-negative");
  }
}

std::vector<Record> GenerateSetup(const SetupConfig& cfg) {
  RandomStream stream(cfg.seed, kDataStreamBase);
  return GenerateSetup(cfg, stream);
}

std::vector<Record> GenerateSetup(const SetupConfig& cfg, NoiseSource& source) {
  cfg.Validate();
  std::vector<Record> data;
  data.reserve(static_cast<size_t>(cfg.n));
  for (int64_t i = 0; i < cfg.n; ++i) {
    const double x = source.Uniform();
    double y = cfg.alpha * x + cfg.beta;
    if (cfg.sigma > 0.0) y += cfg.sigma * source.StandardNormal();
    data.push_back({x, std::clamp(y, 0.0, 1.0)});
  }
  return data;
}

double L1Error(const Line& truth, const Line& estimate) {
  constexpr int kGridPoints = 1000;
  const double a = truth.alpha - estimate.alpha;
  const double b = truth.beta - estimate.beta;
  double total = 0.0;
  for (int i = 1; i <= kGridPoints; ++i) {
    total += std::abs(a * (static_cast<double>(i) / kGridPoints) + b);
  }
  return total / kGridPoints;
}

double L2Error(const Line& truth, const Line& estimate) {
  const double a = truth.alpha - estimate.alpha;
  const double b = truth.beta - estimate.beta;
  return a * a / 3.0 + a * b + b * b;
}

std::string_view MethodName(Method method) {
  switch (method) {
    case Method::kDpRss:
      return "dp_rss";
    case Method::kDpSs:
      return "dp_ss";
    case Method::kDpTheilSen:
      return "dp_theil_sen";
  }
  return "unknown";
}

Method ParseMethod(std::string_view name) {
  if (name == "dp_rss") return Method::kDpRss;
  if (name == "dp_ss") return Method::kDpSs;
  if (name == "dp_theil_sen") return Method::kDpTheilSen;
  throw ConfigError("unknown method '" + std::string(name) +
                    "' (expected dp_rss, dp_ss or dp_theil_sen)");
}

FitResult RunMethod(Method method, std::span<const Record> data, const PrivacyBudget& budget,
                    NoiseSource& source) {
  switch (method) {
    case Method::kDpRss:
      return DpRssFit(data, budget, source);
    case Method::kDpSs:
      return DpSsFit(data, budget, source);
    case Method::kDpTheilSen:
      return DpTheilSenFit(data, budget, TheilSenHyper{}, source);
  }
  throw ConfigError("unknown method");
}

void ExperimentGrid::Validate() const {
  if (epsilons.empty()) throw ConfigError("epsilons must not be empty");
  for (size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0) || !std::isfinite(epsilons[i])) {
      throw ConfigError("epsilons must be finite and positive");
    }
    if (i > 0 && !(epsilons[i] > epsilons[i - 1])) {
      throw ConfigError("epsilons must be strictly increasing");
    }
  }
  if (iterations < 1) throw ConfigError("iterations must be at least 1");
  if (methods.empty()) throw ConfigError("methods must not be empty");
}

std::vector<ExperimentRow> RunExperiment(const SetupConfig& setup, const ExperimentGrid& grid) {
  setup.Validate();
  grid.Validate();

  std::vector<Method> methods = grid.methods;
  std::sort(methods.begin(), methods.end(),
            [](Method a, Method b) { return MethodName(a) < MethodName(b); });
  methods.erase(std::unique(methods.begin(), methods.end()), methods.end());

  const size_t cells = methods.size() * grid.epsilons.size();
  const auto iterations = static_cast<size_t>(grid.iterations);
  const Line truth{setup.alpha, setup.beta};
  const std::vector<Record> shared =
      grid.fresh_data_per_iteration ? std::vector<Record>{} : GenerateSetup(setup);

  // l1/l2/fallback per [cell][iteration].
  std::vector<double> l1(cells * iterations);
  std::vector<double> l2(cells * iterations);
  std::vector<char> fell_back(cells * iterations);

  const auto run_iteration = [&](size_t iteration) {
    std::vector<Record> fresh;
    if (grid.fresh_data_per_iteration) {
      RandomStream data_stream(setup.seed, kDataStreamBase + iteration);
      fresh = GenerateSetup(setup, data_stream);
    }
    const std::span<const Record> data = grid.fresh_data_per_iteration ? fresh : shared;
    for (size_t m = 0; m < methods.size(); ++m) {
      for (size_t e = 0; e < grid.epsilons.size(); ++e) {
        RandomStream stream(setup.seed, iteration);
        const FitResult fit =
            RunMethod(methods[m], data, PrivacyBudget(grid.epsilons[e]), stream);
        const Line estimate{fit.alpha_hat, fit.beta_hat};
        const size_t slot = (m * grid.epsilons.size() + e) * iterations + iteration;
        l1[slot] = L1Error(truth, estimate);
        l2[slot] = L2Error(truth, estimate);
        fell_back[slot] = fit.fallback ? 1 : 0;
      }
    }
  };

  unsigned threads = grid.threads != 0 ? grid.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(iterations)));
  if (threads == 1) {
    for (size_t i = 0; i < iterations; ++i) run_iteration(i);
  } else {
    std::vector<std::thread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&, t] {
        for (size_t i = t; i < iterations; i += threads) run_iteration(i);
      });
    }
    for (auto& worker : workers) worker.join();
  }

  std::vector<ExperimentRow> rows;
  rows.reserve(cells);
  for (size_t m = 0; m < methods.size(); ++m) {
    for (size_t e = 0; e < grid.epsilons.size(); ++e) {
      const size_t begin = (m * grid.epsilons.size() + e) * iterations;
      const auto first = static_cast<std::ptrdiff_t>(begin);
      const auto last = static_cast<std::ptrdiff_t>(begin + iterations);
      const Moments s1 = Summarize({l1.begin() + first, l1.begin() + last});
      const Moments s2 = Summarize({l2.begin() + first, l2.begin() + last});
      const auto fallbacks = std::count(fell_back.begin() + first, fell_back.begin() + last, 1);
      rows.push_back({methods[m], grid.epsilons[e], grid.iterations, s1.mean, s1.stddev,
                      s2.mean, s2.stddev, s1.median, s2.median,
                      static_cast<double>(fallbacks) / static_cast<double>(iterations)});
    }
  }
  return rows;
}

std::string_view StatisticName(Statistic statistic) {
  switch (statistic) {
    case Statistic::kN:
      return "n";
    case Statistic::kSx2:
      return "S_x2";
    case Statistic::kSxy:
      return "S_xy";
    case Statistic::kSx:
      return "S_x";
    case Statistic::kSy:
      return "S_y";
  }
  return "unknown";
}

double TheoreticalVariance(Statistic statistic, Method method, double epsilon) {
  if (!(epsilon > 0.0)) throw InvalidParameterError("epsilon must be positive");
  const double inv_eps2 = 1.0 / (epsilon * epsilon);
  switch (method) {
    case Method::kDpRss:
      switch (statistic) {
        case Statistic::kN:
          return 12.0 * inv_eps2;
        case Statistic::kSx2:
        case Statistic::kSxy:
          return 20.0 / 3.0 * inv_eps2;
        case Statistic::kSx:
        case Statistic::kSy:
          return 32.0 / 3.0 * inv_eps2;
      }
      break;
    case Method::kDpSs:
      return (statistic == Statistic::kN ? 16.0 : 32.0) * inv_eps2;
    case Method::kDpTheilSen:
      break;
  }
  throw InvalidParameterError("no closed-form variance for this statistic/method");
}

std::vector<VarianceRow> VerifyVariances(double epsilon, int64_t trials, NoiseSource& source) {
  const PrivacyBudget budget(epsilon);
  if (trials < kMinVarianceTrials) {
    throw InvalidParameterError("variance verification needs at least " +
                                std::to_string(kMinVarianceTrials) + " trials");
  }
  // The variances do not depend on the data; any fixed dataset will do.
  const std::vector<Record> data = GenerateSetup({1000, 0.5, 0.2, 0.1, 20240101});
  const GroupStats groups = ExactGroupStats(data);
  const SufficientSums sums = ExactSufficientSums(data);

  constexpr Statistic kStatistics[] = {Statistic::kN, Statistic::kSx2, Statistic::kSxy,
                                       Statistic::kSx, Statistic::kSy};
  RunningVariance rss[5];
  RunningVariance ss[5];
  const double half = epsilon / 2.0;
  for (int64_t t = 0; t < trials; ++t) {
    const RefinedStats r = Refine(PrivatizeGroups(groups, half, half, source));
    rss[0].Add(r.n_hat);
    rss[1].Add(r.s_x2);
    rss[2].Add(r.s_xy);
    rss[3].Add(r.s_x);
    rss[4].Add(r.s_y);
    const SufficientStatsRelease s = PrivatizeSufficientSums(sums, budget, source);
    ss[0].Add(s.n_tilde);
    ss[1].Add(s.s_x2);
    ss[2].Add(s.s_xy);
    ss[3].Add(s.s_x);
    ss[4].Add(s.s_y);
  }

  std::vector<VarianceRow> rows;
  for (int i = 0; i < 5; ++i) {
    const double ratio = ss[i].variance() / rss[i].variance();
    for (Method method : {Method::kDpRss, Method::kDpSs}) {
      const double empirical = method == Method::kDpRss ? rss[i].variance() : ss[i].variance();
      const double theoretical = TheoreticalVariance(kStatistics[i], method, epsilon);
      rows.push_back({kStatistics[i], method, empirical, theoretical,
                      std::abs(empirical - theoretical) / theoretical, ratio});
    }
  }
  return rows;
}

}  // namespace dprss
