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

#include "dprss/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "dprss/compensated_sum.hpp"

namespace dprss {
namespace {

void CheckBudget(double eps, const char* name) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw InvalidParameterError(std::string(name) + " must be finite and positive");
  }
}

}  // namespace

void ValidateRecords(std::span<const Record> data) {
  for (size_t i = 0; i < data.size(); ++i) {
    const Record& r = data[i];
    if (!(r.x >= 0.0 && r.x <= 1.0 && r.y >= 0.0 && r.y <= 1.0)) {
      throw DomainError("record " + std::to_string(i) + " (" + std::to_string(r.x) +
                        ", " + std::to_string(r.y) + ") lies outside [0, 1]^2");
    }
  }
}

GroupStats ExactGroupStats(std::span<const Record> data) {
  ValidateRecords(data);
  CompensatedSum<double, 3> group1;
  CompensatedSum<double, 3> group2;
  for (const Record& r : data) {
    group1.Add(SimplexTransformX(r.x));
    group2.Add(SimplexTransformXY(r.x, r.y));
  }
  return {group1.Result(), group2.Result()};
}

NoisyGroupStats PrivatizeGroups(const GroupStats& exact, double eps1, double eps2,
                                NoiseSource& source) {
  CheckBudget(eps1, "eps1");
  CheckBudget(eps2, "eps2");
  const LaplaceScale scale1(1.0 / eps1);
  const LaplaceScale scale2(1.0 / eps2);

  NoisyGroupStats noisy{exact.group1, exact.group2, eps1, eps2};
  source.Charge("simplex_group1", eps1);
  for (Eigen::Index i = 0; i < 3; ++i) noisy.group1[i] += source.Laplace(scale1);
  source.Charge("simplex_group2", eps2);
  for (Eigen::Index i = 0; i < 3; ++i) noisy.group2[i] += source.Laplace(scale2);
  return noisy;
}

RefinedStats Refine(const NoisyGroupStats& noisy) {
  if (std::abs(noisy.eps1 - noisy.eps2) >
      1e-12 * std::max(std::abs(noisy.eps1), std::abs(noisy.eps2))) {
    throw InvalidParameterError("Refine requires an equal budget split (eps1 == eps2)");
  }
  const Eigen::Vector3d& g1 = noisy.group1;
  const Eigen::Vector3d& g2 = noisy.group2;
  const double n_x = g1.sum();
  const double n_y = g2.sum();

  RefinedStats refined;
  refined.n_hat = (n_x + n_y) / 2.0;
  refined.s_x2 = (5.0 / 6.0) * g1[kSx2] +
                 (1.0 / 6.0) * (n_y - (g1[kSxMinusX2] + g1[kSOneMinusX]));
  refined.s_xy = (5.0 / 6.0) * g2[kSxy] +
                 (1.0 / 6.0) * (n_x - (g2[kSOneMinusXTimesY] + g2[kSOneMinusY]));
  refined.s_x = (2.0 / 3.0) * (g1[kSx2] + g1[kSxMinusX2]) +
                (1.0 / 3.0) * (n_y - g1[kSOneMinusX]);
  refined.s_y = (2.0 / 3.0) * (g2[kSxy] + g2[kSOneMinusXTimesY]) +
                (1.0 / 3.0) * (n_x - g2[kSOneMinusY]);
  return refined;
}

WeightPair OptimalWeights(double var1, double var2) {
  if (!(var1 > 0.0) || !(var2 > 0.0) || !std::isfinite(var1) || !std::isfinite(var2)) {
    throw InvalidParameterError("variances must be finite and positive");
  }
  const double total = var1 + var2;
  return {var2 / total, var1 / total};
}

SensitivityReport SensitivityOracle(SimplexGroup group, double grid_step) {
  if (!(grid_step > 0.0 && grid_step <= 0.1)) {
    throw InvalidParameterError("grid_step must lie in (0, 0.1]");
  }
  const std::vector<Record> base = {{0.1, 0.9}, {0.5, 0.5}, {0.8, 0.3}};
  const GroupStats without = ExactGroupStats(base);
  const auto steps = static_cast<long long>(std::ceil(1.0 / grid_step - 1e-9));

  SensitivityReport report{0.0, std::numeric_limits<double>::infinity(), 0};
  std::vector<Record> with = base;
  with.push_back({0.0, 0.0});
  for (long long i = 0; i <= steps; ++i) {
    for (long long j = 0; j <= steps; ++j) {
      with.back() = {std::min(1.0, static_cast<double>(i) * grid_step),
                     std::min(1.0, static_cast<double>(j) * grid_step)};
      const GroupStats added = ExactGroupStats(with);
      const double l1 = group == SimplexGroup::kGroup1
                            ? (added.group1 - without.group1).lpNorm<1>()
                            : (added.group2 - without.group2).lpNorm<1>();
      report.max_l1 = std::max(report.max_l1, l1);
      report.min_l1 = std::min(report.min_l1, l1);
      ++report.grid_points;
    }
  }
  return report;
}

}  // namespace dprss
