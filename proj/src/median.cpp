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

#include "dprss/median.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "dprss/errors.hpp"

namespace dprss {
namespace {

void CheckMedianParameters(double epsilon, double clip_lo, double clip_hi) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidParameterError("median epsilon must be finite and positive");
  }
  if (!(clip_lo < clip_hi) || !std::isfinite(clip_lo) || !std::isfinite(clip_hi)) {
    throw InvalidParameterError("median clipping bounds must satisfy lo < hi");
  }
}

}  // namespace

std::vector<MedianInterval> MedianIntervalDistribution(std::span<const double> values,
                                                       double epsilon, double clip_lo,
                                                       double clip_hi) {
  CheckMedianParameters(epsilon, clip_lo, clip_hi);

  std::vector<double> points;
  points.reserve(values.size() + 2);
  points.push_back(clip_lo);
  for (double v : values) points.push_back(std::clamp(v, clip_lo, clip_hi));
  std::sort(points.begin() + 1, points.end());
  points.push_back(clip_hi);

  const auto m = static_cast<long long>(values.size());
  std::vector<MedianInterval> intervals(values.size() + 1);
  std::vector<double> log_weights(intervals.size());
  double max_log_weight = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < intervals.size(); ++i) {
    const double lo = points[i];
    const double hi = points[i + 1];
    const long long below = static_cast<long long>(i);
    const double utility = -static_cast<double>(std::llabs(below - (m - below))) / 2.0;
    const double length = hi - lo;
    log_weights[i] = length > 0.0 ? std::log(length) + epsilon * utility / 2.0
                                  : -std::numeric_limits<double>::infinity();
    max_log_weight = std::max(max_log_weight, log_weights[i]);
    intervals[i] = {lo, hi, 0.0};
  }

  double total = 0.0;
  for (size_t i = 0; i < intervals.size(); ++i) {
    intervals[i].probability = std::exp(log_weights[i] - max_log_weight);
    total += intervals[i].probability;
  }
  for (auto& interval : intervals) interval.probability /= total;
  return intervals;
}

MedianResult DpMedian(std::span<const double> values, double epsilon, double clip_lo,
                      double clip_hi, NoiseSource& source) {
  CheckMedianParameters(epsilon, clip_lo, clip_hi);
  source.Charge("dp_median", epsilon);
  if (values.empty()) return {(clip_lo + clip_hi) / 2.0, true};

  const auto intervals = MedianIntervalDistribution(values, epsilon, clip_lo, clip_hi);
  const double target = source.Uniform();
  double cumulative = 0.0;
  size_t chosen = intervals.size() - 1;
  // Skip trailing zero-mass intervals when rounding leaves target above the
  // final cumulative sum.
  while (chosen > 0 && intervals[chosen].probability == 0.0) --chosen;
  for (size_t i = 0; i < intervals.size(); ++i) {
    cumulative += intervals[i].probability;
    if (target < cumulative && intervals[i].probability > 0.0) {
      chosen = i;
      break;
    }
  }
  const auto& interval = intervals[chosen];
  const double value = interval.lo + source.Uniform() * (interval.hi - interval.lo);
  return {std::clamp(value, clip_lo, clip_hi), false};
}

}  // namespace dprss
