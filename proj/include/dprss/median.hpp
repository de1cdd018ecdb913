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

#ifndef DPRSS_MEDIAN_HPP_
#define DPRSS_MEDIAN_HPP_

#include <span>
#include <vector>

#include "dprss/random.hpp"

namespace dprss {

struct MedianResult {
  double value;
  // Set when there were no values to take the median of; value is then the
  // midpoint of the clipping range.
  bool degenerate;
};

// A candidate output interval of the private median and its selection
// probability.
struct MedianInterval {
  double lo;
  double hi;
  double probability;
};

// Selection distribution of the exponential-mechanism median.
//
// Values are clipped to [clip_lo, clip_hi] and sorted. The m + 1 intervals
// between consecutive points of {clip_lo, sorted values, clip_hi} are
// returned in order; interval i has i values below it and m - i at or above
// it, utility u_i = -|i - (m - i)| / 2, and probability proportional to
// length_i * exp(epsilon * u_i / 2). Zero-length intervals get probability 0.
// Weights are normalized in log space.
std::vector<MedianInterval> MedianIntervalDistribution(std::span<const double> values,
                                                       double epsilon, double clip_lo,
                                                       double clip_hi);

// epsilon-DP median under add/remove adjacency: picks an interval from
// MedianIntervalDistribution and returns a uniform point inside it. Charges
// `epsilon` to `source`. An empty input returns the clipping midpoint with
// the degenerate flag set and consumes no randomness.
MedianResult DpMedian(std::span<const double> values, double epsilon, double clip_lo,
                      double clip_hi, NoiseSource& source);

}  // namespace dprss

#endif  // DPRSS_MEDIAN_HPP_
