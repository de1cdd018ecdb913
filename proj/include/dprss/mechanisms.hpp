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

#ifndef DPRSS_MECHANISMS_HPP_
#define DPRSS_MECHANISMS_HPP_

#include <span>
#include <vector>

#include "dprss/random.hpp"
#include "dprss/simplex.hpp"

namespace dprss {

// Total privacy budget of one mechanism invocation.
class PrivacyBudget {
 public:
  // Throws InvalidParameterError unless epsilon is finite and positive.
  explicit PrivacyBudget(double epsilon);

  double epsilon() const { return epsilon_; }

 private:
  double epsilon_;
};

// Slope/intercept estimate. A fallback fit is always (0, 0.5).
struct FitResult {
  double alpha_hat;
  double beta_hat;
  bool fallback;

  static FitResult Fallback() { return {0.0, 0.5, true}; }
};

// DP-RSS: the two simplex groups at eps/2 each, refined, then the 2x2 normal
// equations. Falls back when n_hat <= 0 or the determinant is non-positive.
FitResult DpRssFit(std::span<const Record> data, const PrivacyBudget& budget,
                   NoiseSource& source);

// Same as DpRssFit but starting from an already-privatized release. Pure
// post-processing.
FitResult FitFromRefined(const RefinedStats& refined);

// The eight independently privatized sums of the DP-SS baseline, each with
// Lap(4/eps), in the order S_x, S_{1-x}, S_y, S_{1-y}, S_xy, S_{1-xy},
// S_{x^2}, S_{1-x^2}. n_tilde is their sum over four.
struct SufficientStatsRelease {
  double s_x;
  double s_1mx;
  double s_y;
  double s_1my;
  double s_xy;
  double s_1mxy;
  double s_x2;
  double s_1mx2;
  double n_tilde;
};

using SufficientSums = Eigen::Matrix<double, 8, 1>;

// Exact sums in the DpSsRelease order. Validates the records.
SufficientSums ExactSufficientSums(std::span<const Record> data);

// Adds Lap(4/eps) to each exact sum, charging eps/4 per complementary pair.
SufficientStatsRelease PrivatizeSufficientSums(const SufficientSums& exact,
                                               const PrivacyBudget& budget,
                                               NoiseSource& source);

SufficientStatsRelease DpSsRelease(std::span<const Record> data, const PrivacyBudget& budget,
                                   NoiseSource& source);

// DP-SS: covariance/variance ratio from DpSsRelease. Falls back when
// n_tilde <= 0 or the noisy variance term is non-positive.
FitResult DpSsFit(std::span<const Record> data, const PrivacyBudget& budget,
                  NoiseSource& source);

struct TheilSenHyper {
  int k = 1;  // matching rounds
  double r_lo = -2.0;
  double r_hi = 2.0;
};

// Projections of one matched pair onto x = 0.25 and x = 0.75 along the pair's
// slope. Requires x_i != x_j.
struct PairProjection {
  double slope;
  double z25;
  double z75;
};
PairProjection ProjectPair(const Record& a, const Record& b);

// k uniformly random perfect matchings over the record indices. With n odd,
// the index left last by the shuffle is dropped for that round. Pairs are
// appended round after round.
std::vector<std::pair<size_t, size_t>> RandomMatchings(size_t n, int rounds,
                                                       NoiseSource& source);

// DP-Theil-Sen with random matchings: a noisy size at eps/3 and private
// medians of the 0.25/0.75 projections at eps/3 each. Falls back for n < 2 or
// when every matched pair has equal x.
FitResult DpTheilSenFit(std::span<const Record> data, const PrivacyBudget& budget,
                        const TheilSenHyper& hyper, NoiseSource& source);

// Declared bounding box of raw data.
struct Bounds {
  double x_min;
  double x_max;
  double y_min;
  double y_max;

  // Throws InvalidParameterError unless both extents are positive and finite.
  void Validate() const;
};

struct RawPoint {
  double x;
  double y;
};

// Affine map of every point into [0, 1]^2. Throws DomainError naming the
// first index outside the bounds.
std::vector<Record> Normalize(std::span<const RawPoint> data, const Bounds& bounds);

// Maps a fit on normalized data back to original coordinates. The fallback
// flag is carried over unchanged.
FitResult DenormalizeFit(const FitResult& fit, const Bounds& bounds);

}  // namespace dprss

#endif  // DPRSS_MECHANISMS_HPP_
