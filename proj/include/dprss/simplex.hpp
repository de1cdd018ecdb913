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

#ifndef DPRSS_SIMPLEX_HPP_
#define DPRSS_SIMPLEX_HPP_

#include <span>
#include <string>

#include <Eigen/Core>

#include "dprss/errors.hpp"
#include "dprss/random.hpp"

namespace dprss {

// A record of the private dataset; both coordinates lie in [0, 1].
struct Record {
  double x;
  double y;
};

template <typename Scalar>
using Simplex3 = Eigen::Matrix<Scalar, 3, 1>;

// Component order of the x-only group: (S_{x^2}, S_{x-x^2}, S_{1-x}).
enum Group1Index : Eigen::Index { kSx2 = 0, kSxMinusX2 = 1, kSOneMinusX = 2 };
// Component order of the joint group: (S_{xy}, S_{(1-x)y}, S_{1-y}).
enum Group2Index : Eigen::Index { kSxy = 0, kSOneMinusXTimesY = 1, kSOneMinusY = 2 };

namespace internal {

template <typename Scalar>
void CheckUnit(Scalar v, const char* name) {
  if (!(v >= Scalar(0) && v <= Scalar(1))) {
    throw DomainError(std::string(name) + " must lie in [0, 1]");
  }
}

}  // namespace internal

// x -> (x^2, x - x^2, 1 - x). Components are non-negative and sum to 1.
template <typename Scalar>
Simplex3<Scalar> SimplexTransformX(Scalar x) {
  internal::CheckUnit(x, "x");
  const Scalar x2 = x * x;
  return Simplex3<Scalar>(x2, x - x2, Scalar(1) - x);
}

// (x, y) -> (xy, (1 - x)y, 1 - y). Components are non-negative and sum to 1.
template <typename Scalar>
Simplex3<Scalar> SimplexTransformXY(Scalar x, Scalar y) {
  internal::CheckUnit(x, "x");
  internal::CheckUnit(y, "y");
  return Simplex3<Scalar>(x * y, (Scalar(1) - x) * y, Scalar(1) - y);
}

// Throws DomainError naming the first record outside [0, 1]^2.
void ValidateRecords(std::span<const Record> data);

// Exact (pre-noise) sums of the two simplex transforms. Each group sums to n.
struct GroupStats {
  Eigen::Vector3d group1 = Eigen::Vector3d::Zero();
  Eigen::Vector3d group2 = Eigen::Vector3d::Zero();
};

// The two groups after Laplace noise, with the budget spent on each.
struct NoisyGroupStats {
  Eigen::Vector3d group1;
  Eigen::Vector3d group2;
  double eps1;
  double eps2;
};

// Post-processed estimates of the OLS sufficient statistics.
struct RefinedStats {
  double n_hat;
  double s_x;
  double s_y;
  double s_x2;
  double s_xy;
};

// Compensated componentwise sums over all records. Validates the records
// first.
GroupStats ExactGroupStats(std::span<const Record> data);

// Adds one Lap(1/eps1) draw to each Group 1 component and one Lap(1/eps2)
// draw to each Group 2 component, in component order, Group 1 first. Each
// group has l1-sensitivity 1, so the release is (eps1 + eps2)-DP.
NoisyGroupStats PrivatizeGroups(const GroupStats& exact, double eps1, double eps2,
                                NoiseSource& source);

// Inverse-variance combination of the direct and constraint-based estimator
// of each sufficient statistic. Requires eps1 == eps2, where the optimal
// weights are the fixed constants 5/6, 1/6 (quadratic sums), 2/3, 1/3
// (linear sums) and 1/2, 1/2 (size). Consumes no randomness.
RefinedStats Refine(const NoisyGroupStats& noisy);

// Weights (w1, w2) minimizing Var(w1 T1 + w2 T2) subject to w1 + w2 = 1 for
// independent unbiased T1, T2 with the given variances.
struct WeightPair {
  double w1;
  double w2;
};
WeightPair OptimalWeights(double var1, double var2);

enum class SimplexGroup { kGroup1, kGroup2 };

struct SensitivityReport {
  double max_l1;
  double min_l1;
  long long grid_points;
};

// Brute-force l1 sensitivity of a group under add/remove adjacency: for every
// added record (x*, y*) on a grid of spacing grid_step over [0, 1]^2 (both
// endpoints included), compares the exact group sums of a fixed base dataset
// with and without the record.
SensitivityReport SensitivityOracle(SimplexGroup group, double grid_step);

}  // namespace dprss

#endif  // DPRSS_SIMPLEX_HPP_
