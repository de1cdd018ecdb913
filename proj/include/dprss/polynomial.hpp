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

#ifndef DPRSS_POLYNOMIAL_HPP_
#define DPRSS_POLYNOMIAL_HPP_

#include <span>

#include <Eigen/Core>

#include "dprss/mechanisms.hpp"
#include "dprss/random.hpp"
#include "dprss/simplex.hpp"

namespace dprss {

// Degree-d simplex transform of x, dimension 2d + 1:
//   (x^{2d}, x^{2d-1} - x^{2d}, ..., x - x^2, 1 - x).
// The entries telescope to 1. For d = 1 this is SimplexTransformX.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> PolySimplexTransformX(Scalar x, int degree) {
  internal::CheckUnit(x, "x");
  const int dim = 2 * degree + 1;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out(dim);
  // out[k] holds x^{j-1} - x^j with j = 2d - k + 1 for k >= 1.
  Scalar power(1);  // x^{j-1}, starting at j = 1
  for (int k = dim - 1; k >= 1; --k) {
    const Scalar next = power * x;
    out[k] = power - next;
    power = next;
  }
  out[0] = power;
  return out;
}

// Degree-d joint transform of (x, y), dimension d + 2:
//   (x^d y, (x^{d-1} - x^d) y, ..., (1 - x) y, 1 - y).
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> PolySimplexTransformXY(Scalar x, Scalar y,
                                                                 int degree) {
  internal::CheckUnit(x, "x");
  internal::CheckUnit(y, "y");
  const int dim = degree + 2;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out(dim);
  out[dim - 1] = Scalar(1) - y;
  Scalar power(1);
  for (int k = dim - 2; k >= 1; --k) {
    const Scalar next = power * x;
    out[k] = (power - next) * y;
    power = next;
  }
  out[0] = power * y;
  return out;
}

struct PolyGroupStats {
  Eigen::VectorXd group1;  // 2d + 1 entries
  Eigen::VectorXd group2;  // d + 2 entries
};

// Noisy groups with their budgets.
struct NoisyPolyGroupStats {
  Eigen::VectorXd group1;
  Eigen::VectorXd group2;
  double eps1;
  double eps2;
};

// Refined power sums. x_powers[l] estimates S_{x^l} for l = 0..2d (entry 0
// is n_hat); xy_powers[l] estimates S_{x^l y} for l = 0..d.
struct PolyRefinedStats {
  double n_hat;
  Eigen::VectorXd x_powers;
  Eigen::VectorXd xy_powers;
};

struct PolyFitResult {
  Eigen::VectorXd coeffs;  // [a_d, ..., a_0]
  bool fallback;

  // (0, ..., 0, 0.5)
  static PolyFitResult Fallback(int degree);
};

PolyGroupStats ExactPolyGroupStats(std::span<const Record> data, int degree);

// One Lap(1/eps1) draw per Group 1 entry, then one Lap(1/eps2) per Group 2
// entry, in entry order.
NoisyPolyGroupStats PrivatizePolyGroups(const PolyGroupStats& exact, double eps1,
                                        double eps2, NoiseSource& source);

// Each target sum has a direct estimator built from its own group and an
// indirect one built from the other group's noisy size minus the remaining
// entries of its own group. Both are sums of m1 and m2 distinct Laplace terms
// of equal variance (eps1 == eps2 required), so they are combined with weights
// m2 / (m1 + m2) and m1 / (m1 + m2).
PolyRefinedStats RefinePoly(const NoisyPolyGroupStats& noisy);

// Solves the (d+1)x(d+1) normal equations X a = y with X(i, j) = S_{x^{2d-i-j}}
// and y(i) = S_{x^{d-i} y}. Falls back when n_hat <= 0, when X is not positive
// definite, or when it is numerically singular (reciprocal condition estimate
// below 1e-12 or an LU pivot below 1e-12 * max|X|).
PolyFitResult SolvePolyNormalEquations(const PolyRefinedStats& refined, int degree);

// DP-RSS for a degree-d polynomial with the budget split evenly between the
// two groups.
PolyFitResult DpRssPolyFit(std::span<const Record> data, int degree,
                           const PrivacyBudget& budget, NoiseSource& source);

// Maps coefficients fitted on normalized data back to original coordinates by
// expanding y_min + dy * sum_k a'_k ((x - x_min) / dx)^k. The fallback flag is
// carried over.
PolyFitResult DenormalizePolyFit(const PolyFitResult& fit, const Bounds& bounds);

// Brute-force add/remove l1 sensitivity of the degree-d groups over a grid of
// added records, as SensitivityOracle does for the linear groups.
SensitivityReport PolySensitivityOracle(SimplexGroup group, int degree, double grid_step);

}  // namespace dprss

#endif  // DPRSS_POLYNOMIAL_HPP_
