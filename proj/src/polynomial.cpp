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

#include "dprss/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include "dprss/compensated_sum.hpp"
#include "dprss/errors.hpp"

namespace dprss {
namespace {

constexpr double kSingularityThreshold = 1e-12;

void CheckDegree(int degree) {
  if (degree < 1) {
    throw InvalidParameterError("polynomial degree must be at least 1, got " +
                                std::to_string(degree));
  }
}

}  // namespace

PolyFitResult PolyFitResult::Fallback(int degree) {
  PolyFitResult result{Eigen::VectorXd::Zero(degree + 1), true};
  result.coeffs[degree] = 0.5;
  return result;
}

PolyGroupStats ExactPolyGroupStats(std::span<const Record> data, int degree) {
  CheckDegree(degree);
  ValidateRecords(data);
  CompensatedSum<double, Eigen::Dynamic> group1(2 * degree + 1);
  CompensatedSum<double, Eigen::Dynamic> group2(degree + 2);
  for (const Record& r : data) {
    group1.Add(PolySimplexTransformX(r.x, degree));
    group2.Add(PolySimplexTransformXY(r.x, r.y, degree));
  }
  return {group1.Result(), group2.Result()};
}

NoisyPolyGroupStats PrivatizePolyGroups(const PolyGroupStats& exact, double eps1,
                                        double eps2, NoiseSource& source) {
  const LaplaceScale scale1(1.0 / eps1);
  const LaplaceScale scale2(1.0 / eps2);
  NoisyPolyGroupStats noisy{exact.group1, exact.group2, eps1, eps2};
  source.Charge("poly_group1", eps1);
  for (Eigen::Index i = 0; i < noisy.group1.size(); ++i) {
    noisy.group1[i] += source.Laplace(scale1);
  }
  source.Charge("poly_group2", eps2);
  for (Eigen::Index i = 0; i < noisy.group2.size(); ++i) {
    noisy.group2[i] += source.Laplace(scale2);
  }
  return noisy;
}

PolyRefinedStats RefinePoly(const NoisyPolyGroupStats& noisy) {
  if (std::abs(noisy.eps1 - noisy.eps2) >
      1e-12 * std::max(std::abs(noisy.eps1), std::abs(noisy.eps2))) {
    throw InvalidParameterError("RefinePoly requires an equal budget split (eps1 == eps2)");
  }
  const Eigen::Index two_d = noisy.group1.size() - 1;
  const Eigen::Index d = two_d / 2;
  if (noisy.group1.size() < 3 || two_d % 2 != 0 || noisy.group2.size() != d + 2) {
    throw InvalidParameterError("polynomial group dimensions must be 2d + 1 and d + 2");
  }
  const Eigen::VectorXd& g1 = noisy.group1;
  const Eigen::VectorXd& g2 = noisy.group2;
  // Entry holding S_{x^{j-1} - x^j} (j = 1..2d) and S_{(x^{j-1} - x^j) y}
  // (j = 1..d).
  const auto x_step = [&](Eigen::Index j) { return g1[two_d - j + 1]; };
  const auto xy_step = [&](Eigen::Index j) { return g2[d - j + 1]; };
  const double n_x = g1.sum();
  const double n_y = g2.sum();

  const auto combine = [](double sub1, double terms1, double sub2, double terms2) {
    const WeightPair w = OptimalWeights(terms1, terms2);
    return w.w1 * sub1 + w.w2 * sub2;
  };

  PolyRefinedStats refined;
  refined.n_hat = combine(n_x, static_cast<double>(2 * d + 1), n_y,
                          static_cast<double>(d + 2));
  refined.x_powers.resize(two_d + 1);
  refined.x_powers[0] = refined.n_hat;
  for (Eigen::Index l = 1; l <= two_d; ++l) {
    double direct = g1[0];
    for (Eigen::Index j = l + 1; j <= two_d; ++j) direct += x_step(j);
    double indirect = n_y;
    for (Eigen::Index j = 1; j <= l; ++j) indirect -= x_step(j);
    refined.x_powers[l] = combine(direct, static_cast<double>(1 + two_d - l), indirect,
                                  static_cast<double>(d + 2 + l));
  }

  refined.xy_powers.resize(d + 1);
  for (Eigen::Index l = 0; l <= d; ++l) {
    double direct = g2[0];
    for (Eigen::Index j = l + 1; j <= d; ++j) direct += xy_step(j);
    double indirect = n_x;
    for (Eigen::Index j = 1; j <= l; ++j) indirect -= xy_step(j);
    indirect -= g2[d + 1];
    refined.xy_powers[l] = combine(direct, static_cast<double>(1 + d - l), indirect,
                                   static_cast<double>(two_d + 2 + l));
  }
  return refined;
}

PolyFitResult SolvePolyNormalEquations(const PolyRefinedStats& refined, int degree) {
  CheckDegree(degree);
  if (refined.x_powers.size() != 2 * degree + 1 || refined.xy_powers.size() != degree + 1) {
    throw InvalidParameterError("refined statistics do not match the requested degree");
  }
  if (refined.n_hat <= 0.0) return PolyFitResult::Fallback(degree);

  const int size = degree + 1;
  Eigen::MatrixXd gram(size, size);
  Eigen::VectorXd rhs(size);
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) gram(i, j) = refined.x_powers[2 * degree - i - j];
    rhs[i] = refined.xy_powers[degree - i];
  }

  // A Gram matrix of real data is positive definite; this is the d > 1
  // counterpart of the linear det <= 0 check.
  if (gram.llt().info() != Eigen::Success) return PolyFitResult::Fallback(degree);

  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(gram);
  const double scale = gram.cwiseAbs().maxCoeff();
  const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (!(lu.rcond() >= kSingularityThreshold) ||
      !(min_pivot >= kSingularityThreshold * scale)) {
    return PolyFitResult::Fallback(degree);
  }
  PolyFitResult result{lu.solve(rhs), false};
  if (!result.coeffs.allFinite()) return PolyFitResult::Fallback(degree);
  return result;
}

PolyFitResult DpRssPolyFit(std::span<const Record> data, int degree,
                           const PrivacyBudget& budget, NoiseSource& source) {
  const PolyGroupStats exact = ExactPolyGroupStats(data, degree);
  const double half = budget.epsilon() / 2.0;
  return SolvePolyNormalEquations(RefinePoly(PrivatizePolyGroups(exact, half, half, source)),
                                  degree);
}

PolyFitResult DenormalizePolyFit(const PolyFitResult& fit, const Bounds& bounds) {
  bounds.Validate();
  const Eigen::Index degree = fit.coeffs.size() - 1;
  const double dx = bounds.x_max - bounds.x_min;
  const double dy = bounds.y_max - bounds.y_min;
  // Ascending-power coefficients of ((x - x_min) / dx)^k, built by repeated
  // multiplication with (x - x_min) / dx.
  Eigen::VectorXd basis = Eigen::VectorXd::Zero(degree + 1);
  basis[0] = 1.0;
  Eigen::VectorXd ascending = Eigen::VectorXd::Zero(degree + 1);
  for (Eigen::Index k = 0; k <= degree; ++k) {
    ascending += fit.coeffs[degree - k] * basis;
    Eigen::VectorXd next = Eigen::VectorXd::Zero(degree + 1);
    for (Eigen::Index p = 0; p < degree; ++p) {
      next[p + 1] += basis[p] / dx;
      next[p] -= basis[p] * bounds.x_min / dx;
    }
    basis = next;
  }
  ascending *= dy;
  ascending[0] += bounds.y_min;
  return {ascending.reverse(), fit.fallback};
}

SensitivityReport PolySensitivityOracle(SimplexGroup group, int degree, double grid_step) {
  CheckDegree(degree);
  if (!(grid_step > 0.0 && grid_step <= 0.1)) {
    throw InvalidParameterError("grid_step must lie in (0, 0.1]");
  }
  const std::vector<Record> base = {{0.1, 0.9}, {0.5, 0.5}, {0.8, 0.3}};
  const PolyGroupStats without = ExactPolyGroupStats(base, degree);
  const auto steps = static_cast<long long>(std::ceil(1.0 / grid_step - 1e-9));

  SensitivityReport report{0.0, std::numeric_limits<double>::infinity(), 0};
  std::vector<Record> with = base;
  with.push_back({0.0, 0.0});
  for (long long i = 0; i <= steps; ++i) {
    for (long long j = 0; j <= steps; ++j) {
      with.back() = {std::min(1.0, static_cast<double>(i) * grid_step),
                     std::min(1.0, static_cast<double>(j) * grid_step)};
      const PolyGroupStats added = ExactPolyGroupStats(with, degree);
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
