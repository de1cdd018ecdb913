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

#include "dprss/mechanisms.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "dprss/compensated_sum.hpp"
#include "dprss/errors.hpp"
#include "dprss/median.hpp"

namespace dprss {

PrivacyBudget::PrivacyBudget(double epsilon) : epsilon_(epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidParameterError("epsilon must be finite and positive, got " +
                                std::to_string(epsilon));
  }
}

FitResult FitFromRefined(const RefinedStats& refined) {
  if (refined.n_hat <= 0.0) return FitResult::Fallback();
  const double det = refined.s_x2 * refined.n_hat - refined.s_x * refined.s_x;
  if (!(det > 0.0)) return FitResult::Fallback();
  return {(refined.n_hat * refined.s_xy - refined.s_x * refined.s_y) / det,
          (refined.s_x2 * refined.s_y - refined.s_x * refined.s_xy) / det, false};
}

FitResult DpRssFit(std::span<const Record> data, const PrivacyBudget& budget,
                   NoiseSource& source) {
  const GroupStats exact = ExactGroupStats(data);
  const double half = budget.epsilon() / 2.0;
  return FitFromRefined(Refine(PrivatizeGroups(exact, half, half, source)));
}

SufficientSums ExactSufficientSums(std::span<const Record> data) {
  ValidateRecords(data);
  CompensatedSum<double, 8> sums;
  SufficientSums term;
  for (const Record& r : data) {
    const double xy = r.x * r.y;
    const double x2 = r.x * r.x;
    term << r.x, 1.0 - r.x, r.y, 1.0 - r.y, xy, 1.0 - xy, x2, 1.0 - x2;
    sums.Add(term);
  }
  return sums.Result();
}

SufficientStatsRelease PrivatizeSufficientSums(const SufficientSums& exact,
                                               const PrivacyBudget& budget,
                                               NoiseSource& source) {
  SufficientSums noisy = exact;
  const double pair_epsilon = budget.epsilon() / 4.0;
  const LaplaceScale scale(1.0 / pair_epsilon);
  static constexpr const char* kPairs[] = {"dp_ss_x", "dp_ss_y", "dp_ss_xy", "dp_ss_x2"};
  for (int pair = 0; pair < 4; ++pair) {
    source.Charge(kPairs[pair], pair_epsilon);
    noisy[2 * pair] += source.Laplace(scale);
    noisy[2 * pair + 1] += source.Laplace(scale);
  }
  return {noisy[0], noisy[1], noisy[2], noisy[3], noisy[4],
          noisy[5], noisy[6], noisy[7], noisy.sum() / 4.0};
}

SufficientStatsRelease DpSsRelease(std::span<const Record> data, const PrivacyBudget& budget,
                                   NoiseSource& source) {
  return PrivatizeSufficientSums(ExactSufficientSums(data), budget, source);
}

FitResult DpSsFit(std::span<const Record> data, const PrivacyBudget& budget,
                  NoiseSource& source) {
  const SufficientStatsRelease s = DpSsRelease(data, budget, source);
  if (s.n_tilde <= 0.0) return FitResult::Fallback();
  const double ncov = s.s_xy - s.s_x * s.s_y / s.n_tilde;
  const double nvar = s.s_x2 - s.s_x * s.s_x / s.n_tilde;
  if (!(nvar > 0.0)) return FitResult::Fallback();
  const double alpha = ncov / nvar;
  return {alpha, (s.s_y - alpha * s.s_x) / s.n_tilde, false};
}

PairProjection ProjectPair(const Record& a, const Record& b) {
  if (a.x == b.x) throw InvalidParameterError("ProjectPair requires distinct x");
  const double slope = (b.y - a.y) / (b.x - a.x);
  const double mid_x = (a.x + b.x) / 2.0;
  const double mid_y = (a.y + b.y) / 2.0;
  return {slope, slope * (0.25 - mid_x) + mid_y, slope * (0.75 - mid_x) + mid_y};
}

std::vector<std::pair<size_t, size_t>> RandomMatchings(size_t n, int rounds,
                                                       NoiseSource& source) {
  std::vector<std::pair<size_t, size_t>> pairs;
  pairs.reserve(static_cast<size_t>(rounds) * (n / 2));
  std::vector<size_t> order(n);
  for (int round = 0; round < rounds; ++round) {
    std::iota(order.begin(), order.end(), size_t{0});
    for (size_t i = n; i > 1; --i) {
      std::swap(order[i - 1], order[source.UniformIndex(i)]);
    }
    for (size_t i = 0; i + 1 < n; i += 2) pairs.emplace_back(order[i], order[i + 1]);
  }
  return pairs;
}

FitResult DpTheilSenFit(std::span<const Record> data, const PrivacyBudget& budget,
                        const TheilSenHyper& hyper, NoiseSource& source) {
  if (hyper.k < 1) throw InvalidParameterError("Theil-Sen needs k >= 1 rounds");
  if (!(hyper.r_lo < hyper.r_hi)) {
    throw InvalidParameterError("Theil-Sen clipping bounds need r_lo < r_hi");
  }
  ValidateRecords(data);
  if (data.size() < 2) return FitResult::Fallback();

  const double share = budget.epsilon() / 3.0;
  source.Charge("theil_sen_size", share);
  // The noisy size only occupies DPmed's hyperparameter slot; the rank utility
  // does not depend on it.
  [[maybe_unused]] const double n_tilde =
      static_cast<double>(data.size()) + source.Laplace(LaplaceScale(1.0 / share));

  std::vector<double> z25;
  std::vector<double> z75;
  for (const auto& [i, j] : RandomMatchings(data.size(), hyper.k, source)) {
    if (data[j].x == data[i].x) continue;
    const PairProjection p = ProjectPair(data[i], data[j]);
    z25.push_back(p.z25);
    z75.push_back(p.z75);
  }

  const MedianResult p25 = DpMedian(z25, share, hyper.r_lo, hyper.r_hi, source);
  const MedianResult p75 = DpMedian(z75, share, hyper.r_lo, hyper.r_hi, source);
  if (p25.degenerate || p75.degenerate) return FitResult::Fallback();

  const double alpha = (p75.value - p25.value) / 0.5;
  return {alpha, p25.value - alpha * 0.25, false};
}

void Bounds::Validate() const {
  const bool finite = std::isfinite(x_min) && std::isfinite(x_max) &&
                      std::isfinite(y_min) && std::isfinite(y_max);
  if (!finite || !(x_min < x_max) || !(y_min < y_max)) {
    throw InvalidParameterError("bounds need finite x_min < x_max and y_min < y_max");
  }
}

std::vector<Record> Normalize(std::span<const RawPoint> data, const Bounds& bounds) {
  bounds.Validate();
  const double dx = bounds.x_max - bounds.x_min;
  const double dy = bounds.y_max - bounds.y_min;
  std::vector<Record> out;
  out.reserve(data.size());
  for (size_t i = 0; i < data.size(); ++i) {
    const RawPoint& p = data[i];
    if (!(p.x >= bounds.x_min && p.x <= bounds.x_max && p.y >= bounds.y_min &&
          p.y <= bounds.y_max)) {
      throw DomainError("point " + std::to_string(i) + " (" + std::to_string(p.x) + ", " +
                        std::to_string(p.y) + ") lies outside the declared bounds");
    }
    // Clamp guards against rounding just past 1 at the upper bound.
    out.push_back({std::min(1.0, (p.x - bounds.x_min) / dx),
                   std::min(1.0, (p.y - bounds.y_min) / dy)});
  }
  return out;
}

FitResult DenormalizeFit(const FitResult& fit, const Bounds& bounds) {
  bounds.Validate();
  const double dx = bounds.x_max - bounds.x_min;
  const double dy = bounds.y_max - bounds.y_min;
  return {(dy / dx) * fit.alpha_hat,
          bounds.y_min + dy * (fit.beta_hat - (bounds.x_min / dx) * fit.alpha_hat),
          fit.fallback};
}

}  // namespace dprss
