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

#include "dprss/random.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "dprss/errors.hpp"

namespace dprss {
namespace {

constexpr double kTwoPow53Inv = 1.0 / 9007199254740992.0;

}  // namespace

LaplaceScale::LaplaceScale(double b) : b_(b) {
  if (!(b > 0.0) || !std::isfinite(b)) {
    throw InvalidParameterError("Laplace scale must be finite and positive, got " +
                                std::to_string(b));
  }
}

double NoiseSource::Laplace(const LaplaceScale& scale) {
  // Inverse CDF: u in (-1/2, 1/2), x = -b sgn(u) ln(1 - 2|u|).
  const double u = Uniform() - 0.5;
  const double magnitude = -scale.value() * std::log1p(-2.0 * std::fabs(u));
  return u < 0.0 ? -magnitude : magnitude;
}

uint64_t NoiseSource::UniformIndex(uint64_t bound) {
  if (bound == 0) throw InvalidParameterError("UniformIndex bound must be positive");
  const auto index = static_cast<uint64_t>(Uniform() * static_cast<double>(bound));
  return index < bound ? index : bound - 1;
}

double NoiseSource::StandardNormal() {
  const double u1 = Uniform();
  const double u2 = Uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

RandomStream::RandomStream(uint64_t seed, uint64_t stream_index)
    : seed_(seed), stream_index_(stream_index) {
  std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                    static_cast<uint32_t>(stream_index),
                    static_cast<uint32_t>(stream_index >> 32)};
  engine_.seed(seq);
}

double RandomStream::Uniform() {
  // 53 random bits, shifted off zero by half an ulp so the result is in (0, 1).
  return (static_cast<double>(engine_() >> 11) + 0.5) * kTwoPow53Inv;
}

uint64_t RandomStream::UniformIndex(uint64_t bound) {
  if (bound == 0) throw InvalidParameterError("UniformIndex bound must be positive");
  // Rejection sampling against the largest multiple of bound.
  const uint64_t limit = std::numeric_limits<uint64_t>::max() -
                         std::numeric_limits<uint64_t>::max() % bound;
  uint64_t draw;
  do {
    draw = engine_();
  } while (draw >= limit);
  return draw % bound;
}

double LedgerSource::Laplace(const LaplaceScale& scale) {
  const double value = inner_.Laplace(scale);
  draws_.push_back({scale.value(), value});
  return value;
}

void LedgerSource::Charge(std::string_view release, double epsilon) {
  charges_.push_back({std::string(release), epsilon});
  inner_.Charge(release, epsilon);
}

double LedgerSource::TotalCharged() const {
  double total = 0.0;
  for (const auto& charge : charges_) total += charge.epsilon;
  return total;
}

double LaplaceSample(NoiseSource& source, const LaplaceScale& scale) {
  return source.Laplace(scale);
}

}  // namespace dprss
