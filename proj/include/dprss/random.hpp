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

#ifndef DPRSS_RANDOM_HPP_
#define DPRSS_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace dprss {

// Scale b of a zero-mean Laplace distribution. Var(Lap(b)) = 2 b^2.
class LaplaceScale {
 public:
  // Throws InvalidParameterError unless b is finite and positive.
  explicit LaplaceScale(double b);

  double value() const { return b_; }
  double variance() const { return 2.0 * b_ * b_; }

 private:
  double b_;
};

// Source of all randomness consumed by the mechanisms.
//
// Mechanisms draw Laplace noise and uniforms through this interface and report
// every privacy-consuming release through Charge(), so that decorators can
// replace the noise (zero-noise stubs in tests) or audit the budget.
class NoiseSource {
 public:
  virtual ~NoiseSource() = default;

  // Uniform draw on the open interval (0, 1).
  virtual double Uniform() = 0;

  // One Lap(0, b) draw. The default uses the inverse CDF of one Uniform().
  virtual double Laplace(const LaplaceScale& scale);

  // Records that a release with the given label spent `epsilon`. No-op unless
  // a decorator overrides it.
  virtual void Charge(std::string_view /*release*/, double /*epsilon*/) {}

  // Uniform integer in [0, bound). bound must be positive.
  virtual uint64_t UniformIndex(uint64_t bound);

  // Standard normal draw (Box-Muller on two uniforms).
  double StandardNormal();
};

// Seeded 64-bit Mersenne Twister substream. Identical (seed, stream_index)
// pairs replay identical sequences; distinct stream indices are seeded through
// std::seed_seq and behave as independent streams.
class RandomStream final : public NoiseSource {
 public:
  RandomStream(uint64_t seed, uint64_t stream_index);

  double Uniform() override;
  uint64_t UniformIndex(uint64_t bound) override;

  uint64_t seed() const { return seed_; }
  uint64_t stream_index() const { return stream_index_; }

 private:
  uint64_t seed_;
  uint64_t stream_index_;
  std::mt19937_64 engine_;
};

// Forwards uniforms to an inner source but returns 0 for every Laplace draw.
// Scale validation still happens, so parameter errors surface identically.
class ZeroLaplaceSource final : public NoiseSource {
 public:
  explicit ZeroLaplaceSource(NoiseSource& inner) : inner_(inner) {}

  double Uniform() override { return inner_.Uniform(); }
  uint64_t UniformIndex(uint64_t bound) override {
    return inner_.UniformIndex(bound);
  }
  double Laplace(const LaplaceScale&) override { return 0.0; }
  void Charge(std::string_view release, double epsilon) override {
    inner_.Charge(release, epsilon);
  }

 private:
  NoiseSource& inner_;
};

// Decorator that records every Laplace draw and every budget charge.
class LedgerSource final : public NoiseSource {
 public:
  struct LaplaceDraw {
    double scale;
    double value;
  };
  struct BudgetCharge {
    std::string release;
    double epsilon;
  };

  explicit LedgerSource(NoiseSource& inner) : inner_(inner) {}

  double Uniform() override { return inner_.Uniform(); }
  uint64_t UniformIndex(uint64_t bound) override {
    return inner_.UniformIndex(bound);
  }
  double Laplace(const LaplaceScale& scale) override;
  void Charge(std::string_view release, double epsilon) override;

  const std::vector<LaplaceDraw>& draws() const { return draws_; }
  const std::vector<BudgetCharge>& charges() const { return charges_; }
  double TotalCharged() const;

 private:
  NoiseSource& inner_;
  std::vector<LaplaceDraw> draws_;
  std::vector<BudgetCharge> charges_;
};

// One draw from Lap(0, scale), advancing `source`.
double LaplaceSample(NoiseSource& source, const LaplaceScale& scale);

}  // namespace dprss

#endif  // DPRSS_RANDOM_HPP_
