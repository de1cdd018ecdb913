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

#ifndef DPRSS_TESTS_TEST_SOURCES_HPP_
#define DPRSS_TESTS_TEST_SOURCES_HPP_

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "dprss/random.hpp"

namespace dprss::testing {

// Returns scripted Laplace values in order (ignoring the scale); uniforms come
// from a seeded stream.
class ScriptedLaplaceSource final : public NoiseSource {
 public:
  explicit ScriptedLaplaceSource(std::vector<double> values, uint64_t seed = 1)
      : values_(std::move(values)), uniforms_(seed, 0) {}

  double Uniform() override { return uniforms_.Uniform(); }
  uint64_t UniformIndex(uint64_t bound) override { return uniforms_.UniformIndex(bound); }
  double Laplace(const LaplaceScale&) override {
    if (next_ >= values_.size()) throw std::out_of_range("script exhausted");
    return values_[next_++];
  }
  size_t consumed() const { return next_; }

 private:
  std::vector<double> values_;
  size_t next_ = 0;
  RandomStream uniforms_;
};

}  // namespace dprss::testing

#endif  // DPRSS_TESTS_TEST_SOURCES_HPP_
