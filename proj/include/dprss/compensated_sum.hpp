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

#ifndef DPRSS_COMPENSATED_SUM_HPP_
#define DPRSS_COMPENSATED_SUM_HPP_

#include <cmath>

#include <Eigen/Core>

namespace dprss {

// Neumaier (improved Kahan-Babuska) summation, componentwise over a dense
// column vector.
template <typename Scalar, int Rows>
class CompensatedSum {
 public:
  using Vector = Eigen::Matrix<Scalar, Rows, 1>;

  explicit CompensatedSum(Eigen::Index size = Rows > 0 ? Rows : 0)
      : sum_(Vector::Zero(size)), compensation_(Vector::Zero(size)) {}

  template <typename Derived>
  void Add(const Eigen::MatrixBase<Derived>& term) {
    for (Eigen::Index i = 0; i < sum_.size(); ++i) {
      const Scalar t = sum_[i] + term[i];
      if (std::abs(sum_[i]) >= std::abs(term[i])) {
        compensation_[i] += (sum_[i] - t) + term[i];
      } else {
        compensation_[i] += (term[i] - t) + sum_[i];
      }
      sum_[i] = t;
    }
  }

  Vector Result() const { return sum_ + compensation_; }

 private:
  Vector sum_;
  Vector compensation_;
};

}  // namespace dprss

#endif  // DPRSS_COMPENSATED_SUM_HPP_
