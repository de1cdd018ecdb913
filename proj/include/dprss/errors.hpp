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

#ifndef DPRSS_ERRORS_HPP_
#define DPRSS_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace dprss {

// A numeric argument (scale, budget, degree, variance) is out of its valid
// range.
class InvalidParameterError : public std::invalid_argument {
 public:
  explicit InvalidParameterError(const std::string& what)
      : std::invalid_argument(what) {}
};

// A data value lies outside its declared domain.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// An experiment configuration is malformed or names something unknown.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dprss

#endif  // DPRSS_ERRORS_HPP_
