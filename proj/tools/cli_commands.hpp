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

#ifndef DPRSS_TOOLS_CLI_COMMANDS_HPP_
#define DPRSS_TOOLS_CLI_COMMANDS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dprss/mechanisms.hpp"

namespace dprss::cli {

// Bad flags or flag combinations. The CLI exits with status 2.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or out-of-range input data. The CLI exits with status 1.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// 12 significant digits, "NA" for NaN.
std::string FormatNumber(double value);

// Reads a CSV with header "x,y". Errors name the 1-based line.
std::vector<RawPoint> ReadPointsCsv(std::istream& in);

struct FitOptions {
  std::string input_csv;
  std::string mechanism;
  double epsilon = 1.0;
  uint64_t seed = 0;
  std::optional<int> degree;
  std::optional<double> x_min, x_max, y_min, y_max;
};

// Fits once and writes a JSON document to `out`.
void CmdFit(const FitOptions& options, std::ostream& out);

struct ExperimentOptions {
  std::string config_path;
  std::string output_csv;
  unsigned threads = 0;
};

// Writes the results CSV and `<output>.manifest.json`.
void CmdExperiment(const ExperimentOptions& options);

struct VerifyOptions {
  double epsilon = 1.0;
  int64_t trials = 1000000;
  uint64_t seed = 0;
  std::string output_csv;  // empty writes to `out`
};

void CmdVerify(const VerifyOptions& options, std::ostream& out);

// Path of the manifest written next to an output file.
std::string ManifestPath(const std::string& output_path);

}  // namespace dprss::cli

#endif  // DPRSS_TOOLS_CLI_COMMANDS_HPP_
