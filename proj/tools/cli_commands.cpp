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

#include "cli_commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "dprss/errors.hpp"
#include "dprss/evaluation.hpp"
#include "dprss/polynomial.hpp"
#include "dprss/random.hpp"
#include "json.hpp"

namespace dprss::cli {
namespace {

using nlohmann::json;

// JSON numbers carry the same 12 significant digits as the CSV output.
json JsonNumber(double value) {
  if (!std::isfinite(value)) return nullptr;
  return std::strtod(FormatNumber(value).c_str(), nullptr);
}

std::string Trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double ParseField(const std::string& text, size_t line, const char* column) {
  const std::string field = Trim(text);
  char* end = nullptr;
  const double value = std::strtod(field.c_str(), &end);
  if (field.empty() || end != field.c_str() + field.size() || !std::isfinite(value)) {
    throw InputError("line " + std::to_string(line) + ": column " + column +
                     " is not a finite number: '" + field + "'");
  }
  return value;
}

std::string UtcTimestamp() {
  std::time_t now = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    now = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  }
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

void WriteManifest(const std::string& output_path, json manifest) {
  manifest["timestamp"] = UtcTimestamp();
  manifest["output_paths"] = json::array({output_path});
  std::ofstream out(ManifestPath(output_path), std::ios::binary);
  if (!out) throw InputError("cannot write manifest for " + output_path);
  out << manifest.dump(2) << '\n';
}

std::ofstream OpenOutput(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open output file " + path);
  return out;
}

template <typename T>
T ConfigField(const json& config, const char* key) {
  if (!config.contains(key)) throw ConfigError(std::string("missing config field '") + key + "'");
  try {
    return config.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config field '") + key + "' has the wrong type");
  }
}

template <typename T>
T ConfigField(const json& config, const char* key, T fallback) {
  return config.contains(key) ? ConfigField<T>(config, key) : fallback;
}

}  // namespace

std::string FormatNumber(double value) {
  if (std::isnan(value)) return "NA";
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

std::string ManifestPath(const std::string& output_path) {
  return output_path + ".manifest.json";
}

std::vector<RawPoint> ReadPointsCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || Trim(line) != "x,y") {
    throw InputError("line 1: expected header 'x,y'");
  }
  std::vector<RawPoint> points;
  size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (Trim(line).empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw InputError("line " + std::to_string(line_number) + ": expected two fields 'x,y'");
    }
    points.push_back({ParseField(line.substr(0, comma), line_number, "x"),
                      ParseField(line.substr(comma + 1), line_number, "y")});
  }
  return points;
}

void CmdFit(const FitOptions& options, std::ostream& out) {
  static const std::set<std::string> kMechanisms = {"dp_rss", "dp_ss", "dp_theil_sen",
                                                    "dp_rss_poly"};
  if (!kMechanisms.contains(options.mechanism)) {
    throw UsageError("unknown mechanism '" + options.mechanism +
                     "' (expected dp_rss, dp_ss, dp_theil_sen or dp_rss_poly)");
  }
  const bool poly = options.mechanism == "dp_rss_poly";
  if (poly && !options.degree) throw UsageError("--degree is required for dp_rss_poly");
  if (!poly && options.degree) throw UsageError("--degree only applies to dp_rss_poly");
  if (poly && *options.degree < 1) throw UsageError("--degree must be at least 1");
  if (!(options.epsilon > 0.0) || !std::isfinite(options.epsilon)) {
    throw UsageError("--epsilon must be finite and positive");
  }
  const int bound_flags = options.x_min.has_value() + options.x_max.has_value() +
                          options.y_min.has_value() + options.y_max.has_value();
  if (bound_flags != 0 && bound_flags != 4) {
    throw UsageError("--x-min, --x-max, --y-min and --y-max must be given together");
  }

  std::ifstream in(options.input_csv, std::ios::binary);
  if (!in) throw InputError("cannot open input file " + options.input_csv);
  const std::vector<RawPoint> raw = ReadPointsCsv(in);

  std::optional<Bounds> bounds;
  std::vector<Record> data;
  if (bound_flags == 4) {
    bounds = Bounds{*options.x_min, *options.x_max, *options.y_min, *options.y_max};
    try {
      bounds->Validate();
    } catch (const InvalidParameterError& e) {
      throw UsageError(e.what());
    }
    for (size_t i = 0; i < raw.size(); ++i) {
      const RawPoint& p = raw[i];
      if (!(p.x >= bounds->x_min && p.x <= bounds->x_max && p.y >= bounds->y_min &&
            p.y <= bounds->y_max)) {
        throw InputError("line " + std::to_string(i + 2) + ": point outside the declared bounds");
      }
    }
    data = Normalize(raw, *bounds);
  } else {
    for (size_t i = 0; i < raw.size(); ++i) {
      const RawPoint& p = raw[i];
      if (!(p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0)) {
        throw InputError("line " + std::to_string(i + 2) +
                         ": point outside [0, 1]^2 (pass --x-min/--x-max/--y-min/--y-max)");
      }
      data.push_back({p.x, p.y});
    }
  }

  RandomStream stream(options.seed, 0);
  const PrivacyBudget budget(options.epsilon);
  json doc;
  doc["mechanism"] = options.mechanism;
  doc["epsilon"] = JsonNumber(options.epsilon);
  if (poly) {
    PolyFitResult fit = DpRssPolyFit(data, *options.degree, budget, stream);
    if (bounds) fit = DenormalizePolyFit(fit, *bounds);
    json coeffs = json::array();
    for (Eigen::Index i = 0; i < fit.coeffs.size(); ++i) coeffs.push_back(JsonNumber(fit.coeffs[i]));
    doc["degree"] = *options.degree;
    doc["coeffs"] = coeffs;
    doc["fallback"] = fit.fallback;
  } else {
    FitResult fit = RunMethod(ParseMethod(options.mechanism), data, budget, stream);
    if (bounds) fit = DenormalizeFit(fit, *bounds);
    doc["alpha_hat"] = JsonNumber(fit.alpha_hat);
    doc["beta_hat"] = JsonNumber(fit.beta_hat);
    doc["fallback"] = fit.fallback;
  }
  doc["seed"] = options.seed;
  out << doc.dump(2) << '\n';
}

void CmdExperiment(const ExperimentOptions& options) {
  std::ifstream in(options.config_path, std::ios::binary);
  if (!in) throw InputError("cannot open config file " + options.config_path);
  json config;
  try {
    config = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!config.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> kKeys = {"n",          "alpha",   "beta",
                                              "sigma",      "seed",    "epsilons",
                                              "iterations", "methods", "fresh_data_per_iteration"};
  for (const auto& item : config.items()) {
    if (!kKeys.contains(item.key())) throw ConfigError("unknown config field '" + item.key() + "'");
  }

  SetupConfig setup{ConfigField<int64_t>(config, "n"), ConfigField<double>(config, "alpha"),
                    ConfigField<double>(config, "beta"), ConfigField<double>(config, "sigma"),
                    ConfigField<uint64_t>(config, "seed")};
  ExperimentGrid grid;
  grid.epsilons = ConfigField<std::vector<double>>(config, "epsilons", DefaultEpsilonGrid());
  grid.iterations = ConfigField<int64_t>(config, "iterations", int64_t{1000});
  grid.fresh_data_per_iteration = ConfigField<bool>(config, "fresh_data_per_iteration", false);
  grid.threads = options.threads;
  if (config.contains("methods")) {
    grid.methods.clear();
    for (const auto& name : ConfigField<std::vector<std::string>>(config, "methods")) {
      grid.methods.push_back(ParseMethod(name));
    }
  }

  const std::vector<ExperimentRow> rows = RunExperiment(setup, grid);

  std::ofstream out = OpenOutput(options.output_csv);
  out << "method,epsilon,mean_l1,std_l1,mean_l2,std_l2,median_l1,median_l2\n";
  for (const ExperimentRow& row : rows) {
    out << MethodName(row.method) << ',' << FormatNumber(row.epsilon) << ','
        << FormatNumber(row.mean_l1) << ',' << FormatNumber(row.std_l1) << ','
        << FormatNumber(row.mean_l2) << ',' << FormatNumber(row.std_l2) << ','
        << FormatNumber(row.median_l1) << ',' << FormatNumber(row.median_l2) << '\n';
  }
  out.close();

  std::string mechanisms;
  for (const ExperimentRow& row : rows) {
    const std::string name(MethodName(row.method));
    if (mechanisms.find(name) == std::string::npos) {
      mechanisms += (mechanisms.empty() ? "" : ",") + name;
    }
  }
  json manifest;
  manifest["command"] = "experiment";
  manifest["seed"] = setup.seed;
  manifest["budget"] = nullptr;
  manifest["epsilons"] = grid.epsilons;
  manifest["mechanism"] = mechanisms;
  manifest["config"] = config;
  WriteManifest(options.output_csv, manifest);
}

void CmdVerify(const VerifyOptions& options, std::ostream& out) {
  if (options.trials < kMinVarianceTrials) {
    throw UsageError("--trials must be at least " + std::to_string(kMinVarianceTrials));
  }
  if (!(options.epsilon > 0.0) || !std::isfinite(options.epsilon)) {
    throw UsageError("--epsilon must be finite and positive");
  }
  RandomStream stream(options.seed, 0);
  const std::vector<VarianceRow> rows = VerifyVariances(options.epsilon, options.trials, stream);

  std::ostringstream csv;
  csv << "statistic,method,empirical_var,theoretical_var,relative_error,improvement_ratio\n";
  for (const VarianceRow& row : rows) {
    csv << StatisticName(row.statistic) << ',' << MethodName(row.method) << ','
        << FormatNumber(row.empirical_var) << ',' << FormatNumber(row.theoretical_var) << ','
        << FormatNumber(row.relative_error) << ',' << FormatNumber(row.improvement_ratio)
        << '\n';
  }

  if (options.output_csv.empty()) {
    out << csv.str();
    return;
  }
  std::ofstream file = OpenOutput(options.output_csv);
  file << csv.str();
  file.close();
  json manifest;
  manifest["command"] = "verify";
  manifest["seed"] = options.seed;
  manifest["budget"] = JsonNumber(options.epsilon);
  manifest["mechanism"] = "dp_rss,dp_ss";
  manifest["trials"] = options.trials;
  WriteManifest(options.output_csv, manifest);
}

}  // namespace dprss::cli
