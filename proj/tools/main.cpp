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

#include <iostream>

#include "CLI11.hpp"
#include "cli_commands.hpp"
#include "dprss/errors.hpp"

int main(int argc, char** argv) {
  using namespace dprss::cli;

  CLI::App app{"Differentially private linear and polynomial regression"};
  app.require_subcommand(1);

  FitOptions fit;
  double x_min = 0, x_max = 0, y_min = 0, y_max = 0;
  int degree = 0;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a private model to a CSV file with header x,y");
  fit_cmd->add_option("input", fit.input_csv, "Input CSV")->required()->check(CLI::ExistingFile);
  fit_cmd->add_option("--mechanism", fit.mechanism, "dp_rss, dp_ss, dp_theil_sen or dp_rss_poly")
      ->required();
  fit_cmd->add_option("--epsilon", fit.epsilon, "Total privacy budget")->required();
  fit_cmd->add_option("--seed", fit.seed, "Random seed")->default_val(0);
  auto* degree_opt = fit_cmd->add_option("--degree", degree, "Polynomial degree (dp_rss_poly)");
  const std::string bound_help = "Data bound; give all four to rescale to [0, 1]";
  auto* x_min_opt = fit_cmd->add_option("--x-min", x_min, bound_help);
  auto* x_max_opt = fit_cmd->add_option("--x-max", x_max, bound_help);
  auto* y_min_opt = fit_cmd->add_option("--y-min", y_min, bound_help);
  auto* y_max_opt = fit_cmd->add_option("--y-max", y_max, bound_help);

  ExperimentOptions experiment;
  auto* exp_cmd = app.add_subcommand("experiment", "Run the Monte Carlo error-vs-epsilon grid");
  exp_cmd->add_option("config", experiment.config_path, "Config JSON")
      ->required()
      ->check(CLI::ExistingFile);
  exp_cmd->add_option("--output", experiment.output_csv, "Results CSV")->required();
  exp_cmd->add_option("--threads", experiment.threads, "Worker threads (0 = all cores)");

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Compare empirical and closed-form variances");
  verify_cmd->add_option("--epsilon", verify.epsilon, "Total privacy budget")->default_val(1.0);
  verify_cmd->add_option("--trials", verify.trials, "Monte Carlo trials")->default_val(1000000);
  verify_cmd->add_option("--seed", verify.seed, "Random seed")->default_val(0);
  verify_cmd->add_option("--output", verify.output_csv, "Report CSV (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*fit_cmd) {
      if (*degree_opt) fit.degree = degree;
      if (*x_min_opt) fit.x_min = x_min;
      if (*x_max_opt) fit.x_max = x_max;
      if (*y_min_opt) fit.y_min = y_min;
      if (*y_max_opt) fit.y_max = y_max;
      CmdFit(fit, std::cout);
    } else if (*exp_cmd) {
      CmdExperiment(experiment);
    } else if (*verify_cmd) {
      CmdVerify(verify, std::cout);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const dprss::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
