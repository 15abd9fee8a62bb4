// SPDX-License-Identifier: Apache-2.0
//
// activeirs: beamforming design and link simulation for active IRS
// Copyright (C) 2026 The activeirs authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
#include "activeirs/experiment.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

std::string read_file(std::string const &path)
{
  std::ifstream in(path);
  if (!in) { throw activeirs::ConfigError("--config", "cannot open '" + path + "'"); }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(std::string const &path, std::string const &text)
{
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) { throw std::runtime_error("cannot write '" + path + "'"); }
  out << text;
}

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Active IRS beamforming experiments"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string                  config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t>  trials;
  std::optional<std::string>   out_path;
  std::optional<std::string>   sign_mode;
  std::optional<unsigned>      threads;
  bool                         verbose_trials = false;

  app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "master seed");
  app.add_option("--trials", trials, "Monte-Carlo trials per cell");
  app.add_option("--out", out_path, "output CSV path, '-' for stdout");
  app.add_option("--sign-mode", sign_mode, "aligned | paper-literal")->check(CLI::IsMember({"aligned", "paper-literal"}));
  app.add_option("--threads", threads, "worker threads, 0 for all cores");
  app.add_flag("--verbose-trials", verbose_trials, "also write per-trial rates");

  std::optional<activeirs::Scenario> scenario;
  for (auto s : {activeirs::Scenario::Convergence, activeirs::Scenario::SrrSweep, activeirs::Scenario::RateVsN,
                 activeirs::Scenario::Single, activeirs::Scenario::OracleCheck}) {
    auto *sub = app.add_subcommand(std::string(activeirs::to_string(s)));
    sub->callback([&scenario, s] { scenario = s; });
  }

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const &e) {
    int const code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  activeirs::ExperimentConfig cfg;
  try {
    cfg = activeirs::parse_config(config_path.empty() ? std::string() : read_file(config_path), scenario);
    if (seed) { cfg.master_seed = *seed; }
    if (trials) { cfg.trials = *trials; }
    if (out_path) { cfg.output_path = *out_path; }
    if (sign_mode) { cfg.solver.sign_mode = *activeirs::parse_sign_mode(*sign_mode); }
    if (threads) { cfg.threads = *threads; }
    if (verbose_trials) { cfg.verbose_trials = true; }
    activeirs::validate(cfg);
  } catch (activeirs::ConfigError const &e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    auto const result = activeirs::run(cfg);
    write_output(cfg.output_path, activeirs::to_csv(result.table));
    if (cfg.verbose_trials && !result.trials.header.empty()) {
      if (cfg.output_path == "-") {
        std::cerr << activeirs::to_csv(result.trials);
      } else {
        write_output(cfg.output_path + ".trials.csv", activeirs::to_csv(result.trials));
      }
    }
  } catch (activeirs::ConfigError const &e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (std::exception const &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
