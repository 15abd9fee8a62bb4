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
#pragma once

#include "beamformer.hpp"
#include "system_model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace activeirs {

enum class Scenario
{
  Convergence,
  SrrSweep,
  RateVsN,
  Single,
  OracleCheck
};

std::string_view        to_string(Scenario s) noexcept;
std::optional<Scenario> parse_scenario(std::string_view s) noexcept;

struct ExperimentConfig
{
  Scenario               scenario = Scenario::RateVsN;
  std::vector<Index>     n_values;
  std::vector<Index>     k_values;
  std::vector<double>    p_s_dbm_values;
  std::int64_t           trials = 1000;
  std::uint64_t          master_seed = 1;
  SystemParams<double>   params;
  SolverOptions<double>  solver;
  std::string            output_path = "-";
  bool                   verbose_trials = false;
  unsigned               threads = 0; // 0: hardware concurrency
  int                    oracle_phase_steps = 256;
  int                    oracle_amplitude_steps = 64;
};

/// Fills empty sweep lists with the defaults of cfg.scenario.
void apply_scenario_defaults(ExperimentConfig &cfg);

/// Throws ConfigError naming the first offending key.
void validate(ExperimentConfig const &cfg);

/// Parses a flat JSON object. Absent keys take their defaults, and
/// `forced` (when set) overrides any `scenario` key in the document.
ExperimentConfig parse_config(std::string_view text, std::optional<Scenario> forced = std::nullopt);

struct MethodSpec
{
  Method                method = Method::MRR;
  Index                 k = 0; // SRR selection size, 0 means max(1, N/2)
  SolverOptions<double> solver;
};

struct RateSummary
{
  Method       method;
  Index        n;
  Index        k; // 0 unless method is SRR
  double       p_s_dbm;
  double       mean_rate_bits;
  double       std_rate_bits; // sample deviation, 0 for a single trial
  std::int64_t trials;
};

/// Channels for trial t come from mix_seed(master_seed, t), so the outcome
/// does not depend on `threads`. Per-trial rates are written to
/// `per_trial` when given.
RateSummary monte_carlo_rate(MethodSpec const           &method,
                             SystemParams<double> const &params,
                             std::int64_t                trials,
                             std::uint64_t               master_seed,
                             unsigned                    threads = 1,
                             std::vector<double>        *per_trial = nullptr);

/// Beamformer of the given method for one realization. `trial_seed` drives
/// RandomPhase only.
Beamformer<double> design(MethodSpec const                   &method,
                          ChannelRealization<double> const &ch,
                          SystemParams<double> const       &params,
                          std::uint64_t                     trial_seed);

struct Table
{
  std::vector<std::string>              header;
  std::vector<std::vector<std::string>> rows;
};

struct RunOutput
{
  Table table;
  Table trials; // per-trial rates, empty unless verbose_trials
};

RunOutput run_convergence(ExperimentConfig const &cfg);
RunOutput run_srr_sweep(ExperimentConfig const &cfg);
RunOutput run_rate_vs_n(ExperimentConfig const &cfg);
RunOutput run_single(ExperimentConfig const &cfg);
RunOutput run_oracle_check(ExperimentConfig const &cfg);
RunOutput run(ExperimentConfig const &cfg);

std::string format_number(double value);
std::string to_csv(Table const &table);

} // namespace activeirs
