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

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>

namespace activeirs {

namespace {

using json = nlohmann::json;

constexpr std::array kScenarioNames{
  std::pair{Scenario::Convergence, std::string_view("convergence")},
  std::pair{Scenario::SrrSweep, std::string_view("srr-sweep")},
  std::pair{Scenario::RateVsN, std::string_view("rate-vs-n")},
  std::pair{Scenario::Single, std::string_view("single")},
  std::pair{Scenario::OracleCheck, std::string_view("oracle-check")},
};

double as_number(json const &v, std::string const &key)
{
  if (!v.is_number()) { throw ConfigError(key, "expected a number"); }
  double const x = v.get<double>();
  if (!std::isfinite(x)) { throw ConfigError(key, "must be finite"); }
  return x;
}

std::int64_t as_integer(json const &v, std::string const &key)
{
  if (v.is_number_unsigned()) {
    auto const u = v.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(INT64_MAX)) { throw ConfigError(key, "integer out of range"); }
    return static_cast<std::int64_t>(u);
  }
  if (!v.is_number_integer()) { throw ConfigError(key, "expected an integer"); }
  return v.get<std::int64_t>();
}

std::vector<Index> as_index_list(json const &v, std::string const &key)
{
  if (!v.is_array()) { throw ConfigError(key, "expected an array of integers"); }
  std::vector<Index> out;
  for (auto const &e : v) {
    out.push_back(static_cast<Index>(as_integer(e, key)));
  }
  return out;
}

Point2<double> as_point(json const &v, std::string const &key)
{
  if (!v.is_array() || v.size() != 2) { throw ConfigError(key, "expected [x, y] in meters"); }
  return {as_number(v[0], key), as_number(v[1], key)};
}

// Power-like quantity that may be given in watts (`key`) or dBm
// (`key_dbm`), but not both.
void read_power(json const &doc, std::string const &key, double &target)
{
  bool const has_w = doc.contains(key);
  bool const has_dbm = doc.contains(key + "_dbm");
  if (has_w && has_dbm) { throw ConfigError(key, "given both in watts and in dBm"); }
  if (has_w) { target = as_number(doc.at(key), key); }
  if (has_dbm) { target = dbm_to_watts(as_number(doc.at(key + "_dbm"), key + "_dbm")); }
}

} // namespace

std::string_view to_string(Scenario const s) noexcept
{
  for (auto const &[value, name] : kScenarioNames) {
    if (value == s) { return name; }
  }
  return "?";
}

std::optional<Scenario> parse_scenario(std::string_view const s) noexcept
{
  for (auto const &[value, name] : kScenarioNames) {
    if (name == s) { return value; }
  }
  return std::nullopt;
}

void apply_scenario_defaults(ExperimentConfig &cfg)
{
  if (cfg.n_values.empty()) {
    switch (cfg.scenario) {
    case Scenario::RateVsN: cfg.n_values = {16, 32, 64, 128, 256}; break;
    case Scenario::OracleCheck: cfg.n_values = {1, 2}; break;
    default: cfg.n_values = {64}; break;
    }
  }
  if (cfg.k_values.empty()) {
    // 4, 8, 16, ... up to the smallest N, which is always included.
    Index const n_min = *std::min_element(cfg.n_values.begin(), cfg.n_values.end());
    for (Index k = 4; k < n_min; k *= 2) { cfg.k_values.push_back(k); }
    cfg.k_values.push_back(std::max<Index>(n_min, 1));
  }
  if (cfg.p_s_dbm_values.empty()) { cfg.p_s_dbm_values = {0, 5, 10, 15, 20, 25, 30}; }
}

void validate(ExperimentConfig const &cfg)
{
  if (cfg.trials < 1) { throw ConfigError("trials", "must be >= 1"); }
  if (cfg.n_values.empty()) { throw ConfigError("n_values", "must not be empty"); }
  for (Index n : cfg.n_values) {
    if (n < 1) { throw ConfigError("n_values", "every N must be >= 1"); }
  }
  if (cfg.scenario == Scenario::SrrSweep) {
    if (cfg.n_values.size() != 1) { throw ConfigError("n_values", "srr-sweep takes exactly one N"); }
    Index const n_min = *std::min_element(cfg.n_values.begin(), cfg.n_values.end());
    if (cfg.k_values.empty()) { throw ConfigError("k_values", "must not be empty"); }
    for (Index k : cfg.k_values) {
      if (k < 1 || k > n_min) { throw ConfigError("k_values", "every K must satisfy 1 <= K <= min(n_values)"); }
    }
    if (cfg.p_s_dbm_values.empty()) { throw ConfigError("p_s_dbm_values", "must not be empty"); }
  }
  if (cfg.scenario == Scenario::OracleCheck) {
    for (Index n : cfg.n_values) {
      if (n > 3) { throw ConfigError("n_values", "oracle-check supports N <= 3"); }
    }
    if (cfg.oracle_phase_steps < 8) { throw ConfigError("oracle_phase_steps", "must be >= 8"); }
    if (cfg.oracle_amplitude_steps < 4) { throw ConfigError("oracle_amplitude_steps", "must be >= 4"); }
  }
  auto const &p = cfg.params;
  if (!(p.p_s > 0)) { throw ConfigError("p_s", "must be positive"); }
  if (!(p.p_i > 0)) { throw ConfigError("p_i", "must be positive"); }
  if (!(p.sigma_i_sq > 0)) { throw ConfigError("sigma_i_sq", "must be positive"); }
  if (!(p.sigma_u_sq > 0)) { throw ConfigError("sigma_u_sq", "must be positive"); }
  if (!(p.alpha_bi >= 2)) { throw ConfigError("alpha_bi", "must be >= 2"); }
  if (!(p.alpha_iu >= 2)) { throw ConfigError("alpha_iu", "must be >= 2"); }
  if (!(p.alpha_bu >= 2)) { throw ConfigError("alpha_bu", "must be >= 2"); }
  if ((p.pos_irs - p.pos_bs).norm() == 0) { throw ConfigError("pos_irs", "coincides with pos_bs"); }
  if ((p.pos_user - p.pos_irs).norm() == 0) { throw ConfigError("pos_user", "coincides with pos_irs"); }
  if ((p.pos_user - p.pos_bs).norm() == 0) { throw ConfigError("pos_user", "coincides with pos_bs"); }
  if (!(cfg.solver.tolerance > 0)) { throw ConfigError("tolerance", "must be positive"); }
  if (cfg.solver.max_iterations < 1) { throw ConfigError("max_iterations", "must be >= 1"); }
  if (cfg.output_path.empty()) { throw ConfigError("output_path", "must not be empty"); }
}

ExperimentConfig parse_config(std::string_view const text, std::optional<Scenario> const forced)
{
  json doc;
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    doc = json::object();
  } else {
    try {
      doc = json::parse(text);
    } catch (json::parse_error const &e) {
      throw ConfigError("<document>", std::string("malformed JSON: ") + e.what());
    }
  }
  if (!doc.is_object()) { throw ConfigError("<document>", "expected a JSON object"); }

  ExperimentConfig cfg;
  auto            &p = cfg.params;

  using Reader = std::function<void(json const &, std::string const &)>;
  std::map<std::string, Reader> const readers{
    {"scenario",
     [&](json const &v, std::string const &k) {
       if (!v.is_string()) { throw ConfigError(k, "expected a string"); }
       auto s = parse_scenario(v.get<std::string>());
       if (!s) { throw ConfigError(k, "unknown scenario '" + v.get<std::string>() + "'"); }
       cfg.scenario = *s;
     }},
    {"n_values", [&](json const &v, std::string const &k) { cfg.n_values = as_index_list(v, k); }},
    {"k_values", [&](json const &v, std::string const &k) { cfg.k_values = as_index_list(v, k); }},
    {"p_s_dbm_values",
     [&](json const &v, std::string const &k) {
       if (!v.is_array()) { throw ConfigError(k, "expected an array of numbers"); }
       cfg.p_s_dbm_values.clear();
       for (auto const &e : v) { cfg.p_s_dbm_values.push_back(as_number(e, k)); }
     }},
    {"trials", [&](json const &v, std::string const &k) { cfg.trials = as_integer(v, k); }},
    {"master_seed",
     [&](json const &v, std::string const &k) {
       if (!v.is_number_unsigned()) { throw ConfigError(k, "expected a non-negative integer"); }
       cfg.master_seed = v.get<std::uint64_t>();
     }},
    {"pos_bs", [&](json const &v, std::string const &k) { p.pos_bs = as_point(v, k); }},
    {"pos_irs", [&](json const &v, std::string const &k) { p.pos_irs = as_point(v, k); }},
    {"pos_user", [&](json const &v, std::string const &k) { p.pos_user = as_point(v, k); }},
    {"alpha_bi", [&](json const &v, std::string const &k) { p.alpha_bi = as_number(v, k); }},
    {"alpha_iu", [&](json const &v, std::string const &k) { p.alpha_iu = as_number(v, k); }},
    {"alpha_bu", [&](json const &v, std::string const &k) { p.alpha_bu = as_number(v, k); }},
    {"ref_loss_db", [&](json const &v, std::string const &k) { p.ref_loss_db = as_number(v, k); }},
    {"tolerance", [&](json const &v, std::string const &k) { cfg.solver.tolerance = as_number(v, k); }},
    {"max_iterations",
     [&](json const &v, std::string const &k) { cfg.solver.max_iterations = static_cast<int>(as_integer(v, k)); }},
    {"sign_mode",
     [&](json const &v, std::string const &k) {
       if (!v.is_string()) { throw ConfigError(k, "expected a string"); }
       auto m = parse_sign_mode(v.get<std::string>());
       if (!m) { throw ConfigError(k, "expected 'aligned' or 'paper-literal'"); }
       cfg.solver.sign_mode = *m;
     }},
    {"output_path",
     [&](json const &v, std::string const &k) {
       if (!v.is_string()) { throw ConfigError(k, "expected a string"); }
       cfg.output_path = v.get<std::string>();
     }},
    {"verbose_trials",
     [&](json const &v, std::string const &k) {
       if (!v.is_boolean()) { throw ConfigError(k, "expected a boolean"); }
       cfg.verbose_trials = v.get<bool>();
     }},
    {"threads",
     [&](json const &v, std::string const &k) {
       auto const t = as_integer(v, k);
       if (t < 0) { throw ConfigError(k, "must be >= 0"); }
       cfg.threads = static_cast<unsigned>(t);
     }},
    {"oracle_phase_steps",
     [&](json const &v, std::string const &k) { cfg.oracle_phase_steps = static_cast<int>(as_integer(v, k)); }},
    {"oracle_amplitude_steps",
     [&](json const &v, std::string const &k) { cfg.oracle_amplitude_steps = static_cast<int>(as_integer(v, k)); }},
  };
  char const *const power_keys[] = {"p_s", "p_i", "sigma_i_sq", "sigma_u_sq"};

  for (auto const &[key, value] : doc.items()) {
    if (auto it = readers.find(key); it != readers.end()) {
      it->second(value, key);
      continue;
    }
    bool const is_power = std::any_of(std::begin(power_keys), std::end(power_keys), [&](char const *base) {
      return key == base || key == std::string(base) + "_dbm";
    });
    if (!is_power) { throw ConfigError(key, "unknown key"); }
  }
  read_power(doc, "p_s", p.p_s);
  read_power(doc, "p_i", p.p_i);
  read_power(doc, "sigma_i_sq", p.sigma_i_sq);
  read_power(doc, "sigma_u_sq", p.sigma_u_sq);

  if (forced) { cfg.scenario = *forced; }
  apply_scenario_defaults(cfg);
  validate(cfg);
  return cfg;
}

} // namespace activeirs
