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

#include "activeirs/beamforming.hpp"
#include "activeirs/metrics.hpp"
#include "activeirs/oracle.hpp"
#include "parallel.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace activeirs {

namespace {

// Stream index reserved for the random-phase draw inside a trial.
constexpr std::uint64_t kRandomPhaseStream = 0x5EED;

Index srr_size(MethodSpec const &m, Index const n)
{
  return m.k > 0 ? m.k : std::max<Index>(1, n / 2);
}

struct Moments
{
  double mean;
  double std;
};

Moments moments(std::vector<double> const &values)
{
  double const n = static_cast<double>(values.size());
  double const mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() < 2) { return {mean, 0.0}; }
  double ss = 0;
  for (double v : values) { ss += (v - mean) * (v - mean); }
  return {mean, std::sqrt(ss / (n - 1))};
}

// Rates of several methods on shared channel draws: rates[m][t].
std::vector<std::vector<double>> trial_rates(std::vector<MethodSpec> const &methods,
                                             SystemParams<double> const    &params,
                                             std::int64_t                   trials,
                                             std::uint64_t                  master_seed,
                                             unsigned                       threads)
{
  params.validate();
  std::vector<std::vector<double>> rates(methods.size(), std::vector<double>(static_cast<std::size_t>(trials)));
  detail::parallel_for(trials, threads, [&](std::int64_t t) {
    std::uint64_t const seed = mix_seed(master_seed, static_cast<std::uint64_t>(t));
    try {
      auto const ch = sample_channels(params, seed);
      for (std::size_t m = 0; m < methods.size(); ++m) {
        rates[m][static_cast<std::size_t>(t)] = rate_bits(design(methods[m], ch, params, seed), ch, params);
      }
    } catch (NumericalError const &e) {
      throw NumericalError("trial " + std::to_string(t) + ": " + e.what());
    }
  });
  return rates;
}

RateSummary summarize(MethodSpec const &m, Index n, double p_s_dbm, std::vector<double> const &rates)
{
  auto const [mean, dev] = moments(rates);
  Index const k = m.method == Method::SRR ? srr_size(m, n) : 0;
  return {m.method, n, k, p_s_dbm, mean, dev, static_cast<std::int64_t>(rates.size())};
}

Table trial_table()
{
  return {{"n", "k", "p_s_dbm", "method", "trial", "seed", "rate_bits"}, {}};
}

void append_trials(Table &log, RateSummary const &s, std::vector<double> const &rates, std::uint64_t master_seed)
{
  for (std::size_t t = 0; t < rates.size(); ++t) {
    log.rows.push_back({std::to_string(s.n), s.k > 0 ? std::to_string(s.k) : "", format_number(s.p_s_dbm),
                        std::string(to_string(s.method)), std::to_string(t),
                        std::to_string(mix_seed(master_seed, t)), format_number(rates[t])});
  }
}

void require_scenario(ExperimentConfig const &cfg, Scenario const expected)
{
  if (cfg.scenario != expected) {
    throw ConfigError("scenario", "expected '" + std::string(to_string(expected)) + "', got '" +
                                    std::string(to_string(cfg.scenario)) + "'");
  }
  validate(cfg);
}

SystemParams<double> with_n(SystemParams<double> params, Index const n)
{
  params.n_elements = n;
  return params;
}

} // namespace

Beamformer<double> design(MethodSpec const                 &method,
                          ChannelRealization<double> const &ch,
                          SystemParams<double> const       &params,
                          std::uint64_t const               trial_seed)
{
  switch (method.method) {
  case Method::EGR: return egr(ch, params);
  case Method::MRR: return mrr(ch, params);
  case Method::SRR: return srr(ch, params, srr_size(method, ch.size()));
  case Method::MaxASNR: return max_asnr(ch, params, method.solver).first;
  case Method::RandomPhase: return random_phase(ch, params, mix_seed(trial_seed, kRandomPhaseStream));
  case Method::PassiveAligned: return passive_aligned(ch, params);
  }
  throw NumericalError("design: unknown method");
}

RateSummary monte_carlo_rate(MethodSpec const           &method,
                             SystemParams<double> const &params,
                             std::int64_t const          trials,
                             std::uint64_t const         master_seed,
                             unsigned const              threads,
                             std::vector<double>        *per_trial)
{
  if (trials < 1) { throw NumericalError("monte_carlo_rate: trials must be >= 1"); }
  auto rates = trial_rates({method}, params, trials, master_seed, threads);
  auto summary = summarize(method, params.n_elements, watts_to_dbm(params.p_s), rates[0]);
  if (per_trial != nullptr) { *per_trial = std::move(rates[0]); }
  return summary;
}

std::string format_number(double const value)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::string to_csv(Table const &table)
{
  std::ostringstream out;
  auto               line = [&](std::vector<std::string> const &cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) { out << ','; }
      out << cells[i];
    }
    out << '\n';
  };
  line(table.header);
  for (auto const &row : table.rows) { line(row); }
  return out.str();
}

RunOutput run_convergence(ExperimentConfig const &cfg)
{
  require_scenario(cfg, Scenario::Convergence);
  RunOutput out;
  out.table.header = {"seed", "iteration", "lambda", "rate_bits"};
  for (Index n : cfg.n_values) {
    auto const                          params = with_n(cfg.params, n);
    std::vector<ConvergenceTrace<double>> traces(static_cast<std::size_t>(cfg.trials));
    detail::parallel_for(cfg.trials, cfg.threads, [&](std::int64_t t) {
      auto const ch = sample_channels(params, mix_seed(cfg.master_seed, static_cast<std::uint64_t>(t)));
      traces[static_cast<std::size_t>(t)] = max_asnr(ch, params, cfg.solver).second;
    });
    for (std::size_t t = 0; t < traces.size(); ++t) {
      std::string const seed = std::to_string(mix_seed(cfg.master_seed, t));
      for (auto const &r : traces[t].records) {
        out.table.rows.push_back({seed, std::to_string(r.iteration), format_number(r.lambda), format_number(r.rate_bits)});
      }
    }
  }
  return out;
}

RunOutput run_srr_sweep(ExperimentConfig const &cfg)
{
  require_scenario(cfg, Scenario::SrrSweep);
  RunOutput out;
  out.table.header = {"k", "p_s_dbm", "method", "mean_rate_bits", "std_rate_bits", "trials"};
  if (cfg.verbose_trials) { out.trials = trial_table(); }
  Index const n = cfg.n_values.front();

  std::vector<MethodSpec> methods;
  for (Index k : cfg.k_values) { methods.push_back({Method::SRR, k, cfg.solver}); }
  methods.push_back({Method::MRR, 0, cfg.solver});

  for (double p_s_dbm : cfg.p_s_dbm_values) {
    auto params = with_n(cfg.params, n);
    params.p_s = dbm_to_watts(p_s_dbm);
    auto const rates = trial_rates(methods, params, cfg.trials, cfg.master_seed, cfg.threads);
    for (std::size_t m = 0; m < methods.size(); ++m) {
      auto const  s = summarize(methods[m], n, p_s_dbm, rates[m]);
      Index const k = methods[m].method == Method::SRR ? s.k : n;
      out.table.rows.push_back({std::to_string(k), format_number(p_s_dbm), std::string(to_string(s.method)),
                                format_number(s.mean_rate_bits), format_number(s.std_rate_bits), std::to_string(s.trials)});
      if (cfg.verbose_trials) { append_trials(out.trials, s, rates[m], cfg.master_seed); }
    }
  }
  return out;
}

RunOutput run_rate_vs_n(ExperimentConfig const &cfg)
{
  require_scenario(cfg, Scenario::RateVsN);
  RunOutput out;
  out.table.header = {"n", "method", "mean_rate_bits", "std_rate_bits", "trials"};
  if (cfg.verbose_trials) { out.trials = trial_table(); }
  std::vector<MethodSpec> const methods{
    {Method::MaxASNR, 0, cfg.solver}, {Method::MRR, 0, cfg.solver},         {Method::SRR, 0, cfg.solver},
    {Method::EGR, 0, cfg.solver},     {Method::RandomPhase, 0, cfg.solver}, {Method::PassiveAligned, 0, cfg.solver},
  };
  for (Index n : cfg.n_values) {
    auto const params = with_n(cfg.params, n);
    auto const rates = trial_rates(methods, params, cfg.trials, cfg.master_seed, cfg.threads);
    for (std::size_t m = 0; m < methods.size(); ++m) {
      auto const s = summarize(methods[m], n, watts_to_dbm(params.p_s), rates[m]);
      out.table.rows.push_back({std::to_string(n), std::string(to_string(s.method)), format_number(s.mean_rate_bits),
                                format_number(s.std_rate_bits), std::to_string(s.trials)});
      if (cfg.verbose_trials) { append_trials(out.trials, s, rates[m], cfg.master_seed); }
    }
  }
  return out;
}

RunOutput run_single(ExperimentConfig const &cfg)
{
  require_scenario(cfg, Scenario::Single);
  RunOutput out;
  out.table.header = {"n", "method", "lambda", "snr", "rate_bits", "reflected_power_w", "receive_power_w"};
  std::uint64_t const seed = mix_seed(cfg.master_seed, 0);
  for (Index n : cfg.n_values) {
    auto const params = with_n(cfg.params, n);
    auto const ch = sample_channels(params, seed);
    for (Method m : {Method::MaxASNR, Method::MRR, Method::SRR, Method::EGR, Method::RandomPhase, Method::PassiveAligned}) {
      auto const bf = design({m, 0, cfg.solver}, ch, params, seed);
      auto const lm = evaluate(bf, ch, params);
      out.table.rows.push_back({std::to_string(n), std::string(to_string(m)), format_number(bf.lambda), format_number(lm.snr),
                                format_number(lm.rate_bits), format_number(lm.reflected_power),
                                format_number(lm.receive_power)});
    }
  }
  return out;
}

RunOutput run_oracle_check(ExperimentConfig const &cfg)
{
  require_scenario(cfg, Scenario::OracleCheck);
  RunOutput out;
  out.table.header = {"seed", "n", "method", "rate_bits", "oracle_rate_bits", "gap_bits", "sign_outcome"};
  std::vector<MethodSpec> const methods{
    {Method::MaxASNR, 0, cfg.solver}, {Method::MRR, 0, cfg.solver}, {Method::SRR, 0, cfg.solver}, {Method::EGR, 0, cfg.solver}};
  for (Index n : cfg.n_values) {
    auto const params = with_n(cfg.params, n);
    std::vector<std::vector<std::string>> rows(static_cast<std::size_t>(cfg.trials) * methods.size());
    detail::parallel_for(cfg.trials, cfg.threads, [&](std::int64_t t) {
      std::uint64_t const seed = mix_seed(cfg.master_seed, static_cast<std::uint64_t>(t));
      auto const          ch = sample_channels(params, seed);
      auto const          best = grid_search_best(ch, params, cfg.oracle_phase_steps, cfg.oracle_amplitude_steps);
      auto const          sign = sign_adjudicate(ch, params, cfg.solver);
      for (std::size_t m = 0; m < methods.size(); ++m) {
        double const r = rate_bits(design(methods[m], ch, params, seed), ch, params);
        rows[static_cast<std::size_t>(t) * methods.size() + m] = {
          std::to_string(seed),         std::to_string(n),
          std::string(to_string(methods[m].method)), format_number(r),
          format_number(best.best_rate_bits),        format_number(best.best_rate_bits - r),
          std::string(to_string(sign))};
      }
    });
    for (auto &row : rows) { out.table.rows.push_back(std::move(row)); }
  }
  return out;
}

RunOutput run(ExperimentConfig const &cfg)
{
  switch (cfg.scenario) {
  case Scenario::Convergence: return run_convergence(cfg);
  case Scenario::SrrSweep: return run_srr_sweep(cfg);
  case Scenario::RateVsN: return run_rate_vs_n(cfg);
  case Scenario::Single: return run_single(cfg);
  case Scenario::OracleCheck: return run_oracle_check(cfg);
  }
  throw NumericalError("run: unknown scenario");
}

} // namespace activeirs
