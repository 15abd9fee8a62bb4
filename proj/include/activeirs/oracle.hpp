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

#include "beamforming.hpp"
#include "system_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string_view>
#include <thread>
#include <vector>

namespace activeirs {

template <typename Scalar = double>
struct OracleResult
{
  Scalar          best_rate_bits = 0;
  CVector<Scalar> best_direction;
  std::int64_t    grid_points_evaluated = 0;
  int             phase_steps = 0;
  int             amplitude_steps = 0;
};

namespace detail {

// Rate of a unit direction scaled to the reflect budget. Written out
// longhand so the oracle shares no evaluation code with the methods.
template <typename Scalar>
Scalar oracle_rate(CVector<Scalar> const &dir, ChannelRealization<Scalar> const &ch, SystemParams<Scalar> const &params)
{
  Scalar     load = 0;
  Scalar     noise = params.sigma_u_sq;
  Cx<Scalar> signal = std::conj(ch.h);
  for (Index n = 0; n < dir.size(); ++n) {
    load += params.p_s * std::norm(dir(n) * ch.g(n)) + params.sigma_i_sq * std::norm(dir(n));
  }
  Scalar const lambda = std::sqrt(params.p_i / load);
  for (Index n = 0; n < dir.size(); ++n) {
    Cx<Scalar> const p = lambda * dir(n);
    signal += std::conj(ch.f(n)) * ch.g(n) * p;
    noise += params.sigma_i_sq * std::norm(ch.f(n) * p);
  }
  return std::log2(Scalar(1) + params.p_s * std::norm(signal) / noise);
}

struct GridBest
{
  double       rate = -1;
  std::int64_t index = -1;
};

} // namespace detail

/// Exhaustive search over unit directions for N <= 3.
///
/// Magnitude profiles come from a grid of amplitude_steps angles per free
/// spherical coordinate on [0, pi/2); relative phases of elements 2..N from
/// phase_steps points on [0, 2 pi). The common phase is then chosen in
/// closed form so that f^H G p lines up with the direct path, which is the
/// best choice for every candidate. Grids are nested under doubling, so
/// refining never lowers the result. Ties go to the lowest grid index, and
/// the threaded evaluation returns the same result as a serial pass.
template <typename Scalar>
OracleResult<Scalar> grid_search_best(ChannelRealization<Scalar> const &ch,
                                      SystemParams<Scalar> const       &params,
                                      int const                         phase_steps,
                                      int const                         amplitude_steps,
                                      unsigned                          threads = 1)
{
  Index const n = ch.size();
  if (n < 1 || n > 3) { throw NumericalError("grid_search_best: requires 1 <= N <= 3"); }
  if (ch.f.size() != n) { throw NumericalError("grid_search_best: channel length mismatch"); }
  if (phase_steps < 8) { throw NumericalError("grid_search_best: phase_steps must be >= 8"); }
  if (amplitude_steps < 4) { throw NumericalError("grid_search_best: amplitude_steps must be >= 4"); }

  auto ipow = [](std::int64_t base, Index e) {
    std::int64_t r = 1;
    for (Index i = 0; i < e; ++i) { r *= base; }
    return r;
  };
  std::int64_t const phase_count = ipow(phase_steps, n - 1);
  std::int64_t const amp_count = ipow(amplitude_steps, n - 1);
  std::int64_t const total = phase_count * amp_count;

  Scalar const     half_pi = std::numbers::pi_v<Scalar> / Scalar(2);
  Scalar const     two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
  Cx<Scalar> const rot = direct_path_rotation(ch.h);

  auto candidate = [&](std::int64_t index) {
    std::int64_t amp_index = index / phase_count;
    std::int64_t phase_index = index % phase_count;
    RVector<Scalar> mag(n);
    if (n == 1) {
      mag << 1;
    } else if (n == 2) {
      Scalar const t = half_pi * Scalar(amp_index) / Scalar(amplitude_steps);
      mag << std::cos(t), std::sin(t);
    } else {
      Scalar const a = half_pi * Scalar(amp_index / amplitude_steps) / Scalar(amplitude_steps);
      Scalar const b = half_pi * Scalar(amp_index % amplitude_steps) / Scalar(amplitude_steps);
      mag << std::cos(a), std::sin(a) * std::cos(b), std::sin(a) * std::sin(b);
    }
    CVector<Scalar> dir(n);
    dir(0) = Cx<Scalar>(mag(0), 0);
    for (Index e = n - 1; e >= 1; --e) {
      Scalar const phi = two_pi * Scalar(phase_index % phase_steps) / Scalar(phase_steps);
      phase_index /= phase_steps;
      dir(e) = std::polar(mag(e), phi);
    }
    Cx<Scalar> s = 0;
    for (Index e = 0; e < n; ++e) { s += std::conj(ch.f(e)) * ch.g(e) * dir(e); }
    if (std::abs(s) > Scalar(0)) { dir *= rot * std::conj(s) / std::abs(s); }
    return dir;
  };

  auto scan = [&](std::int64_t begin, std::int64_t end) {
    detail::GridBest best;
    for (std::int64_t i = begin; i < end; ++i) {
      double const r = static_cast<double>(detail::oracle_rate(candidate(i), ch, params));
      if (r > best.rate) { best = {r, i}; }
    }
    return best;
  };

  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::int64_t>(total, 64))));
  std::vector<detail::GridBest> partial(threads);
  if (threads == 1) {
    partial[0] = scan(0, total);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      std::int64_t const begin = total * t / threads;
      std::int64_t const end = total * (t + 1) / threads;
      pool.emplace_back([&, t, begin, end] { partial[t] = scan(begin, end); });
    }
  }
  detail::GridBest best;
  for (auto const &p : partial) {
    if (p.rate > best.rate) { best = p; }
  }

  OracleResult<Scalar> out;
  out.best_rate_bits = static_cast<Scalar>(best.rate);
  out.best_direction = candidate(best.index);
  out.best_direction /= out.best_direction.norm();
  out.grid_points_evaluated = total;
  out.phase_steps = phase_steps;
  out.amplitude_steps = amplitude_steps;
  return out;
}

enum class SignOutcome
{
  AlignedBetter,
  PaperLiteralBetter,
  Tie
};

constexpr std::string_view to_string(SignOutcome const s) noexcept
{
  switch (s) {
  case SignOutcome::AlignedBetter: return "AlignedBetter";
  case SignOutcome::PaperLiteralBetter: return "PaperLiteralBetter";
  case SignOutcome::Tie: return "Tie";
  }
  return "?";
}

/// Runs Max-ASNR under both sign conventions and compares achieved rates.
/// Differences under 1e-6 bits count as a tie.
template <typename Scalar>
SignOutcome sign_adjudicate(ChannelRealization<Scalar> const &ch,
                            SystemParams<Scalar> const       &params,
                            SolverOptions<Scalar>             opts = {})
{
  if (ch.size() < 1 || ch.size() > 3) { throw NumericalError("sign_adjudicate: requires 1 <= N <= 3"); }
  opts.sign_mode = SignMode::Aligned;
  Scalar const aligned = rate_bits(max_asnr(ch, params, opts).first, ch, params);
  opts.sign_mode = SignMode::PaperLiteral;
  Scalar const literal = rate_bits(max_asnr(ch, params, opts).first, ch, params);
  if (std::abs(aligned - literal) < Scalar(1e-6)) { return SignOutcome::Tie; }
  return aligned > literal ? SignOutcome::AlignedBetter : SignOutcome::PaperLiteralBetter;
}

} // namespace activeirs
