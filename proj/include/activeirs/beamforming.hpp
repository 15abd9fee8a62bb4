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
#include "metrics.hpp"
#include "system_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <utility>

namespace activeirs {

namespace detail {

template <typename Scalar>
Scalar unit_norm_tolerance()
{
  return std::max(Scalar(1e-9), Scalar(100) * Eigen::NumTraits<Scalar>::epsilon());
}

template <typename Scalar>
void check_channel(ChannelRealization<Scalar> const &ch)
{
  if (ch.g.size() == 0 || ch.g.size() != ch.f.size()) {
    throw NumericalError("channel vectors g and f must be non-empty and of equal length");
  }
}

// Product channel g* o f, the per-element gain of the cascaded link.
template <typename Scalar>
CVector<Scalar> product_channel(ChannelRealization<Scalar> const &ch)
{
  return (ch.g.conjugate().array() * ch.f.array()).matrix();
}

template <typename Scalar>
Beamformer<Scalar> make_beamformer(CVector<Scalar> direction, Scalar lambda, Method method, Mask mask)
{
  return Beamformer<Scalar>{std::move(direction), lambda, method, std::move(mask)};
}

} // namespace detail

/// Largest scale that keeps the reflected power at the budget P_I for a
/// given unit-norm direction.
template <typename Scalar>
Scalar lambda_from_normalized(CRef<Scalar> const          &p_norm,
                              CRef<Scalar> const          &g,
                              SystemParams<Scalar> const &params)
{
  if (p_norm.size() != g.size()) { throw NumericalError("lambda_from_normalized: length mismatch"); }
  Scalar const norm = p_norm.norm();
  if (norm == Scalar(0)) { throw NumericalError("lambda_from_normalized: zero direction"); }
  if (std::abs(norm - Scalar(1)) > detail::unit_norm_tolerance<Scalar>()) {
    throw NumericalError("lambda_from_normalized: direction is not unit norm");
  }
  Scalar const load = params.p_s * (p_norm.array() * g.array()).abs2().sum() + params.sigma_i_sq * p_norm.squaredNorm();
  return std::sqrt(params.p_i / load);
}

/// Closed-form MRR scale:
///   P_I ||f^H G||^2 / (P_S sum |f|^2 |g|^4 + sigma_I^2 ||G^H f||^2).
template <typename Scalar>
Scalar mrr_lambda(ChannelRealization<Scalar> const &ch, SystemParams<Scalar> const &params)
{
  auto const   gain = (ch.g.array() * ch.f.array()).abs2();
  Scalar const num = params.p_i * gain.sum();
  Scalar const den = params.p_s * (gain * ch.g.array().abs2()).sum() + params.sigma_i_sq * gain.sum();
  return std::sqrt(num / den);
}

/// SRR scale: the MRR closed form restricted to the active elements.
template <typename Scalar>
Scalar srr_lambda(ChannelRealization<Scalar> const &ch, SystemParams<Scalar> const &params, Mask const &active)
{
  RVector<Scalar> const gain = (active.template cast<Scalar>() * (ch.g.array() * ch.f.array()).abs2()).matrix();
  Scalar const          num = params.p_i * gain.sum();
  Scalar const          den = params.p_s * (gain.array() * ch.g.array().abs2()).sum() + params.sigma_i_sq * gain.sum();
  return std::sqrt(num / den);
}

template <typename Scalar>
Scalar egr_lambda(ChannelRealization<Scalar> const &ch, SystemParams<Scalar> const &params)
{
  auto const n = static_cast<Scalar>(ch.size());
  return std::sqrt(params.p_i * n / (params.p_s * ch.g.squaredNorm() + n * params.sigma_i_sq));
}

/// Equal-gain reflecting: unit amplitudes 1/sqrt(N) with phases
/// arg(f(n) g(n)*) that co-phase the reflected paths. No direct-path
/// rotation is applied.
template <typename Scalar>
Beamformer<Scalar> egr(ChannelRealization<Scalar> const &ch, SystemParams<Scalar> const &params)
{
  detail::check_channel(ch);
  Scalar const    amp = Scalar(1) / std::sqrt(static_cast<Scalar>(ch.size()));
  CVector<Scalar> dir(ch.size());
  for (Index n = 0; n < ch.size(); ++n) {
    dir(n) = std::polar(amp, std::arg(ch.f(n) * std::conj(ch.g(n))));
  }
  return detail::make_beamformer(std::move(dir), egr_lambda(ch, params), Method::EGR, Mask::Constant(ch.size(), true));
}

/// Maximum ratio reflecting: p ~ G^H f, rotated onto the direct path.
template <typename Scalar>
Beamformer<Scalar> mrr(ChannelRealization<Scalar> const &ch, SystemParams<Scalar> const &params)
{
  detail::check_channel(ch);
  CVector<Scalar> dir = detail::product_channel(ch);
  Scalar const    norm = dir.norm();
  if (!(norm > 0)) { throw NumericalError("mrr: product channel is identically zero"); }
  dir *= direct_path_rotation(ch.h) / norm;
  return detail::make_beamformer(std::move(dir), mrr_lambda(ch, params), Method::MRR, Mask::Constant(ch.size(), true));
}

/// Mask of the k elements with largest |g(n)* f(n)|. Stable descending
/// order, so the lower index wins a tie.
template <typename Scalar>
Mask select_strongest(ChannelRealization<Scalar> const &ch, Index const k)
{
  detail::check_channel(ch);
  Index const n = ch.size();
  if (k < 1 || k > n) { throw NumericalError("srr: k must satisfy 1 <= k <= N"); }
  RVector<Scalar> const mag = detail::product_channel(ch).cwiseAbs();
  std::vector<Index>    order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index(0));
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return mag(a) > mag(b); });
  Mask mask = Mask::Constant(n, false);
  for (Index i = 0; i < k; ++i) {
    mask(order[static_cast<std::size_t>(i)]) = true;
  }
  return mask;
}

/// Selective ratio reflecting: MRR on the k strongest product channels,
/// remaining elements switched off.
template <typename Scalar>
Beamformer<Scalar> srr(ChannelRealization<Scalar> const &ch, SystemParams<Scalar> const &params, Index const k)
{
  Mask            mask = select_strongest(ch, k);
  CVector<Scalar> dir = (mask.template cast<Cx<Scalar>>() * detail::product_channel(ch).array()).matrix();
  Scalar const    norm = dir.norm();
  if (!(norm > 0)) { throw NumericalError("srr: selected product channels are identically zero"); }
  dir *= direct_path_rotation(ch.h) / norm;
  Scalar const lambda = srr_lambda(ch, params, mask);
  return detail::make_beamformer(std::move(dir), lambda, Method::SRR, std::move(mask));
}

/// Direction maximizing the approximate SNR for a fixed scale lambda.
///
/// The whitened objective p'^H C p' + A has a rank-one C, so the stationary
/// point is taken as the minimum-norm solution through the pseudo-inverse.
/// After undoing the whitening this reduces to the elementwise form
///
///   p(n) ~ s * g(n)* f(n) / D(n),   D(n) = sigma_I^2 |f(n)|^2 + sigma_u^2 / lambda^2
///
/// with s = exp(-j arg h) (Aligned) or -exp(-j arg h) (PaperLiteral).
template <typename Scalar>
CVector<Scalar> asnr_direction(ChannelRealization<Scalar> const &ch,
                               SystemParams<Scalar> const       &params,
                               Scalar const                      lambda,
                               SignMode const                    sign_mode)
{
  detail::check_channel(ch);
  if (!(lambda > 0)) { throw NumericalError("asnr_direction: lambda must be positive"); }
  RVector<Scalar> const d = (params.sigma_i_sq * ch.f.array().abs2() + params.sigma_u_sq / (lambda * lambda)).matrix();
  CVector<Scalar>       dir = (detail::product_channel(ch).array() / d.array().template cast<Cx<Scalar>>()).matrix();
  Scalar const          norm = dir.norm();
  if (!(norm > 0)) { throw NumericalError("asnr_direction: product channel is identically zero"); }
  Cx<Scalar> phase = direct_path_rotation(ch.h);
  if (sign_mode == SignMode::PaperLiteral) { phase = -phase; }
  dir *= phase / norm;
  return dir;
}

/// Alternates between the ASNR direction for the current scale and the
/// budget-tight scale for that direction, starting from the MRR scale.
/// Stops once |lambda_new - lambda_old| / lambda_old <= tolerance. Hitting
/// max_iterations is not an error; trace.converged reports it.
template <typename Scalar>
std::pair<Beamformer<Scalar>, ConvergenceTrace<Scalar>> max_asnr(ChannelRealization<Scalar> const &ch,
                                                                 SystemParams<Scalar> const       &params,
                                                                 SolverOptions<Scalar> const      &opts = {})
{
  if (!(opts.tolerance > 0)) { throw NumericalError("max_asnr: tolerance must be positive"); }
  if (opts.max_iterations < 1) { throw NumericalError("max_asnr: max_iterations must be >= 1"); }

  ConvergenceTrace<Scalar> trace;
  auto record = [&](int it, CVector<Scalar> const &dir, Scalar lambda) {
    CVector<Scalar> const p = lambda * dir;
    trace.records.push_back({it, lambda, asnr_value<Scalar>(p, lambda, ch, params), rate(snr<Scalar>(p, ch, params))});
  };

  Beamformer<Scalar> bf = mrr(ch, params);
  bf.method = Method::MaxASNR;
  record(0, bf.p_normalized, bf.lambda);

  for (int it = 1; it <= opts.max_iterations; ++it) {
    CVector<Scalar> dir = asnr_direction(ch, params, bf.lambda, opts.sign_mode);
    Scalar const    lambda = lambda_from_normalized<Scalar>(dir, ch.g, params);
    Scalar const    change = std::abs(lambda - bf.lambda) / bf.lambda;
    bf.p_normalized = std::move(dir);
    bf.lambda = lambda;
    record(it, bf.p_normalized, bf.lambda);
    if (change <= opts.tolerance) {
      trace.converged = true;
      break;
    }
  }
  return {std::move(bf), std::move(trace)};
}

/// Sanity baseline: equal amplitudes, i.i.d. uniform phases, budget-tight
/// scale.
template <typename Scalar>
Beamformer<Scalar> random_phase(ChannelRealization<Scalar> const &ch, SystemParams<Scalar> const &params, std::uint64_t const seed)
{
  detail::check_channel(ch);
  std::mt19937_64                        rng(seed);
  std::uniform_real_distribution<Scalar> uniform(Scalar(0), Scalar(2) * std::numbers::pi_v<Scalar>);
  Scalar const                           amp = Scalar(1) / std::sqrt(static_cast<Scalar>(ch.size()));
  CVector<Scalar>                        dir(ch.size());
  for (Index n = 0; n < ch.size(); ++n) {
    dir(n) = std::polar(amp, uniform(rng));
  }
  Scalar const lambda = lambda_from_normalized<Scalar>(dir, ch.g, params);
  return detail::make_beamformer(std::move(dir), lambda, Method::RandomPhase, Mask::Constant(ch.size(), true));
}

/// Sanity baseline: a passive surface. Unit-modulus coefficients co-phased
/// with the direct path, no amplification, so lambda = sqrt(N) and the
/// reflect-power budget does not apply.
template <typename Scalar>
Beamformer<Scalar> passive_aligned(ChannelRealization<Scalar> const &ch, SystemParams<Scalar> const & /*params*/)
{
  detail::check_channel(ch);
  Scalar const     sqrt_n = std::sqrt(static_cast<Scalar>(ch.size()));
  Cx<Scalar> const rot = direct_path_rotation(ch.h);
  CVector<Scalar>  dir(ch.size());
  for (Index n = 0; n < ch.size(); ++n) {
    dir(n) = rot * std::polar(Scalar(1) / sqrt_n, std::arg(ch.f(n) * std::conj(ch.g(n))));
  }
  return detail::make_beamformer(std::move(dir), sqrt_n, Method::PassiveAligned, Mask::Constant(ch.size(), true));
}

} // namespace activeirs
