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

#include <cmath>

namespace activeirs {

template <typename Scalar = double>
struct LinkMetrics
{
  Scalar snr;
  Scalar rate_bits;
  Scalar reflected_power;
  Scalar receive_power;
};

namespace detail {

template <typename Scalar>
void check_sizes(CRef<Scalar> const &p, ChannelRealization<Scalar> const &ch)
{
  if (p.size() != ch.g.size() || ch.f.size() != ch.g.size()) {
    throw NumericalError("metrics: coefficient and channel lengths differ");
  }
}

} // namespace detail

/// Reflected path amplitude f^H G p.
template <typename Scalar>
Cx<Scalar> reflected_signal(CRef<Scalar> const &p, ChannelRealization<Scalar> const &ch)
{
  return (ch.f.conjugate().array() * ch.g.array() * p.array()).sum();
}

/// Average power leaving the IRS, P_S sum|p g|^2 + sigma_I^2 sum|p|^2.
template <typename Scalar>
Scalar reflected_power(CRef<Scalar> const &p,
                       ChannelRealization<Scalar> const    &ch,
                       SystemParams<Scalar> const          &params)
{
  detail::check_sizes(p, ch);
  return params.p_s * (p.array() * ch.g.array()).abs2().sum() + params.sigma_i_sq * p.squaredNorm();
}

/// Amplified IRS noise seen at the user, sigma_I^2 p^H F F^H p.
template <typename Scalar>
Scalar irs_noise_power(CRef<Scalar> const &p,
                       ChannelRealization<Scalar> const    &ch,
                       SystemParams<Scalar> const          &params)
{
  return params.sigma_i_sq * (p.array() * ch.f.array()).abs2().sum();
}

template <typename Scalar>
Scalar receive_power(CRef<Scalar> const &p,
                     ChannelRealization<Scalar> const    &ch,
                     SystemParams<Scalar> const          &params)
{
  detail::check_sizes(p, ch);
  Scalar const signal = std::norm(std::conj(ch.h) + reflected_signal<Scalar>(p, ch));
  return params.p_s * signal + irs_noise_power<Scalar>(p, ch, params) + params.sigma_u_sq;
}

template <typename Scalar>
Scalar snr(CRef<Scalar> const &p,
           ChannelRealization<Scalar> const    &ch,
           SystemParams<Scalar> const          &params)
{
  detail::check_sizes(p, ch);
  Scalar const noise = irs_noise_power<Scalar>(p, ch, params) + params.sigma_u_sq;
  if (!(noise > 0)) { throw NumericalError("snr: zero noise power"); }
  return params.p_s * std::norm(std::conj(ch.h) + reflected_signal<Scalar>(p, ch)) / noise;
}

template <typename Scalar>
Scalar rate(Scalar const snr_value)
{
  if (snr_value < 0 || std::isnan(snr_value)) { throw NumericalError("rate: negative snr"); }
  return std::log2(Scalar(1) + snr_value);
}

/// SNR with the direct-path power |h|^2 dropped from the numerator, written
/// in the whitened variable p' = D^(1/2) p where
/// D = sigma_I^2 F F^H + lambda^-2 sigma_u^2 I.
template <typename Scalar>
Scalar asnr_value(CRef<Scalar> const &p,
                  Scalar const                         lambda,
                  ChannelRealization<Scalar> const    &ch,
                  SystemParams<Scalar> const          &params)
{
  detail::check_sizes(p, ch);
  if (!(lambda > 0)) { throw NumericalError("asnr_value: lambda must be positive"); }
  RVector<Scalar> const sqrt_d =
    (params.sigma_i_sq * ch.f.array().abs2() + params.sigma_u_sq / (lambda * lambda)).sqrt().matrix();
  CVector<Scalar> const whitened = (sqrt_d.array().template cast<Cx<Scalar>>() * p.array()).matrix();
  // Row vector f^H G D^(-1/2).
  CVector<Scalar> const row = (ch.f.conjugate().array() * ch.g.array() / sqrt_d.array().template cast<Cx<Scalar>>()).matrix();
  Cx<Scalar> const t = (row.array() * whitened.array()).sum();
  Scalar const     quad = std::norm(t);
  Scalar const     cross = Scalar(2) * std::real(ch.h * t);
  return params.p_s * (quad + cross) / whitened.squaredNorm();
}

template <typename Scalar>
Scalar reflected_power(Beamformer<Scalar> const &bf, ChannelRealization<Scalar> const &ch, SystemParams<Scalar> const &params)
{
  return reflected_power<Scalar>(bf.coefficients(), ch, params);
}

template <typename Scalar>
Scalar receive_power(Beamformer<Scalar> const &bf, ChannelRealization<Scalar> const &ch, SystemParams<Scalar> const &params)
{
  return receive_power<Scalar>(bf.coefficients(), ch, params);
}

template <typename Scalar>
Scalar snr(Beamformer<Scalar> const &bf, ChannelRealization<Scalar> const &ch, SystemParams<Scalar> const &params)
{
  return snr<Scalar>(bf.coefficients(), ch, params);
}

template <typename Scalar>
Scalar asnr_value(Beamformer<Scalar> const &bf, ChannelRealization<Scalar> const &ch, SystemParams<Scalar> const &params)
{
  return asnr_value<Scalar>(bf.coefficients(), bf.lambda, ch, params);
}

template <typename Scalar>
Scalar rate_bits(Beamformer<Scalar> const &bf, ChannelRealization<Scalar> const &ch, SystemParams<Scalar> const &params)
{
  return rate(snr(bf, ch, params));
}

template <typename Scalar>
LinkMetrics<Scalar> evaluate(Beamformer<Scalar> const &bf, ChannelRealization<Scalar> const &ch, SystemParams<Scalar> const &params)
{
  CVector<Scalar> const p = bf.coefficients();
  Scalar const          s = snr<Scalar>(p, ch, params);
  return {s, rate(s), reflected_power<Scalar>(p, ch, params), receive_power<Scalar>(p, ch, params)};
}

} // namespace activeirs
