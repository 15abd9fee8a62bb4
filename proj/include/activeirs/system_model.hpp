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

#include "types.hpp"

#include <cmath>
#include <cstdint>
#include <random>

namespace activeirs {

template <typename Scalar>
Scalar dbm_to_watts(Scalar const level_dbm)
{
  return std::pow(Scalar(10), (level_dbm - Scalar(30)) / Scalar(10));
}

template <typename Scalar>
Scalar watts_to_dbm(Scalar const watts)
{
  return Scalar(10) * std::log10(watts) + Scalar(30);
}

/// Physical description of a BS - IRS - user link. Powers and noise
/// variances are in watts, positions in meters.
template <typename Scalar = double>
struct SystemParams
{
  Index  n_elements = 64;
  Scalar p_s = dbm_to_watts(Scalar(15));
  Scalar p_i = dbm_to_watts(Scalar(30));
  Scalar sigma_i_sq = dbm_to_watts(Scalar(-70));
  Scalar sigma_u_sq = dbm_to_watts(Scalar(-70));
  Point2<Scalar> pos_bs{0, 0};
  Point2<Scalar> pos_irs{100, 30};
  Point2<Scalar> pos_user{150, 0};
  Scalar alpha_bi = Scalar(2.3);
  Scalar alpha_iu = Scalar(2.3);
  Scalar alpha_bu = Scalar(3.8);
  Scalar ref_loss_db = Scalar(-30);

  /// Throws NumericalError naming the first violated invariant.
  void validate() const;
};

/// Single draw of the three channels. G = diag(g) and F = diag(f) are never
/// formed explicitly.
template <typename Scalar = double>
struct ChannelRealization
{
  CVector<Scalar> g; // BS -> IRS
  CVector<Scalar> f; // IRS -> user
  Cx<Scalar>      h; // BS -> user

  [[nodiscard]] Index size() const { return g.size(); }
};

template <typename Scalar>
struct NodeDistances
{
  Scalar bs_irs;
  Scalar irs_user;
  Scalar bs_user;
};

template <typename Scalar>
NodeDistances<Scalar> node_distances(SystemParams<Scalar> const &params)
{
  NodeDistances<Scalar> d{(params.pos_irs - params.pos_bs).norm(),
                          (params.pos_user - params.pos_irs).norm(),
                          (params.pos_user - params.pos_bs).norm()};
  if (!(d.bs_irs > 0) || !(d.irs_user > 0) || !(d.bs_user > 0)) {
    throw NumericalError("node_distances: coincident nodes");
  }
  return d;
}

/// Large-scale power gain 10^(ref/10) * d^-alpha. Used as the variance of
/// each complex channel entry.
template <typename Scalar>
Scalar path_loss_gain(Scalar const distance, Scalar const exponent, Scalar const ref_loss_db)
{
  if (!(distance > 0)) { throw NumericalError("path_loss_gain: distance must be positive"); }
  return std::pow(Scalar(10), ref_loss_db / Scalar(10)) * std::pow(distance, -exponent);
}

template <typename Scalar>
void SystemParams<Scalar>::validate() const
{
  auto require = [](bool ok, char const *what) {
    if (!ok) { throw NumericalError(std::string("SystemParams: ") + what); }
  };
  require(n_elements >= 1, "n_elements must be >= 1");
  require(p_s > 0 && std::isfinite(p_s), "p_s must be positive");
  require(p_i > 0 && std::isfinite(p_i), "p_i must be positive");
  require(sigma_i_sq > 0 && std::isfinite(sigma_i_sq), "sigma_i_sq must be positive");
  require(sigma_u_sq > 0 && std::isfinite(sigma_u_sq), "sigma_u_sq must be positive");
  require(alpha_bi >= 2 && alpha_iu >= 2 && alpha_bu >= 2, "path-loss exponents must be >= 2");
  require(std::isfinite(ref_loss_db), "ref_loss_db must be finite");
  node_distances(*this);
}

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Child seed for stream `index` of a master seed. Independent of the order
/// in which children are requested.
constexpr std::uint64_t mix_seed(std::uint64_t const master, std::uint64_t const index) noexcept
{
  return splitmix64(splitmix64(master) ^ (index * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL));
}

namespace detail {

template <typename Scalar>
CVector<Scalar> draw_cn(std::mt19937_64 &rng, Index const n, Scalar const variance)
{
  std::normal_distribution<Scalar> normal(Scalar(0), std::sqrt(variance / Scalar(2)));
  CVector<Scalar> out(n);
  for (Index i = 0; i < n; ++i) {
    Scalar const re = normal(rng);
    Scalar const im = normal(rng);
    out(i) = Cx<Scalar>(re, im);
  }
  return out;
}

} // namespace detail

/// Rayleigh-faded realization: i.i.d. CN(0, PL(d)) entries on each link.
/// Entries are drawn in the order g, f, h from one mt19937_64 stream.
template <typename Scalar>
ChannelRealization<Scalar> sample_channels(SystemParams<Scalar> const &params, std::uint64_t const seed)
{
  params.validate();
  auto const d = node_distances(params);
  std::mt19937_64 rng(seed);
  ChannelRealization<Scalar> ch;
  ch.g = detail::draw_cn(rng, params.n_elements, path_loss_gain(d.bs_irs, params.alpha_bi, params.ref_loss_db));
  ch.f = detail::draw_cn(rng, params.n_elements, path_loss_gain(d.irs_user, params.alpha_iu, params.ref_loss_db));
  ch.h = detail::draw_cn(rng, 1, path_loss_gain(d.bs_user, params.alpha_bu, params.ref_loss_db))(0);
  return ch;
}

} // namespace activeirs
