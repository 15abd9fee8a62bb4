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

#include <Eigen/Core>

#include <complex>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace activeirs {

using Index = Eigen::Index;

template <typename Scalar>
using Cx = std::complex<Scalar>;

template <typename Scalar>
using CVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar>
using RVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Point2 = Eigen::Matrix<Scalar, 2, 1>;

// Read-only view usable in non-deduced position, so Scalar is taken from the
// other arguments and Eigen expressions bind without an explicit template.
template <typename Scalar>
using CRef = std::type_identity_t<Eigen::Ref<CVector<Scalar> const>>;

using Mask = Eigen::Array<bool, Eigen::Dynamic, 1>;

// Invalid inputs to a numerical routine (bad sizes, zero channels, out of
// range selection). Runtime-level failure in the CLI.
class NumericalError : public std::domain_error
{
public:
  using std::domain_error::domain_error;
};

// Configuration rejected while parsing or validating. Carries the offending
// key so callers can report it.
class ConfigError : public std::invalid_argument
{
public:
  ConfigError(std::string key, std::string const &constraint)
    : std::invalid_argument("config key '" + key + "': " + constraint)
    , key_(std::move(key))
  {
  }

  [[nodiscard]] std::string const &key() const noexcept { return key_; }

private:
  std::string key_;
};

// Unit-modulus factor that rotates onto the direct-path phase, exp(-j arg h).
// Taken as 1 when the direct path vanishes.
template <typename Scalar>
Cx<Scalar> direct_path_rotation(Cx<Scalar> const h)
{
  Scalar const mag = std::abs(h);
  if (mag == Scalar(0)) { return Cx<Scalar>(1, 0); }
  return std::conj(h) / mag;
}

} // namespace activeirs
