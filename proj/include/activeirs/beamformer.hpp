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

#include <optional>
#include <string_view>
#include <vector>

namespace activeirs {

enum class Method
{
  EGR,
  MRR,
  SRR,
  MaxASNR,
  RandomPhase,
  PassiveAligned
};

enum class SignMode
{
  Aligned,      // exp(-j arg h) in front of the ASNR direction
  PaperLiteral, // -exp(-j arg h), the literal stationary point
};

constexpr std::string_view to_string(Method const m) noexcept
{
  switch (m) {
  case Method::EGR: return "EGR";
  case Method::MRR: return "MRR";
  case Method::SRR: return "SRR";
  case Method::MaxASNR: return "MaxASNR";
  case Method::RandomPhase: return "RandomPhase";
  case Method::PassiveAligned: return "PassiveAligned";
  }
  return "?";
}

inline std::optional<Method> parse_method(std::string_view const s) noexcept
{
  for (auto m : {Method::EGR, Method::MRR, Method::SRR, Method::MaxASNR, Method::RandomPhase, Method::PassiveAligned}) {
    if (to_string(m) == s) { return m; }
  }
  return std::nullopt;
}

constexpr std::string_view to_string(SignMode const m) noexcept
{
  return m == SignMode::Aligned ? "aligned" : "paper-literal";
}

inline std::optional<SignMode> parse_sign_mode(std::string_view const s) noexcept
{
  if (s == "aligned") { return SignMode::Aligned; }
  if (s == "paper-literal") { return SignMode::PaperLiteral; }
  return std::nullopt;
}

/// IRS coefficient vector factored as p = lambda * p_normalized with
/// ||p_normalized|| = 1. Elements with a false mask entry are switched off
/// and carry an exact zero.
template <typename Scalar = double>
struct Beamformer
{
  CVector<Scalar> p_normalized;
  Scalar          lambda = 0;
  Method          method = Method::EGR;
  Mask            active_mask;

  [[nodiscard]] CVector<Scalar> coefficients() const { return lambda * p_normalized; }
  [[nodiscard]] Index           size() const { return p_normalized.size(); }
};

template <typename Scalar = double>
struct SolverOptions
{
  Scalar   tolerance = Scalar(1e-4); // relative change in lambda
  int      max_iterations = 50;
  SignMode sign_mode = SignMode::Aligned;
};

template <typename Scalar = double>
struct TraceRecord
{
  int    iteration;
  Scalar lambda;
  Scalar asnr_value;
  Scalar rate_bits;
};

template <typename Scalar = double>
struct ConvergenceTrace
{
  std::vector<TraceRecord<Scalar>> records;
  bool                             converged = false;

  [[nodiscard]] int iterations() const { return records.empty() ? 0 : records.back().iteration; }
};

} // namespace activeirs
