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

// Dense-matrix evaluations used only as independent references in tests.
// Everything here forms G, F, D and C explicitly and follows the matrix
// algebra step by step, sharing no code with the elementwise library paths.

#include "activeirs/system_model.hpp"

#include <Eigen/Dense>

#include <random>

namespace activeirs::reference {

using CMatrix = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

inline CMatrix diag(CVec const &v)
{
  return v.asDiagonal();
}

inline CMatrix whitening_diag(ChannelRealization<double> const &ch, SystemParams<double> const &params, double lambda, double power)
{
  Index const n = ch.size();
  CMatrix     d = CMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    double const di = params.sigma_i_sq * std::norm(ch.f(i)) + params.sigma_u_sq / (lambda * lambda);
    d(i, i) = std::pow(di, power);
  }
  return d;
}

/// lambda = sqrt(P_I / (P_S p^H G^H G p + sigma_I^2 p^H p)) with dense G.
inline double lambda(CVec const &p_norm, CVec const &g, SystemParams<double> const &params)
{
  CMatrix const G = diag(g);
  double const  load =
    params.p_s * (p_norm.adjoint() * G.adjoint() * G * p_norm)(0).real() + params.sigma_i_sq * p_norm.squaredNorm();
  return std::sqrt(params.p_i / load);
}

/// P_S |h^H + f^H G p|^2 / (sigma_I^2 p^H F F^H p + sigma_u^2).
inline double snr(CVec const &p, ChannelRealization<double> const &ch, SystemParams<double> const &params)
{
  CMatrix const G = diag(ch.g);
  CMatrix const F = diag(ch.f);
  std::complex<double> const sig = std::conj(ch.h) + (ch.f.adjoint() * G * p)(0);
  double const noise = params.sigma_i_sq * (p.adjoint() * F * F.adjoint() * p)(0).real() + params.sigma_u_sq;
  return params.p_s * std::norm(sig) / noise;
}

/// Approximate SNR in whitened coordinates with dense C and A.
inline double asnr(CVec const &p, double lambda, ChannelRealization<double> const &ch, SystemParams<double> const &params)
{
  CMatrix const G = diag(ch.g);
  CMatrix const d_half = whitening_diag(ch, params, lambda, 0.5);
  CMatrix const d_mhalf = whitening_diag(ch, params, lambda, -0.5);
  CVec const    pp = d_half * p;
  CMatrix const C = d_mhalf.adjoint() * G.adjoint() * ch.f * ch.f.adjoint() * G * d_mhalf;
  std::complex<double> const A = std::conj(ch.h) * (pp.adjoint() * d_mhalf.adjoint() * G.adjoint() * ch.f)(0) +
                                 ch.h * (ch.f.adjoint() * G * d_mhalf * pp)(0);
  std::complex<double> const num = (pp.adjoint() * C * pp)(0) + A;
  return params.p_s * num.real() / pp.squaredNorm();
}

/// Literal stationary point p' = -h^H C^+ D^(-1/2)^H G^H f with the
/// pseudo-inverse of the rank-one C, mapped back through D^(-1/2) and
/// normalized. `aligned` flips the global sign.
inline CVec asnr_direction(ChannelRealization<double> const &ch, SystemParams<double> const &params, double lambda, bool aligned)
{
  CMatrix const G = diag(ch.g);
  CMatrix const d_mhalf = whitening_diag(ch, params, lambda, -0.5);
  CVec const    b = d_mhalf.adjoint() * G.adjoint() * ch.f;
  CMatrix const C = b * b.adjoint();
  Eigen::CompleteOrthogonalDecomposition<CMatrix> cod(C);
  CMatrix const C_pinv = cod.pseudoInverse();
  CVec          pp = -std::conj(ch.h) * (C_pinv * b);
  pp /= pp.norm();
  CVec p = d_mhalf * pp;
  p /= p.norm();
  return aligned ? CVec(-p) : p;
}

/// Relative closeness; doctest::Approx adds an absolute floor of 1 that
/// hides errors on tiny physical quantities.
inline bool rel_close(double a, double b, double tol)
{
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

/// Arbitrary complex fixture with per-entry magnitudes spread over a few
/// decades, so diagonal structure is exercised.
inline ChannelRealization<double> random_fixture(std::mt19937_64 &rng, Index n)
{
  std::normal_distribution<double>       normal;
  std::uniform_real_distribution<double> decade(-1.5, 1.5);
  ChannelRealization<double>             ch;
  ch.g.resize(n);
  ch.f.resize(n);
  for (Index i = 0; i < n; ++i) {
    ch.g(i) = std::pow(10.0, decade(rng)) * std::complex<double>(normal(rng), normal(rng));
    ch.f(i) = std::pow(10.0, decade(rng)) * std::complex<double>(normal(rng), normal(rng));
  }
  ch.h = std::complex<double>(normal(rng), normal(rng));
  return ch;
}

/// Unit-scale parameters matching random_fixture magnitudes.
inline SystemParams<double> unit_params(Index n)
{
  SystemParams<double> p;
  p.n_elements = n;
  p.p_s = 1.0;
  p.p_i = 1.0;
  p.sigma_i_sq = 0.1;
  p.sigma_u_sq = 0.1;
  return p;
}

} // namespace activeirs::reference
