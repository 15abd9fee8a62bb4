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
#include "activeirs/oracle.hpp"
#include "reference.hpp"

#include <doctest.h>

using namespace activeirs;
using doctest::Approx;

TEST_CASE("grid_search_best with one element matches mrr")
{
  SystemParams<double> p;
  p.n_elements = 1;
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto const ch = sample_channels(p, mix_seed(5, s));
    auto const best = grid_search_best(ch, p, 8, 4);
    CHECK(best.best_rate_bits == Approx(rate_bits(mrr(ch, p), ch, p)).epsilon(1e-9));
    CHECK(best.best_direction.norm() == Approx(1.0).epsilon(1e-12));
    CHECK(best.grid_points_evaluated == 1);
  }
}

TEST_CASE("grid_search_best bounds every method at N = 2")
{
  SystemParams<double> p;
  p.n_elements = 2;
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto const   ch = sample_channels(p, mix_seed(6, s));
    auto const   best = grid_search_best(ch, p, 256, 64);
    double const top = std::max({rate_bits(egr(ch, p), ch, p), rate_bits(mrr(ch, p), ch, p),
                                 rate_bits(srr(ch, p, 1), ch, p), rate_bits(max_asnr(ch, p).first, ch, p)});
    CHECK(best.best_rate_bits >= top - 0.02);
    CHECK(top <= best.best_rate_bits + 0.02);
    CHECK(best.grid_points_evaluated == 256 * 64);
    CHECK(best.phase_steps == 256);
    CHECK(best.amplitude_steps == 64);
    // The reported maximum is reproducible from the reported direction.
    CHECK(rate_bits(Beamformer<double>{best.best_direction,
                                       lambda_from_normalized<double>(best.best_direction, ch.g, p), Method::EGR,
                                       Mask::Constant(2, true)},
                    ch, p) == Approx(best.best_rate_bits).epsilon(1e-12));
  }
}

TEST_CASE("grid refinement never lowers the best rate")
{
  std::mt19937_64 rng(7);
  for (Index n : {2, 3}) {
    auto const ch = reference::random_fixture(rng, n);
    auto const p = reference::unit_params(n);
    double     prev = -1;
    for (int steps = 8; steps <= (n == 2 ? 128 : 32); steps *= 2) {
      double const r = grid_search_best(ch, p, steps, steps / 2).best_rate_bits;
      CHECK(r >= prev);
      prev = r;
    }
    double const phase_only = grid_search_best(ch, p, 32, 8).best_rate_bits;
    CHECK(grid_search_best(ch, p, 64, 8).best_rate_bits >= phase_only);
    CHECK(grid_search_best(ch, p, 32, 16).best_rate_bits >= phase_only);
  }
}

TEST_CASE("threaded grid search matches serial")
{
  std::mt19937_64 rng(8);
  auto const      ch = reference::random_fixture(rng, 3);
  auto const      p = reference::unit_params(3);
  auto const      a = grid_search_best(ch, p, 16, 8, 1);
  auto const      b = grid_search_best(ch, p, 16, 8, 4);
  CHECK(a.best_rate_bits == b.best_rate_bits);
  CHECK(a.best_direction == b.best_direction);
}

TEST_CASE("grid_search_best guards")
{
  std::mt19937_64 rng(9);
  auto const      p = reference::unit_params(4);
  CHECK_THROWS_AS(grid_search_best(reference::random_fixture(rng, 4), p, 8, 4), NumericalError);
  auto const ch = reference::random_fixture(rng, 2);
  CHECK_THROWS_AS(grid_search_best(ch, p, 7, 4), NumericalError);
  CHECK_THROWS_AS(grid_search_best(ch, p, 8, 3), NumericalError);
}

TEST_CASE("sign_adjudicate")
{
  SUBCASE("no direct path is a tie")
  {
    std::mt19937_64 rng(10);
    for (int i = 0; i < 20; ++i) {
      auto ch = reference::random_fixture(rng, 1 + i % 3);
      ch.h = 0;
      CHECK(sign_adjudicate(ch, reference::unit_params(ch.size())) == SignOutcome::Tie);
    }
  }
  SUBCASE("strong direct path favours alignment")
  {
    SystemParams<double> p;
    p.n_elements = 2;
    p.pos_user = {10, 0};
    p.alpha_bu = 2.0;
    for (std::uint64_t s = 0; s < 20; ++s) {
      auto const ch = sample_channels(p, mix_seed(11, s));
      CHECK(sign_adjudicate(ch, p) == SignOutcome::AlignedBetter);
    }
  }
  SUBCASE("large N is rejected")
  {
    std::mt19937_64 rng(12);
    CHECK_THROWS_AS(sign_adjudicate(reference::random_fixture(rng, 4), reference::unit_params(4)), NumericalError);
  }
}
