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

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace activeirs::detail {

inline unsigned resolve_threads(unsigned const requested)
{
  if (requested != 0) { return requested; }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Calls fn(i) for i in [0, count) over contiguous blocks. fn must only write
// to slot i of its output, which keeps results independent of scheduling.
// The first exception (lowest index) is rethrown after all workers join.
template <typename Fn>
void parallel_for(std::int64_t const count, unsigned threads, Fn &&fn)
{
  threads = static_cast<unsigned>(std::clamp<std::int64_t>(resolve_threads(threads), 1, std::max<std::int64_t>(count, 1)));
  if (threads == 1) {
    for (std::int64_t i = 0; i < count; ++i) { fn(i); }
    return;
  }
  std::mutex         lock;
  std::int64_t       failed_at = count;
  std::exception_ptr failure;
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      std::int64_t const begin = count * t / threads;
      std::int64_t const end = count * (t + 1) / threads;
      pool.emplace_back([&, begin, end] {
        for (std::int64_t i = begin; i < end; ++i) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard guard(lock);
            if (i < failed_at) {
              failed_at = i;
              failure = std::current_exception();
            }
            return;
          }
        }
      });
    }
  }
  if (failure) { std::rethrow_exception(failure); }
}

} // namespace activeirs::detail
