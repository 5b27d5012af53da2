// Copyright 2026 The gvc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace gvc {

/// Worker count: hardware concurrency, capped by the GVC_THREADS env var.
inline std::size_t thread_count() {
  std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("GVC_THREADS")) {
    try {
      long cap = std::stol(env);
      if (cap >= 1) hw = std::min<std::size_t>(hw, static_cast<std::size_t>(cap));
    } catch (...) {
    }
  }
  return hw;
}

/// Fixed work-chunk size. Chunk boundaries never depend on the thread count,
/// so chunked reductions are bit-stable across GVC_THREADS settings.
inline constexpr std::size_t kChunk = 2048;

/// Calls body(begin, end) over disjoint chunks of [0, count).
template <class Body>
void parallel_for(std::size_t count, Body&& body) {
  const std::size_t chunks = (count + kChunk - 1) / kChunk;
  const std::size_t workers = std::min(thread_count(), chunks);
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c)
      body(c * kChunk, std::min(count, (c + 1) * kChunk));
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t c = w; c < chunks; c += workers)
          body(c * kChunk, std::min(count, (c + 1) * kChunk));
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

/// Deterministic chunked sum: partial(begin, end) per chunk, combined in order.
template <class Partial>
double chunked_sum(std::size_t count, Partial&& partial) {
  const std::size_t chunks = (count + kChunk - 1) / kChunk;
  std::vector<double> sums(chunks, 0.0);
  parallel_for(count, [&](std::size_t b, std::size_t e) { sums[b / kChunk] = partial(b, e); });
  double total = 0.0;
  for (double s : sums) total += s;
  return total;
}

}  // namespace gvc
