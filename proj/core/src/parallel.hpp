/*
 * Copyright 2026 The asplund-morph Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace asplund::detail {

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) {
    return requested;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Calls body(y) for every y in [begin, end), splitting the range into
/// contiguous chunks, one per thread. body must only write to row y.
template <class Body>
void for_each_row(int begin, int end, unsigned threads, Body&& body) {
  const int rows = end - begin;
  if (rows <= 0) {
    return;
  }
  const int workers = static_cast<int>(std::min<unsigned>(resolve_threads(threads), static_cast<unsigned>(rows)));
  if (workers <= 1) {
    for (int y = begin; y < end; ++y) {
      body(y);
    }
    return;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      const int lo = begin + rows * w / workers;
      const int hi = begin + rows * (w + 1) / workers;
      pool.emplace_back([&, lo, hi, w] {
        try {
          for (int y = lo; y < hi; ++y) {
            body(y);
          }
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
}

}  // namespace asplund::detail
