// Copyright 2026 The steerlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STEERLAB_RANDOM_HPP
#define STEERLAB_RANDOM_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <random>
#include <thread>
#include <vector>

namespace steerlab {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed of sample `index` in the stream `master`: splitmix64(splitmix64(master) ^ index).
/// Samples never share generator state, so any evaluation order gives the same stream.
inline constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ index);
}

/// Independent sub-stream of `master` labelled by a small tag (one per campaign/purpose).
inline constexpr std::uint64_t substream(std::uint64_t master, std::uint64_t tag) {
  return splitmix64(master + 0xD1B54A32D192ED03ULL * (tag + 1));
}

using Rng = std::mt19937_64;

inline Rng rng_for(std::uint64_t master, std::uint64_t index) { return Rng(derive_seed(master, index)); }

/// Evaluates f(0..count-1) on up to `threads` workers; results are returned in index order.
template <class F>
auto parallel_map(std::size_t count, unsigned threads, F&& f) {
  using T = decltype(f(std::size_t{0}));
  std::vector<std::optional<T>> slots(count);
  auto collect = [&] {
    std::vector<T> out;
    out.reserve(count);
    for (auto& v : slots) out.push_back(std::move(*v));
    return out;
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) slots[i].emplace(f(i));
    return collect();
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < count; i += threads) slots[i].emplace(f(i));
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return collect();
}

}  // namespace steerlab

#endif  // STEERLAB_RANDOM_HPP
