// Copyright 2026 The tsjoin Authors.
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

// In-process map / group-by-key / reduce stages over a worker pool.
//
// The partitioning of work never depends on the worker count: input is cut
// into a fixed number of contiguous chunks and keys are routed to a fixed
// number of shuffle partitions. Within a group, values keep their input
// order. Output is therefore identical for any number of workers.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <ranges>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "tsj/error.hpp"

namespace tsj {

inline constexpr std::size_t kMapChunks = 256;
inline constexpr std::size_t kShufflePartitions = 64;

// Runs fn(i) for i in [0, count) on up to `workers` threads. The first
// failure is rethrown as a StageError naming the failing index.
template <typename Fn>
void parallel_for(std::size_t count, std::size_t workers, std::string_view stage, Fn&& fn) {
  if (workers == 0) throw ConfigError("worker count must be positive");
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex error_mu;
  std::size_t failed_index = 0;
  std::string failed_what;

  const auto run = [&] {
    for (;;) {
      if (failed.load(std::memory_order_relaxed)) return;
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      try {
        fn(i);
      } catch (const std::exception& e) {
        std::lock_guard lock(error_mu);
        if (!failed.exchange(true)) {
          failed_index = i;
          failed_what = e.what();
        }
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!failed.exchange(true)) {
          failed_index = i;
          failed_what = "unknown exception";
        }
      }
    }
  };

  const std::size_t threads = std::min(workers, count);
  if (threads <= 1) {
    run();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(run);
  }
  if (failed) throw StageError(std::string(stage), failed_index, failed_what);
}

// Splits [0, n) into at most kMapChunks contiguous ranges.
inline std::vector<std::pair<std::size_t, std::size_t>> chunk_ranges(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  if (n == 0) return ranges;
  const std::size_t chunks = std::min(n, kMapChunks);
  const std::size_t base = n / chunks, extra = n % chunks;
  std::size_t begin = 0;
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t len = base + (c < extra ? 1 : 0);
    ranges.emplace_back(begin, begin + len);
    begin += len;
  }
  return ranges;
}

// Map-only stage: fn(const In&, std::vector<Out>&) over every input item;
// outputs are concatenated in input order.
template <typename Out, typename In, typename Fn>
std::vector<Out> parallel_map(std::span<const In> input, std::size_t workers,
                              std::string_view stage, Fn&& fn) {
  const auto ranges = chunk_ranges(input.size());
  std::vector<std::vector<Out>> parts(ranges.size());
  parallel_for(ranges.size(), workers, stage, [&](std::size_t c) {
    for (std::size_t i = ranges[c].first; i < ranges[c].second; ++i) fn(input[i], parts[c]);
  });
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  std::vector<Out> out;
  out.reserve(total);
  for (auto& p : parts) {
    out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
    std::vector<Out>().swap(p);
  }
  return out;
}

template <typename K, typename V>
class Emitter {
 public:
  explicit Emitter(std::vector<std::vector<std::pair<K, V>>>& partitions)
      : partitions_(partitions) {}

  void emit(K key, V value) {
    const std::size_t p = std::hash<K>{}(key) % partitions_.size();
    partitions_[p].emplace_back(std::move(key), std::move(value));
  }

 private:
  std::vector<std::vector<std::pair<K, V>>>& partitions_;
};

// map:    (const In&, Emitter<K, V>&)
// reduce: (const K&, range of const V&, std::vector<Out>&)
// Keys need std::hash and operator<.
template <typename K, typename V, typename Out, typename In, typename MapFn,
          typename ReduceFn>
std::vector<Out> run_stage(std::span<const In> input, MapFn&& map, ReduceFn&& reduce,
                           std::size_t workers, std::string_view stage) {
  using Pair = std::pair<K, V>;
  const auto ranges = chunk_ranges(input.size());

  std::vector<std::vector<std::vector<Pair>>> mapped(
      ranges.size(), std::vector<std::vector<Pair>>(kShufflePartitions));
  parallel_for(ranges.size(), workers, stage, [&](std::size_t c) {
    Emitter<K, V> emitter(mapped[c]);
    for (std::size_t i = ranges[c].first; i < ranges[c].second; ++i) map(input[i], emitter);
  });

  std::vector<std::vector<Out>> reduced(kShufflePartitions);
  parallel_for(kShufflePartitions, workers, stage, [&](std::size_t p) {
    std::vector<Pair> group;
    std::size_t total = 0;
    for (const auto& chunk : mapped) total += chunk[p].size();
    group.reserve(total);
    for (auto& chunk : mapped) {
      group.insert(group.end(), std::make_move_iterator(chunk[p].begin()),
                   std::make_move_iterator(chunk[p].end()));
      std::vector<Pair>().swap(chunk[p]);
    }
    std::stable_sort(group.begin(), group.end(),
                     [](const Pair& a, const Pair& b) { return a.first < b.first; });
    for (std::size_t begin = 0; begin < group.size();) {
      std::size_t end = begin + 1;
      while (end < group.size() && !(group[begin].first < group[end].first)) ++end;
      std::span<const Pair> members(group.data() + begin, end - begin);
      reduce(group[begin].first, members | std::views::values, reduced[p]);
      begin = end;
    }
  });

  std::size_t total = 0;
  for (const auto& r : reduced) total += r.size();
  std::vector<Out> out;
  out.reserve(total);
  for (auto& r : reduced) {
    out.insert(out.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
  }
  return out;
}

}  // namespace tsj
