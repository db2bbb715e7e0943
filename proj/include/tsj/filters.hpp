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

// Cheap pruning of candidate pairs ahead of verification. Both filters
// evaluate a lower bound on SLD through normalize_distance(), so a pair
// they prune can never pass the verifier's `<= T` test.

#pragma once

#include <cstddef>
#include <cstdint>

#include "tsj/candidates.hpp"
#include "tsj/setdist.hpp"
#include "tsj/strdist.hpp"

namespace tsj {

enum class FilterDecision { kKeep, kPrune };

struct FilterStats {
  std::uint64_t input_pairs = 0;
  std::uint64_t pruned_by_length = 0;
  std::uint64_t pruned_by_histogram = 0;
  std::uint64_t surviving = 0;

  FilterStats& operator+=(const FilterStats& o) {
    input_pairs += o.input_pairs;
    pruned_by_length += o.pruned_by_length;
    pruned_by_histogram += o.pruned_by_histogram;
    surviving += o.surviving;
    return *this;
  }
  bool reconciles() const {
    return input_pairs == pruned_by_length + pruned_by_histogram + surviving;
  }
  friend bool operator==(const FilterStats&, const FilterStats&) = default;
};

// Prunes when the aggregate lengths alone force NSLD > T, i.e. when
// 1 - min/max > T. SLD is at least the length gap.
inline FilterDecision length_filter(std::size_t left_len, std::size_t right_len,
                                    NormalizedThreshold threshold) {
  const std::size_t gap = left_len > right_len ? left_len - right_len : right_len - left_len;
  return normalize_distance(gap, left_len + right_len) > threshold.value()
             ? FilterDecision::kPrune
             : FilterDecision::kKeep;
}

inline FilterDecision length_filter(const CandidatePair& pair, NormalizedThreshold threshold) {
  return length_filter(pair.left_len, pair.right_len, threshold);
}

inline FilterDecision histogram_filter(const TokenLengthHistogram& ha,
                                       const TokenLengthHistogram& hb, std::size_t la,
                                       std::size_t lb, NormalizedThreshold threshold) {
  const std::size_t bound = sld_lower_bound(ha, hb);
  return normalize_distance(bound, la + lb) > threshold.value() ? FilterDecision::kPrune
                                                                : FilterDecision::kKeep;
}

}  // namespace tsj
