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

// Distances between tokenized strings.
//
// SLD pads the smaller token multiset with empty tokens up to
// k = max(T(a), T(b)) and takes the minimum-weight perfect matching over
// the k x k bigraph whose edge weights are token Levenshtein distances
// (an empty token costs the length of its partner). NSLD normalizes it the
// same way NLD normalizes LD.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

#include "tsj/strdist.hpp"
#include "tsj/textnorm.hpp"

namespace tsj {

inline constexpr std::size_t kPad = std::numeric_limits<std::size_t>::max();

struct AlignmentCost {
  std::size_t sld = 0;
  // (left token index or kPad, right token index or kPad).
  std::vector<std::pair<std::size_t, std::size_t>> pairing;
};

enum class SldMethod { kExact, kGreedy };

// Sorted multiset of token lengths.
class TokenLengthHistogram {
 public:
  TokenLengthHistogram() = default;
  explicit TokenLengthHistogram(std::vector<std::uint32_t> lengths)
      : lengths_(std::move(lengths)) {
    std::sort(lengths_.begin(), lengths_.end());
  }
  explicit TokenLengthHistogram(const TokenizedString& s) {
    lengths_.reserve(s.token_count());
    for (const auto& t : s.tokens()) lengths_.push_back(static_cast<std::uint32_t>(t.size()));
    std::sort(lengths_.begin(), lengths_.end());
  }

  std::span<const std::uint32_t> sorted_lengths() const noexcept { return lengths_; }
  std::size_t token_count() const noexcept { return lengths_.size(); }
  std::size_t agg_len() const noexcept {
    std::size_t sum = 0;
    for (auto l : lengths_) sum += l;
    return sum;
  }
  std::size_t multiplicity(std::uint32_t length) const {
    const auto [lo, hi] = std::equal_range(lengths_.begin(), lengths_.end(), length);
    return static_cast<std::size_t>(hi - lo);
  }

 private:
  std::vector<std::uint32_t> lengths_;
};

// Minimum-cost perfect matching on a dense n x n cost matrix (row-major),
// O(n^3) shortest augmenting paths with potentials. Returns the cost and,
// for every row, its assigned column.
inline std::pair<std::int64_t, std::vector<std::size_t>> min_cost_assignment(
    std::span<const std::int64_t> cost, std::size_t n) {
  if (n == 0) return {0, {}};
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  // 1-based: u/v potentials, match_col[j] = row matched to column j.
  std::vector<std::int64_t> u(n + 1, 0), v(n + 1, 0), minv(n + 1);
  std::vector<std::size_t> match_col(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    match_col[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = match_col[j0];
      std::int64_t delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const std::int64_t cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match_col[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match_col[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match_col[j0] = match_col[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> row_to_col(n);
  std::int64_t total = 0;
  for (std::size_t j = 1; j <= n; ++j) {
    row_to_col[match_col[j] - 1] = j - 1;
    total += cost[(match_col[j] - 1) * n + (j - 1)];
  }
  return {total, std::move(row_to_col)};
}

// Per-thread buffers for repeated SLD evaluations.
struct SldScratch {
  std::vector<std::int64_t> weights;
  std::vector<std::tuple<std::int64_t, std::uint32_t, std::uint32_t>> edges;
  std::vector<char> left_used, right_used;
};

namespace detail {

// Fills the padded k x k weight matrix. Weights above `cap` are clamped to
// cap + 1; with cap = nullopt all weights are exact.
inline std::size_t fill_weights(const TokenizedString& a, const TokenizedString& b,
                                std::optional<std::size_t> cap,
                                std::vector<std::int64_t>& w) {
  const std::size_t m = a.token_count();
  const std::size_t n = b.token_count();
  const std::size_t k = std::max(m, n);
  w.assign(k * k, 0);
  const auto clamp = [&](std::size_t d) -> std::int64_t {
    if (cap && d > *cap) return static_cast<std::int64_t>(*cap + 1);
    return static_cast<std::int64_t>(d);
  };
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      std::int64_t weight;
      if (i < m && j < n) {
        if (cap) {
          const auto d = ld_bounded(a.token(i), b.token(j), EditThreshold{*cap});
          weight = d ? static_cast<std::int64_t>(*d) : static_cast<std::int64_t>(*cap + 1);
        } else {
          weight = static_cast<std::int64_t>(ld(a.token(i), b.token(j)));
        }
      } else if (i < m) {
        weight = clamp(a.token(i).size());
      } else {
        weight = clamp(b.token(j).size());
      }
      w[i * k + j] = weight;
    }
  }
  return k;
}

inline AlignmentCost to_alignment(std::int64_t total,
                                  std::span<const std::pair<std::size_t, std::size_t>> pairs,
                                  std::size_t m, std::size_t n) {
  AlignmentCost out;
  out.sld = static_cast<std::size_t>(total);
  out.pairing.reserve(pairs.size());
  for (auto [i, j] : pairs) {
    out.pairing.emplace_back(i < m ? i : kPad, j < n ? j : kPad);
  }
  return out;
}

inline AlignmentCost hungarian(std::span<const std::int64_t> w, std::size_t k,
                               std::size_t m, std::size_t n) {
  auto [total, row_to_col] = min_cost_assignment(w, k);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(k);
  for (std::size_t i = 0; i < k; ++i) pairs.emplace_back(i, row_to_col[i]);
  return to_alignment(total, pairs, m, n);
}

// Repeatedly takes the globally cheapest remaining edge; ties go to the
// lexicographically smallest (left, right) index pair.
inline AlignmentCost greedy(std::span<const std::int64_t> w, std::size_t k, std::size_t m,
                            std::size_t n, SldScratch& scratch) {
  auto& edges = scratch.edges;
  edges.clear();
  edges.reserve(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      edges.emplace_back(w[i * k + j], static_cast<std::uint32_t>(i),
                         static_cast<std::uint32_t>(j));
    }
  }
  std::sort(edges.begin(), edges.end());
  scratch.left_used.assign(k, 0);
  scratch.right_used.assign(k, 0);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(k);
  std::int64_t total = 0;
  for (const auto& [weight, i, j] : edges) {
    if (scratch.left_used[i] || scratch.right_used[j]) continue;
    scratch.left_used[i] = scratch.right_used[j] = 1;
    total += weight;
    pairs.emplace_back(i, j);
    if (pairs.size() == k) break;
  }
  return to_alignment(total, pairs, m, n);
}

}  // namespace detail

inline AlignmentCost sld_exact(const TokenizedString& a, const TokenizedString& b) {
  std::vector<std::int64_t> w;
  const std::size_t k = detail::fill_weights(a, b, std::nullopt, w);
  return detail::hungarian(w, k, a.token_count(), b.token_count());
}

inline AlignmentCost sld_greedy(const TokenizedString& a, const TokenizedString& b) {
  SldScratch scratch;
  const std::size_t k = detail::fill_weights(a, b, std::nullopt, scratch.weights);
  return detail::greedy(scratch.weights, k, a.token_count(), b.token_count(), scratch);
}

inline AlignmentCost sld(const TokenizedString& a, const TokenizedString& b, SldMethod method) {
  return method == SldMethod::kExact ? sld_exact(a, b) : sld_greedy(a, b);
}

// SLD when it is at most `cap`, nullopt otherwise. Edge weights above cap
// are clamped to cap + 1: any matching using a clamped edge already costs
// more than cap, so the answer below cap is unaffected. For the greedy
// method the selection order of edges <= cap is unchanged as well.
inline std::optional<std::size_t> sld_within(const TokenizedString& a, const TokenizedString& b,
                                             std::size_t cap, SldMethod method,
                                             SldScratch& scratch) {
  const std::size_t m = a.token_count();
  const std::size_t n = b.token_count();
  const std::size_t k = detail::fill_weights(a, b, cap, scratch.weights);
  std::int64_t total = 0;
  if (method == SldMethod::kExact) {
    total = min_cost_assignment(scratch.weights, k).first;
  } else {
    total = static_cast<std::int64_t>(detail::greedy(scratch.weights, k, m, n, scratch).sld);
  }
  if (total > static_cast<std::int64_t>(cap)) return std::nullopt;
  return static_cast<std::size_t>(total);
}

inline double nsld(const TokenizedString& a, const TokenizedString& b,
                   SldMethod method = SldMethod::kExact) {
  return normalize_distance(sld(a, b, method).sld, a.agg_len() + b.agg_len());
}

// Same closed form as nld_bounds_from_lengths, over aggregate lengths.
inline DistanceRange nsld_bounds_from_lengths(std::size_t la, std::size_t lb) {
  return nld_bounds_from_lengths(la, lb);
}

// Lower bound on SLD from token lengths alone: pad the shorter length list
// with zeros, align both sorted lists and sum the absolute differences.
// Every token pairing costs at least its length difference, and the sorted
// alignment minimizes the total of those differences.
inline std::size_t sld_lower_bound(const TokenLengthHistogram& ha,
                                   const TokenLengthHistogram& hb) {
  auto la = ha.sorted_lengths();
  auto lb = hb.sorted_lengths();
  if (la.size() < lb.size()) std::swap(la, lb);
  // lb is the shorter list; its zero padding sorts first.
  const std::size_t pad = la.size() - lb.size();
  std::size_t total = 0;
  for (std::size_t i = 0; i < pad; ++i) total += la[i];
  for (std::size_t i = pad; i < la.size(); ++i) {
    const std::uint32_t x = la[i], y = lb[i - pad];
    total += x > y ? x - y : y - x;
  }
  return total;
}

}  // namespace tsj
