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

// Character-level distances: Levenshtein (LD), normalized Levenshtein
// (NLD = 2*LD / (|x| + |y| + LD)) and the length/threshold bounds used by
// candidate generation and filtering.
//
// All threshold bounds are expressed against normalize_distance(), the one
// place where the normalized value is evaluated in floating point. A bound
// is first estimated from its closed form and then corrected by integer
// steps so that it agrees with the evaluated predicate exactly. This keeps
// every filter sound with respect to the `<= T` test done at verification.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "tsj/error.hpp"
#include "tsj/textnorm.hpp"

namespace tsj {

struct EditThreshold {
  std::size_t value = 0;
};

class NormalizedThreshold {
 public:
  constexpr NormalizedThreshold() = default;
  explicit NormalizedThreshold(double value) : value_(value) {
    if (!(value >= 0.0 && value <= 1.0)) {
      throw ConfigError("normalized threshold must lie in [0, 1]");
    }
  }
  constexpr double value() const noexcept { return value_; }

 private:
  double value_ = 0.0;
};

// 2*edits / (total_len + edits), with 0 edits mapping to 0 even when both
// strings are empty.
constexpr double normalize_distance(std::size_t edits, std::size_t total_len) noexcept {
  if (edits == 0) return 0.0;
  return 2.0 * static_cast<double>(edits) /
         static_cast<double>(total_len + edits);
}

namespace detail {

// Largest n >= 0 with pred(n), for pred monotone non-increasing in n
// (true then false), starting from an estimate.
template <typename Pred>
std::size_t largest_satisfying(double estimate, Pred pred) {
  std::size_t n = 0;
  if (estimate > 0) {
    n = estimate >= 1e18 ? static_cast<std::size_t>(1e18)
                         : static_cast<std::size_t>(std::floor(estimate));
  }
  while (n > 0 && !pred(n)) --n;
  while (pred(n + 1)) ++n;
  return n;
}

}  // namespace detail

// Largest edit count e with normalize_distance(e, total_len) <= T. Any pair
// of strings with combined length total_len and NLD <= T has LD <= this.
inline std::size_t max_edits_within(std::size_t total_len, double T) {
  if (!(T >= 0.0 && T < 2.0)) throw ConfigError("threshold must lie in [0, 2)");
  return detail::largest_satisfying(
      T * static_cast<double>(total_len) / (2.0 - T),
      [&](std::size_t e) { return normalize_distance(e, total_len) <= T; });
}

template <typename CharT>
std::size_t ld(std::basic_string_view<CharT> x, std::basic_string_view<CharT> y) {
  if (x.size() < y.size()) std::swap(x, y);
  std::vector<std::size_t> row(y.size() + 1);
  for (std::size_t j = 0; j <= y.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= x.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= y.size(); ++j) {
      const std::size_t up = row[j];
      const std::size_t sub = diag + (x[i - 1] == y[j - 1] ? 0 : 1);
      row[j] = std::min({up + 1, row[j - 1] + 1, sub});
      diag = up;
    }
  }
  return row[y.size()];
}

inline std::size_t ld(std::u32string_view x, std::u32string_view y) {
  return ld<char32_t>(x, y);
}
// UTF-8 overloads measure scalar values, not bytes.
inline std::size_t ld(std::string_view x, std::string_view y) {
  return ld<char32_t>(utf8::decode(x), utf8::decode(y));
}

// Levenshtein distance restricted to the diagonal band |i - j| <= cap.
// Returns nullopt when the distance exceeds cap.
template <typename CharT>
std::optional<std::size_t> ld_bounded(std::basic_string_view<CharT> x,
                                      std::basic_string_view<CharT> y,
                                      EditThreshold cap) {
  if (x.size() < y.size()) std::swap(x, y);
  const std::size_t n = x.size();
  const std::size_t m = y.size();
  if (n - m > cap.value) return std::nullopt;
  const std::size_t k = std::min(cap.value, n);
  if (m == 0) return n;

  const std::size_t inf = k + 1;
  std::vector<std::size_t> prev(m + 1, inf);
  std::vector<std::size_t> cur(m + 1, inf);
  for (std::size_t j = 0; j <= std::min(m, k); ++j) prev[j] = j;

  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t lo = i > k ? i - k : 1;
    const std::size_t hi = std::min(m, i + k);
    if (lo > hi) return std::nullopt;
    cur[lo - 1] = (lo == 1 && i <= k) ? i : inf;
    std::size_t row_min = cur[lo - 1];
    for (std::size_t j = lo; j <= hi; ++j) {
      const std::size_t sub = prev[j - 1] + (x[i - 1] == y[j - 1] ? 0 : 1);
      std::size_t v = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
      if (v > inf) v = inf;
      cur[j] = v;
      row_min = std::min(row_min, v);
    }
    if (hi < m) cur[hi + 1] = inf;
    if (row_min > k) return std::nullopt;
    std::swap(prev, cur);
  }
  if (prev[m] > k) return std::nullopt;
  return prev[m];
}

inline std::optional<std::size_t> ld_bounded(std::u32string_view x, std::u32string_view y,
                                             EditThreshold cap) {
  return ld_bounded<char32_t>(x, y, cap);
}
inline std::optional<std::size_t> ld_bounded(std::string_view x, std::string_view y,
                                             EditThreshold cap) {
  return ld_bounded<char32_t>(utf8::decode(x), utf8::decode(y), cap);
}

inline double nld(std::u32string_view x, std::u32string_view y) {
  return normalize_distance(ld(x, y), x.size() + y.size());
}
inline double nld(std::string_view x, std::string_view y) {
  return nld(utf8::decode(x), utf8::decode(y));
}

// Upper bound on LD(x, y) given NLD(x, y) <= T, where |y| = y_len and
// x_shorter tells whether |x| <= |y|. Closed forms:
//   x_shorter:  floor(2*T*|y| / (2 - T))
//   otherwise:  floor(T*|y| / (1 - T))      (requires T < 1)
inline EditThreshold max_ld_given_nld(std::size_t y_len, NormalizedThreshold threshold,
                                      bool x_shorter) {
  const double T = threshold.value();
  if (x_shorter) return {max_edits_within(2 * y_len, T)};
  if (T >= 1.0) {
    throw ConfigError("max_ld_given_nld: T must be < 1 when x is the longer string");
  }
  // Worst case |x| = |y| + LD.
  return {detail::largest_satisfying(
      T * static_cast<double>(y_len) / (1.0 - T), [&](std::size_t e) {
        return normalize_distance(e, 2 * y_len + e) <= T;
      })};
}

// Smallest |x| <= |y| that can satisfy NLD(x, y) <= T: ceil((1 - T) * |y|).
inline std::size_t min_partner_len(std::size_t y_len, NormalizedThreshold threshold) {
  const double T = threshold.value();
  // pred(len) holds when the length gap alone already exceeds T.
  const auto gap_exceeds = [&](std::size_t x_len) {
    return normalize_distance(y_len - x_len, x_len + y_len) > T;
  };
  std::size_t x_len = static_cast<std::size_t>(
      std::clamp(std::ceil((1.0 - T) * static_cast<double>(y_len)), 0.0,
                 static_cast<double>(y_len)));
  while (x_len < y_len && gap_exceeds(x_len)) ++x_len;
  while (x_len > 0 && !gap_exceeds(x_len - 1)) --x_len;
  return x_len;
}

// Exclusive lower bound on LD(x, y) given NLD(x, y) > T:
//   x_shorter:  floor(T*|y| / (2 - T))
//   otherwise:  floor(2*T*|y| / (2 - T))
inline std::size_t min_ld_given_nld_exceeds(std::size_t y_len, double T, bool x_shorter) {
  if (!(T >= 0.0 && T < 2.0)) throw ConfigError("threshold must lie in [0, 2)");
  return max_edits_within(x_shorter ? y_len : 2 * y_len, T);
}

struct DistanceRange {
  double lower = 0.0;
  double upper = 0.0;
};

// With a = min/max of the lengths: (1 - a, 2 / (a + 2)). Each endpoint is a
// single rounding of the exact rational, so it coincides with
// normalize_distance() at the extreme edit counts.
inline DistanceRange nld_bounds_from_lengths(std::size_t x_len, std::size_t y_len) {
  const std::size_t hi = std::max(x_len, y_len);
  const std::size_t lo = std::min(x_len, y_len);
  if (hi == 0) return {0.0, 0.0};
  return {static_cast<double>(hi - lo) / static_cast<double>(hi),
          static_cast<double>(2 * hi) / static_cast<double>(lo + 2 * hi)};
}

enum class SimilarityScheme { kOneMinus, kReciprocal, kExponential };

inline double distance_to_similarity(double d, SimilarityScheme scheme) {
  switch (scheme) {
    case SimilarityScheme::kOneMinus:
      return 1.0 - d;
    case SimilarityScheme::kReciprocal:
      return 1.0 / (1.0 + d);
    case SimilarityScheme::kExponential:
      return std::exp(-d);
  }
  return 0.0;
}

}  // namespace tsj
