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

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "tsj/filters.hpp"

namespace tsj {
namespace {

using testing::Random;
using testing::record;
using testing::rec;

constexpr auto kKeep = FilterDecision::kKeep;
constexpr auto kPrune = FilterDecision::kPrune;

NormalizedThreshold T(double v) { return NormalizedThreshold(v); }

TEST(LengthFilter, Examples) {
  EXPECT_EQ(length_filter(9, 9, T(0.1)), kKeep);
  EXPECT_EQ(length_filter(5, 9, T(0.1)), kPrune);
  EXPECT_EQ(length_filter(9, 5, T(0.1)), kPrune);
  EXPECT_EQ(length_filter(0, 9, T(0.5)), kPrune);
  EXPECT_EQ(length_filter(0, 0, T(0.0)), kKeep);
  EXPECT_EQ(length_filter(CandidatePair{0, 1, 9, 9, CandidateSource::kSharedToken}, T(0.1)), kKeep);
}

TEST(LengthFilter, EqualsOneMinusLengthRatioRule) {
  // With T = k/40 the ratio rule 1 - min/max > T is decidable in integers.
  for (std::int64_t k = 0; k < 40; ++k) {
    const double t = static_cast<double>(k) / 40.0;
    for (std::int64_t a = 0; a <= 60; ++a) {
      for (std::int64_t b = a; b <= 60; ++b) {
        const bool ratio_prune = b > 0 && 40 * (b - a) > k * b;
        EXPECT_EQ(length_filter(a, b, T(t)) == kPrune, ratio_prune) << a << " " << b << " " << k;
      }
    }
  }
}

TEST(HistogramFilter, Examples) {
  using H = TokenLengthHistogram;
  EXPECT_EQ(histogram_filter(H({4, 5}), H({5, 4}), 9, 9, T(0.0)), kKeep);
  EXPECT_EQ(histogram_filter(H({4, 5}), H({4}), 9, 4, T(0.1)), kPrune);
  EXPECT_EQ(histogram_filter(H({4, 5}), H({4}), 9, 4, T(0.6)), kKeep);
}

TEST(Filters, NeverPruneATruePairAndLengthImpliesHistogram) {
  Random rnd(51);
  for (int trial = 0; trial < 20000; ++trial) {
    const auto a = record("a", rnd.multiset(5, 9, 3));
    const auto b = record("b", trial % 2 ? rnd.perturb({a.tokens().begin(), a.tokens().end()}, 5, 9, 3)
                                         : rnd.multiset(5, 9, 3));
    const TokenLengthHistogram ha(a), hb(b);
    const double d = nsld(a, b);
    for (double t : {0.0, 0.05, 0.1, 0.2, 0.4, 0.7}) {
      const auto len = length_filter(a.agg_len(), b.agg_len(), T(t));
      const auto hist = histogram_filter(ha, hb, a.agg_len(), b.agg_len(), T(t));
      if (d <= t) {
        EXPECT_EQ(len, kKeep);
        EXPECT_EQ(hist, kKeep);
      }
      if (len == kPrune) {
        EXPECT_EQ(hist, kPrune);
      }
    }
  }
}

TEST(FilterStats, Reconciles) {
  FilterStats a{10, 3, 2, 5}, b{4, 0, 1, 3};
  EXPECT_TRUE(a.reconciles());
  a += b;
  EXPECT_EQ(a, (FilterStats{14, 3, 3, 8}));
  EXPECT_TRUE(a.reconciles());
  EXPECT_FALSE((FilterStats{3, 1, 1, 0}).reconciles());
}

}  // namespace
}  // namespace tsj
