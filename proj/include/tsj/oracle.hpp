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

// Brute-force reference join. No indexing, no filtering, no approximation:
// every pair is scored by enumerating all token bijections. Only the ld()
// primitive is shared with the engine.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tsj/error.hpp"
#include "tsj/pipeline.hpp"
#include "tsj/setdist.hpp"
#include "tsj/strdist.hpp"
#include "tsj/textnorm.hpp"

namespace tsj::oracle {

inline constexpr std::size_t kMaxPermutationTokens = 8;
inline constexpr std::uint64_t kMaxPairEvaluations = 10'000'000;

struct OracleResult {
  std::vector<JoinResult> pairs;
};

// min over all k! bijections of the padded token lists of sum LD.
inline std::size_t sld_bruteforce(const TokenizedString& a, const TokenizedString& b) {
  const std::size_t m = a.token_count(), n = b.token_count();
  const std::size_t k = std::max(m, n);
  if (k > kMaxPermutationTokens) {
    throw ConfigError("sld_bruteforce supports at most 8 tokens per side");
  }
  std::vector<std::size_t> w(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const std::u32string_view x = i < m ? std::u32string_view(a.token(i)) : U"";
      const std::u32string_view y = j < n ? std::u32string_view(b.token(j)) : U"";
      w[i * k + j] = ld(x, y);
    }
  }
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t best = static_cast<std::size_t>(-1);
  do {
    std::size_t sum = 0;
    for (std::size_t i = 0; i < k; ++i) sum += w[i * k + perm[i]];
    best = std::min(best, sum);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return k == 0 ? 0 : best;
}

inline double nsld_reference(const TokenizedString& a, const TokenizedString& b) {
  const std::size_t s = std::max(a.token_count(), b.token_count()) <= kMaxPermutationTokens
                            ? sld_bruteforce(a, b)
                            : sld_exact(a, b).sld;
  if (s == 0) return 0.0;
  const double total = static_cast<double>(a.agg_len() + b.agg_len() + s);
  return 2.0 * static_cast<double>(s) / total;
}

namespace detail {

inline void sort_pairs(std::vector<JoinResult>& pairs) {
  std::sort(pairs.begin(), pairs.end(), [](const JoinResult& x, const JoinResult& y) {
    return std::tie(x.left_id, x.right_id) < std::tie(y.left_id, y.right_id);
  });
}

inline void check_ids(std::span<const TokenizedString> corpus) {
  std::vector<std::string_view> ids;
  ids.reserve(corpus.size());
  for (const auto& r : corpus) ids.push_back(r.id());
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw DataError("duplicate record id in oracle input");
  }
}

}  // namespace detail

inline std::uint64_t self_join_evaluations(std::size_t n) {
  return n < 2 ? 0 : static_cast<std::uint64_t>(n) * (n - 1) / 2;
}

// Self-join over all unordered pairs, reported with left_id < right_id.
inline OracleResult join_bruteforce(std::span<const TokenizedString> corpus, double T) {
  if (self_join_evaluations(corpus.size()) > kMaxPairEvaluations) {
    throw ConfigError("oracle input exceeds 10^7 pair evaluations");
  }
  detail::check_ids(corpus);
  OracleResult out;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (std::size_t j = i + 1; j < corpus.size(); ++j) {
      const double d = nsld_reference(corpus[i], corpus[j]);
      if (d > T) continue;
      const auto* a = &corpus[i];
      const auto* b = &corpus[j];
      if (b->id() < a->id()) std::swap(a, b);
      out.pairs.push_back({a->id(), b->id(), d});
    }
  }
  detail::sort_pairs(out.pairs);
  return out;
}

inline OracleResult join_bruteforce(std::span<const TokenizedString> corpus_r,
                                    std::span<const TokenizedString> corpus_p, double T) {
  if (static_cast<std::uint64_t>(corpus_r.size()) * corpus_p.size() > kMaxPairEvaluations) {
    throw ConfigError("oracle input exceeds 10^7 pair evaluations");
  }
  detail::check_ids(corpus_r);
  detail::check_ids(corpus_p);
  OracleResult out;
  for (const auto& r : corpus_r) {
    for (const auto& p : corpus_p) {
      const double d = nsld_reference(r, p);
      if (d <= T) out.pairs.push_back({r.id(), p.id(), d});
    }
  }
  detail::sort_pairs(out.pairs);
  return out;
}

}  // namespace tsj::oracle
