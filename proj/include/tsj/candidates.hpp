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

// Candidate generation.
//
// Two record pairs are candidates when they share a token, or when they
// contain a pair of tokens within normalized distance T. Whenever
// NSLD(a, b) <= T some token pair has NLD <= T, so the union of the two
// sources misses nothing (subject to the high-frequency token cap).
//
// Similar tokens are found by segment/substring matching: a token y is cut
// into U + 1 even segments, U being the largest LD compatible with
// NLD <= T for a shorter-or-equal partner; any x with LD(x, y) <= U contains
// one of those segments within U positions of where it sits in y.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "tsj/error.hpp"
#include "tsj/stage.hpp"
#include "tsj/strdist.hpp"
#include "tsj/textnorm.hpp"

namespace tsj {

using RecordIndex = std::uint32_t;
using TokenIndex = std::uint32_t;

inline constexpr std::size_t kUnlimitedFrequency = std::numeric_limits<std::size_t>::max();

enum class CandidateSource : std::uint8_t { kSharedToken, kSimilarToken };

struct CandidatePair {
  RecordIndex left = 0;
  RecordIndex right = 0;
  std::uint32_t left_len = 0;
  std::uint32_t right_len = 0;
  CandidateSource source = CandidateSource::kSharedToken;

  friend bool operator==(const CandidatePair&, const CandidatePair&) = default;
};

// Distinct tokens of a corpus with their sorted posting lists of record
// indices (positions in the corpus span it was built from). Tokens whose
// record frequency exceeds the cap are left out.
class TokenSpace {
 public:
  TokenSpace() = default;

  std::size_t size() const noexcept { return tokens_.size(); }
  std::span<const Token> tokens() const noexcept { return tokens_; }
  const Token& token(TokenIndex t) const { return tokens_[t]; }

  std::span<const RecordIndex> postings(TokenIndex t) const {
    return {postings_.data() + offsets_[t], offsets_[t + 1] - offsets_[t]};
  }
  std::size_t frequency(TokenIndex t) const { return offsets_[t + 1] - offsets_[t]; }

  std::optional<TokenIndex> find(std::u32string_view token) const {
    const auto it = std::lower_bound(tokens_.begin(), tokens_.end(), token,
                                     [](const Token& a, std::u32string_view b) { return a < b; });
    if (it == tokens_.end() || *it != token) return std::nullopt;
    return static_cast<TokenIndex>(it - tokens_.begin());
  }

  std::size_t record_count() const noexcept { return record_lens_.size(); }
  std::uint32_t record_len(RecordIndex r) const { return record_lens_[r]; }
  std::size_t dropped_tokens() const noexcept { return dropped_; }

 private:
  friend TokenSpace build_token_space(std::span<const TokenizedString>, std::size_t,
                                      std::size_t);

  std::vector<Token> tokens_;
  std::vector<std::size_t> offsets_{0};
  std::vector<RecordIndex> postings_;
  std::vector<std::uint32_t> record_lens_;
  std::size_t dropped_ = 0;
};

inline void check_unique_ids(std::span<const TokenizedString> corpus) {
  std::unordered_set<std::string_view> seen;
  seen.reserve(corpus.size());
  for (const auto& r : corpus) {
    if (!seen.insert(r.id()).second) throw DataError("duplicate record id '" + r.id() + "'");
  }
}

inline TokenSpace build_token_space(std::span<const TokenizedString> corpus,
                                    std::size_t max_token_freq = kUnlimitedFrequency,
                                    std::size_t workers = 1) {
  check_unique_ids(corpus);
  if (corpus.size() > std::numeric_limits<RecordIndex>::max()) {
    throw DataError("corpus too large");
  }
  struct Entry {
    std::u32string_view token;
    std::vector<RecordIndex> postings;
    bool dropped = false;
  };

  std::vector<RecordIndex> indices(corpus.size());
  for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = static_cast<RecordIndex>(i);

  auto entries = run_stage<std::u32string_view, RecordIndex, Entry>(
      std::span<const RecordIndex>(indices),
      [&](RecordIndex r, Emitter<std::u32string_view, RecordIndex>& out) {
        std::vector<std::u32string_view> distinct(corpus[r].tokens().begin(),
                                                  corpus[r].tokens().end());
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        for (auto t : distinct) out.emit(t, r);
      },
      [&](std::u32string_view token, auto records, std::vector<Entry>& out) {
        Entry e{token, {}, false};
        for (RecordIndex r : records) e.postings.push_back(r);
        if (e.postings.size() > max_token_freq) {
          e.postings.clear();
          e.dropped = true;
        }
        out.push_back(std::move(e));
      },
      workers, "token_space");

  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.token < b.token; });

  TokenSpace space;
  space.record_lens_.reserve(corpus.size());
  for (const auto& r : corpus) space.record_lens_.push_back(static_cast<std::uint32_t>(r.agg_len()));
  for (auto& e : entries) {
    if (e.dropped) {
      ++space.dropped_;
      continue;
    }
    space.tokens_.emplace_back(e.token);
    space.postings_.insert(space.postings_.end(), e.postings.begin(), e.postings.end());
    space.offsets_.push_back(space.postings_.size());
  }
  return space;
}

namespace detail {

inline CandidatePair make_pair(const TokenSpace& sr, RecordIndex r, const TokenSpace& sp,
                               RecordIndex p, CandidateSource source) {
  return {r, p, sr.record_len(r), sp.record_len(p), source};
}

// Self-join orientation: left < right.
inline CandidatePair make_ordered_pair(const TokenSpace& s, RecordIndex a, RecordIndex b,
                                       CandidateSource source) {
  if (b < a) std::swap(a, b);
  return {a, b, s.record_len(a), s.record_len(b), source};
}

}  // namespace detail

// Every record pair co-occurring in some token's postings, once per shared
// token. For self-joins space_r and space_p must be the same object.
inline std::vector<CandidatePair> shared_token_candidates(const TokenSpace& space_r,
                                                          const TokenSpace& space_p,
                                                          bool self_join,
                                                          std::size_t workers = 1) {
  if (self_join) {
    std::vector<TokenIndex> all(space_r.size());
    for (std::size_t t = 0; t < all.size(); ++t) all[t] = static_cast<TokenIndex>(t);
    return parallel_map<CandidatePair>(
        std::span<const TokenIndex>(all), workers, "shared_token",
        [&](TokenIndex t, std::vector<CandidatePair>& out) {
          const auto ids = space_r.postings(t);
          for (std::size_t i = 0; i < ids.size(); ++i) {
            for (std::size_t j = i + 1; j < ids.size(); ++j) {
              out.push_back(detail::make_ordered_pair(space_r, ids[i], ids[j],
                                                      CandidateSource::kSharedToken));
            }
          }
        });
  }

  std::vector<std::pair<TokenIndex, TokenIndex>> common;
  for (std::size_t i = 0, j = 0; i < space_r.size() && j < space_p.size();) {
    const auto& a = space_r.token(static_cast<TokenIndex>(i));
    const auto& b = space_p.token(static_cast<TokenIndex>(j));
    if (a < b) {
      ++i;
    } else if (b < a) {
      ++j;
    } else {
      common.emplace_back(static_cast<TokenIndex>(i++), static_cast<TokenIndex>(j++));
    }
  }
  return parallel_map<CandidatePair>(
      std::span<const std::pair<TokenIndex, TokenIndex>>(common), workers, "shared_token",
      [&](const std::pair<TokenIndex, TokenIndex>& tp, std::vector<CandidatePair>& out) {
        for (RecordIndex r : space_r.postings(tp.first)) {
          for (RecordIndex p : space_p.postings(tp.second)) {
            out.push_back(detail::make_pair(space_r, r, space_p, p,
                                            CandidateSource::kSharedToken));
          }
        }
      });
}

// Segment boundaries of an even partition of a `len`-character token into
// edits + 1 parts; the first len % (edits + 1) parts are one longer.
struct SegmentLayout {
  std::size_t edits = 0;
  bool partitionable = false;
  std::vector<std::uint32_t> starts;
  std::vector<std::uint32_t> lengths;
};

inline SegmentLayout segment_layout(std::size_t len, EditThreshold edits) {
  SegmentLayout layout;
  layout.edits = edits.value;
  const std::size_t parts = edits.value + 1;
  if (len < parts) return layout;
  layout.partitionable = true;
  const std::size_t base = len / parts, extra = len % parts;
  std::size_t start = 0;
  for (std::size_t s = 0; s < parts; ++s) {
    const std::size_t l = base + (s < extra ? 1 : 0);
    layout.starts.push_back(static_cast<std::uint32_t>(start));
    layout.lengths.push_back(static_cast<std::uint32_t>(l));
    start += l;
  }
  return layout;
}

// U + 1 contiguous non-empty segments covering `token`, or nullopt when the
// token is shorter than U + 1.
inline std::optional<std::vector<std::u32string_view>> partition_even(std::u32string_view token,
                                                                      EditThreshold edits) {
  const SegmentLayout layout = segment_layout(token.size(), edits);
  if (!layout.partitionable) return std::nullopt;
  std::vector<std::u32string_view> out;
  out.reserve(layout.starts.size());
  for (std::size_t s = 0; s < layout.starts.size(); ++s) {
    out.push_back(token.substr(layout.starts[s], layout.lengths[s]));
  }
  return out;
}

// Chunk index key: segment text plus the owning token's length and the
// segment's ordinal.
struct SegmentKey {
  std::u32string_view text;
  std::uint32_t owner_len = 0;
  std::uint32_t slot = 0;

  friend bool operator==(const SegmentKey&, const SegmentKey&) = default;
};

struct SegmentKeyHash {
  std::size_t operator()(const SegmentKey& k) const noexcept {
    std::size_t h = std::hash<std::u32string_view>{}(k.text);
    h ^= (static_cast<std::size_t>(k.owner_len) << 32 | k.slot) + 0x9e3779b97f4a7c15ULL +
         (h << 6) + (h >> 2);
    return h;
  }
};

struct SimilarTokenPair {
  TokenIndex r = 0;
  TokenIndex p = 0;
  std::uint32_t ld = 0;

  friend auto operator<=>(const SimilarTokenPair&, const SimilarTokenPair&) = default;
};

namespace detail {

// Segment index over one token space.
class SegmentIndex {
 public:
  SegmentIndex(const TokenSpace& space, NormalizedThreshold threshold)
      : space_(space), threshold_(threshold) {
    for (const auto& t : space.tokens()) max_len_ = std::max(max_len_, t.size());
    layouts_.resize(max_len_ + 1);
    short_.resize(max_len_ + 1);
    for (std::size_t len = 1; len <= max_len_; ++len) {
      layouts_[len] = segment_layout(len, max_ld_given_nld(len, threshold, true));
    }
    for (TokenIndex y = 0; y < space.size(); ++y) {
      const std::u32string_view tok = space.token(y);
      const SegmentLayout& layout = layouts_[tok.size()];
      if (!layout.partitionable) {
        short_[tok.size()].push_back(y);
        continue;
      }
      for (std::size_t s = 0; s < layout.starts.size(); ++s) {
        SegmentKey key{tok.substr(layout.starts[s], layout.lengths[s]),
                       static_cast<std::uint32_t>(tok.size()), static_cast<std::uint32_t>(s)};
        index_[key].push_back(y);
      }
    }
  }

  // Calls found(y, ld) for every indexed token y with |y| >= |x| (or
  // |y| > |x| when strictly_longer) and NLD(x, y) <= T.
  template <typename Found>
  void probe(std::u32string_view x, bool strictly_longer, std::vector<TokenIndex>& scratch,
             Found&& found) const {
    scratch.clear();
    const std::size_t lx = x.size();
    for (std::size_t ly = strictly_longer ? lx + 1 : lx; ly <= max_len_; ++ly) {
      if (min_partner_len(ly, threshold_) > lx) break;
      const SegmentLayout& layout = layouts_[ly];
      scratch.insert(scratch.end(), short_[ly].begin(), short_[ly].end());
      if (!layout.partitionable) continue;
      const std::size_t u = layout.edits;
      for (std::size_t s = 0; s < layout.starts.size(); ++s) {
        const std::size_t len = layout.lengths[s];
        const std::size_t start = layout.starts[s];
        if (len > lx) continue;
        const std::size_t lo = start > u ? start - u : 0;
        const std::size_t hi = std::min(lx - len, start + u);
        for (std::size_t pos = lo; pos <= hi; ++pos) {
          const auto it = index_.find(SegmentKey{x.substr(pos, len), static_cast<std::uint32_t>(ly),
                                                 static_cast<std::uint32_t>(s)});
          if (it != index_.end()) scratch.insert(scratch.end(), it->second.begin(), it->second.end());
        }
      }
    }
    std::sort(scratch.begin(), scratch.end());
    scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
    for (TokenIndex y : scratch) {
      const std::u32string_view tok = space_.token(y);
      const std::size_t cap = max_edits_within(lx + tok.size(), threshold_.value());
      if (const auto d = ld_bounded(x, tok, EditThreshold{cap})) {
        found(y, static_cast<std::uint32_t>(*d));
      }
    }
  }

 private:
  const TokenSpace& space_;
  NormalizedThreshold threshold_;
  std::size_t max_len_ = 0;
  std::vector<SegmentLayout> layouts_;
  std::vector<std::vector<TokenIndex>> short_;
  std::unordered_map<SegmentKey, std::vector<TokenIndex>, SegmentKeyHash> index_;
};

}  // namespace detail

// All token pairs (x from space_r, y from space_p) with NLD(x, y) <= T,
// identical tokens included. For self-joins only one orientation is
// reported, with r <= p. Sorted by (r, p).
inline std::vector<SimilarTokenPair> similar_token_pairs(const TokenSpace& space_r,
                                                         const TokenSpace& space_p,
                                                         NormalizedThreshold threshold,
                                                         bool self_join,
                                                         std::size_t workers = 1) {
  if (threshold.value() >= 1.0) throw ConfigError("similar-token generation requires T < 1");

  const auto probe_all = [&](const TokenSpace& probes, const detail::SegmentIndex& index,
                             bool strictly_longer, auto&& emit) {
    std::vector<TokenIndex> ids(probes.size());
    for (std::size_t t = 0; t < ids.size(); ++t) ids[t] = static_cast<TokenIndex>(t);
    return parallel_map<SimilarTokenPair>(
        std::span<const TokenIndex>(ids), workers, "similar_token",
        [&](TokenIndex x, std::vector<SimilarTokenPair>& out) {
          thread_local std::vector<TokenIndex> scratch;
          index.probe(probes.token(x), strictly_longer, scratch,
                      [&](TokenIndex y, std::uint32_t d) { emit(x, y, d, out); });
        });
  };

  std::vector<SimilarTokenPair> pairs;
  if (self_join) {
    const detail::SegmentIndex index(space_r, threshold);
    pairs = probe_all(space_r, index, false,
                      [&](TokenIndex x, TokenIndex y, std::uint32_t d,
                          std::vector<SimilarTokenPair>& out) {
                        const bool equal_len = space_r.token(x).size() == space_r.token(y).size();
                        if (equal_len && y < x) return;
                        out.push_back({std::min(x, y), std::max(x, y), d});
                      });
  } else {
    const detail::SegmentIndex index_p(space_p, threshold);
    pairs = probe_all(space_r, index_p, false,
                      [](TokenIndex x, TokenIndex y, std::uint32_t d,
                         std::vector<SimilarTokenPair>& out) { out.push_back({x, y, d}); });
    const detail::SegmentIndex index_r(space_r, threshold);
    auto reverse = probe_all(space_p, index_r, true,
                             [](TokenIndex x, TokenIndex y, std::uint32_t d,
                                std::vector<SimilarTokenPair>& out) { out.push_back({y, x, d}); });
    pairs.insert(pairs.end(), reverse.begin(), reverse.end());
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

// Record pairs behind each similar token pair: the cross product of the two
// posting lists. Self-joins emit left < right and never (i, i).
inline std::vector<CandidatePair> similar_token_candidates(std::span<const SimilarTokenPair> pairs,
                                                           const TokenSpace& space_r,
                                                           const TokenSpace& space_p,
                                                           bool self_join,
                                                           std::size_t workers = 1) {
  return parallel_map<CandidatePair>(
      pairs, workers, "similar_token_candidates",
      [&](const SimilarTokenPair& tp, std::vector<CandidatePair>& out) {
        for (RecordIndex r : space_r.postings(tp.r)) {
          for (RecordIndex p : space_p.postings(tp.p)) {
            if (self_join) {
              if (r == p) continue;
              out.push_back(detail::make_ordered_pair(space_r, r, p,
                                                      CandidateSource::kSimilarToken));
            } else {
              out.push_back(detail::make_pair(space_r, r, space_p, p,
                                              CandidateSource::kSimilarToken));
            }
          }
        }
      });
}

}  // namespace tsj
