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

// The join engine: generate -> dedup -> filter -> verify, each stage run
// data-parallel over the worker pool.
//
// Records are sorted by id on entry and addressed by their position in that
// order, so record-index order equals id order and the output is sorted by
// (left_id, right_id) once sorted by index.

#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tsj/candidates.hpp"
#include "tsj/error.hpp"
#include "tsj/filters.hpp"
#include "tsj/setdist.hpp"
#include "tsj/stage.hpp"
#include "tsj/strdist.hpp"
#include "tsj/textnorm.hpp"

namespace tsj {

enum class MatchingMode { kFuzzy, kGreedy, kExactToken };
enum class DedupStrategy { kOneString, kBothStrings };

struct JoinConfig {
  double threshold = 0.1;
  std::size_t max_token_freq = 1000;
  MatchingMode matching = MatchingMode::kFuzzy;
  DedupStrategy dedup = DedupStrategy::kOneString;
  std::size_t workers = 1;
  bool filters = true;

  void validate() const {
    if (!(threshold >= 0.0 && threshold < 1.0)) {
      throw ConfigError("threshold must satisfy 0 <= T < 1");
    }
    if (workers == 0) throw ConfigError("workers must be >= 1");
    if (max_token_freq == 0) throw ConfigError("max token frequency must be >= 1");
  }
};

struct JoinResult {
  std::string left_id;
  std::string right_id;
  double distance = 0.0;

  friend bool operator==(const JoinResult&, const JoinResult&) = default;
};

struct StageStats {
  std::string name;
  std::uint64_t items_in = 0;
  std::uint64_t items_out = 0;
  double millis = 0.0;
};

struct StageReport {
  std::vector<StageStats> stages;
  FilterStats filters;
  std::uint64_t dropped_tokens = 0;
  std::uint64_t similar_token_pairs = 0;
  std::uint64_t empty_record_pairs = 0;
};

struct JoinOutput {
  std::vector<JoinResult> results;
  StageReport report;
};

// 64-bit FNV-1a.
constexpr std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 14695981039346656037ULL;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

// Grouping-on-one-string key choice for the pair (tau, upsilon): tau is the
// key iff int(H(tau) < H(upsilon)) == (H(tau) + H(upsilon)) % 2.
constexpr bool keyed_on_first(std::uint64_t h_tau, std::uint64_t h_upsilon) noexcept {
  const std::uint64_t less = h_tau < h_upsilon ? 1 : 0;
  return less == ((h_tau + h_upsilon) & 1u);
}

// Removes duplicate candidate pairs. left_hashes / right_hashes hold the id
// hash of every record on each side (the same span twice for self-joins).
// Output is sorted by (left, right); the first occurrence's source is kept.
inline std::vector<CandidatePair> dedup_candidates(std::span<const CandidatePair> pairs,
                                                   DedupStrategy strategy,
                                                   std::span<const std::uint64_t> left_hashes,
                                                   std::span<const std::uint64_t> right_hashes,
                                                   bool self_join, std::size_t workers = 1) {
  const auto by_records = [](const CandidatePair& a, const CandidatePair& b) {
    return std::pair(a.left, a.right) < std::pair(b.left, b.right);
  };
  std::vector<CandidatePair> out;
  if (strategy == DedupStrategy::kBothStrings) {
    out = run_stage<std::uint64_t, CandidatePair, CandidatePair>(
        pairs,
        [](const CandidatePair& c, Emitter<std::uint64_t, CandidatePair>& e) {
          e.emit(static_cast<std::uint64_t>(c.left) << 32 | c.right, c);
        },
        [](std::uint64_t, auto values, std::vector<CandidatePair>& sink) {
          sink.push_back(*values.begin());
        },
        workers, "dedup");
  } else {
    // Node key: for R x P joins a side bit sits above the record index so
    // equal indices on the two sides stay distinct.
    const std::uint64_t right_tag = self_join ? 0 : std::uint64_t{1} << 32;
    out = run_stage<std::uint64_t, CandidatePair, CandidatePair>(
        pairs,
        [&](const CandidatePair& c, Emitter<std::uint64_t, CandidatePair>& e) {
          const bool first = keyed_on_first(left_hashes[c.left], right_hashes[c.right]);
          e.emit(first ? std::uint64_t{c.left} : (right_tag | c.right), c);
        },
        [&](std::uint64_t, auto values, std::vector<CandidatePair>& sink) {
          std::vector<CandidatePair> group(values.begin(), values.end());
          std::stable_sort(group.begin(), group.end(), by_records);
          for (std::size_t i = 0; i < group.size(); ++i) {
            if (i == 0 || by_records(group[i - 1], group[i])) sink.push_back(group[i]);
          }
        },
        workers, "dedup");
  }
  std::sort(out.begin(), out.end(), by_records);
  return out;
}

namespace detail {

class StageTimer {
 public:
  StageTimer(StageReport& report, std::string name, std::uint64_t items_in)
      : report_(report), start_(std::chrono::steady_clock::now()) {
    stats_.name = std::move(name);
    stats_.items_in = items_in;
  }
  void finish(std::uint64_t items_out) {
    stats_.items_out = items_out;
    stats_.millis = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start_)
                        .count();
    report_.stages.push_back(stats_);
  }

 private:
  StageReport& report_;
  StageStats stats_;
  std::chrono::steady_clock::time_point start_;
};

inline std::vector<TokenizedString> sorted_by_id(std::span<const TokenizedString> corpus) {
  std::vector<TokenizedString> sorted(corpus.begin(), corpus.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const TokenizedString& a, const TokenizedString& b) { return a.id() < b.id(); });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i - 1].id() == sorted[i].id()) {
      throw DataError("duplicate record id '" + sorted[i].id() + "'");
    }
  }
  return sorted;
}

struct IndexedResult {
  RecordIndex left;
  RecordIndex right;
  double distance;
};

inline JoinOutput run_join(const std::vector<TokenizedString>& rs,
                           const std::vector<TokenizedString>* ps_or_null,
                           const JoinConfig& cfg) {
  cfg.validate();
  const bool self_join = ps_or_null == nullptr;
  const std::vector<TokenizedString>& ps = self_join ? rs : *ps_or_null;
  const NormalizedThreshold threshold(cfg.threshold);
  const std::size_t workers = cfg.workers;
  JoinOutput output;
  StageReport& report = output.report;

  // Generation.
  StageTimer space_timer(report, "token_space", rs.size() + (self_join ? 0 : ps.size()));
  const TokenSpace space_r = build_token_space(rs, cfg.max_token_freq, workers);
  const TokenSpace space_p_storage =
      self_join ? TokenSpace{} : build_token_space(ps, cfg.max_token_freq, workers);
  const TokenSpace& space_p = self_join ? space_r : space_p_storage;
  report.dropped_tokens = space_r.dropped_tokens() + (self_join ? 0 : space_p.dropped_tokens());
  space_timer.finish(space_r.size() + (self_join ? 0 : space_p.size()));

  StageTimer shared_timer(report, "shared_token", space_r.size());
  std::vector<CandidatePair> candidates =
      shared_token_candidates(space_r, space_p, self_join, workers);
  shared_timer.finish(candidates.size());

  if (cfg.matching != MatchingMode::kExactToken) {
    StageTimer similar_timer(report, "similar_token", space_r.size() + space_p.size());
    auto token_pairs = similar_token_pairs(space_r, space_p, threshold, self_join, workers);
    // Identical tokens are already covered by the shared-token candidates.
    std::erase_if(token_pairs, [](const SimilarTokenPair& tp) { return tp.ld == 0; });
    report.similar_token_pairs = token_pairs.size();
    auto similar = similar_token_candidates(token_pairs, space_r, space_p, self_join, workers);
    similar_timer.finish(similar.size());
    candidates.insert(candidates.end(), similar.begin(), similar.end());
  }

  // Dedup.
  std::vector<std::uint64_t> hashes_r(rs.size()), hashes_p_storage;
  for (std::size_t i = 0; i < rs.size(); ++i) hashes_r[i] = fnv1a64(rs[i].id());
  if (!self_join) {
    hashes_p_storage.resize(ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i) hashes_p_storage[i] = fnv1a64(ps[i].id());
  }
  const auto& hashes_p = self_join ? hashes_r : hashes_p_storage;
  StageTimer dedup_timer(report, "dedup", candidates.size());
  std::vector<CandidatePair> unique =
      dedup_candidates(candidates, cfg.dedup, hashes_r, hashes_p, self_join, workers);
  std::vector<CandidatePair>().swap(candidates);
  dedup_timer.finish(unique.size());

  // Filter.
  StageTimer filter_timer(report, "filter", unique.size());
  std::vector<TokenLengthHistogram> hist_r, hist_p_storage;
  if (cfg.filters) {
    hist_r.reserve(rs.size());
    for (const auto& r : rs) hist_r.emplace_back(r);
    if (!self_join) {
      hist_p_storage.reserve(ps.size());
      for (const auto& p : ps) hist_p_storage.emplace_back(p);
    }
  }
  const auto& hist_p = self_join ? hist_r : hist_p_storage;
  const auto ranges = chunk_ranges(unique.size());
  std::vector<std::vector<CandidatePair>> kept(ranges.size());
  std::vector<FilterStats> chunk_stats(ranges.size());
  parallel_for(ranges.size(), workers, "filter", [&](std::size_t c) {
    FilterStats& st = chunk_stats[c];
    for (std::size_t i = ranges[c].first; i < ranges[c].second; ++i) {
      const CandidatePair& pair = unique[i];
      ++st.input_pairs;
      if (cfg.filters) {
        if (length_filter(pair, threshold) == FilterDecision::kPrune) {
          ++st.pruned_by_length;
          continue;
        }
        if (histogram_filter(hist_r[pair.left], hist_p[pair.right], pair.left_len,
                             pair.right_len, threshold) == FilterDecision::kPrune) {
          ++st.pruned_by_histogram;
          continue;
        }
      }
      ++st.surviving;
      kept[c].push_back(pair);
    }
  });
  std::vector<CandidatePair> survivors;
  survivors.reserve(unique.size());
  for (std::size_t c = 0; c < ranges.size(); ++c) {
    report.filters += chunk_stats[c];
    survivors.insert(survivors.end(), kept[c].begin(), kept[c].end());
  }
  std::vector<CandidatePair>().swap(unique);
  filter_timer.finish(survivors.size());

  // Verify.
  StageTimer verify_timer(report, "verify", survivors.size());
  const SldMethod method =
      cfg.matching == MatchingMode::kGreedy ? SldMethod::kGreedy : SldMethod::kExact;
  auto verified = parallel_map<IndexedResult>(
      std::span<const CandidatePair>(survivors), workers, "verify",
      [&](const CandidatePair& pair, std::vector<IndexedResult>& out) {
        thread_local SldScratch scratch;
        const TokenizedString& a = rs[pair.left];
        const TokenizedString& b = ps[pair.right];
        const std::size_t total = a.agg_len() + b.agg_len();
        const std::size_t cap = max_edits_within(total, threshold.value());
        if (const auto s = sld_within(a, b, cap, method, scratch)) {
          out.push_back({pair.left, pair.right, normalize_distance(*s, total)});
        }
      });
  verify_timer.finish(verified.size());

  // Records without tokens match only each other, at distance 0.
  std::vector<RecordIndex> empty_r, empty_p;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (rs[i].empty()) empty_r.push_back(static_cast<RecordIndex>(i));
  }
  if (self_join) {
    for (std::size_t i = 0; i < empty_r.size(); ++i) {
      for (std::size_t j = i + 1; j < empty_r.size(); ++j) {
        verified.push_back({empty_r[i], empty_r[j], 0.0});
        ++report.empty_record_pairs;
      }
    }
  } else {
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (ps[i].empty()) empty_p.push_back(static_cast<RecordIndex>(i));
    }
    for (RecordIndex r : empty_r) {
      for (RecordIndex p : empty_p) {
        verified.push_back({r, p, 0.0});
        ++report.empty_record_pairs;
      }
    }
  }

  std::sort(verified.begin(), verified.end(), [](const IndexedResult& a, const IndexedResult& b) {
    return std::pair(a.left, a.right) < std::pair(b.left, b.right);
  });
  output.results.reserve(verified.size());
  for (const auto& v : verified) {
    output.results.push_back({rs[v.left].id(), ps[v.right].id(), v.distance});
  }
  return output;
}

}  // namespace detail

// Self-join: all unordered pairs of records with NSLD <= T, left_id < right_id.
inline JoinOutput join(std::span<const TokenizedString> corpus, const JoinConfig& cfg) {
  cfg.validate();
  const auto sorted = detail::sorted_by_id(corpus);
  return detail::run_join(sorted, nullptr, cfg);
}

// R x P join: all (r, p) with NSLD(r, p) <= T.
inline JoinOutput join(std::span<const TokenizedString> corpus_r,
                       std::span<const TokenizedString> corpus_p, const JoinConfig& cfg) {
  cfg.validate();
  const auto rs = detail::sorted_by_id(corpus_r);
  const auto ps = detail::sorted_by_id(corpus_p);
  return detail::run_join(rs, &ps, cfg);
}

}  // namespace tsj
