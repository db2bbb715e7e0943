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

// Shared helpers for the test suite: a naive LD, exact rational distances,
// canonical string-pair enumeration and seeded random inputs. Nothing here
// calls the distance code under test.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "tsj/tsj.hpp"

namespace tsj::testing {

// Full-matrix Levenshtein DP, written independently of tsj::ld.
inline std::size_t naive_ld(std::u32string_view a, std::u32string_view b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
  }
  return d[a.size()][b.size()];
}

inline std::size_t naive_ld(std::string_view a, std::string_view b) {
  return naive_ld(utf8::decode(a), utf8::decode(b));
}

// Non-negative rational num/den, den > 0.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

inline bool operator==(Ratio a, Ratio b) {
  return static_cast<__int128>(a.num) * b.den == static_cast<__int128>(b.num) * a.den;
}
inline bool operator<=(Ratio a, Ratio b) {
  return static_cast<__int128>(a.num) * b.den <= static_cast<__int128>(b.num) * a.den;
}
inline bool operator<(Ratio a, Ratio b) {
  return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}

// a + b <= c without rounding.
inline bool sum_at_least(Ratio a, Ratio b, Ratio c) {
  const __int128 lhs = static_cast<__int128>(c.num) * a.den * b.den;
  const __int128 rhs = (static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den) * c.den;
  return lhs <= rhs;
}

// 2e / (total + e), or 0 when e = 0.
inline Ratio normalized(std::size_t edits, std::size_t total) {
  if (edits == 0) return {0, 1};
  return {static_cast<std::int64_t>(2 * edits), static_cast<std::int64_t>(total + edits)};
}

inline double to_double(Ratio r) {
  return static_cast<double>(r.num) / static_cast<double>(r.den);
}

// Every pair (x, y) with |x|, |y| <= max_len over an alphabet of at least
// |x| + |y| letters, up to renaming of letters. LD, and every quantity
// derived from LD and lengths, is invariant under renaming, so visiting one
// representative per class covers all pairs over that alphabet. The joint
// string x + y runs through the restricted-growth strings: each position
// uses a letter already seen or the next unused one.
inline void for_each_canonical_pair(
    std::size_t max_len, const std::function<void(std::u32string_view, std::u32string_view)>& fn) {
  std::u32string buf;
  std::function<void(std::size_t, std::size_t, char32_t)> rec = [&](std::size_t lx, std::size_t total,
                                                                   char32_t next) {
    if (buf.size() == total) {
      fn(std::u32string_view(buf).substr(0, lx), std::u32string_view(buf).substr(lx));
      return;
    }
    for (char32_t c = U'a'; c <= next; ++c) {
      buf.push_back(c);
      rec(lx, total, c == next ? next + 1 : next);
      buf.pop_back();
    }
  };
  for (std::size_t lx = 0; lx <= max_len; ++lx) {
    for (std::size_t ly = 0; ly <= max_len; ++ly) rec(lx, lx + ly, U'a');
  }
}

class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}

  std::size_t below(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
  }
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
  bool chance(double p) { return std::uniform_real_distribution<double>(0, 1)(engine_) < p; }

  std::u32string word(std::size_t min_len, std::size_t max_len, std::size_t alphabet) {
    std::u32string w(between(min_len, max_len), U'a');
    for (auto& c : w) c = U'a' + static_cast<char32_t>(below(alphabet));
    return w;
  }

  // Up to `edits` random single-character edits.
  std::u32string mutate(std::u32string w, std::size_t edits, std::size_t alphabet) {
    for (std::size_t e = 0; e < edits; ++e) {
      const char32_t c = U'a' + static_cast<char32_t>(below(alphabet));
      switch (below(3)) {
        case 0:
          if (!w.empty()) {
            w[below(w.size())] = c;
            break;
          }
          [[fallthrough]];
        case 1:
          w.insert(w.begin() + static_cast<std::ptrdiff_t>(below(w.size() + 1)), c);
          break;
        default:
          if (!w.empty()) w.erase(w.begin() + static_cast<std::ptrdiff_t>(below(w.size())));
      }
    }
    return w;
  }

  std::vector<Token> multiset(std::size_t max_tokens, std::size_t max_len, std::size_t alphabet) {
    std::vector<Token> tokens(between(0, max_tokens));
    for (auto& t : tokens) t = word(1, max_len, alphabet);
    return tokens;
  }

  // A nearby multiset: token edits, drops, additions and reordering.
  std::vector<Token> perturb(std::vector<Token> tokens, std::size_t max_tokens, std::size_t max_len,
                             std::size_t alphabet) {
    const std::size_t ops = between(0, 3);
    for (std::size_t o = 0; o < ops; ++o) {
      const std::size_t op = below(4);
      if (op == 0 && !tokens.empty()) {
        auto& t = tokens[below(tokens.size())];
        auto m = mutate(t, 1, alphabet);
        if (!m.empty() && m.size() <= max_len) t = std::move(m);
      } else if (op == 1 && !tokens.empty()) {
        tokens.erase(tokens.begin() + static_cast<std::ptrdiff_t>(below(tokens.size())));
      } else if (op == 2 && tokens.size() < max_tokens) {
        tokens.push_back(word(1, max_len, alphabet));
      } else if (tokens.size() > 1) {
        std::swap(tokens[below(tokens.size())], tokens[below(tokens.size())]);
      }
    }
    return tokens;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

inline TokenizedString record(std::string id, std::vector<Token> tokens) {
  return TokenizedString(std::move(id), std::move(tokens));
}

inline TokenizedString rec(std::string id, std::initializer_list<std::string_view> tokens) {
  return TokenizedString::from_utf8(std::move(id), tokens);
}

inline std::vector<TokenizedString> corpus_from_lines(const std::vector<std::string>& lines,
                                                      TokenizerOptions options = {}) {
  std::vector<TokenizedString> corpus;
  corpus.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    corpus.push_back(tokenize(std::to_string(i), lines[i], options));
  }
  return corpus;
}

// Exact SLD by trying every bijection of the padded token lists; uses the
// naive LD so it shares no code with the engine.
inline std::size_t permutation_sld(const TokenizedString& a, const TokenizedString& b) {
  const std::size_t k = std::max(a.token_count(), b.token_count());
  std::vector<std::size_t> w(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const std::u32string_view x = i < a.token_count() ? std::u32string_view(a.token(i)) : U"";
      const std::u32string_view y = j < b.token_count() ? std::u32string_view(b.token(j)) : U"";
      w[i * k + j] = naive_ld(x, y);
    }
  }
  std::vector<std::size_t> perm(k);
  for (std::size_t i = 0; i < k; ++i) perm[i] = i;
  std::size_t best = SIZE_MAX;
  do {
    std::size_t s = 0;
    for (std::size_t i = 0; i < k; ++i) s += w[i * k + perm[i]];
    best = std::min(best, s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return k == 0 ? 0 : best;
}

}  // namespace tsj::testing
