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

// Text normalization: UTF-8 decoding and tokenization of raw strings into
// multisets of tokens. Tokens are stored as sequences of Unicode scalar
// values so that lengths and edit operations are character-level.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tsj/error.hpp"

namespace tsj {

using Token = std::u32string;

namespace utf8 {

inline std::u32string decode(std::string_view bytes) {
  std::u32string out;
  out.reserve(bytes.size());
  std::size_t i = 0;
  const auto fail = [&](const char* why) {
    throw DataError("invalid UTF-8 at byte " + std::to_string(i) + ": " + why);
  };
  while (i < bytes.size()) {
    const auto b0 = static_cast<unsigned char>(bytes[i]);
    std::size_t extra = 0;
    char32_t cp = 0;
    char32_t min = 0;
    if (b0 < 0x80) {
      out.push_back(b0);
      ++i;
      continue;
    } else if ((b0 & 0xE0) == 0xC0) {
      extra = 1, cp = b0 & 0x1F, min = 0x80;
    } else if ((b0 & 0xF0) == 0xE0) {
      extra = 2, cp = b0 & 0x0F, min = 0x800;
    } else if ((b0 & 0xF8) == 0xF0) {
      extra = 3, cp = b0 & 0x07, min = 0x10000;
    } else {
      fail("bad lead byte");
    }
    if (i + extra >= bytes.size()) fail("truncated sequence");
    for (std::size_t k = 1; k <= extra; ++k) {
      const auto b = static_cast<unsigned char>(bytes[i + k]);
      if ((b & 0xC0) != 0x80) fail("bad continuation byte");
      cp = (cp << 6) | (b & 0x3F);
    }
    if (cp < min) fail("overlong encoding");
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      fail("not a scalar value");
    }
    out.push_back(cp);
    i += extra + 1;
  }
  return out;
}

inline void append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

inline std::string encode(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : text) append(out, cp);
  return out;
}

}  // namespace utf8

// A record: an opaque id plus a multiset of non-empty tokens. The aggregate
// length and token count are computed once at construction.
class TokenizedString {
 public:
  TokenizedString() = default;

  TokenizedString(std::string id, std::vector<Token> tokens)
      : id_(std::move(id)), tokens_(std::move(tokens)) {
    for (const auto& t : tokens_) {
      if (t.empty()) throw DataError("record '" + id_ + "' has an empty token");
      agg_len_ += t.size();
    }
  }

  static TokenizedString from_utf8(std::string id,
                                   std::span<const std::string_view> tokens) {
    std::vector<Token> decoded;
    decoded.reserve(tokens.size());
    for (auto t : tokens) decoded.push_back(utf8::decode(t));
    return TokenizedString(std::move(id), std::move(decoded));
  }

  static TokenizedString from_utf8(std::string id,
                                   std::initializer_list<std::string_view> tokens) {
    return from_utf8(std::move(id),
                     std::span<const std::string_view>(tokens.begin(), tokens.size()));
  }

  const std::string& id() const noexcept { return id_; }
  std::span<const Token> tokens() const noexcept { return tokens_; }
  const Token& token(std::size_t i) const { return tokens_[i]; }
  std::size_t agg_len() const noexcept { return agg_len_; }
  std::size_t token_count() const noexcept { return tokens_.size(); }
  bool empty() const noexcept { return tokens_.empty(); }

  friend bool operator==(const TokenizedString&, const TokenizedString&) = default;

 private:
  std::string id_;
  std::vector<Token> tokens_;
  std::size_t agg_len_ = 0;
};

enum class TokenizerScheme { kWhitespace, kWhitespacePunct };

struct TokenizerOptions {
  TokenizerScheme scheme = TokenizerScheme::kWhitespacePunct;
  bool lowercase = false;
};

// Unicode White_Space property.
constexpr bool is_unicode_space(char32_t c) noexcept {
  return (c >= 0x09 && c <= 0x0D) || c == 0x20 || c == 0x85 || c == 0xA0 ||
         c == 0x1680 || (c >= 0x2000 && c <= 0x200A) || c == 0x2028 ||
         c == 0x2029 || c == 0x202F || c == 0x205F || c == 0x3000;
}

constexpr bool is_ascii_punct(char32_t c) noexcept {
  return (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) ||
         (c >= 0x5B && c <= 0x60) || (c >= 0x7B && c <= 0x7E);
}

constexpr bool is_separator(char32_t c, TokenizerScheme scheme) noexcept {
  return is_unicode_space(c) ||
         (scheme == TokenizerScheme::kWhitespacePunct && is_ascii_punct(c));
}

// Simple one-to-one lowercase mapping for ASCII, Latin-1, basic Greek and
// basic Cyrillic. Everything else is returned unchanged.
constexpr char32_t simple_lower(char32_t c) noexcept {
  if (c >= U'A' && c <= U'Z') return c + 0x20;
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 0x20;
  if (c >= 0x391 && c <= 0x3A9 && c != 0x3A2) return c + 0x20;
  if (c >= 0x410 && c <= 0x42F) return c + 0x20;
  if (c >= 0x400 && c <= 0x40F) return c + 0x50;
  return c;
}

// Splits `raw` into maximal runs of non-separator characters, left to right.
inline TokenizedString tokenize(std::string id, std::string_view raw,
                                TokenizerOptions options = {}) {
  const std::u32string text = utf8::decode(raw);
  std::vector<Token> tokens;
  Token current;
  for (char32_t c : text) {
    if (is_separator(c, options.scheme)) {
      if (!current.empty()) tokens.push_back(std::exchange(current, {}));
      continue;
    }
    current.push_back(options.lowercase ? simple_lower(c) : c);
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return TokenizedString(std::move(id), std::move(tokens));
}

inline TokenizedString tokenize(std::string_view raw, TokenizerOptions options = {}) {
  return tokenize(std::string(), raw, options);
}

}  // namespace tsj
