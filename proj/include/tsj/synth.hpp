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

// Seeded synthetic corpora of name-like records. A fraction of records are
// perturbed copies of earlier ones (character edits, dropped, added or
// reordered tokens) so that joins at small thresholds have real work to do.
//
// Only mt19937_64 raw output is consumed (its sequence is fixed by the
// standard); draws are derived by hand so corpora are identical across
// standard library implementations.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tsj/error.hpp"

namespace tsj::synth {

struct SynthConfig {
  std::size_t records = 1000;
  std::size_t vocabulary = 0;  // 0: same as records
  std::size_t min_tokens = 1;
  std::size_t max_tokens = 4;
  std::size_t min_token_len = 2;
  std::size_t max_token_len = 9;
  std::size_t alphabet = 26;
  double zipf_exponent = 1.0;
  double perturb_rate = 0.3;
  std::size_t max_edits = 2;
  std::uint64_t seed = 1;

  void validate() const {
    if (min_tokens > max_tokens) throw ConfigError("min_tokens > max_tokens");
    if (min_token_len == 0 || min_token_len > max_token_len) {
      throw ConfigError("token lengths must satisfy 1 <= min <= max");
    }
    if (alphabet == 0 || alphabet > 26) throw ConfigError("alphabet must be in [1, 26]");
    if (!(perturb_rate >= 0.0 && perturb_rate <= 1.0)) {
      throw ConfigError("perturb_rate must be in [0, 1]");
    }
    if (zipf_exponent < 0.0) throw ConfigError("zipf_exponent must be >= 0");
  }
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, n), n > 0.
  std::size_t below(std::size_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return static_cast<std::size_t>(v % n);
  }
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

class Generator {
 public:
  explicit Generator(SynthConfig cfg) : cfg_(cfg), rng_(cfg.seed) {
    cfg_.validate();
    const std::size_t vocab = cfg_.vocabulary ? cfg_.vocabulary : std::max<std::size_t>(1, cfg_.records);
    words_.reserve(vocab);
    for (std::size_t i = 0; i < vocab; ++i) words_.push_back(random_word());
    cdf_.reserve(vocab);
    double acc = 0.0;
    for (std::size_t r = 1; r <= vocab; ++r) {
      acc += 1.0 / std::pow(static_cast<double>(r), cfg_.zipf_exponent);
      cdf_.push_back(acc);
    }
  }

  // Records as whitespace-joined token lists.
  std::vector<std::string> generate() {
    std::vector<std::vector<std::string>> records;
    records.reserve(cfg_.records);
    for (std::size_t i = 0; i < cfg_.records; ++i) {
      if (!records.empty() && rng_.unit() < cfg_.perturb_rate) {
        records.push_back(perturb(records[rng_.below(records.size())]));
      } else {
        std::vector<std::string> tokens;
        const std::size_t k = rng_.between(cfg_.min_tokens, cfg_.max_tokens);
        for (std::size_t t = 0; t < k; ++t) tokens.push_back(zipf_word());
        records.push_back(std::move(tokens));
      }
    }
    std::vector<std::string> lines;
    lines.reserve(records.size());
    for (const auto& tokens : records) {
      std::string line;
      for (const auto& t : tokens) {
        if (!line.empty()) line.push_back(' ');
        line += t;
      }
      lines.push_back(std::move(line));
    }
    return lines;
  }

 private:
  char random_char() { return static_cast<char>('a' + rng_.below(cfg_.alphabet)); }

  std::string random_word() {
    std::string w(rng_.between(cfg_.min_token_len, cfg_.max_token_len), 'a');
    for (auto& c : w) c = random_char();
    return w;
  }

  const std::string& zipf_word() {
    const double u = rng_.unit() * cdf_.back();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    const std::size_t r = std::min<std::size_t>(it - cdf_.begin(), cdf_.size() - 1);
    return words_[r];
  }

  void edit_chars(std::string& w) {
    const std::size_t op = rng_.below(3);
    if (op == 0 || w.size() <= 1) {  // substitute
      w[rng_.below(w.size())] = random_char();
    } else if (op == 1) {
      w.insert(w.begin() + static_cast<std::ptrdiff_t>(rng_.below(w.size() + 1)), random_char());
    } else {
      w.erase(w.begin() + static_cast<std::ptrdiff_t>(rng_.below(w.size())));
    }
  }

  std::vector<std::string> perturb(std::vector<std::string> tokens) {
    const std::size_t edits = rng_.between(0, cfg_.max_edits);
    for (std::size_t e = 0; e < edits; ++e) {
      const std::size_t op = rng_.below(10);
      if (tokens.empty() || op < 6) {
        if (tokens.empty()) {
          tokens.push_back(zipf_word());
        } else {
          edit_chars(tokens[rng_.below(tokens.size())]);
        }
      } else if (op < 7 && tokens.size() > 1) {
        tokens.erase(tokens.begin() + static_cast<std::ptrdiff_t>(rng_.below(tokens.size())));
      } else if (op < 8) {
        tokens.push_back(zipf_word());
      } else if (tokens.size() > 1) {
        std::swap(tokens[rng_.below(tokens.size())], tokens[rng_.below(tokens.size())]);
      }
    }
    return tokens;
  }

  SynthConfig cfg_;
  Rng rng_;
  std::vector<std::string> words_;
  std::vector<double> cdf_;
};

inline std::vector<std::string> generate_corpus(const SynthConfig& cfg) {
  return Generator(cfg).generate();
}

}  // namespace tsj::synth
