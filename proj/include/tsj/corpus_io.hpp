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

// Corpus and result files.
//
//   lines   one record per line, ids "0", "1", ... by line number
//   tsv-id  `id<TAB>text` per line
//
// Result rows are `left_id<TAB>right_id<TAB>distance` with the distance at
// six decimals.

#pragma once

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "tsj/error.hpp"
#include "tsj/pipeline.hpp"
#include "tsj/textnorm.hpp"

namespace tsj::io {

enum class CorpusFormat { kLines, kTsvId };

inline std::vector<TokenizedString> read_corpus(std::istream& in, CorpusFormat format,
                                                TokenizerOptions options) {
  std::vector<TokenizedString> corpus;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    try {
      if (format == CorpusFormat::kLines) {
        corpus.push_back(tokenize(std::to_string(line_no - 1), line, options));
        continue;
      }
      const auto tab = line.find('\t');
      if (tab == std::string::npos) throw DataError("missing TAB after id");
      std::string id = line.substr(0, tab);
      if (id.empty()) throw DataError("empty id");
      corpus.push_back(tokenize(std::move(id), std::string_view(line).substr(tab + 1), options));
    } catch (const DataError& e) {
      throw DataError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (in.bad()) throw DataError("read failure");
  return corpus;
}

inline std::vector<TokenizedString> read_corpus_file(const std::string& path,
                                                     CorpusFormat format,
                                                     TokenizerOptions options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open corpus '" + path + "'");
  try {
    return read_corpus(in, format, options);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

// Fixed notation, six decimals, correctly rounded from the binary value.
inline std::string format_distance(double d) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), d, std::chars_format::fixed, 6);
  return std::string(buf, res.ptr);
}

inline void write_results(std::ostream& out, std::span<const JoinResult> results) {
  for (const auto& r : results) {
    out << r.left_id << '\t' << r.right_id << '\t' << format_distance(r.distance) << '\n';
  }
}

struct ResultRow {
  std::string left_id;
  std::string right_id;
  double distance = 0.0;
  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

inline std::vector<ResultRow> read_results(std::istream& in) {
  std::vector<ResultRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) throw DataError("malformed result row: " + line);
    ResultRow row{line.substr(0, t1), line.substr(t1 + 1, t2 - t1 - 1), 0.0};
    const char* first = line.data() + t2 + 1;
    const char* last = line.data() + line.size();
    const auto res = std::from_chars(first, last, row.distance);
    if (res.ec != std::errc() || res.ptr != last) {
      throw DataError("malformed distance in row: " + line);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::string results_to_string(std::span<const JoinResult> results) {
  std::ostringstream out;
  write_results(out, results);
  return out.str();
}

}  // namespace tsj::io
