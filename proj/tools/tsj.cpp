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

// tsj: batch tokenized-string similarity joins.
//
//   tsj join    --input PATH [--input2 PATH] [--threshold T] ...
//   tsj oracle  --input PATH [--input2 PATH] [--threshold T] ...
//   tsj dist    "first string" "second string"
//   tsj gen     --records N --seed S ...
//
// Exit codes: 0 success, 1 I/O or data error, 2 configuration error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tsj/tsj.hpp"

namespace {

struct InputFlags {
  std::string input;
  std::string input2;
  std::string output;
  std::string format = "lines";
  std::string tokenizer = "whitespace-punct";
  bool lowercase = false;
  double threshold = 0.1;
};

struct JoinFlags {
  InputFlags in;
  std::string max_token_freq = "1000";
  std::string matching = "fuzzy";
  std::string dedup = "one-string";
  std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  std::string report;
  bool no_filters = false;
};

class CliFailure : public std::runtime_error {
 public:
  CliFailure(int code, std::string stage, const std::string& what)
      : std::runtime_error(what), code(code), stage(std::move(stage)) {}
  int code;
  std::string stage;
};

template <typename Fn>
auto in_stage(const char* stage, Fn&& fn) {
  try {
    return fn();
  } catch (const tsj::ConfigError& e) {
    throw CliFailure(2, stage, e.what());
  } catch (const tsj::DataError& e) {
    throw CliFailure(1, stage, e.what());
  } catch (const tsj::StageError& e) {
    throw CliFailure(1, stage, e.what());
  } catch (const std::bad_alloc&) {
    throw CliFailure(1, stage, "out of memory");
  }
}

tsj::TokenizerOptions tokenizer_options(const InputFlags& f) {
  tsj::TokenizerOptions opts;
  opts.scheme = f.tokenizer == "whitespace" ? tsj::TokenizerScheme::kWhitespace
                                            : tsj::TokenizerScheme::kWhitespacePunct;
  opts.lowercase = f.lowercase;
  return opts;
}

tsj::io::CorpusFormat corpus_format(const InputFlags& f) {
  return f.format == "tsv-id" ? tsj::io::CorpusFormat::kTsvId : tsj::io::CorpusFormat::kLines;
}

void check_threshold(double t) {
  if (!(t >= 0.0 && t < 1.0)) {
    throw CliFailure(2, "config", "--threshold must satisfy 0 <= T < 1");
  }
}

std::size_t parse_max_freq(const std::string& text) {
  if (text == "inf") return tsj::kUnlimitedFrequency;
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != text.size() || v == 0 || text.find('-') != std::string::npos) {
    throw CliFailure(2, "config", "--max-token-freq must be a positive integer or 'inf'");
  }
  return static_cast<std::size_t>(v);
}

struct Corpora {
  std::vector<tsj::TokenizedString> r;
  std::optional<std::vector<tsj::TokenizedString>> p;
};

Corpora load(const InputFlags& f) {
  return in_stage("ingest", [&] {
    Corpora c;
    c.r = tsj::io::read_corpus_file(f.input, corpus_format(f), tokenizer_options(f));
    if (!f.input2.empty()) {
      c.p = tsj::io::read_corpus_file(f.input2, corpus_format(f), tokenizer_options(f));
    }
    return c;
  });
}

void emit_results(const std::string& path, const std::vector<tsj::JoinResult>& results) {
  in_stage("output", [&] {
    if (path.empty() || path == "-") {
      tsj::io::write_results(std::cout, results);
      std::cout.flush();
      if (!std::cout) throw tsj::DataError("write to standard output failed");
      return 0;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw tsj::DataError("cannot open output '" + path + "'");
    tsj::io::write_results(out, results);
    out.close();
    if (!out) throw tsj::DataError("write to '" + path + "' failed");
    return 0;
  });
}

nlohmann::json report_json(const tsj::StageReport& report, const JoinFlags& f,
                           std::size_t result_count) {
  nlohmann::json j;
  nlohmann::json stages = nlohmann::json::object();
  for (const auto& s : report.stages) {
    stages[s.name] = {{"items_in", s.items_in}, {"items_out", s.items_out}, {"millis", s.millis}};
  }
  j["stages"] = stages;
  j["filters"] = {{"input_pairs", report.filters.input_pairs},
                  {"pruned_by_length", report.filters.pruned_by_length},
                  {"pruned_by_histogram", report.filters.pruned_by_histogram},
                  {"surviving", report.filters.surviving}};
  j["counters"] = {{"dropped_tokens", report.dropped_tokens},
                   {"similar_token_pairs", report.similar_token_pairs},
                   {"empty_record_pairs", report.empty_record_pairs},
                   {"results", result_count}};
  j["config"] = {{"input", f.in.input},
                 {"input2", f.in.input2},
                 {"format", f.in.format},
                 {"threshold", f.in.threshold},
                 {"max_token_freq", f.max_token_freq},
                 {"matching", f.matching},
                 {"dedup", f.dedup},
                 {"workers", f.workers},
                 {"tokenizer", f.in.tokenizer},
                 {"lowercase", f.in.lowercase},
                 {"filters", !f.no_filters},
                 {"self_join", f.in.input2.empty()}};
  return j;
}

int run_join(const JoinFlags& f) {
  check_threshold(f.in.threshold);
  if (f.workers == 0) throw CliFailure(2, "config", "--workers must be >= 1");
  tsj::JoinConfig cfg;
  cfg.threshold = f.in.threshold;
  cfg.max_token_freq = parse_max_freq(f.max_token_freq);
  cfg.matching = f.matching == "greedy"        ? tsj::MatchingMode::kGreedy
                 : f.matching == "exact-token" ? tsj::MatchingMode::kExactToken
                                               : tsj::MatchingMode::kFuzzy;
  cfg.dedup = f.dedup == "both-strings" ? tsj::DedupStrategy::kBothStrings
                                        : tsj::DedupStrategy::kOneString;
  cfg.workers = f.workers;
  cfg.filters = !f.no_filters;
  in_stage("config", [&] {
    cfg.validate();
    return 0;
  });

  const Corpora c = load(f.in);
  const tsj::JoinOutput out = in_stage("join", [&] {
    return c.p ? tsj::join(c.r, *c.p, cfg) : tsj::join(c.r, cfg);
  });
  emit_results(f.in.output, out.results);
  if (!f.report.empty()) {
    in_stage("report", [&] {
      std::ofstream rep(f.report, std::ios::binary | std::ios::trunc);
      if (!rep) throw tsj::DataError("cannot open report '" + f.report + "'");
      rep << report_json(out.report, f, out.results.size()).dump(2) << '\n';
      if (!rep) throw tsj::DataError("write to '" + f.report + "' failed");
      return 0;
    });
  }
  return 0;
}

int run_oracle(const InputFlags& f) {
  check_threshold(f.threshold);
  const Corpora c = load(f);
  const auto result = in_stage("oracle", [&] {
    return c.p ? tsj::oracle::join_bruteforce(c.r, *c.p, f.threshold)
               : tsj::oracle::join_bruteforce(c.r, f.threshold);
  });
  emit_results(f.output, result.pairs);
  return 0;
}

int run_dist(const std::string& a, const std::string& b, const std::string& matching,
             const InputFlags& f) {
  const auto [x, y] = in_stage("ingest", [&] {
    return std::pair(tsj::tokenize("a", a, tokenizer_options(f)),
                     tsj::tokenize("b", b, tokenizer_options(f)));
  });
  const auto method = matching == "greedy" ? tsj::SldMethod::kGreedy : tsj::SldMethod::kExact;
  const tsj::AlignmentCost cost = tsj::sld(x, y, method);
  const double d = tsj::normalize_distance(cost.sld, x.agg_len() + y.agg_len());
  std::cout << "nsld\t" << tsj::io::format_distance(d) << '\n';
  std::cout << "sld\t" << cost.sld << '\n';
  const auto show = [](const tsj::TokenizedString& s, std::size_t i) {
    return i == tsj::kPad ? std::string("<empty>") : tsj::utf8::encode(s.token(i));
  };
  for (const auto& [i, j] : cost.pairing) {
    const std::u32string_view l = i == tsj::kPad ? U"" : std::u32string_view(x.token(i));
    const std::u32string_view r = j == tsj::kPad ? U"" : std::u32string_view(y.token(j));
    std::cout << "align\t" << show(x, i) << '\t' << show(y, j) << '\t' << tsj::ld(l, r) << '\n';
  }
  return 0;
}

int run_gen(const tsj::synth::SynthConfig& cfg, const std::string& output,
            const std::string& format) {
  const auto lines = in_stage("gen", [&] { return tsj::synth::generate_corpus(cfg); });
  return in_stage("output", [&] {
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!output.empty() && output != "-") {
      file.open(output, std::ios::binary | std::ios::trunc);
      if (!file) throw tsj::DataError("cannot open output '" + output + "'");
      out = &file;
    }
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (format == "tsv-id") *out << 'r' << i << '\t';
      *out << lines[i] << '\n';
    }
    out->flush();
    if (!*out) throw tsj::DataError("write failed");
    return 0;
  });
}

void add_input_flags(CLI::App* cmd, InputFlags& f) {
  cmd->add_option("--input", f.input, "Corpus file")->required();
  cmd->add_option("--input2", f.input2, "Second corpus; omitted means self-join");
  cmd->add_option("--output", f.output, "Result file (default: stdout)");
  cmd->add_option("--format", f.format, "Corpus format")
      ->check(CLI::IsMember({"lines", "tsv-id"}));
  cmd->add_option("--threshold", f.threshold, "NSLD threshold T, 0 <= T < 1");
  cmd->add_option("--tokenizer", f.tokenizer, "Token separators")
      ->check(CLI::IsMember({"whitespace", "whitespace-punct"}));
  cmd->add_flag("--lowercase", f.lowercase, "Lowercase tokens");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tokenized-string similarity joins under NSLD"};
  app.require_subcommand(1);

  JoinFlags join_flags;
  auto* join_cmd = app.add_subcommand("join", "Run the indexed join");
  add_input_flags(join_cmd, join_flags.in);
  join_cmd->add_option("--max-token-freq", join_flags.max_token_freq,
                       "Drop tokens in more records than this ('inf' keeps all)");
  join_cmd->add_option("--matching", join_flags.matching, "Token matching mode")
      ->check(CLI::IsMember({"fuzzy", "greedy", "exact-token"}));
  join_cmd->add_option("--dedup", join_flags.dedup, "Candidate dedup strategy")
      ->check(CLI::IsMember({"one-string", "both-strings"}));
  join_cmd->add_option("--workers", join_flags.workers, "Worker threads");
  join_cmd->add_option("--report", join_flags.report, "JSON run report");
  join_cmd->add_flag("--no-filters", join_flags.no_filters, "Disable length/histogram filters");

  InputFlags oracle_flags;
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force reference join");
  add_input_flags(oracle_cmd, oracle_flags);

  InputFlags dist_flags;
  std::string dist_a, dist_b, dist_matching = "fuzzy";
  auto* dist_cmd = app.add_subcommand("dist", "NSLD of one pair of strings");
  dist_cmd->add_option("a", dist_a)->required();
  dist_cmd->add_option("b", dist_b)->required();
  dist_cmd->add_option("--matching", dist_matching)
      ->check(CLI::IsMember({"fuzzy", "greedy", "exact-token"}));
  dist_cmd->add_option("--tokenizer", dist_flags.tokenizer)
      ->check(CLI::IsMember({"whitespace", "whitespace-punct"}));
  dist_cmd->add_flag("--lowercase", dist_flags.lowercase);

  tsj::synth::SynthConfig gen_cfg;
  std::string gen_output, gen_format = "lines";
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic corpus");
  gen_cmd->add_option("--records", gen_cfg.records);
  gen_cmd->add_option("--vocabulary", gen_cfg.vocabulary, "Distinct base tokens (0: = records)");
  gen_cmd->add_option("--min-tokens", gen_cfg.min_tokens);
  gen_cmd->add_option("--max-tokens", gen_cfg.max_tokens);
  gen_cmd->add_option("--min-token-len", gen_cfg.min_token_len);
  gen_cmd->add_option("--max-token-len", gen_cfg.max_token_len);
  gen_cmd->add_option("--alphabet", gen_cfg.alphabet);
  gen_cmd->add_option("--zipf", gen_cfg.zipf_exponent);
  gen_cmd->add_option("--perturb-rate", gen_cfg.perturb_rate);
  gen_cmd->add_option("--max-edits", gen_cfg.max_edits);
  gen_cmd->add_option("--seed", gen_cfg.seed);
  gen_cmd->add_option("--output", gen_output);
  gen_cmd->add_option("--format", gen_format)->check(CLI::IsMember({"lines", "tsv-id"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*join_cmd) return run_join(join_flags);
    if (*oracle_cmd) return run_oracle(oracle_flags);
    if (*dist_cmd) return run_dist(dist_a, dist_b, dist_matching, dist_flags);
    if (*gen_cmd) return run_gen(gen_cfg, gen_output, gen_format);
  } catch (const CliFailure& e) {
    std::cerr << "tsj: " << e.stage << ": " << e.what() << '\n';
    return e.code;
  }
  return 2;
}
