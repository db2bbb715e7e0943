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

// Drives the built `tsj` binary end to end.

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("tsj_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& content) const {
    std::ofstream(path(name), std::ios::binary) << content;
    return path(name);
  }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  Outcome run(const std::string& args) const {
    const std::string err = path("stderr.txt");
    const std::string cmd = std::string("'") + TSJ_BINARY + "' " + args + " 2>'" + err + "'";
    Outcome r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = slurp(err);
    return r;
  }

  fs::path dir_;
};

TEST_F(CliTest, JoinWorkedExample) {
  const auto in = write("c.txt", "chan kalan\nchank alan\n");
  auto r = run("join --input '" + in + "' --threshold 0.2");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "0\t1\t0.200000\n");

  r = run("join --input '" + in + "' --output '" + path("o.tsv") + "'");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "");
  EXPECT_TRUE(fs::exists(path("o.tsv")));
  EXPECT_EQ(slurp(path("o.tsv")), "");
}

TEST_F(CliTest, ConfigErrorsExitTwo) {
  const auto in = write("c.txt", "a\n");
  for (const std::string flags :
       {"--threshold 1.5", "--threshold -0.1", "--threshold 1", "--max-token-freq 0",
        "--max-token-freq abc", "--matching bogus", "--workers 0", "--no-such-flag"}) {
    const auto r = run("join --input '" + in + "' " + flags);
    EXPECT_EQ(r.code, 2) << flags;
    EXPECT_FALSE(r.err.empty()) << flags;
  }
  EXPECT_EQ(run("join").code, 2);  // --input missing
  EXPECT_EQ(run("").code, 2);      // no subcommand
  const auto r = run("join --input '" + in + "' --threshold 1.5");
  EXPECT_NE(r.err.find("config"), std::string::npos) << r.err;
}

TEST_F(CliTest, DataErrorsExitOne) {
  auto r = run("join --input '" + path("missing.txt") + "'");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("ingest"), std::string::npos) << r.err;
  const auto bad = write("bad.txt", "ok\n\xff\xfe\n");
  EXPECT_EQ(run("join --input '" + bad + "'").code, 1);
  const auto dup = write("dup.tsv", "a\tx\na\ty\n");
  r = run("join --format tsv-id --input '" + dup + "'");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("join"), std::string::npos) << r.err;
  const auto in = write("c.txt", "a\n");
  EXPECT_EQ(run("join --input '" + in + "' --output '" + path("no/such/dir/o") + "'").code, 1);
}

TEST_F(CliTest, Dist) {
  auto r = run("dist 'chan kalan' 'chank alan'");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("nsld\t0.200000\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("sld\t2\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("align\tkalan\talan\t1\n"), std::string::npos) << r.out;
  r = run("dist 'same thing' 'thing same'");
  EXPECT_NE(r.out.find("nsld\t0.000000\n"), std::string::npos) << r.out;
  r = run("dist '' abc");
  EXPECT_NE(r.out.find("nsld\t1.000000\n"), std::string::npos) << r.out;
  EXPECT_EQ(run("dist onlyone").code, 2);
}

TEST_F(CliTest, OracleMatchesJoinByteForByte) {
  const auto corpus = path("g.txt");
  ASSERT_EQ(run("gen --records 500 --seed 5 --alphabet 8 --perturb-rate 0.4 --output '" + corpus + "'").code, 0);
  const auto oracle = run("oracle --input '" + corpus + "' --threshold 0.15");
  const auto joined = run("join --input '" + corpus + "' --threshold 0.15 --max-token-freq inf");
  EXPECT_EQ(oracle.code, 0) << oracle.err;
  EXPECT_EQ(joined.code, 0) << joined.err;
  EXPECT_FALSE(oracle.out.empty());
  EXPECT_EQ(oracle.out, joined.out);
}

TEST_F(CliTest, OracleEmptyAndOversized) {
  const auto empty = write("e.txt", "");
  auto r = run("oracle --input '" + empty + "'");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "");
  std::string big;
  for (int i = 0; i < 4500; ++i) big += "w" + std::to_string(i % 50) + "\n";
  const auto in = write("big.txt", big);
  r = run("oracle --input '" + in + "'");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("oracle"), std::string::npos) << r.err;
}

TEST_F(CliTest, OutputIndependentOfWorkersAndRuns) {
  const auto corpus = path("g.txt");
  ASSERT_EQ(run("gen --records 3000 --seed 9 --output '" + corpus + "'").code, 0);
  const auto base = run("join --input '" + corpus + "' --threshold 0.2 --workers 1");
  ASSERT_EQ(base.code, 0);
  EXPECT_FALSE(base.out.empty());
  for (const char* w : {"1", "3", "8"}) {
    EXPECT_EQ(run("join --input '" + corpus + "' --threshold 0.2 --workers " + w).out, base.out);
  }
  EXPECT_EQ(run("join --input '" + corpus + "' --threshold 0.2 --dedup both-strings").out, base.out);
}

TEST_F(CliTest, ReportJson) {
  const auto corpus = path("g.txt");
  ASSERT_EQ(run("gen --records 400 --seed 2 --output '" + corpus + "'").code, 0);
  const auto r = run("join --input '" + corpus + "' --threshold 0.2 --max-token-freq 20 --report '" +
                     path("rep.json") + "'");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(slurp(path("rep.json")));
  for (const char* stage : {"token_space", "shared_token", "similar_token", "dedup", "filter", "verify"}) {
    ASSERT_TRUE(j["stages"].contains(stage)) << stage;
    EXPECT_TRUE(j["stages"][stage].contains("items_in"));
    EXPECT_TRUE(j["stages"][stage].contains("items_out"));
    EXPECT_TRUE(j["stages"][stage].contains("millis"));
  }
  const auto& f = j["filters"];
  EXPECT_EQ(f["input_pairs"].get<std::uint64_t>(),
            f["pruned_by_length"].get<std::uint64_t>() + f["pruned_by_histogram"].get<std::uint64_t>() +
                f["surviving"].get<std::uint64_t>());
  EXPECT_EQ(j["config"]["threshold"].get<double>(), 0.2);
  EXPECT_EQ(j["config"]["max_token_freq"].get<std::string>(), "20");
  std::size_t lines = 0;
  for (char c : r.out) lines += c == '\n';
  EXPECT_EQ(j["counters"]["results"].get<std::size_t>(), lines);
}

TEST_F(CliTest, TwoSetJoinAndTsvIds) {
  const auto r_file = write("r.tsv", "r1\tchan kalan\nr2\tgrace hopper\n");
  const auto p_file = write("p.tsv", "p1\tchank alan\np2\thopper grace\np3\tzzz\n");
  const auto r = run("join --format tsv-id --input '" + r_file + "' --input2 '" + p_file +
                     "' --threshold 0.2");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "r1\tp1\t0.200000\nr2\tp2\t0.000000\n");
  const auto o = run("oracle --format tsv-id --input '" + r_file + "' --input2 '" + p_file +
                     "' --threshold 0.2");
  EXPECT_EQ(o.out, r.out);
}

TEST_F(CliTest, TokenizerFlags) {
  const auto in = write("c.txt", "Smith, John\nsmith john\n");
  EXPECT_EQ(run("join --input '" + in + "' --threshold 0").out, "");
  EXPECT_EQ(run("join --input '" + in + "' --threshold 0 --lowercase").out, "0\t1\t0.000000\n");
  EXPECT_EQ(run("join --input '" + in + "' --threshold 0 --lowercase --tokenizer whitespace").out, "");
}

TEST_F(CliTest, GenIsSeeded) {
  const auto a = run("gen --records 200 --seed 4");
  const auto b = run("gen --records 200 --seed 4");
  const auto c = run("gen --records 200 --seed 5");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
  std::size_t lines = 0;
  for (char ch : a.out) lines += ch == '\n';
  EXPECT_EQ(lines, 200u);
}

}  // namespace
