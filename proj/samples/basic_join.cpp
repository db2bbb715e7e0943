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

// Self-join of a handful of names at T = 0.2, then one R x P join.

#include <iostream>
#include <vector>

#include "tsj/tsj.hpp"

int main() {
  const tsj::TokenizerOptions opts{tsj::TokenizerScheme::kWhitespacePunct, /*lowercase=*/true};
  std::vector<tsj::TokenizedString> people = {
      tsj::tokenize("p1", "Ada Lovelace", opts),
      tsj::tokenize("p2", "Lovelace, Ada", opts),
      tsj::tokenize("p3", "Ada Lovelase", opts),
      tsj::tokenize("p4", "Charles Babbage", opts),
      tsj::tokenize("p5", "Charles Babage", opts),
      tsj::tokenize("p6", "Grace Hopper", opts),
  };

  tsj::JoinConfig cfg;
  cfg.threshold = 0.2;
  const tsj::JoinOutput self = tsj::join(people, cfg);
  std::cout << "self-join:\n" << tsj::io::results_to_string(self.results);

  std::vector<tsj::TokenizedString> queries = {
      tsj::tokenize("q1", "hopper grace", opts),
      tsj::tokenize("q2", "alan turing", opts),
  };
  const tsj::JoinOutput cross = tsj::join(queries, people, cfg);
  std::cout << "queries x people:\n" << tsj::io::results_to_string(cross.results);

  for (const auto& stage : self.report.stages) {
    std::cout << stage.name << ": " << stage.items_in << " -> " << stage.items_out << '\n';
  }
  return 0;
}
