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

#pragma once

#include <stdexcept>
#include <string>

namespace tsj {

// Invalid parameters: thresholds out of range, zero workers, oversized
// oracle inputs. The CLI maps these to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed or inconsistent input data (bad UTF-8, duplicate record ids,
// unreadable files). The CLI maps these to exit code 1.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A worker failed while executing one partition of a pipeline stage.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, std::size_t partition, const std::string& what)
      : std::runtime_error("stage '" + stage + "' partition " +
                           std::to_string(partition) + ": " + what),
        stage_(std::move(stage)),
        partition_(partition) {}

  const std::string& stage() const noexcept { return stage_; }
  std::size_t partition() const noexcept { return partition_; }

 private:
  std::string stage_;
  std::size_t partition_;
};

}  // namespace tsj
