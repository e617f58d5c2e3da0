// Copyright 2026 The Quizmorph Authors.
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

#ifndef QUIZMORPH_CLI_H_
#define QUIZMORPH_CLI_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "quizmorph/error.h"

namespace quizmorph {

// Effective settings of one run: config file values overlaid by flags.
struct RunConfig {
  std::filesystem::path qb;
  std::filesystem::path nq;
  std::filesystem::path annotations;  // empty: heuristic annotator
  std::filesystem::path vocab;        // empty: builtin table
  std::filesystem::path input;
  std::vector<std::filesystem::path> inputs;
  std::filesystem::path predictions;
  std::filesystem::path references;
  std::filesystem::path out = ".";
  std::string provider = "lexical";
  std::string scorer = "heuristic";
  std::string sidecar_endpoint;
  long sidecar_timeout_ms = 30000;
  double pair_threshold = 0.5;
  double quality_threshold = 0.5;
  bool last_sentence_only = false;
  std::size_t batch_size = 64;
  std::size_t min_words = 8;
  long seed = 0;  // reserved; every stage is deterministic
};

// Reads a JSON config. Relative paths resolve against the file's directory;
// unknown keys and out-of-range values throw Error.
RunConfig load_config(const std::filesystem::path &path);

// Commands throw Error on fatal problems and report per-record problems
// through `diags`.
void cmd_pair(const RunConfig &config, Diagnostics &diags);
void cmd_generate(const RunConfig &config, Diagnostics &diags);
void cmd_filter(const RunConfig &config, Diagnostics &diags);
void cmd_concat(const RunConfig &config, Diagnostics &diags);
void cmd_stats(const RunConfig &config, Diagnostics &diags);
void cmd_eval(const RunConfig &config, Diagnostics &diags);

// Exit status: 0 clean, 1 finished with diagnostics, 2 fatal.
int run_cli(int argc, const char *const *argv, std::ostream &out,
            std::ostream &err);

}  // namespace quizmorph

#endif  // QUIZMORPH_CLI_H_
