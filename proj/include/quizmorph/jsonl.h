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

#ifndef QUIZMORPH_JSONL_H_
#define QUIZMORPH_JSONL_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "quizmorph/error.h"

namespace quizmorph {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

inline constexpr std::string_view kToolName = "quizmorph";
inline constexpr std::string_view kToolVersion = "0.3.0";

struct JsonLine {
  int line = 0;  // 1-based
  Json value;
};

// Reads a JSON Lines file. Blank lines and "_meta" header lines are skipped;
// lines that fail to parse or are not objects become diagnostics.
// Throws Error when the file cannot be opened.
std::vector<JsonLine> read_jsonl(const std::filesystem::path &path,
                                 Diagnostics &diags);
std::vector<JsonLine> read_jsonl(std::istream &in, std::string_view name,
                                 Diagnostics &diags);

std::string read_file(const std::filesystem::path &path);

// Writes through a sibling temp file and renames over the target.
void write_file_atomic(const std::filesystem::path &path,
                       std::string_view content);

// Provenance header placed first in every JSON Lines output.
std::string meta_line(std::string_view kind, std::string_view config_hash,
                      std::string_view rules_hash);

}  // namespace quizmorph

#endif  // QUIZMORPH_JSONL_H_
