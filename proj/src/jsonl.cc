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

#include "quizmorph/jsonl.h"

#include <fstream>
#include <sstream>
#include <system_error>

#include "quizmorph/text_util.h"

namespace quizmorph {

std::vector<JsonLine> read_jsonl(std::istream &in, std::string_view name,
                                 Diagnostics &diags) {
  std::vector<JsonLine> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    Json value = Json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (value.is_discarded()) {
      diags.warn(std::string(name), lineno, "malformed JSON");
      continue;
    }
    if (!value.is_object()) {
      diags.warn(std::string(name), lineno, "expected a JSON object");
      continue;
    }
    if (value.contains("_meta")) continue;
    out.push_back({lineno, std::move(value)});
  }
  return out;
}

std::vector<JsonLine> read_jsonl(const std::filesystem::path &path,
                                 Diagnostics &diags) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return read_jsonl(in, path.string(), diags);
}

std::string read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path &path,
                       std::string_view content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw Error("cannot create directory " + path.parent_path().string());
  }
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Error("cannot rename " + tmp.string() + " to " + path.string());
}

std::string meta_line(std::string_view kind, std::string_view config_hash,
                      std::string_view rules_hash) {
  OrderedJson meta;
  meta["tool"] = kToolName;
  meta["version"] = kToolVersion;
  meta["kind"] = kind;
  meta["config_hash"] = config_hash;
  meta["rules_hash"] = rules_hash;
  OrderedJson line;
  line["_meta"] = std::move(meta);
  return line.dump();
}

}  // namespace quizmorph
