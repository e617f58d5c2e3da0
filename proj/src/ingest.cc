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

#include "quizmorph/ingest.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <unordered_set>

#include "quizmorph/jsonl.h"
#include "quizmorph/text_util.h"

namespace quizmorph {

std::string_view to_string(Source source) {
  switch (source) {
    case Source::TriviaQB: return "qb";
    case Source::NaturalNQ: return "nq";
  }
  return "qb";
}

std::string_view to_string(Split split) {
  switch (split) {
    case Split::Train: return "train";
    case Split::Dev: return "dev";
    case Split::Test: return "test";
    case Split::Unsplit: return "unsplit";
  }
  return "unsplit";
}

std::optional<Split> parse_split(std::string_view name) {
  std::string lower = to_lower(trim(name));
  if (lower == "train") return Split::Train;
  if (lower == "dev") return Split::Dev;
  if (lower == "test") return Split::Test;
  return std::nullopt;
}

Dataset parse_dataset(std::istream &in, std::string_view name, Source source) {
  Dataset ds;
  std::vector<JsonLine> lines = read_jsonl(in, name, ds.diagnostics);
  std::unordered_set<std::string> seen;
  const std::string file(name);
  for (JsonLine &jl : lines) {
    const Json &v = jl.value;
    auto field = [&](const char *key) -> std::optional<std::string> {
      auto it = v.find(key);
      if (it == v.end() || !it->is_string()) return std::nullopt;
      return it->get<std::string>();
    };
    std::optional<std::string> id = field("id");
    std::optional<std::string> question = field("question");
    std::optional<std::string> answer = field("answer");
    if (!id || trim(*id).empty()) {
      ds.diagnostics.warn(file, jl.line, "missing or empty `id`");
      continue;
    }
    if (!question || trim(*question).empty()) {
      ds.diagnostics.warn(file, jl.line, "missing or empty `question`");
      continue;
    }
    if (!answer || trim(*answer).empty()) {
      ds.diagnostics.warn(file, jl.line, "missing or empty `answer`");
      continue;
    }
    RawQuestion q;
    q.id = *id;
    q.text = *question;
    q.answer = *answer;
    q.source = source;
    if (auto it = v.find("split"); it != v.end() && !it->is_null()) {
      std::optional<Split> split =
          it->is_string() ? parse_split(it->get<std::string>()) : std::nullopt;
      if (split) {
        q.split = *split;
      } else {
        ds.diagnostics.warn(file, jl.line, "unknown split label; using unsplit");
      }
    }
    if (!seen.insert(q.id).second)
      throw Error(file + ":" + std::to_string(jl.line) + ": duplicate id '" +
                  q.id + "'");
    ds.records.push_back(std::move(q));
  }
  return ds;
}

Dataset load_dataset(const std::filesystem::path &path, Source source) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open dataset " + path.string());
  return parse_dataset(in, path.string(), source);
}

namespace {

bool is_outer_strippable(std::string_view s, std::size_t pos,
                         std::size_t *len) {
  static constexpr std::string_view kMultiByte[] = {"“", "”", "‘", "’", "«",
                                                    "»"};
  static constexpr std::string_view kAscii = "\"'`()[]{},;:!?";
  if (kAscii.find(s[pos]) != std::string_view::npos) {
    *len = 1;
    return true;
  }
  for (std::string_view m : kMultiByte) {
    if (s.substr(pos, m.size()) == m) {
      *len = m.size();
      return true;
    }
  }
  return false;
}

bool strippable_suffix(std::string_view s, std::size_t *len) {
  if (s.empty()) return false;
  // Multi-byte marks are 2 or 3 bytes; try the longest first.
  for (std::size_t n : {std::size_t{3}, std::size_t{2}, std::size_t{1}}) {
    if (s.size() < n) continue;
    std::size_t l = 0;
    if (is_outer_strippable(s, s.size() - n, &l) && l == n) {
      *len = n;
      return true;
    }
  }
  return false;
}

std::string strip_outer(std::string_view s) {
  bool changed = true;
  while (changed && !s.empty()) {
    changed = false;
    std::size_t len = 0;
    if (is_outer_strippable(s, 0, &len)) {
      s.remove_prefix(len);
      changed = true;
    }
    if (strippable_suffix(s, &len)) {
      s.remove_suffix(len);
      changed = true;
    }
    s = trim(s);
  }
  return std::string(s);
}

}  // namespace

std::string normalize_answer_lenient(std::string_view text) {
  std::string s = collapse_whitespace(to_lower(text));
  s = strip_outer(s);
  for (std::string_view article : {"the ", "an ", "a "}) {
    if (s.size() > article.size() && s.compare(0, article.size(), article) == 0) {
      s = strip_outer(trim(std::string_view(s).substr(article.size())));
      break;
    }
  }
  return s;
}

std::string normalize_answer(std::string_view text) {
  std::string s = normalize_answer_lenient(text);
  if (s.empty())
    throw UnusableAnswer("answer '" + std::string(text) +
                         "' is empty after normalization");
  return s;
}

std::vector<CandidatePair> pair_by_answer(std::span<const RawQuestion> qb,
                                          std::span<const RawQuestion> nq,
                                          Diagnostics *diags) {
  auto group = [&](std::span<const RawQuestion> records) {
    std::map<std::string, std::vector<std::string>> by_answer;
    for (const RawQuestion &q : records) {
      std::string key = normalize_answer_lenient(q.answer);
      if (key.empty()) {
        if (diags)
          diags->warn(std::string(to_string(q.source)) + ":" + q.id,
                      0, "answer is unusable after normalization; skipped");
        continue;
      }
      by_answer[key].push_back(q.id);
    }
    for (auto &[key, ids] : by_answer) std::sort(ids.begin(), ids.end());
    return by_answer;
  };
  auto qb_groups = group(qb);
  auto nq_groups = group(nq);

  std::vector<CandidatePair> out;
  for (const auto &[answer, qb_ids] : qb_groups) {
    auto it = nq_groups.find(answer);
    if (it == nq_groups.end()) continue;
    for (const std::string &q : qb_ids)
      for (const std::string &n : it->second) out.push_back({q, n, answer});
  }
  return out;
}

}  // namespace quizmorph
