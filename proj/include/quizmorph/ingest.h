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

#ifndef QUIZMORPH_INGEST_H_
#define QUIZMORPH_INGEST_H_

#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "quizmorph/error.h"

namespace quizmorph {

enum class Source { TriviaQB, NaturalNQ };
enum class Split { Train, Dev, Test, Unsplit };

std::string_view to_string(Source source);
std::string_view to_string(Split split);
// Accepts "train", "dev", "test" (case-insensitive); nullopt otherwise.
std::optional<Split> parse_split(std::string_view name);

struct RawQuestion {
  std::string id;
  std::string text;
  std::string answer;
  Source source = Source::TriviaQB;
  Split split = Split::Unsplit;
};

struct CandidatePair {
  std::string qb_id;
  std::string nq_id;
  std::string normalized_answer;

  friend bool operator==(const CandidatePair &, const CandidatePair &) = default;
};

struct Dataset {
  std::vector<RawQuestion> records;
  Diagnostics diagnostics;
};

// Loads a JSON Lines file of {id, question, answer[, split]} records in file
// order. Malformed lines are reported in `diagnostics`; I/O failure and
// duplicate ids throw Error.
Dataset load_dataset(const std::filesystem::path &path, Source source);
Dataset parse_dataset(std::istream &in, std::string_view name, Source source);

class UnusableAnswer : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Canonical answer form used for exact matching: lowercase, trimmed,
// whitespace collapsed, outer quotes/brackets and clause punctuation removed
// (periods are kept, so "K." stays "k."), one leading article dropped.
// Throws UnusableAnswer when nothing is left.
std::string normalize_answer(std::string_view text);

// Same rules, but returns "" instead of throwing.
std::string normalize_answer_lenient(std::string_view text);

// Cross product of records sharing a normalized answer, ordered by
// (answer, qb id, nq id). Records whose answers normalize to nothing are
// skipped and reported through `diags` when given.
std::vector<CandidatePair> pair_by_answer(std::span<const RawQuestion> qb,
                                          std::span<const RawQuestion> nq,
                                          Diagnostics *diags = nullptr);

}  // namespace quizmorph

#endif  // QUIZMORPH_INGEST_H_
