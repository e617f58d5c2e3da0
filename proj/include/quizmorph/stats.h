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

#ifndef QUIZMORPH_STATS_H_
#define QUIZMORPH_STATS_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "quizmorph/error.h"
#include "quizmorph/ingest.h"
#include "quizmorph/transform.h"

namespace quizmorph {

struct SentenceCountSummary {
  std::size_t sample_count = 0;
  double mean = 0.0;
  double median = 0.0;
  double mode = 0.0;  // smallest of the most frequent values
};

// Throws std::invalid_argument on an empty input.
SentenceCountSummary summarize_counts(std::span<const std::size_t> counts);

// Sentence counts come from split_sentences().
SentenceCountSummary sentence_count_stats(std::span<const std::string> texts);

struct SplitCounts {
  std::size_t train = 0;
  std::size_t dev = 0;
  std::size_t test = 0;
  std::size_t unsplit = 0;
  std::size_t total() const { return train + dev + test + unsplit; }
  friend bool operator==(const SplitCounts &, const SplitCounts &) = default;
};

// Unlabelled records are counted as unsplit and reported once each.
SplitCounts split_summary(std::span<const RawQuestion> records,
                          Diagnostics *diags = nullptr);
SplitCounts split_summary(std::span<const GeneratedQuestion> records,
                          Diagnostics *diags = nullptr);

struct StatsRow {
  std::string label;
  SentenceCountSummary summary;
};

// Aligned "Data Size  Mean  Median  Mode" table.
std::string format_stats_table(std::span<const StatsRow> rows);
std::string format_split_table(const SplitCounts &counts);

}  // namespace quizmorph

#endif  // QUIZMORPH_STATS_H_
