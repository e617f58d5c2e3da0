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

#include "quizmorph/stats.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "quizmorph/annotation.h"

namespace quizmorph {

SentenceCountSummary summarize_counts(std::span<const std::size_t> counts) {
  if (counts.empty())
    throw std::invalid_argument("sentence statistics need at least one question");
  std::vector<std::size_t> sorted(counts.begin(), counts.end());
  std::sort(sorted.begin(), sorted.end());

  SentenceCountSummary s;
  s.sample_count = sorted.size();
  double sum = 0.0;
  for (std::size_t c : sorted) sum += static_cast<double>(c);
  s.mean = sum / static_cast<double>(sorted.size());
  const std::size_t mid = sorted.size() / 2;
  s.median = sorted.size() % 2 == 1
                 ? static_cast<double>(sorted[mid])
                 : (static_cast<double>(sorted[mid - 1]) +
                    static_cast<double>(sorted[mid])) / 2.0;

  // Sorted input: the first run of maximal length is the smallest mode.
  std::size_t best = sorted.front(), best_run = 0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    if (j - i > best_run) {
      best_run = j - i;
      best = sorted[i];
    }
    i = j;
  }
  s.mode = static_cast<double>(best);
  return s;
}

SentenceCountSummary sentence_count_stats(std::span<const std::string> texts) {
  std::vector<std::size_t> counts;
  counts.reserve(texts.size());
  for (const std::string &t : texts) counts.push_back(split_sentences(t).size());
  return summarize_counts(counts);
}

namespace {

template <typename Record>
SplitCounts count_splits(std::span<const Record> records, Diagnostics *diags,
                         auto id_of) {
  SplitCounts c;
  for (const Record &r : records) {
    switch (r.split) {
      case Split::Train: ++c.train; break;
      case Split::Dev: ++c.dev; break;
      case Split::Test: ++c.test; break;
      case Split::Unsplit:
        ++c.unsplit;
        if (diags) diags->warn("record " + id_of(r) + " has no split label");
        break;
    }
  }
  return c;
}

}  // namespace

SplitCounts split_summary(std::span<const RawQuestion> records,
                          Diagnostics *diags) {
  return count_splits(records, diags,
                      [](const RawQuestion &r) { return r.id; });
}

SplitCounts split_summary(std::span<const GeneratedQuestion> records,
                          Diagnostics *diags) {
  return count_splits(records, diags,
                      [](const GeneratedQuestion &r) { return r.id; });
}

std::string format_stats_table(std::span<const StatsRow> rows) {
  std::size_t width = 7;
  for (const StatsRow &r : rows) width = std::max(width, r.label.size());
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-*s  %9s  %6s  %6s  %6s\n",
                static_cast<int>(width), "Dataset", "Data Size", "Mean",
                "Median", "Mode");
  out += buf;
  for (const StatsRow &r : rows) {
    std::snprintf(buf, sizeof buf, "%-*s  %9zu  %6.1f  %6.1f  %6.1f\n",
                  static_cast<int>(width), r.label.c_str(),
                  r.summary.sample_count, r.summary.mean, r.summary.median,
                  r.summary.mode);
    out += buf;
  }
  return out;
}

std::string format_split_table(const SplitCounts &c) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%-7s  %5s\n%-7s  %5zu\n%-7s  %5zu\n%-7s  %5zu\n%-7s  %5zu\n"
                "%-7s  %5zu\n",
                "Split", "Count", "train", c.train, "dev", c.dev, "test",
                c.test, "unsplit", c.unsplit, "total", c.total());
  return buf;
}

}  // namespace quizmorph
