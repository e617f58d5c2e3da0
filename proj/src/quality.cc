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

#include "quizmorph/quality.h"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "quizmorph/text_util.h"

namespace quizmorph {

namespace {

const std::unordered_set<std::string> kQuestionStarts = {
    "who",   "whom",  "whose", "what",   "which",  "where",  "when",
    "why",   "how",   "is",    "are",    "was",    "were",   "do",
    "does",  "did",   "can",   "could",  "will",   "would",  "should",
    "shall", "may",   "might", "must",   "has",    "have",   "had"};

const std::unordered_set<std::string> kBarePronouns = {
    "it", "its", "this", "these", "he", "she", "they"};

const std::unordered_set<std::string> kFunctionWords = {
    "a",     "an",    "the",   "and",   "or",    "but",   "nor",   "so",
    "yet",   "for",   "of",    "to",    "in",    "on",    "at",    "by",
    "with",  "from",  "as",    "into",  "about", "than",  "that",  "which",
    "who",   "whom",  "whose", "what",  "this",  "these", "those", "it",
    "its",   "he",    "she",   "they",  "his",   "her",   "their", "because",
    "although", "though", "while", "whereas", "if", "is",  "are",   "was",
    "were",  "be",    "been",  "being", "do",    "does",  "did"};

const std::unordered_set<std::string> kVerbs = {
    "is",      "are",      "was",     "were",     "be",      "been",
    "has",     "have",     "had",     "do",       "does",    "did",
    "can",     "could",    "will",    "would",    "should",  "may",
    "might",   "must",     "shall",   "make",     "makes",   "made",
    "write",   "writes",   "wrote",   "written",  "include", "includes",
    "contain", "contains", "flows",   "flow",     "lead",    "leads",
    "led",     "become",   "became",  "represents", "represent", "hosts",
    "meets",   "ends",     "says",    "said",     "found",   "known",
    "called",  "give",     "gives",   "gave",     "take",    "takes",
    "took",    "see",      "sees",    "saw",      "win",     "won",
    "lose",    "lost",     "fought",  "built",    "begin",   "began",
    "ruled",   "born",     "died",    "lies",     "runs",    "ran"};

bool is_verb(const std::string &w) {
  if (kVerbs.count(w)) return true;
  return w.size() > 4 && w.compare(w.size() - 2, 2, "ed") == 0;
}

}  // namespace

double heuristic_score(std::string_view text) {
  std::vector<std::string> tokens = split_whitespace(text);
  if (tokens.empty())
    throw std::invalid_argument("heuristic_score: empty question text");
  std::vector<std::string> lower;
  lower.reserve(tokens.size());
  for (const std::string &t : tokens) lower.push_back(to_lower(t));

  int tenths = 0;
  if (kQuestionStarts.count(lower.front())) tenths += 4;
  if (std::none_of(lower.begin(), lower.end(),
                   [](const std::string &w) { return kBarePronouns.count(w); }))
    tenths += 2;
  if (tokens.size() >= 5 && tokens.size() <= 30) tenths += 2;
  const std::string &last = lower.back();
  if (last == "?" || (is_word(last) && !kFunctionWords.count(last)))
    tenths += 1;
  if (std::any_of(lower.begin(), lower.end(), is_verb)) tenths += 1;
  return std::clamp(tenths / 10.0, 0.0, 1.0);
}

std::vector<double> HeuristicScorer::score(
    std::span<const std::string> texts) {
  std::vector<double> out;
  out.reserve(texts.size());
  for (const std::string &t : texts) out.push_back(heuristic_score(t));
  return out;
}

FilterResult filter_wellformed(std::span<const GeneratedQuestion> questions,
                               QualityScorer &scorer, double threshold,
                               std::size_t batch_size) {
  if (!(threshold >= 0.0 && threshold <= 1.0))
    throw Error("quality threshold must lie in [0, 1], got " +
                std::to_string(threshold));
  if (batch_size == 0) batch_size = 1;

  FilterResult result;
  result.report.reserve(questions.size());
  for (std::size_t begin = 0, batch = 0; begin < questions.size();
       begin += batch_size, ++batch) {
    std::size_t end = std::min(questions.size(), begin + batch_size);
    std::vector<std::string> texts;
    for (std::size_t i = begin; i < end; ++i)
      texts.push_back(questions[i].text);
    std::vector<double> scores;
    try {
      scores = scorer.score(texts);
    } catch (const std::exception &e) {
      throw Error("scorer failed on batch " + std::to_string(batch) +
                  " (questions " + std::to_string(begin) + ".." +
                  std::to_string(end - 1) + "): " + e.what());
    }
    if (scores.size() != texts.size())
      throw Error("scorer returned " + std::to_string(scores.size()) +
                  " scores for batch " + std::to_string(batch) + " of " +
                  std::to_string(texts.size()));
    for (std::size_t i = begin; i < end; ++i) {
      ScoredQuestion sq;
      sq.question = questions[i];
      sq.question.quality_score = std::clamp(scores[i - begin], 0.0, 1.0);
      sq.retained = *sq.question.quality_score > threshold;
      if (sq.retained) result.retained.push_back(sq.question);
      result.report.push_back(std::move(sq));
    }
  }
  return result;
}

}  // namespace quizmorph
