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

#ifndef QUIZMORPH_METRICS_H_
#define QUIZMORPH_METRICS_H_

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace quizmorph {

struct EvalRecord {
  std::string id;
  std::string prediction;
  std::vector<std::string> references;  // nonempty
};

// 1 when the leniently normalized prediction equals any normalized reference.
int exact_match(std::string_view prediction,
                std::span<const std::string> references);

struct TokenPRF {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Bag-of-token overlap against the best-F1 reference.
TokenPRF token_prf(std::string_view prediction,
                   std::span<const std::string> references);

// Lowercases, splits ASCII punctuation into separate tokens, then splits on
// whitespace.
std::vector<std::string> bleu_tokenize(std::string_view text);

struct BleuResult {
  double score = 0.0;  // [0, 100]
  std::array<double, 4> precisions{};  // smoothed, in [0, 100]
  std::array<std::size_t, 4> matches{};
  std::array<std::size_t, 4> totals{};
  double brevity_penalty = 1.0;
  std::size_t hyp_len = 0;
  std::size_t ref_len = 0;
};

// Corpus BLEU over orders 1-4 with exponential smoothing of zero counts and
// the closest-reference brevity penalty. An order that neither the
// hypotheses nor their closest references reach counts as precision 1. Throws std::invalid_argument when
// the inputs are empty or differ in length.
BleuResult corpus_bleu(std::span<const std::string> predictions,
                       std::span<const std::vector<std::string>> references);
BleuResult corpus_bleu(std::span<const std::string> predictions,
                       std::span<const std::string> references);

// Frozen BLEU configuration, printed in every report.
std::string_view bleu_signature();

struct EvalReport {
  std::size_t count = 0;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  BleuResult bleu;
};

// Unweighted means over records; BLEU sees every reference of a record.
EvalReport evaluate(std::span<const EvalRecord> records);

}  // namespace quizmorph

#endif  // QUIZMORPH_METRICS_H_
