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

#ifndef QUIZMORPH_QUALITY_H_
#define QUIZMORPH_QUALITY_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quizmorph/transform.h"

namespace quizmorph {

// Maps question texts to well-formedness scores in [0, 1].
class QualityScorer {
 public:
  virtual ~QualityScorer() = default;
  virtual std::vector<double> score(std::span<const std::string> texts) = 0;
  virtual std::string_view name() const = 0;
};

// Additive rubric in tenths: wh-word or auxiliary first (4), no bare pronoun
// (2), 5 to 30 tokens (2), ends with "?" or a content word (1), has a verb
// (1). Throws std::invalid_argument on blank text.
double heuristic_score(std::string_view text);

class HeuristicScorer : public QualityScorer {
 public:
  std::vector<double> score(std::span<const std::string> texts) override;
  std::string_view name() const override { return "heuristic"; }
};

struct ScoredQuestion {
  GeneratedQuestion question;  // quality_score is set
  bool retained = false;
};

struct FilterResult {
  std::vector<GeneratedQuestion> retained;
  std::vector<ScoredQuestion> report;  // every input, in input order
};

// Keeps questions scoring strictly above `threshold`. Texts go to the scorer
// in batches of `batch_size`; a scorer failure throws Error naming the batch.
FilterResult filter_wellformed(std::span<const GeneratedQuestion> questions,
                               QualityScorer &scorer, double threshold = 0.5,
                               std::size_t batch_size = 64);

}  // namespace quizmorph

#endif  // QUIZMORPH_QUALITY_H_
