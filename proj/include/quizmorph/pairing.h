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

#ifndef QUIZMORPH_PAIRING_H_
#define QUIZMORPH_PAIRING_H_

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "quizmorph/error.h"
#include "quizmorph/ingest.h"

namespace quizmorph {

enum class ProviderKind { Lexical, Sidecar };
std::string_view to_string(ProviderKind kind);

struct QuestionPair {
  std::string qb_id;
  std::string nq_id;
  std::string normalized_answer;
  double similarity = 0.0;  // cosine, in [-1, 1]
  ProviderKind provider = ProviderKind::Lexical;
};

using Embedding = std::vector<double>;

// Maps texts to equal-dimension vectors.
class SimilarityProvider {
 public:
  virtual ~SimilarityProvider() = default;

  // Called once with every text of a pairing run before any embed() call.
  virtual void prepare(std::span<const std::string> corpus) { (void)corpus; }

  virtual std::vector<Embedding> embed(std::span<const std::string> texts) = 0;
  virtual ProviderKind kind() const = 0;
};

// TF-IDF over lowercased alphanumeric unigrams. Document frequencies come
// from the corpus given to prepare(), or from the embed() batch itself when
// prepare() was never called. idf = ln((1 + N) / (1 + df)) + 1.
class LexicalProvider : public SimilarityProvider {
 public:
  void prepare(std::span<const std::string> corpus) override;
  std::vector<Embedding> embed(std::span<const std::string> texts) override;
  ProviderKind kind() const override { return ProviderKind::Lexical; }

  static std::vector<std::string> terms(std::string_view text);

 private:
  void fit(std::span<const std::string> corpus);

  bool fitted_ = false;
  std::unordered_map<std::string, std::size_t> vocab_;
  std::vector<double> idf_;
};

class UndefinedSimilarity : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Final sentence of a paragraph as cut by split_sentences().
std::string last_sentence(std::string_view text);

// Cosine similarity clamped to [-1, 1]. Throws UndefinedSimilarity for a
// zero vector and std::invalid_argument for mismatched dimensions.
double cosine(std::span<const double> u, std::span<const double> v);

struct PairingOptions {
  double threshold = 0.5;
  std::size_t batch_size = 64;
};

// Similarity of every candidate: last sentence of the trivia question
// against the natural question. Pairs whose similarity is undefined are
// reported and left out. Provider failures throw Error naming the batch.
std::vector<QuestionPair> score_pairs(std::span<const CandidatePair> pairs,
                                      std::span<const RawQuestion> qb,
                                      std::span<const RawQuestion> nq,
                                      SimilarityProvider &provider,
                                      std::size_t batch_size = 64,
                                      Diagnostics *diags = nullptr);

// Keeps pairs with similarity >= threshold, in input order.
std::vector<QuestionPair> apply_threshold(std::span<const QuestionPair> scored,
                                          double threshold);

std::vector<QuestionPair> filter_pairs(std::span<const CandidatePair> pairs,
                                       std::span<const RawQuestion> qb,
                                       std::span<const RawQuestion> nq,
                                       SimilarityProvider &provider,
                                       const PairingOptions &options = {},
                                       Diagnostics *diags = nullptr);

}  // namespace quizmorph

#endif  // QUIZMORPH_PAIRING_H_
