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

#include "quizmorph/pairing.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <unordered_set>

#include "quizmorph/annotation.h"
#include "quizmorph/text_util.h"

namespace quizmorph {

std::string_view to_string(ProviderKind kind) {
  return kind == ProviderKind::Lexical ? "lexical" : "sidecar";
}

std::vector<std::string> LexicalProvider::terms(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    auto u = static_cast<unsigned char>(c);
    if (u >= 0x80 || std::isalnum(u)) {
      cur.push_back(u < 0x80 ? static_cast<char>(std::tolower(u)) : c);
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

void LexicalProvider::fit(std::span<const std::string> corpus) {
  vocab_.clear();
  std::vector<std::size_t> df;
  for (const std::string &doc : corpus) {
    std::unordered_set<std::string> seen;
    for (std::string &t : terms(doc)) {
      if (!seen.insert(t).second) continue;
      auto [it, inserted] = vocab_.try_emplace(t, df.size());
      if (inserted) df.push_back(0);
      ++df[it->second];
    }
  }
  const double n = static_cast<double>(corpus.size());
  idf_.assign(df.size(), 0.0);
  for (std::size_t i = 0; i < df.size(); ++i)
    idf_[i] = std::log((1.0 + n) / (1.0 + static_cast<double>(df[i]))) + 1.0;
  fitted_ = true;
}

void LexicalProvider::prepare(std::span<const std::string> corpus) {
  fit(corpus);
}

std::vector<Embedding> LexicalProvider::embed(
    std::span<const std::string> texts) {
  if (!fitted_) fit(texts);
  std::vector<Embedding> out;
  out.reserve(texts.size());
  for (const std::string &text : texts) {
    Embedding v(vocab_.size(), 0.0);
    for (const std::string &t : terms(text)) {
      auto it = vocab_.find(t);
      if (it != vocab_.end()) v[it->second] += idf_[it->second];
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::string last_sentence(std::string_view text) {
  std::vector<Sentence> sentences = split_sentences(text);
  if (sentences.empty())
    throw std::invalid_argument("text has no sentences");
  return sentences.back().text;
}

double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size())
    throw std::invalid_argument("cosine: dimension mismatch");
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  if (nu == 0.0 || nv == 0.0)
    throw UndefinedSimilarity("cosine: zero vector");
  return std::clamp(dot / (std::sqrt(nu) * std::sqrt(nv)), -1.0, 1.0);
}

std::vector<QuestionPair> score_pairs(std::span<const CandidatePair> pairs,
                                      std::span<const RawQuestion> qb,
                                      std::span<const RawQuestion> nq,
                                      SimilarityProvider &provider,
                                      std::size_t batch_size,
                                      Diagnostics *diags) {
  if (batch_size == 0) throw std::invalid_argument("batch size must be > 0");
  std::unordered_map<std::string, const RawQuestion *> qb_by_id, nq_by_id;
  for (const RawQuestion &q : qb) qb_by_id.emplace(q.id, &q);
  for (const RawQuestion &q : nq) nq_by_id.emplace(q.id, &q);

  // Unique texts in first-use order; each pair references two of them.
  std::vector<std::string> texts;
  std::unordered_map<std::string, std::size_t> text_index;
  auto intern = [&](std::string text) {
    auto [it, inserted] = text_index.try_emplace(text, texts.size());
    if (inserted) texts.push_back(std::move(text));
    return it->second;
  };
  std::map<std::string, std::size_t> qb_text;  // qb id -> text slot
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  slots.reserve(pairs.size());
  for (const CandidatePair &p : pairs) {
    auto q = qb_by_id.find(p.qb_id);
    auto n = nq_by_id.find(p.nq_id);
    if (q == qb_by_id.end() || n == nq_by_id.end())
      throw Error("pair (" + p.qb_id + ", " + p.nq_id +
                  ") references an unknown record");
    auto cached = qb_text.find(p.qb_id);
    std::size_t qs = cached != qb_text.end()
                         ? cached->second
                         : (qb_text[p.qb_id] = intern(last_sentence(q->second->text)));
    std::size_t ns = intern(std::string(trim(n->second->text)));
    slots.emplace_back(qs, ns);
  }

  provider.prepare(texts);
  std::vector<Embedding> vectors;
  vectors.reserve(texts.size());
  std::size_t dim = 0;
  for (std::size_t start = 0; start < texts.size(); start += batch_size) {
    std::size_t count = std::min(batch_size, texts.size() - start);
    std::size_t batch = start / batch_size;
    std::vector<Embedding> got;
    try {
      got = provider.embed(std::span(texts).subspan(start, count));
    } catch (const std::exception &e) {
      throw Error("similarity provider failed on batch " +
                  std::to_string(batch) + " (texts " + std::to_string(start) +
                  ".." + std::to_string(start + count - 1) + "): " + e.what());
    }
    if (got.size() != count)
      throw Error("similarity provider returned " + std::to_string(got.size()) +
                  " vectors for " + std::to_string(count) + " texts in batch " +
                  std::to_string(batch));
    for (Embedding &v : got) {
      if (dim == 0) dim = v.size();
      if (v.empty() || v.size() != dim)
        throw Error("similarity provider returned inconsistent dimensions in "
                    "batch " + std::to_string(batch));
      vectors.push_back(std::move(v));
    }
  }

  std::vector<QuestionPair> out;
  out.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const CandidatePair &p = pairs[i];
    double sim = 0.0;
    try {
      sim = cosine(vectors[slots[i].first], vectors[slots[i].second]);
    } catch (const UndefinedSimilarity &) {
      if (diags)
        diags->warn("pair (" + p.qb_id + ", " + p.nq_id +
                    "): similarity undefined for an empty embedding; skipped");
      continue;
    }
    out.push_back({p.qb_id, p.nq_id, p.normalized_answer, sim,
                   provider.kind()});
  }
  return out;
}

std::vector<QuestionPair> apply_threshold(std::span<const QuestionPair> scored,
                                          double threshold) {
  if (!(threshold >= -1.0 && threshold <= 1.0))
    throw std::invalid_argument("pairing threshold must lie in [-1, 1]");
  std::vector<QuestionPair> out;
  for (const QuestionPair &p : scored)
    if (p.similarity >= threshold) out.push_back(p);
  return out;
}

std::vector<QuestionPair> filter_pairs(std::span<const CandidatePair> pairs,
                                       std::span<const RawQuestion> qb,
                                       std::span<const RawQuestion> nq,
                                       SimilarityProvider &provider,
                                       const PairingOptions &options,
                                       Diagnostics *diags) {
  if (!(options.threshold >= -1.0 && options.threshold <= 1.0))
    throw std::invalid_argument("pairing threshold must lie in [-1, 1]");
  std::vector<QuestionPair> scored =
      score_pairs(pairs, qb, nq, provider, options.batch_size, diags);
  return apply_threshold(scored, options.threshold);
}

}  // namespace quizmorph
