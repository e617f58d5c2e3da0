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

#include "quizmorph/metrics.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <stdexcept>

#include "quizmorph/ingest.h"
#include "quizmorph/text_util.h"

namespace quizmorph {

namespace {

constexpr int kMaxOrder = 4;

using NgramCounts = std::map<std::vector<std::string>, std::size_t>;

NgramCounts ngrams(const std::vector<std::string> &tokens, int n) {
  NgramCounts out;
  if (tokens.size() < static_cast<std::size_t>(n)) return out;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i)
    ++out[std::vector<std::string>(tokens.begin() + i, tokens.begin() + i + n)];
  return out;
}

std::vector<std::string> answer_tokens(std::string_view text) {
  return split_whitespace(normalize_answer_lenient(text));
}

TokenPRF prf_single(const std::vector<std::string> &pred,
                    const std::vector<std::string> &ref) {
  if (pred.empty() || ref.empty()) {
    double v = pred.empty() && ref.empty() ? 1.0 : 0.0;
    return {v, v, v};
  }
  std::map<std::string, std::size_t> bag;
  for (const std::string &t : ref) ++bag[t];
  std::size_t overlap = 0;
  for (const std::string &t : pred) {
    auto it = bag.find(t);
    if (it != bag.end() && it->second > 0) {
      --it->second;
      ++overlap;
    }
  }
  if (overlap == 0) return {};
  TokenPRF r;
  r.precision = static_cast<double>(overlap) / static_cast<double>(pred.size());
  r.recall = static_cast<double>(overlap) / static_cast<double>(ref.size());
  r.f1 = 2.0 * r.precision * r.recall / (r.precision + r.recall);
  return r;
}

}  // namespace

int exact_match(std::string_view prediction,
                std::span<const std::string> references) {
  const std::string pred = normalize_answer_lenient(prediction);
  for (const std::string &ref : references)
    if (normalize_answer_lenient(ref) == pred) return 1;
  return 0;
}

TokenPRF token_prf(std::string_view prediction,
                   std::span<const std::string> references) {
  const std::vector<std::string> pred = answer_tokens(prediction);
  TokenPRF best;
  bool first = true;
  for (const std::string &ref : references) {
    TokenPRF r = prf_single(pred, answer_tokens(ref));
    if (first || r.f1 > best.f1) best = r;
    first = false;
  }
  return best;
}

std::vector<std::string> bleu_tokenize(std::string_view text) {
  std::string spaced;
  spaced.reserve(text.size() * 2);
  for (char c : text) {
    auto u = static_cast<unsigned char>(c);
    if (u < 0x80 && std::ispunct(u)) {
      spaced.push_back(' ');
      spaced.push_back(c);
      spaced.push_back(' ');
    } else {
      spaced.push_back(u < 0x80 ? static_cast<char>(std::tolower(u)) : c);
    }
  }
  return split_whitespace(spaced);
}

BleuResult corpus_bleu(std::span<const std::string> predictions,
                       std::span<const std::vector<std::string>> references) {
  if (predictions.size() != references.size())
    throw std::invalid_argument(
        "corpus_bleu: " + std::to_string(predictions.size()) +
        " predictions but " + std::to_string(references.size()) +
        " reference sets");
  if (predictions.empty())
    throw std::invalid_argument("corpus_bleu: empty corpus");

  BleuResult r;
  std::array<std::size_t, kMaxOrder> ref_totals{};
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    if (references[i].empty())
      throw std::invalid_argument("corpus_bleu: record " + std::to_string(i) +
                                  " has no reference");
    const std::vector<std::string> hyp = bleu_tokenize(predictions[i]);
    std::vector<std::vector<std::string>> refs;
    for (const std::string &ref : references[i])
      refs.push_back(bleu_tokenize(ref));

    // Closest reference length; ties go to the shorter one.
    std::size_t closest = refs.front().size();
    for (const auto &ref : refs) {
      auto diff = [&](std::size_t len) {
        return len > hyp.size() ? len - hyp.size() : hyp.size() - len;
      };
      if (diff(ref.size()) < diff(closest) ||
          (diff(ref.size()) == diff(closest) && ref.size() < closest))
        closest = ref.size();
    }
    r.hyp_len += hyp.size();
    r.ref_len += closest;
    for (int n = 1; n <= kMaxOrder; ++n)
      if (closest >= static_cast<std::size_t>(n)) ref_totals[n - 1] += closest - n + 1;

    for (int n = 1; n <= kMaxOrder; ++n) {
      NgramCounts hyp_counts = ngrams(hyp, n);
      NgramCounts max_ref;
      for (const auto &ref : refs)
        for (const auto &[gram, count] : ngrams(ref, n))
          max_ref[gram] = std::max(max_ref[gram], count);
      for (const auto &[gram, count] : hyp_counts) {
        auto it = max_ref.find(gram);
        if (it != max_ref.end()) r.matches[n - 1] += std::min(count, it->second);
      }
      if (hyp.size() >= static_cast<std::size_t>(n))
        r.totals[n - 1] += hyp.size() - n + 1;
    }
  }

  if (r.hyp_len == 0 || r.matches[0] == 0) return r;

  double smooth = 1.0;
  double log_sum = 0.0;
  for (int n = 0; n < kMaxOrder; ++n) {
    double p;
    if (r.totals[n] == 0 && ref_totals[n] == 0) {
      p = 1.0;  // neither side is long enough for this order
    } else if (r.matches[n] == 0) {
      smooth *= 2.0;
      p = 1.0 / (smooth * static_cast<double>(r.hyp_len));
    } else {
      p = static_cast<double>(r.matches[n]) / static_cast<double>(r.totals[n]);
    }
    r.precisions[n] = 100.0 * p;
    log_sum += std::log(p);
  }
  r.brevity_penalty =
      r.hyp_len < r.ref_len
          ? std::exp(1.0 - static_cast<double>(r.ref_len) /
                               static_cast<double>(r.hyp_len))
          : 1.0;
  r.score = std::clamp(
      100.0 * r.brevity_penalty * std::exp(log_sum / kMaxOrder), 0.0, 100.0);
  return r;
}

BleuResult corpus_bleu(std::span<const std::string> predictions,
                       std::span<const std::string> references) {
  std::vector<std::vector<std::string>> refs;
  refs.reserve(references.size());
  for (const std::string &r : references) refs.push_back({r});
  return corpus_bleu(predictions, refs);
}

std::string_view bleu_signature() {
  return "nrefs:var|order:1-4|smooth:exp|vacuous:1|tok:lower+punct|bp:closest";
}

EvalReport evaluate(std::span<const EvalRecord> records) {
  EvalReport rep;
  rep.count = records.size();
  if (records.empty()) return rep;
  std::vector<std::string> preds;
  std::vector<std::vector<std::string>> refs;
  for (const EvalRecord &rec : records) {
    if (rec.references.empty())
      throw std::invalid_argument("record " + rec.id + " has no references");
    rep.accuracy += exact_match(rec.prediction, rec.references);
    TokenPRF prf = token_prf(rec.prediction, rec.references);
    rep.precision += prf.precision;
    rep.recall += prf.recall;
    rep.f1 += prf.f1;
    preds.push_back(rec.prediction);
    refs.push_back(rec.references);
  }
  const double n = static_cast<double>(records.size());
  rep.accuracy /= n;
  rep.precision /= n;
  rep.recall /= n;
  rep.f1 /= n;
  rep.bleu = corpus_bleu(preds, refs);
  return rep;
}

}  // namespace quizmorph
