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

#ifndef QUIZMORPH_TRANSFORM_H_
#define QUIZMORPH_TRANSFORM_H_

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "quizmorph/annotation.h"
#include "quizmorph/error.h"
#include "quizmorph/ingest.h"

namespace quizmorph {

enum class BoundaryCause { Advcl, ConjCC, Whole };
std::string_view to_string(BoundaryCause cause);

// A contiguous run of one sentence's tokens. The first split of a sentence
// takes the cause of the boundary that ends it; every later split takes the
// cause of the boundary that starts it.
struct ClauseSplit {
  std::vector<Token> tokens;
  int sentence_index = 0;
  int split_index = 0;
  BoundaryCause cause = BoundaryCause::Whole;
  // Coordinating conjunction dropped in front of this split. It is put back
  // if the split is merged into its predecessor.
  std::optional<Token> boundary;

  std::string text() const;
  std::size_t word_count() const;
};

enum class WhClass { Who, Which, What };
std::string_view to_string(WhClass wh);
std::optional<WhClass> parse_wh_class(std::string_view name);

// "who is the", "which are the", ...
std::string wh_phrase(WhClass wh, bool plural);

// Noun lemma -> wh-word table used by the last-sentence template.
class WhVocabulary {
 public:
  // The table that ships with the tool (also in data/wh_vocabulary.tsv).
  static WhVocabulary builtin();

  // One `lemma<TAB>who|which|what` per line; `#` starts a comment.
  // Throws Error on malformed lines or a lemma listed with two classes.
  static WhVocabulary parse(std::istream &in, std::string_view name);
  static WhVocabulary load(const std::filesystem::path &path);

  // Throws Error when the lemma is already mapped to a different class.
  void add(std::string lemma, WhClass wh);
  std::optional<WhClass> find(std::string_view lemma) const;

  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, WhClass, std::less<>> &entries() const {
    return entries_;
  }
  std::string serialize() const;

 private:
  std::map<std::string, WhClass, std::less<>> entries_;
};

// Exact lookup; unknown nouns fall back to What.
WhClass wh_class_for_noun(std::string_view head_lemma,
                          const WhVocabulary &vocab);

// Crude English noun lemma: "countries" -> "country", "events" -> "event".
std::string noun_lemma(std::string_view word);

// A new split starts at the leftmost token of every `advcl` subtree and of
// every `conj` subtree. A `cc` token at (or just before) a conj boundary
// belongs to neither side.
std::vector<ClauseSplit> split_clauses(const SentenceAnnotation &sentence);

struct CorefOptions {
  bool intra_sentence_only = false;
};

// Replaces pronoun-only cluster mentions with the cluster representative
// when the representative lies outside the split. Possessives become
// "<representative> 's".
std::vector<ClauseSplit> resolve_pronouns(
    std::vector<ClauseSplit> splits, std::span<const CorefCluster> clusters,
    std::span<const SentenceAnnotation> sentences,
    const CorefOptions &options = {});

// Folds splits with fewer than `min_words` words into their predecessor
// (the first split folds into its successor).
std::vector<ClauseSplit> merge_short_splits(std::vector<ClauseSplit> splits,
                                            std::size_t min_words = 8);

class DegenerateSplit : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Words that may not end a generated question.
std::span<const std::string_view> disallowed_final_words();

// Strips trailing punctuation and disallowed final words, keeping a
// terminal "?". Throws DegenerateSplit when nothing is left.
std::string clean_split(std::string_view text);
void clean_tokens(std::vector<Token> &tokens);

// Bag-of-words question rewrite for clues outside the final sentence.
std::string rewrite_nonlast(std::string_view text);
void rewrite_nonlast_tokens(std::vector<Token> &tokens);

// "For 10 points , name this author" -> "who is the author ?". Falls back
// to rewrite_nonlast when the template is absent.
std::string rewrite_last(std::string_view text, const WhVocabulary &vocab);
void rewrite_last_tokens(std::vector<Token> &tokens, const WhVocabulary &vocab);

struct GenerationOptions {
  bool last_sentence_only = false;
  std::size_t min_words = 8;
  CorefOptions coref;
};

struct GeneratedQuestion {
  std::string id;
  std::string text;
  std::string source_id;
  int sentence_index = 0;
  int split_index = 0;
  bool is_last_sentence = false;
  std::string answer;
  Split split = Split::Unsplit;
  std::optional<double> quality_score;
};

// The full clue-to-question pipeline for one trivia question.
std::vector<GeneratedQuestion> generate_nq_like(
    const RawQuestion &question,
    std::span<const SentenceAnnotation> sentences,
    std::span<const CorefCluster> clusters, const WhVocabulary &vocab,
    const GenerationOptions &options = {}, Diagnostics *diags = nullptr);

// Hash over every frozen rule table, recorded in output headers.
std::string rules_fingerprint(const WhVocabulary &vocab);

}  // namespace quizmorph

#endif  // QUIZMORPH_TRANSFORM_H_
