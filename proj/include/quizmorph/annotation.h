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

#ifndef QUIZMORPH_ANNOTATION_H_
#define QUIZMORPH_ANNOTATION_H_

#include <filesystem>
#include <istream>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quizmorph/error.h"

namespace quizmorph {

// One token of a dependency-annotated sentence.
struct Token {
  int index = 0;  // 0-based position in its sentence
  std::string surface;
  std::string upos;
  int head = -1;  // -1 marks the root
  std::string deprel;
  std::string misc = "_";
  int cluster = -1;  // index into the question's clusters, -1 if none

  friend bool operator==(const Token &, const Token &) = default;
};

struct SentenceAnnotation {
  int sentence_index = 0;
  std::vector<Token> tokens;
  std::string text;

  friend bool operator==(const SentenceAnnotation &,
                         const SentenceAnnotation &) = default;
};

// [start, end) token span inside one sentence of a question.
struct MentionSpan {
  int sentence = 0;
  int start = 0;
  int end = 0;

  bool contains(int sent, int token) const {
    return sent == sentence && token >= start && token < end;
  }
  friend bool operator==(const MentionSpan &, const MentionSpan &) = default;
  friend auto operator<=>(const MentionSpan &, const MentionSpan &) = default;
};

struct CorefCluster {
  std::string id;
  std::vector<MentionSpan> mentions;  // ordered by position
  MentionSpan representative;

  friend bool operator==(const CorefCluster &, const CorefCluster &) = default;
};

struct AnnotatedQuestion {
  std::vector<SentenceAnnotation> sentences;
  std::vector<CorefCluster> clusters;

  friend bool operator==(const AnnotatedQuestion &,
                         const AnnotatedQuestion &) = default;
};

struct AnnotationSet {
  std::map<std::string, AnnotatedQuestion> questions;
  Diagnostics diagnostics;
};

// A sentence as cut from a paragraph: `text` is the exact source slice,
// `tokens` its word/punctuation tokenization.
struct Sentence {
  std::string text;
  std::vector<std::string> tokens;

  std::string tokenized() const;
};

// Whitespace-and-punctuation tokenizer. Splits clause punctuation, quotes,
// brackets and the possessive "'s"; keeps periods on abbreviations and
// single-letter initials ("k.", "St.", "U.S.").
std::vector<std::string> tokenize(std::string_view text);

// Sentence boundaries fall after ". ? !" followed by a capitalized
// continuation. An abbreviation period ends a sentence only when a closing
// quote follows it and the next word is capitalized ('"k." For ...').
std::vector<Sentence> split_sentences(std::string_view text);

AnnotationSet parse_annotations(const std::filesystem::path &path);
AnnotationSet parse_annotations(std::istream &in, std::string_view name);

// Inverse of parse_annotations; misc columns get their Coref/CorefRep keys
// regenerated from the clusters.
std::string serialize_annotations(
    const std::map<std::string, AnnotatedQuestion> &questions);

// Crude closed-class annotator for fixtures and smoke runs: flat heads onto
// the first token, `cc`/`conj` around coordinating conjunctions, no `advcl`.
SentenceAnnotation heuristic_annotate(std::string_view sentence,
                                      int sentence_index = 0);
AnnotatedQuestion heuristic_annotate_question(std::string_view text);

// Empty string when the sentence satisfies the token invariants, otherwise
// a description of the first violation.
std::string validate_sentence(const SentenceAnnotation &sentence);

bool is_pronoun_word(std::string_view word);
bool is_possessive_pronoun(std::string_view word);
bool is_pronoun(const Token &token);

// Earliest mention that is not purely pronominal, longest on ties.
// Returns false when every mention is pronominal.
bool choose_representative(std::span<const MentionSpan> mentions,
                           std::span<const SentenceAnnotation> sentences,
                           MentionSpan *out);

}  // namespace quizmorph

#endif  // QUIZMORPH_ANNOTATION_H_
