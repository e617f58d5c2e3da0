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

#include "quizmorph/transform.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "quizmorph/text_util.h"

namespace quizmorph {

namespace {

constexpr std::string_view kDisallowedFinal[] = {
    "and",   "but",     "or",      "nor",    "so",       "yet",   "for",
    "because", "although", "though", "while", "whereas", "which", "that",
    "with",  "of",      "to",      "in",     "on",       "at",    "by"};

// Bag-of-words substitutions for non-final sentences.
struct Substitution {
  std::string_view from;
  std::string_view to;
};
constexpr Substitution kNonLastTable[] = {
    {"this", "which"}, {"these", "which"}, {"it", "what"}, {"its", "whose"}};

constexpr std::string_view kNameVerbs[] = {"name", "identify"};
constexpr std::string_view kQuicknessAdverbs[] = {"quickly", "briefly",
                                                  "simply"};
constexpr std::string_view kNumberWords[] = {
    "five", "ten", "fifteen", "twenty", "thirty"};

// Tokens that end the noun phrase after "name this".
const std::unordered_set<std::string> &np_stop_words() {
  static const std::unordered_set<std::string> kSet = {
      "of",    "in",    "on",    "at",    "by",    "for",   "with",  "from",
      "to",    "into",  "about", "after", "before", "during", "under", "over",
      "as",    "who",   "whom",  "whose", "which", "that",  "where", "when",
      "while", "and",   "or",    "but",   "nor",   "is",    "are",   "was",
      "were",  "has",   "have",  "had",   "'s",    "’s",    "the",   "a",
      "an",    "this",  "these", "its",   "his",   "her",   "their", "whom"};
  return kSet;
}

const std::unordered_set<std::string> &np_stop_upos() {
  static const std::unordered_set<std::string> kSet = {
      "VERB", "AUX", "ADP", "SCONJ", "CCONJ", "PRON", "DET", "PUNCT", "PART"};
  return kSet;
}

const std::unordered_map<std::string, std::string> &irregular_plurals() {
  static const std::unordered_map<std::string, std::string> kMap = {
      {"men", "man"},         {"women", "woman"}, {"children", "child"},
      {"people", "person"},   {"mice", "mouse"},  {"feet", "foot"},
      {"teeth", "tooth"},     {"geese", "goose"}, {"phenomena", "phenomenon"},
      {"criteria", "criterion"}};
  return kMap;
}

const std::unordered_set<std::string> &invariant_nouns() {
  static const std::unordered_set<std::string> kSet = {
      "species", "series", "news", "means", "sheep", "aircraft"};
  return kSet;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

bool contains(std::span<const std::string_view> set, std::string_view word) {
  return std::find(set.begin(), set.end(), word) != set.end();
}

bool is_number_token(std::string_view s) {
  if (s.empty()) return false;
  if (std::all_of(s.begin(), s.end(),
                  [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    return true;
  return contains(kNumberWords, to_lower(s));
}

Token make_token(std::string surface, std::string upos = "") {
  Token t;
  t.surface = std::move(surface);
  t.upos = std::move(upos);
  return t;
}

std::vector<Token> tokens_from_text(std::string_view text) {
  std::vector<Token> out;
  int index = 0;
  for (std::string &s : tokenize(text)) {
    Token t = make_token(std::move(s));
    t.index = index++;
    out.push_back(std::move(t));
  }
  return out;
}

std::string surface_text(std::span<const Token> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[i].surface;
  }
  return out;
}

std::string deprel_base(std::string_view deprel) {
  return to_lower(deprel.substr(0, deprel.find(':')));
}

bool is_plural_head(const Token &head) {
  if (head.misc.find("Number=Plur") != std::string::npos) return true;
  if (head.misc.find("Number=Sing") != std::string::npos) return false;
  return noun_lemma(head.surface) != to_lower(head.surface);
}

}  // namespace

// ---------------------------------------------------------------------------

std::string_view to_string(BoundaryCause cause) {
  switch (cause) {
    case BoundaryCause::Advcl: return "advcl";
    case BoundaryCause::ConjCC: return "conj";
    case BoundaryCause::Whole: return "whole";
  }
  return "whole";
}

std::string ClauseSplit::text() const { return surface_text(tokens); }

std::size_t ClauseSplit::word_count() const {
  std::size_t n = 0;
  for (const Token &t : tokens) n += is_word(t.surface) ? 1 : 0;
  return n;
}

std::string_view to_string(WhClass wh) {
  switch (wh) {
    case WhClass::Who: return "who";
    case WhClass::Which: return "which";
    case WhClass::What: return "what";
  }
  return "what";
}

std::optional<WhClass> parse_wh_class(std::string_view name) {
  std::string lower = to_lower(trim(name));
  if (lower == "who") return WhClass::Who;
  if (lower == "which") return WhClass::Which;
  if (lower == "what") return WhClass::What;
  return std::nullopt;
}

std::string wh_phrase(WhClass wh, bool plural) {
  return std::string(to_string(wh)) + (plural ? " are the" : " is the");
}

WhVocabulary WhVocabulary::builtin() {
  static constexpr std::pair<std::string_view, WhClass> kEntries[] = {
      // people
      {"author", WhClass::Who}, {"writer", WhClass::Who},
      {"poet", WhClass::Who}, {"novelist", WhClass::Who},
      {"playwright", WhClass::Who}, {"composer", WhClass::Who},
      {"painter", WhClass::Who}, {"artist", WhClass::Who},
      {"sculptor", WhClass::Who}, {"scientist", WhClass::Who},
      {"physicist", WhClass::Who}, {"chemist", WhClass::Who},
      {"mathematician", WhClass::Who}, {"philosopher", WhClass::Who},
      {"leader", WhClass::Who}, {"king", WhClass::Who},
      {"queen", WhClass::Who}, {"emperor", WhClass::Who},
      {"president", WhClass::Who}, {"general", WhClass::Who},
      {"explorer", WhClass::Who}, {"inventor", WhClass::Who},
      {"man", WhClass::Who}, {"woman", WhClass::Who},
      {"person", WhClass::Who}, {"figure", WhClass::Who},
      {"ruler", WhClass::Who}, {"architect", WhClass::Who},
      {"economist", WhClass::Who}, {"politician", WhClass::Who},
      {"character", WhClass::Who}, {"god", WhClass::Who},
      {"goddess", WhClass::Who},
      // events, places, works
      {"event", WhClass::Which}, {"battle", WhClass::Which},
      {"war", WhClass::Which}, {"treaty", WhClass::Which},
      {"country", WhClass::Which}, {"state", WhClass::Which},
      {"city", WhClass::Which}, {"nation", WhClass::Which},
      {"river", WhClass::Which}, {"lake", WhClass::Which},
      {"mountain", WhClass::Which}, {"island", WhClass::Which},
      {"empire", WhClass::Which}, {"novel", WhClass::Which},
      {"play", WhClass::Which}, {"poem", WhClass::Which},
      {"opera", WhClass::Which}, {"symphony", WhClass::Which},
      {"painting", WhClass::Which}, {"work", WhClass::Which},
      {"film", WhClass::Which}, {"book", WhClass::Which},
      {"dynasty", WhClass::Which}, {"revolution", WhClass::Which},
      {"language", WhClass::Which}, {"religion", WhClass::Which},
      {"planet", WhClass::Which}, {"sea", WhClass::Which},
      {"region", WhClass::Which}, {"continent", WhClass::Which},
      // substances and abstractions
      {"phenomenon", WhClass::What}, {"element", WhClass::What},
      {"compound", WhClass::What}, {"substance", WhClass::What},
      {"process", WhClass::What}, {"concept", WhClass::What},
      {"theory", WhClass::What}, {"quantity", WhClass::What},
      {"effect", WhClass::What}, {"molecule", WhClass::What},
      {"disease", WhClass::What}, {"particle", WhClass::What},
      {"force", WhClass::What}, {"mineral", WhClass::What},
      {"enzyme", WhClass::What}, {"organelle", WhClass::What}};
  WhVocabulary v;
  for (const auto &[lemma, wh] : kEntries) v.add(std::string(lemma), wh);
  return v;
}

WhVocabulary WhVocabulary::parse(std::istream &in, std::string_view name) {
  WhVocabulary v;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body = line;
    if (auto hash = body.find('#'); hash != std::string_view::npos)
      body = body.substr(0, hash);
    body = trim(body);
    if (body.empty()) continue;
    auto tab = body.find('\t');
    std::optional<WhClass> wh;
    std::string lemma;
    if (tab != std::string_view::npos) {
      lemma = to_lower(trim(body.substr(0, tab)));
      wh = parse_wh_class(body.substr(tab + 1));
    }
    if (lemma.empty() || !wh)
      throw Error(std::string(name) + ":" + std::to_string(lineno) +
                  ": expected `lemma<TAB>who|which|what`");
    try {
      v.add(lemma, *wh);
    } catch (const Error &e) {
      throw Error(std::string(name) + ":" + std::to_string(lineno) + ": " +
                  e.what());
    }
  }
  return v;
}

WhVocabulary WhVocabulary::load(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open vocabulary " + path.string());
  return parse(in, path.string());
}

void WhVocabulary::add(std::string lemma, WhClass wh) {
  auto [it, inserted] = entries_.emplace(std::move(lemma), wh);
  if (!inserted && it->second != wh)
    throw Error("lemma '" + it->first + "' mapped to both " +
                std::string(to_string(it->second)) + " and " +
                std::string(to_string(wh)));
}

std::optional<WhClass> WhVocabulary::find(std::string_view lemma) const {
  auto it = entries_.find(lemma);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::string WhVocabulary::serialize() const {
  std::string out;
  for (const auto &[lemma, wh] : entries_) {
    out += lemma;
    out += '\t';
    out += to_string(wh);
    out += '\n';
  }
  return out;
}

WhClass wh_class_for_noun(std::string_view head_lemma,
                          const WhVocabulary &vocab) {
  return vocab.find(to_lower(head_lemma)).value_or(WhClass::What);
}

std::string noun_lemma(std::string_view word) {
  std::string w = to_lower(word);
  if (auto it = irregular_plurals().find(w); it != irregular_plurals().end())
    return it->second;
  if (invariant_nouns().count(w) || w.size() < 4) return w;
  if (ends_with(w, "ies")) return w.substr(0, w.size() - 3) + "y";
  if (ends_with(w, "sses") || ends_with(w, "xes") || ends_with(w, "ches") ||
      ends_with(w, "shes"))
    return w.substr(0, w.size() - 2);
  if (ends_with(w, "s") && !ends_with(w, "ss") && !ends_with(w, "us") &&
      !ends_with(w, "is") && !ends_with(w, "ics"))
    return w.substr(0, w.size() - 1);
  return w;
}

// ---------------------------------------------------------------------------

std::vector<ClauseSplit> split_clauses(const SentenceAnnotation &sentence) {
  const auto &toks = sentence.tokens;
  const int n = static_cast<int>(toks.size());

  // Leftmost descendant of every token.
  std::vector<int> left(n);
  for (int i = 0; i < n; ++i) left[i] = i;
  for (int i = 0; i < n; ++i) {
    int cur = toks[i].head, steps = 0;
    while (cur >= 0 && cur < n && steps++ <= n) {
      left[cur] = std::min(left[cur], i);
      cur = toks[cur].head;
    }
  }

  struct Boundary {
    int start;
    int drop;  // dropped cc position, or -1
    BoundaryCause cause;
  };
  std::map<int, Boundary> boundaries;
  for (int i = 0; i < n; ++i) {
    std::string rel = deprel_base(toks[i].deprel);
    if (rel != "advcl" && rel != "conj") continue;
    int start = left[i];
    while (start < i && is_punctuation(toks[start].surface)) ++start;
    int drop = -1;
    BoundaryCause cause = BoundaryCause::Advcl;
    if (rel == "conj") {
      cause = BoundaryCause::ConjCC;
      if (deprel_base(toks[start].deprel) == "cc" && start < i) {
        drop = start++;
      } else if (start > 0 && deprel_base(toks[start - 1].deprel) == "cc") {
        drop = start - 1;
      }
    }
    int carve = drop >= 0 ? drop : start;
    if (carve <= 0) continue;
    boundaries.try_emplace(start, Boundary{start, drop, cause});
  }

  std::vector<ClauseSplit> out;
  int begin = 0;
  std::optional<Token> pending_boundary;
  BoundaryCause pending_cause = BoundaryCause::Whole;
  auto emit = [&](int end, std::optional<Token> next_boundary,
                  BoundaryCause next_cause) {
    ClauseSplit s;
    s.sentence_index = sentence.sentence_index;
    s.tokens.assign(toks.begin() + begin, toks.begin() + end);
    s.boundary = pending_boundary;
    s.cause = out.empty() ? next_cause : pending_cause;
    out.push_back(std::move(s));
    pending_boundary = std::move(next_boundary);
    pending_cause = next_cause;
  };
  for (const auto &[start, b] : boundaries) {
    int end = b.drop >= 0 ? b.drop : b.start;
    if (end <= begin) continue;  // would leave an empty split
    std::optional<Token> dropped;
    if (b.drop >= 0) dropped = toks[b.drop];
    emit(end, std::move(dropped), b.cause);
    begin = b.start;
  }
  if (begin < n) emit(n, std::nullopt, BoundaryCause::Whole);
  if (out.size() == 1) out.front().cause = BoundaryCause::Whole;
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k].split_index = static_cast<int>(k);
  return out;
}

std::vector<ClauseSplit> resolve_pronouns(
    std::vector<ClauseSplit> splits, std::span<const CorefCluster> clusters,
    std::span<const SentenceAnnotation> sentences,
    const CorefOptions &options) {
  auto token_at = [&](int sent, int idx) -> const Token * {
    if (sent < 0 || sent >= static_cast<int>(sentences.size())) return nullptr;
    const auto &toks = sentences[sent].tokens;
    if (idx < 0 || idx >= static_cast<int>(toks.size())) return nullptr;
    return &toks[idx];
  };
  auto pronoun_only = [&](const MentionSpan &m) {
    for (int k = m.start; k < m.end; ++k) {
      const Token *t = token_at(m.sentence, k);
      if (!t || !is_pronoun(*t)) return false;
    }
    return m.end > m.start;
  };

  for (ClauseSplit &split : splits) {
    std::unordered_set<int> present;
    for (const Token &t : split.tokens) present.insert(t.index);
    auto rep_inside = [&](const MentionSpan &rep) {
      if (rep.sentence != split.sentence_index) return false;
      for (int k = rep.start; k < rep.end; ++k)
        if (!present.count(k)) return false;
      return true;
    };

    std::vector<Token> rewritten;
    const MentionSpan *replaced = nullptr;
    for (const Token &tok : split.tokens) {
      const CorefCluster *cluster = nullptr;
      const MentionSpan *mention = nullptr;
      if (is_pronoun(tok)) {
        for (const CorefCluster &c : clusters) {
          for (const MentionSpan &m : c.mentions) {
            if (m.contains(split.sentence_index, tok.index) && pronoun_only(m)) {
              cluster = &c;
              mention = &m;
              break;
            }
          }
          if (cluster) break;
        }
      }
      bool substitute =
          cluster && !rep_inside(cluster->representative) &&
          (!options.intra_sentence_only ||
           cluster->representative.sentence == split.sentence_index);
      if (!substitute) {
        rewritten.push_back(tok);
        replaced = nullptr;
        continue;
      }
      if (replaced == mention) continue;  // rest of a multi-token mention
      replaced = mention;

      const MentionSpan &rep = cluster->representative;
      const int cluster_id = static_cast<int>(cluster - clusters.data());
      for (int k = rep.start; k < rep.end; ++k) {
        const Token *src = token_at(rep.sentence, k);
        if (!src) continue;
        Token copy = *src;
        copy.cluster = cluster_id;
        if (k == rep.start) {
          if (starts_upper(tok.surface))
            copy.surface = capitalize_first(copy.surface);
          else if (rep.start == 0 && copy.upos != "PROPN")
            copy.surface = lowercase_first(copy.surface);
        }
        rewritten.push_back(std::move(copy));
      }
      const Token *last = token_at(mention->sentence, mention->end - 1);
      if (last && is_possessive_pronoun(last->surface)) {
        Token clitic = make_token("'s", "PART");
        clitic.index = tok.index;
        clitic.deprel = "case";
        clitic.cluster = cluster_id;
        rewritten.push_back(std::move(clitic));
      }
    }
    split.tokens = std::move(rewritten);
  }
  return splits;
}

std::vector<ClauseSplit> merge_short_splits(std::vector<ClauseSplit> splits,
                                            std::size_t min_words) {
  std::vector<ClauseSplit> out;
  for (ClauseSplit &s : splits) {
    if (!out.empty() &&
        (s.word_count() < min_words || out.back().word_count() < min_words)) {
      ClauseSplit &into = out.back();
      if (s.boundary) into.tokens.push_back(*s.boundary);
      into.tokens.insert(into.tokens.end(), s.tokens.begin(), s.tokens.end());
      continue;
    }
    out.push_back(std::move(s));
  }
  if (out.size() == 1) out.front().cause = BoundaryCause::Whole;
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k].split_index = static_cast<int>(k);
  return out;
}

std::span<const std::string_view> disallowed_final_words() {
  return kDisallowedFinal;
}

void clean_tokens(std::vector<Token> &tokens) {
  bool question = !tokens.empty() && tokens.back().surface == "?";
  if (question) tokens.pop_back();
  while (!tokens.empty()) {
    const std::string &s = tokens.back().surface;
    if (is_punctuation(s) || contains(kDisallowedFinal, to_lower(s))) {
      tokens.pop_back();
      continue;
    }
    break;
  }
  if (tokens.empty()) throw DegenerateSplit("split is empty after cleanup");
  if (question) tokens.push_back(make_token("?", "PUNCT"));
}

std::string clean_split(std::string_view text) {
  std::vector<Token> tokens = tokens_from_text(text);
  clean_tokens(tokens);
  return surface_text(tokens);
}

void rewrite_nonlast_tokens(std::vector<Token> &tokens) {
  std::vector<Token> out;
  out.reserve(tokens.size());
  for (Token &t : tokens) {
    // Pronouns covered by a coreference cluster were handled upstream.
    bool covered = t.cluster >= 0 && is_pronoun(t);
    const Substitution *sub = nullptr;
    if (!covered) {
      std::string lower = to_lower(t.surface);
      for (const Substitution &s : kNonLastTable)
        if (s.from == lower) sub = &s;
    }
    if (!sub) {
      out.push_back(std::move(t));
      continue;
    }
    std::vector<std::string> words = split_whitespace(sub->to);
    for (std::size_t k = 0; k < words.size(); ++k) {
      Token r = t;
      r.surface = k == 0 ? match_capitalization(t.surface, words[k]) : words[k];
      r.upos = "PRON";
      out.push_back(std::move(r));
    }
  }
  tokens = std::move(out);
}

std::string rewrite_nonlast(std::string_view text) {
  std::vector<Token> tokens = tokens_from_text(text);
  rewrite_nonlast_tokens(tokens);
  return surface_text(tokens);
}

void rewrite_last_tokens(std::vector<Token> &tokens,
                         const WhVocabulary &vocab) {
  const std::size_t n = tokens.size();
  auto lower_at = [&](std::size_t i) {
    return i < n ? to_lower(tokens[i].surface) : std::string();
  };

  // Locate "for <number> points" or "FTP".
  std::size_t begin = n, after = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (lower_at(i) == "ftp") {
      begin = i;
      after = i + 1;
      break;
    }
    if (lower_at(i) == "for" && i + 2 < n && is_number_token(tokens[i + 1].surface) &&
        (lower_at(i + 2) == "points" || lower_at(i + 2) == "point")) {
      begin = i;
      after = i + 3;
      break;
    }
  }

  bool templated = false;
  if (begin < n) {
    std::size_t j = after;
    if (lower_at(j) == "," || lower_at(j) == ":") ++j;
    std::size_t prefix_end = j;
    while (contains(kQuicknessAdverbs, lower_at(j))) ++j;
    if (contains(kNameVerbs, lower_at(j)) &&
        (lower_at(j + 1) == "this" || lower_at(j + 1) == "these")) {
      const bool these = lower_at(j + 1) == "these";
      std::size_t np = j + 2, end = np;
      while (end < n) {
        const Token &t = tokens[end];
        if (!is_word(t.surface) || np_stop_words().count(to_lower(t.surface)))
          break;
        if (!t.upos.empty() && t.upos != "_" && np_stop_upos().count(t.upos))
          break;
        ++end;
      }
      WhClass wh = WhClass::What;
      bool plural = these;
      if (end > np) {
        const Token &head = tokens[end - 1];
        wh = wh_class_for_noun(noun_lemma(head.surface), vocab);
        plural = plural || is_plural_head(head);
      }
      std::vector<Token> phrase;
      for (const std::string &w : split_whitespace(wh_phrase(wh, plural)))
        phrase.push_back(make_token(w, w == "the" ? "DET" : "PRON"));
      phrase[1].upos = "AUX";
      std::vector<Token> out(tokens.begin(), tokens.begin() + begin);
      out.insert(out.end(), phrase.begin(), phrase.end());
      out.insert(out.end(), tokens.begin() + np, tokens.end());
      tokens = std::move(out);
      templated = true;
    } else {
      // Point-value residue without a naming verb: drop it.
      bool capital = starts_upper(tokens[begin].surface);
      tokens.erase(tokens.begin() + begin, tokens.begin() + prefix_end);
      if (capital && begin == 0 && !tokens.empty())
        tokens.front().surface = capitalize_first(tokens.front().surface);
    }
  }
  if (!templated) rewrite_nonlast_tokens(tokens);
  if (tokens.empty() || tokens.back().surface != "?")
    tokens.push_back(make_token("?", "PUNCT"));
}

std::string rewrite_last(std::string_view text, const WhVocabulary &vocab) {
  std::vector<Token> tokens = tokens_from_text(text);
  rewrite_last_tokens(tokens, vocab);
  return surface_text(tokens);
}

std::vector<GeneratedQuestion> generate_nq_like(
    const RawQuestion &question,
    std::span<const SentenceAnnotation> sentences,
    std::span<const CorefCluster> clusters, const WhVocabulary &vocab,
    const GenerationOptions &options, Diagnostics *diags) {
  std::vector<GeneratedQuestion> out;
  if (sentences.empty()) {
    if (diags) diags->warn(question.id, 0, "no annotated sentences");
    return out;
  }
  const int last = static_cast<int>(sentences.size()) - 1;
  for (int si = options.last_sentence_only ? last : 0; si <= last; ++si) {
    const SentenceAnnotation &sentence = sentences[si];
    const bool is_last = si == last;
    std::vector<ClauseSplit> splits = split_clauses(sentence);
    splits = merge_short_splits(std::move(splits), options.min_words);
    splits = resolve_pronouns(std::move(splits), clusters, sentences,
                              options.coref);
    for (ClauseSplit &split : splits) {
      std::vector<Token> tokens = split.tokens;
      try {
        clean_tokens(tokens);
        if (is_last)
          rewrite_last_tokens(tokens, vocab);
        else
          rewrite_nonlast_tokens(tokens);
        clean_tokens(tokens);
      } catch (const DegenerateSplit &) {
        if (diags)
          diags->warn(question.id, 0,
                      "sentence " + std::to_string(si) + " split " +
                          std::to_string(split.split_index) +
                          " is empty after cleanup; skipped");
        continue;
      }
      GeneratedQuestion g;
      g.source_id = question.id;
      g.sentence_index = sentence.sentence_index;
      g.split_index = split.split_index;
      g.id = question.id + "-s" + std::to_string(g.sentence_index) + "-p" +
             std::to_string(g.split_index);
      g.text = surface_text(tokens);
      g.is_last_sentence = is_last;
      g.answer = question.answer;
      g.split = question.split;
      out.push_back(std::move(g));
    }
  }
  if (out.empty() && diags)
    diags->warn(question.id, 0, "question produced no usable splits");
  return out;
}

std::string rules_fingerprint(const WhVocabulary &vocab) {
  std::ostringstream rules;
  rules << "vocab\n" << vocab.serialize() << "final\n";
  for (std::string_view w : kDisallowedFinal) rules << w << '\n';
  rules << "nonlast\n";
  for (const Substitution &s : kNonLastTable) rules << s.from << '>' << s.to << '\n';
  rules << "template\n";
  for (std::string_view w : kNameVerbs) rules << w << '\n';
  for (std::string_view w : kQuicknessAdverbs) rules << w << '\n';
  for (std::string_view w : kNumberWords) rules << w << '\n';
  return hex64(fnv1a64(rules.str()));
}

}  // namespace quizmorph
