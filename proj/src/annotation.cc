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

#include "quizmorph/annotation.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_set>

#include "quizmorph/text_util.h"

namespace quizmorph {

namespace {

// ---------------------------------------------------------------------------
// Tokenizer

enum class Kind { Word, Opener, Closer, Punct, Abbrev };

struct RawToken {
  std::string text;
  Kind kind = Kind::Word;
  std::size_t begin = 0;  // byte offsets into the source
  std::size_t end = 0;
};

constexpr std::string_view kOpeners[] = {"\"", "(", "[", "{", "“", "‘", "`"};
constexpr std::string_view kClosers[] = {"\"", ")", "]", "}", "”", "’"};
constexpr std::string_view kClausePunct[] = {",", ";", ":", "?", "!"};

const std::unordered_set<std::string> &abbreviations() {
  static const std::unordered_set<std::string> kSet = {
      "mr",   "mrs",  "ms",   "dr",   "st",   "mt",   "jr",   "sr",   "vs",
      "etc",  "co",   "inc",  "ltd",  "ft",   "gen",  "col",  "lt",   "capt",
      "sgt",  "prof", "rev",  "gov",  "sen",  "rep",  "pres", "jan",  "feb",
      "mar",  "apr",  "aug",  "sept", "sep",  "oct",  "nov",  "dec",  "ca",
      "approx", "dept", "univ", "ave", "blvd", "fig", "vol", "ed", "eds"};
  return kSet;
}

bool starts_with_any(std::string_view s, std::span<const std::string_view> set,
                     std::size_t *len) {
  for (std::string_view p : set) {
    if (s.size() > p.size() && s.substr(0, p.size()) == p) {
      *len = p.size();
      return true;
    }
  }
  return false;
}

bool ends_with_any(std::string_view s, std::span<const std::string_view> set,
                   std::size_t *len) {
  for (std::string_view p : set) {
    if (s.size() >= p.size() && s.substr(s.size() - p.size()) == p) {
      *len = p.size();
      return true;
    }
  }
  return false;
}

bool is_abbreviation(std::string_view with_period) {
  std::string_view core = with_period.substr(0, with_period.size() - 1);
  if (core.empty()) return false;
  if (core.size() == 1 && std::isalpha(static_cast<unsigned char>(core[0])))
    return true;
  if (core.find('.') != std::string_view::npos) {
    // Dotted acronyms such as "U.S." or "p.m.".
    return std::all_of(core.begin(), core.end(), [](char c) {
      return c == '.' || std::isalpha(static_cast<unsigned char>(c));
    });
  }
  return abbreviations().count(to_lower(core)) > 0;
}

void tokenize_chunk(std::string_view src, std::size_t begin, std::size_t end,
                    std::vector<RawToken> &out) {
  std::string_view chunk = src.substr(begin, end - begin);
  std::size_t len = 0;
  while (starts_with_any(chunk, kOpeners, &len)) {
    out.push_back({std::string(chunk.substr(0, len)), Kind::Opener, begin,
                   begin + len});
    chunk.remove_prefix(len);
    begin += len;
  }

  std::vector<RawToken> tail;  // collected right to left
  while (!chunk.empty()) {
    std::size_t stop = begin + chunk.size();
    if (chunk.size() >= 3 && chunk.substr(chunk.size() - 3) == "...") {
      tail.push_back({"...", Kind::Punct, stop - 3, stop});
      chunk.remove_suffix(3);
    } else if (chunk.size() > 1 && ends_with_any(chunk, kClosers, &len)) {
      tail.push_back({std::string(chunk.substr(chunk.size() - len)),
                      Kind::Closer, stop - len, stop});
      chunk.remove_suffix(len);
    } else if (chunk.size() > 1 && ends_with_any(chunk, kClausePunct, &len)) {
      tail.push_back({std::string(chunk.substr(chunk.size() - len)),
                      Kind::Punct, stop - len, stop});
      chunk.remove_suffix(len);
    } else if (chunk.back() == '.' && chunk.size() > 1) {
      if (is_abbreviation(chunk)) break;
      tail.push_back({".", Kind::Punct, stop - 1, stop});
      chunk.remove_suffix(1);
    } else {
      break;
    }
  }

  if (!chunk.empty()) {
    std::size_t stop = begin + chunk.size();
    Kind kind = Kind::Word;
    if (chunk.size() > 1 && chunk.back() == '.' && is_abbreviation(chunk))
      kind = Kind::Abbrev;
    else if (chunk == "." || chunk == "?" || chunk == "!" || chunk == "...")
      kind = Kind::Punct;
    else if (std::find(std::begin(kClosers), std::end(kClosers), chunk) !=
                 std::end(kClosers) &&
             std::find(std::begin(kOpeners), std::end(kOpeners), chunk) ==
                 std::end(kOpeners))
      kind = Kind::Closer;

    // Possessive clitic: "state's" -> "state" "'s".
    std::size_t clitic = 0;
    if (kind == Kind::Word) {
      if (chunk.size() > 2 && chunk.substr(chunk.size() - 2) == "'s")
        clitic = 2;
      else if (chunk.size() > 4 && chunk.substr(chunk.size() - 4) == "’s")
        clitic = 4;
    }
    if (clitic > 0) {
      out.push_back({std::string(chunk.substr(0, chunk.size() - clitic)),
                     Kind::Word, begin, stop - clitic});
      out.push_back({std::string(chunk.substr(chunk.size() - clitic)),
                     Kind::Word, stop - clitic, stop});
    } else {
      out.push_back({std::string(chunk), kind, begin, stop});
    }
  }
  out.insert(out.end(), tail.rbegin(), tail.rend());
}

std::vector<RawToken> raw_tokenize(std::string_view text) {
  std::vector<RawToken> out;
  std::size_t i = 0;
  auto space = [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
           c == '\v';
  };
  while (i < text.size()) {
    while (i < text.size() && space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !space(text[j])) ++j;
    if (j > i) tokenize_chunk(text, i, j, out);
    i = j;
  }
  // A free-standing '"' closes when an opening quote is still unmatched.
  int open_quotes = 0;
  for (RawToken &t : out) {
    if (t.text != "\"") continue;
    if (t.kind == Kind::Word)
      t.kind = open_quotes > 0 ? Kind::Closer : Kind::Opener;
    open_quotes += t.kind == Kind::Opener ? 1 : -1;
    open_quotes = std::max(open_quotes, 0);
  }
  return out;
}

bool capitalized_continuation(const RawToken &t) {
  if (t.kind == Kind::Opener) return true;
  unsigned char c = static_cast<unsigned char>(t.text[0]);
  return std::isupper(c) || std::isdigit(c);
}

// ---------------------------------------------------------------------------
// Lexicons

const std::unordered_set<std::string> &pronoun_words() {
  static const std::unordered_set<std::string> kSet = {
      "he",     "him",     "his",     "himself", "she",        "her",
      "hers",   "herself", "it",      "its",     "itself",     "they",
      "them",   "their",   "theirs",  "themselves"};
  return kSet;
}

const std::unordered_set<std::string> &determiners() {
  static const std::unordered_set<std::string> kSet = {
      "the",  "a",     "an",  "this", "these", "that", "those",
      "each", "every", "some", "any", "no",    "all",  "both"};
  return kSet;
}

const std::unordered_set<std::string> &closed_pronouns() {
  static const std::unordered_set<std::string> kSet = {
      "i",    "me",  "my",   "you",   "your",  "we",    "us",
      "our",  "who", "whom", "whose", "what",  "which", "he",
      "him",  "his", "she",  "her",   "hers",  "it",    "its",
      "they", "them", "their", "theirs", "himself", "herself", "itself",
      "themselves"};
  return kSet;
}

const std::unordered_set<std::string> &coordinators() {
  static const std::unordered_set<std::string> kSet = {"and", "or", "but",
                                                        "nor"};
  return kSet;
}

const std::unordered_set<std::string> &prepositions() {
  static const std::unordered_set<std::string> kSet = {
      "of",     "in",      "on",     "at",      "by",      "for",
      "with",   "from",    "to",     "into",    "onto",    "about",
      "after",  "before",  "during", "under",   "over",    "through",
      "between", "against", "among", "without", "within",  "near",
      "since",  "until",   "upon",   "across",  "behind",  "beyond",
      "toward", "towards", "as"};
  return kSet;
}

// ---------------------------------------------------------------------------
// Interchange format helpers

struct MiscEntries {
  std::vector<std::string> other;  // key=value entries we do not interpret
  std::vector<std::string> coref;
  std::vector<std::string> coref_rep;
};

std::vector<std::string> split_on(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos
                                         ? std::string_view::npos
                                         : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

MiscEntries parse_misc(std::string_view misc) {
  MiscEntries m;
  if (misc.empty() || misc == "_") return m;
  for (const std::string &entry : split_on(misc, '|')) {
    if (entry.empty()) continue;
    auto eq = entry.find('=');
    std::string key = entry.substr(0, eq);
    std::string value = eq == std::string::npos ? "" : entry.substr(eq + 1);
    if (key == "Coref" || key == "CorefRep") {
      auto &dst = key == "Coref" ? m.coref : m.coref_rep;
      for (const std::string &id : split_on(value, ','))
        if (!id.empty()) dst.push_back(id);
    } else {
      m.other.push_back(entry);
    }
  }
  return m;
}

bool parse_int(std::string_view s, int *out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), *out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

struct PendingQuestion {
  std::string id;
  int line = 0;
  bool bad = false;
  std::vector<SentenceAnnotation> sentences;
};

}  // namespace

// ---------------------------------------------------------------------------

std::string Sentence::tokenized() const { return join(tokens, " "); }

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  for (RawToken &t : raw_tokenize(text)) out.push_back(std::move(t.text));
  return out;
}

std::vector<Sentence> split_sentences(std::string_view text) {
  std::vector<RawToken> toks = raw_tokenize(text);
  std::vector<Sentence> out;
  std::size_t first = 0;
  auto emit = [&](std::size_t last) {  // inclusive
    Sentence s;
    s.text = std::string(
        text.substr(toks[first].begin, toks[last].end - toks[first].begin));
    for (std::size_t k = first; k <= last; ++k) s.tokens.push_back(toks[k].text);
    out.push_back(std::move(s));
    first = last + 1;
  };

  for (std::size_t i = 0; i < toks.size(); ++i) {
    const RawToken &t = toks[i];
    bool terminal = t.kind == Kind::Punct &&
                    (t.text == "." || t.text == "?" || t.text == "!");
    bool quoted_abbrev = t.kind == Kind::Abbrev && i + 1 < toks.size() &&
                         toks[i + 1].kind == Kind::Closer;
    if (!terminal && !quoted_abbrev) continue;
    if (i == first && !quoted_abbrev) continue;  // nothing before the mark

    std::size_t last = i;
    while (last + 1 < toks.size() && toks[last + 1].kind == Kind::Closer)
      ++last;
    if (last + 1 == toks.size()) break;  // final sentence, emitted below
    if (!capitalized_continuation(toks[last + 1])) continue;
    emit(last);
    i = last;
  }
  if (first < toks.size()) emit(toks.size() - 1);
  return out;
}

bool is_pronoun_word(std::string_view word) {
  return pronoun_words().count(to_lower(word)) > 0;
}

bool is_possessive_pronoun(std::string_view word) {
  std::string w = to_lower(word);
  return w == "its" || w == "his" || w == "her" || w == "their";
}

bool is_pronoun(const Token &token) {
  return token.upos == "PRON" || is_pronoun_word(token.surface);
}

bool choose_representative(std::span<const MentionSpan> mentions,
                           std::span<const SentenceAnnotation> sentences,
                           MentionSpan *out) {
  bool found = false;
  MentionSpan best;
  for (const MentionSpan &m : mentions) {
    if (m.sentence < 0 || m.sentence >= static_cast<int>(sentences.size()))
      continue;
    const auto &toks = sentences[m.sentence].tokens;
    bool all_pronouns = true;
    for (int k = m.start; k < m.end && k < static_cast<int>(toks.size()); ++k)
      all_pronouns = all_pronouns && is_pronoun(toks[k]);
    if (all_pronouns) continue;
    bool better =
        !found || m.sentence < best.sentence ||
        (m.sentence == best.sentence &&
         (m.start < best.start ||
          (m.start == best.start && m.end - m.start > best.end - best.start)));
    if (better) {
      best = m;
      found = true;
    }
  }
  if (found) *out = best;
  return found;
}

std::string validate_sentence(const SentenceAnnotation &sentence) {
  const auto &toks = sentence.tokens;
  const int n = static_cast<int>(toks.size());
  if (n == 0) return "sentence has no tokens";
  int roots = 0;
  for (int i = 0; i < n; ++i) {
    const Token &t = toks[i];
    if (t.index != i)
      return "token index " + std::to_string(t.index) + " at position " +
             std::to_string(i) + " breaks contiguity";
    if (t.head == -1) {
      ++roots;
    } else if (t.head < 0 || t.head >= n) {
      return "head " + std::to_string(t.head) + " of token " +
             std::to_string(i) + " is out of range";
    } else if (t.head == i) {
      return "token " + std::to_string(i) + " is its own head";
    }
  }
  if (roots != 1)
    return "expected exactly one root, found " + std::to_string(roots);
  for (int i = 0; i < n; ++i) {
    int steps = 0, cur = i;
    while (cur != -1) {
      cur = toks[cur].head;
      if (++steps > n) return "head chain from token " + std::to_string(i) +
                              " contains a cycle";
    }
  }
  return {};
}

namespace {

// Builds clusters from the Coref/CorefRep misc keys and stamps
// Token::cluster. Clusters without a usable representative are dropped.
void build_clusters(AnnotatedQuestion &q, const std::string &where,
                    Diagnostics &diags) {
  struct Acc {
    std::vector<MentionSpan> mentions;
    std::vector<MentionSpan> reps;
  };
  std::map<std::string, Acc> acc;
  std::vector<std::string> order;
  for (const SentenceAnnotation &s : q.sentences) {
    std::vector<MiscEntries> misc;
    for (const Token &t : s.tokens) misc.push_back(parse_misc(t.misc));
    std::set<std::string> ids;
    for (const MiscEntries &m : misc) {
      ids.insert(m.coref.begin(), m.coref.end());
      ids.insert(m.coref_rep.begin(), m.coref_rep.end());
    }
    for (const std::string &id : ids) {
      auto has = [&](const MiscEntries &m, bool rep_only) {
        auto in = [&](const std::vector<std::string> &v) {
          return std::find(v.begin(), v.end(), id) != v.end();
        };
        return rep_only ? in(m.coref_rep) : (in(m.coref) || in(m.coref_rep));
      };
      if (!acc.count(id)) order.push_back(id);
      Acc &a = acc[id];
      for (bool rep_only : {false, true}) {
        int k = 0;
        const int n = static_cast<int>(misc.size());
        while (k < n) {
          if (!has(misc[k], rep_only)) {
            ++k;
            continue;
          }
          int b = k;
          while (k < n && has(misc[k], rep_only)) ++k;
          (rep_only ? a.reps : a.mentions).push_back({s.sentence_index, b, k});
        }
      }
    }
  }

  for (const std::string &id : order) {
    Acc &a = acc[id];
    std::sort(a.mentions.begin(), a.mentions.end());
    CorefCluster c;
    c.id = id;
    c.mentions = a.mentions;
    bool have_rep = false;
    if (!a.reps.empty()) {
      const MentionSpan &r = a.reps.front();
      if (a.reps.size() > 1)
        diags.warn(where, 0, "cluster " + id +
                                 " marks several representatives; using the first");
      bool pronominal = true;
      for (int k = r.start; k < r.end; ++k)
        pronominal = pronominal && is_pronoun(q.sentences[r.sentence].tokens[k]);
      bool is_mention = std::find(c.mentions.begin(), c.mentions.end(), r) !=
                        c.mentions.end();
      if (pronominal || !is_mention) {
        diags.warn(where, 0, "cluster " + id +
                                 " has an invalid marked representative; "
                                 "choosing one");
      } else {
        c.representative = r;
        have_rep = true;
      }
    }
    if (!have_rep &&
        !choose_representative(c.mentions, q.sentences, &c.representative)) {
      diags.warn(where, 0, "cluster " + id +
                               " has only pronominal mentions; dropped");
      continue;
    }
    q.clusters.push_back(std::move(c));
  }

  std::sort(q.clusters.begin(), q.clusters.end(),
            [](const CorefCluster &a, const CorefCluster &b) {
              return a.mentions.front() < b.mentions.front();
            });
  for (std::size_t ci = 0; ci < q.clusters.size(); ++ci) {
    for (const MentionSpan &m : q.clusters[ci].mentions) {
      auto &toks = q.sentences[m.sentence].tokens;
      for (int k = m.start; k < m.end; ++k)
        if (toks[k].cluster < 0) toks[k].cluster = static_cast<int>(ci);
    }
  }
}

}  // namespace

AnnotationSet parse_annotations(std::istream &in, std::string_view name) {
  AnnotationSet result;
  const std::string file(name);
  std::optional<PendingQuestion> current;
  std::vector<std::pair<int, std::string>> block;
  std::string block_text;
  int block_line = 0;
  bool orphan_reported = false;

  auto flush_block = [&]() {
    if (block.empty()) {
      block_text.clear();
      return;
    }
    if (!current) {
      block.clear();
      block_text.clear();
      return;
    }
    SentenceAnnotation s;
    s.sentence_index = static_cast<int>(current->sentences.size());
    for (const auto &[lineno, line] : block) {
      std::vector<std::string> cols = split_on(line, '\t');
      if (cols.size() == 5) cols.push_back("_");
      Token t;
      if (cols.size() != 6 || !parse_int(cols[0], &t.index) ||
          !parse_int(cols[3], &t.head) || cols[1].empty()) {
        result.diagnostics.warn(
            file, block_line,
            "malformed token line " + std::to_string(lineno) +
                " in block; question '" + current->id + "' skipped");
        current->bad = true;
        break;
      }
      t.surface = cols[1];
      t.upos = cols[2];
      t.deprel = cols[4];
      t.misc = cols[5].empty() ? "_" : cols[5];
      s.tokens.push_back(std::move(t));
    }
    if (!current->bad) {
      std::string problem = validate_sentence(s);
      if (!problem.empty()) {
        result.diagnostics.warn(file, block_line,
                                problem + "; question '" + current->id +
                                    "' skipped");
        current->bad = true;
      }
    }
    if (!current->bad) {
      std::vector<std::string> surfaces;
      for (const Token &t : s.tokens) surfaces.push_back(t.surface);
      s.text = block_text.empty() ? join(surfaces, " ") : block_text;
      current->sentences.push_back(std::move(s));
    }
    block.clear();
    block_text.clear();
  };

  auto finish_question = [&]() {
    flush_block();
    if (!current) return;
    if (!current->bad) {
      if (result.questions.count(current->id)) {
        result.diagnostics.warn(file, current->line,
                                "duplicate qid '" + current->id + "'; skipped");
      } else {
        AnnotatedQuestion q;
        q.sentences = std::move(current->sentences);
        build_clusters(q, file + ":" + current->id, result.diagnostics);
        result.questions.emplace(current->id, std::move(q));
      }
    }
    current.reset();
  };

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view view = trim(line);
    if (view.empty()) {
      flush_block();
      continue;
    }
    if (view.front() == '#') {
      std::string_view body = trim(view.substr(1));
      auto eq = body.find('=');
      std::string key =
          eq == std::string_view::npos ? "" : std::string(trim(body.substr(0, eq)));
      std::string value =
          eq == std::string_view::npos ? "" : std::string(trim(body.substr(eq + 1)));
      if (key == "qid") {
        finish_question();
        current = PendingQuestion{value, lineno, value.empty(), {}};
        if (value.empty())
          result.diagnostics.warn(file, lineno, "empty qid; question skipped");
      } else if (key == "text") {
        flush_block();
        block_text = value;
      }
      continue;
    }
    if (!current) {
      if (!orphan_reported)
        result.diagnostics.warn(file, lineno,
                                "token lines before any `# qid` header ignored");
      orphan_reported = true;
      continue;
    }
    if (block.empty()) block_line = lineno;
    block.emplace_back(lineno, line);
  }
  finish_question();
  return result;
}

AnnotationSet parse_annotations(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open annotation file " + path.string());
  return parse_annotations(in, path.string());
}

std::string serialize_annotations(
    const std::map<std::string, AnnotatedQuestion> &questions) {
  std::ostringstream out;
  for (const auto &[qid, q] : questions) {
    out << "# qid = " << qid << '\n';
    for (const SentenceAnnotation &s : q.sentences) {
      std::vector<std::string> surfaces;
      for (const Token &t : s.tokens) surfaces.push_back(t.surface);
      if (!s.text.empty() && s.text != join(surfaces, " "))
        out << "# text = " << s.text << '\n';
      for (const Token &t : s.tokens) {
        MiscEntries misc = parse_misc(t.misc);
        std::vector<std::string> entries = misc.other;
        std::vector<std::string> member, rep;
        for (const CorefCluster &c : q.clusters) {
          bool in_mention = std::any_of(
              c.mentions.begin(), c.mentions.end(), [&](const MentionSpan &m) {
                return m.contains(s.sentence_index, t.index);
              });
          if (c.representative.contains(s.sentence_index, t.index))
            rep.push_back(c.id);
          else if (in_mention)
            member.push_back(c.id);
        }
        if (!member.empty()) entries.push_back("Coref=" + join(member, ","));
        if (!rep.empty()) entries.push_back("CorefRep=" + join(rep, ","));
        out << t.index << '\t' << t.surface << '\t'
            << (t.upos.empty() ? "_" : t.upos) << '\t' << t.head << '\t'
            << (t.deprel.empty() ? "_" : t.deprel) << '\t'
            << (entries.empty() ? "_" : join(entries, "|")) << '\n';
      }
      out << '\n';
    }
  }
  return out.str();
}

SentenceAnnotation heuristic_annotate(std::string_view sentence,
                                      int sentence_index) {
  SentenceAnnotation s;
  s.sentence_index = sentence_index;
  s.text = std::string(trim(sentence));
  std::vector<std::string> words = tokenize(sentence);
  for (std::size_t i = 0; i < words.size(); ++i) {
    Token t;
    t.index = static_cast<int>(i);
    t.surface = words[i];
    std::string lower = to_lower(words[i]);
    if (is_punctuation(words[i]))
      t.upos = "PUNCT";
    else if (closed_pronouns().count(lower))
      t.upos = "PRON";
    else if (determiners().count(lower))
      t.upos = "DET";
    else if (coordinators().count(lower))
      t.upos = "CCONJ";
    else if (prepositions().count(lower))
      t.upos = "ADP";
    else
      t.upos = "NOUN";
    t.head = i == 0 ? -1 : 0;
    t.deprel = i == 0 ? "root" : "dep";
    s.tokens.push_back(std::move(t));
  }
  for (std::size_t i = 1; i < s.tokens.size(); ++i) {
    if (s.tokens[i].upos != "CCONJ") continue;
    s.tokens[i].deprel = "cc";
    if (i + 1 < s.tokens.size() && s.tokens[i + 1].upos != "PUNCT" &&
        s.tokens[i + 1].upos != "CCONJ")
      s.tokens[i + 1].deprel = "conj";
  }
  return s;
}

AnnotatedQuestion heuristic_annotate_question(std::string_view text) {
  AnnotatedQuestion q;
  int index = 0;
  for (const Sentence &s : split_sentences(text))
    q.sentences.push_back(heuristic_annotate(s.text, index++));
  return q;
}

}  // namespace quizmorph
