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

#include <cmath>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "quizmorph/ingest.h"
#include "quizmorph/jsonl.h"
#include "quizmorph/pairing.h"
#include "test_support.h"

namespace qm = quizmorph;
using qm::testing::fixture;

namespace {

qm::Json oracle_values() {
  return qm::Json::parse(qm::testing::slurp(fixture("oracle_values.json")));
}

qm::RawQuestion rq(std::string id, std::string text, std::string answer) {
  return {std::move(id), std::move(text), std::move(answer),
          qm::Source::TriviaQB, qm::Split::Unsplit};
}

// Maps every text to a fixed vector.
class TableProvider : public qm::SimilarityProvider {
 public:
  explicit TableProvider(std::map<std::string, qm::Embedding> table)
      : table_(std::move(table)) {}
  std::vector<qm::Embedding> embed(std::span<const std::string> texts) override {
    ++calls;
    std::vector<qm::Embedding> out;
    for (const auto &t : texts) out.push_back(table_.at(t));
    return out;
  }
  qm::ProviderKind kind() const override { return qm::ProviderKind::Sidecar; }
  int calls = 0;

 private:
  std::map<std::string, qm::Embedding> table_;
};

class FailingProvider : public qm::SimilarityProvider {
 public:
  std::vector<qm::Embedding> embed(std::span<const std::string> texts) override {
    if (++calls == 2) throw std::runtime_error("backend down");
    return std::vector<qm::Embedding>(texts.size(), qm::Embedding{1.0});
  }
  qm::ProviderKind kind() const override { return qm::ProviderKind::Sidecar; }
  int calls = 0;
};

}  // namespace

TEST_CASE("last_sentence") {
  CHECK(qm::last_sentence("Alpha ran. Beta hid. For 10 points, name this state.") ==
        "For 10 points, name this state.");
  CHECK(qm::last_sentence("Who wrote Hamlet?") == "Who wrote Hamlet?");
  auto d = qm::load_dataset(fixture("qb.jsonl"), qm::Source::TriviaQB);
  CHECK(qm::last_sentence(d.records[6].text) ==
        "For 10 points, name this longest river in Africa.");
  CHECK(qm::last_sentence(d.records[12].text) ==
        "For 10 points, name this novel by F. Scott Fitzgerald.");
  CHECK_THROWS_AS(qm::last_sentence("   "), std::invalid_argument);
}

TEST_CASE("cosine") {
  std::vector<double> e1 = {1, 0}, e2 = {0, 1};
  CHECK(qm::cosine(e1, e1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(qm::cosine(e1, e2) == 0.0);
  std::vector<double> u = {1, 2, 3}, v = {4, 5, 6};
  const double expected = oracle_values()["cosine_123_456"].get<double>();
  CHECK(std::abs(qm::cosine(u, v) - expected) < 1e-12);
  CHECK(std::abs(qm::cosine(u, v) - 0.974631846) < 1e-9);
  std::vector<double> zero = {0, 0, 0}, short_v = {1};
  CHECK_THROWS_AS(qm::cosine(u, zero), qm::UndefinedSimilarity);
  CHECK_THROWS_AS(qm::cosine(u, short_v), std::invalid_argument);
}

TEST_CASE("cosine is symmetric and self-similar on random vectors") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> dist(-5, 5);
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> a(1 + i % 7), b(a.size());
    for (auto &x : a) x = dist(rng);
    for (auto &x : b) x = dist(rng);
    double ab = qm::cosine(a, b);
    CHECK(ab == qm::cosine(b, a));
    CHECK(ab >= -1.0);
    CHECK(ab <= 1.0);
    CHECK(std::abs(qm::cosine(a, a) - 1.0) < 1e-12);
  }
}

TEST_CASE("lexical provider matches the independent TF-IDF oracle") {
  auto qb = qm::load_dataset(fixture("qb.jsonl"), qm::Source::TriviaQB).records;
  auto nq = qm::load_dataset(fixture("nq.jsonl"), qm::Source::NaturalNQ).records;
  auto candidates = qm::pair_by_answer(qb, nq);
  const qm::Json expected = oracle_values()["tfidf_fixture_pairs"];
  for (std::size_t batch : {1u, 3u, 64u}) {
    qm::LexicalProvider provider;
    auto scored = qm::score_pairs(candidates, qb, nq, provider, batch);
    REQUIRE(scored.size() == candidates.size());
    REQUIRE(expected.size() == scored.size());
    for (const auto &p : scored) {
      const double want = expected.at(p.qb_id + "|" + p.nq_id).get<double>();
      CHECK(std::abs(p.similarity - want) < 1e-12);
      CHECK(p.provider == qm::ProviderKind::Lexical);
    }
  }
}

TEST_CASE("fixture pairs retained at 0.5") {
  auto qb = qm::load_dataset(fixture("qb.jsonl"), qm::Source::TriviaQB).records;
  auto nq = qm::load_dataset(fixture("nq.jsonl"), qm::Source::NaturalNQ).records;
  qm::LexicalProvider provider;
  auto kept =
      qm::filter_pairs(qm::pair_by_answer(qb, nq), qb, nq, provider, {0.5, 64});
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].qb_id == "q007");
  CHECK(kept[0].nq_id == "n007");
}

TEST_CASE("filter_pairs thresholds") {
  std::vector<qm::RawQuestion> qb = {rq("a", "Same words here.", "x"),
                                     rq("b", "Other text.", "y"),
                                     rq("c", "Mixed words.", "z")};
  std::vector<qm::RawQuestion> nq = {rq("n1", "Same words here.", "x"),
                                     rq("n2", "completely different", "y"),
                                     rq("n3", "Mixed bag", "z")};
  auto candidates = qm::pair_by_answer(qb, nq);
  REQUIRE(candidates.size() == 3);
  qm::LexicalProvider lex;
  auto all = qm::filter_pairs(candidates, qb, nq, lex, {-1.0, 64});
  CHECK(all.size() == 3);
  auto strict = qm::filter_pairs(candidates, qb, nq, lex, {0.5, 64});
  REQUIRE_FALSE(strict.empty());
  CHECK(strict[0].qb_id == "a");
  CHECK(strict[0].similarity == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(qm::filter_pairs(candidates, qb, nq, lex, {1.5, 64}),
                  std::invalid_argument);
}

TEST_CASE("identical texts score 1 under any provider") {
  std::vector<qm::RawQuestion> qb = {rq("a", "Some clue. Final clue here.", "x")};
  std::vector<qm::RawQuestion> nq = {rq("n", "Final clue here.", "x")};
  TableProvider table({{"Final clue here.", {0.3, -2.0, 7.0}}});
  auto kept = qm::filter_pairs(qm::pair_by_answer(qb, nq), qb, nq, table, {});
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].similarity == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(kept[0].provider == qm::ProviderKind::Sidecar);
  CHECK(table.calls == 1);
}

TEST_CASE("boundary similarity is retained") {
  std::vector<qm::RawQuestion> qb = {rq("a", "left", "x")};
  std::vector<qm::RawQuestion> nq = {rq("n", "right", "x")};
  TableProvider table({{"left", {1.0, 0.0}}, {"right", {0.5, std::sqrt(0.75)}}});
  auto scored = qm::score_pairs(qm::pair_by_answer(qb, nq), qb, nq, table);
  REQUIRE(scored.size() == 1);
  CHECK(qm::apply_threshold(scored, scored[0].similarity).size() == 1);
  CHECK(qm::apply_threshold(scored, std::nextafter(scored[0].similarity, 2.0))
            .empty());
}

TEST_CASE("undefined similarity is skipped with a diagnostic") {
  std::vector<qm::RawQuestion> qb = {rq("a", "left", "x"), rq("b", "up", "x")};
  std::vector<qm::RawQuestion> nq = {rq("n", "right", "x")};
  TableProvider table(
      {{"left", {0.0, 0.0}}, {"up", {0.0, 1.0}}, {"right", {1.0, 1.0}}});
  qm::Diagnostics diags;
  auto scored =
      qm::score_pairs(qm::pair_by_answer(qb, nq), qb, nq, table, 64, &diags);
  REQUIRE(scored.size() == 1);
  CHECK(scored[0].qb_id == "b");
  CHECK(diags.size() == 1);
}

TEST_CASE("provider failure names the batch") {
  std::vector<qm::RawQuestion> qb, nq;
  for (int i = 0; i < 4; ++i) {
    qb.push_back(rq("q" + std::to_string(i), "qb text " + std::to_string(i), "x"));
    nq.push_back(rq("n" + std::to_string(i), "nq text " + std::to_string(i), "y"));
  }
  nq[0].answer = "x";
  FailingProvider failing;
  try {
    qm::score_pairs(qm::pair_by_answer(qb, nq), qb, nq, failing, 2);
    FAIL("expected Error");
  } catch (const qm::Error &e) {
    const std::string msg = e.what();
    CHECK(msg.find("batch 1") != std::string::npos);
    CHECK(msg.find("backend down") != std::string::npos);
  }
}

TEST_CASE("retained set shrinks monotonically as the threshold rises") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<qm::QuestionPair> scored;
  for (int i = 0; i < 500; ++i)
    scored.push_back({"q" + std::to_string(i), "n", "a", dist(rng),
                      qm::ProviderKind::Lexical});
  std::vector<double> thresholds;
  for (int i = 0; i < 20; ++i) thresholds.push_back(dist(rng));
  std::sort(thresholds.begin(), thresholds.end());
  std::set<std::string> previous;
  bool first = true;
  for (double t : thresholds) {
    std::set<std::string> ids;
    for (const auto &p : qm::apply_threshold(scored, t)) {
      ids.insert(p.qb_id);
      CHECK(p.similarity >= t);
    }
    if (!first)
      for (const auto &id : ids) CHECK(previous.count(id) == 1);
    previous = std::move(ids);
    first = false;
  }
}
