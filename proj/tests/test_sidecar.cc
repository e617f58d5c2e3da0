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

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <atomic>
#include <chrono>
#include <functional>
#include <mutex>
#include <random>
#include <thread>

#include "doctest.h"
#include "quizmorph/ingest.h"
#include "quizmorph/pairing.h"
#include "quizmorph/quality.h"
#include "quizmorph/sidecar.h"
#include "quizmorph/text_util.h"
#include "test_support.h"

namespace qm = quizmorph;
using namespace std::chrono_literals;
using qm::testing::fixture;

namespace {

// One accepted socket with line framing.
class Peer {
 public:
  explicit Peer(int fd) : fd_(fd) {}
  ~Peer() { ::close(fd_); }
  bool read(qm::Json &out) {
    std::string line;
    for (;;) {
      auto nl = buffer_.find('\n');
      if (nl != std::string::npos) {
        line = buffer_.substr(0, nl);
        buffer_.erase(0, nl + 1);
        out = qm::Json::parse(line);
        return true;
      }
      char chunk[4096];
      ssize_t n = ::recv(fd_, chunk, sizeof chunk, 0);
      if (n <= 0) return false;
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }
  void write(const qm::Json &msg) {
    std::string line = msg.dump() + "\n";
    ::send(fd_, line.data(), line.size(), MSG_NOSIGNAL);
  }

 private:
  int fd_;
  std::string buffer_;
};

// Loopback server; each accepted connection runs the script with its
// zero-based connection number.
class ScriptedServer {
 public:
  using Script = std::function<void(Peer &, int)>;

  explicit ScriptedServer(Script script) : script_(std::move(script)) {
    listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    REQUIRE(listen_fd_ >= 0);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    REQUIRE(::bind(listen_fd_, reinterpret_cast<sockaddr *>(&addr), sizeof addr) == 0);
    REQUIRE(::listen(listen_fd_, 8) == 0);
    socklen_t len = sizeof addr;
    ::getsockname(listen_fd_, reinterpret_cast<sockaddr *>(&addr), &len);
    port_ = ntohs(addr.sin_port);
    thread_ = std::thread([this] {
      for (int n = 0;; ++n) {
        int fd = ::accept(listen_fd_, nullptr, nullptr);
        if (fd < 0) return;
        workers_.emplace_back([this, fd, n] {
          Peer peer(fd);
          script_(peer, n);
        });
      }
    });
  }
  ~ScriptedServer() {
    ::shutdown(listen_fd_, SHUT_RDWR);
    ::close(listen_fd_);
    thread_.join();
    for (auto &w : workers_) w.join();
  }
  std::string endpoint() const {
    return "tcp://127.0.0.1:" + std::to_string(port_);
  }
  qm::SidecarOptions options() const {
    qm::SidecarOptions o;
    o.endpoint = endpoint();
    o.timeout = 2000ms;
    o.initial_backoff = 5ms;
    return o;
  }

 private:
  Script script_;
  int listen_fd_ = -1;
  int port_ = 0;
  std::thread thread_;
  std::vector<std::thread> workers_;
};

// Embedding that identifies its text: [length, first byte].
qm::Json tag_vector(const std::string &text) {
  return qm::Json::array({static_cast<double>(text.size()),
                          text.empty() ? 0.0 : static_cast<double>(text[0])});
}

qm::Json answer(const qm::Json &req) {
  qm::Json out{{"req_id", req.at("req_id")}};
  qm::Json results = qm::Json::array();
  for (const auto &t : req.at("texts")) {
    if (req.at("op") == "embed")
      results.push_back(tag_vector(t.get<std::string>()));
    else
      results.push_back(static_cast<double>(t.get<std::string>().size()) / 10.0);
  }
  out[req.at("op") == "embed" ? "vectors" : "scores"] = results;
  return out;
}

void serve_in_order(Peer &peer, int) {
  qm::Json req;
  while (peer.read(req)) peer.write(answer(req));
}

std::vector<std::string> numbered_texts(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(std::string(1, static_cast<char>('a' + i % 26)) +
                  std::string(i, 'x'));
  return out;
}

std::string mock_command(const std::string &args) {
  return std::string("exec:") + QUIZMORPH_MOCK_SIDECAR + " " + args;
}

qm::SidecarOptions mock_options(const std::string &args) {
  qm::SidecarOptions o;
  o.endpoint = mock_command(args);
  o.timeout = 3000ms;
  o.initial_backoff = 5ms;
  return o;
}

}  // namespace

TEST_CASE("out-of-order responses are correlated by req_id") {
  ScriptedServer server([](Peer &peer, int) {
    std::vector<qm::Json> held;
    qm::Json req;
    while (held.size() < 5 && peer.read(req)) held.push_back(req);
    std::mt19937 rng(7);
    std::shuffle(held.begin(), held.end(), rng);
    std::reverse(held.begin(), held.end());
    for (const auto &r : held) peer.write(answer(r));
    while (peer.read(req)) peer.write(answer(req));
  });
  auto opts = server.options();
  opts.batch_size = 3;
  qm::SidecarClient client(opts);
  auto texts = numbered_texts(14);
  auto vectors = client.embed(texts);
  REQUIRE(vectors.size() == texts.size());
  for (std::size_t i = 0; i < texts.size(); ++i)
    CHECK(qm::Json(vectors[i]) == tag_vector(texts[i]));
  CHECK(client.requests_sent() == 5);
  CHECK(client.connections_opened() == 1);
  CHECK(client.embed_dim() == 2u);
}

TEST_CASE("batch contract") {
  ScriptedServer server(serve_in_order);
  qm::SidecarClient client(server.options());
  std::vector<std::string> one = {"solo"};
  auto v = client.embed(one);
  REQUIRE(v.size() == 1);
  CHECK(v[0].size() == 2);
  auto texts = numbered_texts(64);
  CHECK(client.embed(texts).size() == 64);
  CHECK(client.requests_sent() == 2);
  CHECK(client.embed(std::vector<std::string>{}).empty());
}

TEST_CASE("scores are clamped") {
  ScriptedServer server([](Peer &peer, int) {
    qm::Json req;
    while (peer.read(req))
      peer.write({{"req_id", req["req_id"]}, {"scores", {1.5, -0.25, 0.5}}});
  });
  qm::SidecarClient client(server.options());
  std::vector<std::string> texts = {"a", "b", "c"};
  CHECK(client.score(texts) == std::vector<double>{1.0, 0.0, 0.5});
}

TEST_CASE("timeout is retried on the same connection") {
  ScriptedServer server([](Peer &peer, int) {
    qm::Json req;
    bool dropped = false;
    while (peer.read(req)) {
      if (!dropped) {
        dropped = true;
        continue;
      }
      peer.write(answer(req));
    }
  });
  auto opts = server.options();
  opts.timeout = 150ms;
  qm::SidecarClient client(opts);
  std::vector<std::string> texts = {"alpha", "beta"};
  auto v = client.embed(texts);
  CHECK(qm::Json(v[1]) == tag_vector("beta"));
  CHECK(client.requests_sent() == 2);
  CHECK(client.connections_opened() == 1);
}

TEST_CASE("persistent timeout fails after the attempt budget") {
  ScriptedServer server([](Peer &peer, int) {
    qm::Json req;
    while (peer.read(req)) {
    }
  });
  auto opts = server.options();
  opts.timeout = 50ms;
  qm::SidecarClient client(opts);
  std::vector<std::string> texts = {"alpha"};
  auto start = std::chrono::steady_clock::now();
  try {
    client.embed(texts);
    FAIL("expected SidecarError");
  } catch (const qm::SidecarError &e) {
    std::string msg = e.what();
    CHECK(msg.find("embed batch 0") != std::string::npos);
    CHECK(msg.find("3 attempt(s)") != std::string::npos);
    CHECK(msg.find("timed out") != std::string::npos);
  }
  // Three timeouts plus backoffs of 5 ms and 10 ms.
  CHECK(std::chrono::steady_clock::now() - start >= 165ms);
  CHECK(client.requests_sent() == 3);
}

TEST_CASE("backoff doubles between attempts") {
  std::mutex m;
  std::vector<std::chrono::steady_clock::time_point> arrivals;
  ScriptedServer server([&](Peer &peer, int) {
    qm::Json req;
    while (peer.read(req)) {
      std::lock_guard lock(m);
      arrivals.push_back(std::chrono::steady_clock::now());
      peer.write({{"req_id", req["req_id"]}, {"scores", qm::Json::array()}});
    }
  });
  auto opts = server.options();
  opts.initial_backoff = 40ms;
  qm::SidecarClient client(opts);
  std::vector<std::string> texts = {"x"};
  CHECK_THROWS_AS(client.score(texts), qm::SidecarError);
  std::lock_guard lock(m);
  REQUIRE(arrivals.size() == 3);
  CHECK(arrivals[1] - arrivals[0] >= 40ms);
  CHECK(arrivals[2] - arrivals[1] >= 80ms);
}

TEST_CASE("error responses are not retried") {
  ScriptedServer server([](Peer &peer, int) {
    qm::Json req;
    while (peer.read(req))
      peer.write({{"req_id", req["req_id"]}, {"error", "model not loaded"}});
  });
  qm::SidecarClient client(server.options());
  std::vector<std::string> texts = {"x"};
  try {
    client.score(texts);
    FAIL("expected SidecarError");
  } catch (const qm::SidecarError &e) {
    CHECK(std::string(e.what()).find("model not loaded") != std::string::npos);
    CHECK(std::string(e.what()).find("1 attempt(s)") != std::string::npos);
    CHECK_FALSE(e.retriable());
  }
  CHECK(client.requests_sent() == 1);
}

TEST_CASE("dimension inconsistency resets the connection") {
  ScriptedServer server([](Peer &peer, int conn) {
    peer.write({{"ready", true}, {"embed_dim", 2}});
    qm::Json req;
    while (peer.read(req)) {
      if (conn == 0) {
        peer.write({{"req_id", req["req_id"]}, {"vectors", {{1.0, 2.0}, {1.0}}}});
      } else {
        peer.write(answer(req));
      }
    }
  });
  qm::SidecarClient client(server.options());
  std::vector<std::string> texts = {"ab", "cd"};
  auto v = client.embed(texts);
  CHECK(qm::Json(v[0]) == tag_vector("ab"));
  CHECK(client.connections_opened() == 2);
}

TEST_CASE("dimension must match the announced dimension") {
  ScriptedServer server([](Peer &peer, int) {
    peer.write({{"ready", true}, {"embed_dim", 3}});
    serve_in_order(peer, 0);
  });
  qm::SidecarClient client(server.options());
  std::vector<std::string> texts = {"ab"};
  try {
    client.embed(texts);
    FAIL("expected SidecarError");
  } catch (const qm::SidecarError &e) {
    CHECK(std::string(e.what()).find("announced dimension 3") != std::string::npos);
  }
  CHECK(client.connections_opened() == 3);
}

TEST_CASE("wrong result count is a protocol error") {
  ScriptedServer server([](Peer &peer, int conn) {
    qm::Json req;
    while (peer.read(req)) {
      if (conn == 0)
        peer.write({{"req_id", req["req_id"]}, {"scores", {0.1}}});
      else
        peer.write(answer(req));
    }
  });
  qm::SidecarClient client(server.options());
  std::vector<std::string> texts = {"ab", "abcd"};
  CHECK(client.score(texts) == std::vector<double>{0.2, 0.4});
  CHECK(client.connections_opened() == 2);
}

TEST_CASE("lost connection is re-established") {
  ScriptedServer server([](Peer &peer, int conn) {
    qm::Json req;
    if (conn == 0) {
      if (peer.read(req)) peer.write(answer(req));
      return;  // closes after one response
    }
    serve_in_order(peer, conn);
  });
  auto opts = server.options();
  opts.batch_size = 2;
  qm::SidecarClient client(opts);
  auto texts = numbered_texts(6);
  auto v = client.embed(texts);
  for (std::size_t i = 0; i < texts.size(); ++i)
    CHECK(qm::Json(v[i]) == tag_vector(texts[i]));
  CHECK(client.connections_opened() == 2);
}

TEST_CASE("late and unknown responses are ignored") {
  ScriptedServer server([](Peer &peer, int) {
    qm::Json req;
    bool first = true;
    while (peer.read(req)) {
      if (first) {
        first = false;
        continue;  // answered late, below
      }
      peer.write({{"req_id", 9999}, {"scores", {0.9}}});
      qm::Json stale = answer(req);
      stale["req_id"] = req["req_id"].get<int>() - 1;
      stale["scores"] = {0.7};
      peer.write(stale);
      peer.write(answer(req));
    }
  });
  auto opts = server.options();
  opts.timeout = 100ms;
  qm::SidecarClient client(opts);
  std::vector<std::string> texts = {"abc"};
  CHECK(client.score(texts) == std::vector<double>{0.3});
}

TEST_CASE("endpoint parsing") {
  CHECK_THROWS_AS(qm::open_transport("localhost"), qm::Error);
  CHECK_THROWS_AS(qm::open_transport("tcp://host:"), qm::Error);
  CHECK_THROWS_AS(qm::open_transport("host:99999"), qm::Error);
  CHECK_THROWS_AS(qm::open_transport("host:12ab"), qm::Error);
  ScriptedServer server(serve_in_order);
  auto port = server.endpoint().substr(server.endpoint().rfind(':') + 1);
  qm::SidecarOptions o = server.options();
  o.endpoint = "127.0.0.1:" + port;
  qm::SidecarClient plain(o);
  CHECK(plain.score(std::vector<std::string>{"abcde"}) == std::vector<double>{0.5});
}

TEST_CASE("unreachable endpoint fails after retries") {
  qm::SidecarOptions o;
  o.endpoint = "tcp://127.0.0.1:1";
  o.initial_backoff = 1ms;
  qm::SidecarClient client(o);
  CHECK_THROWS_AS(client.embed(std::vector<std::string>{"x"}), qm::SidecarError);
}

TEST_CASE("stdio mock: reordered pipelined batches") {
  auto opts = mock_options("--dim 16 --reorder 4");
  opts.batch_size = 5;
  qm::SidecarClient client(opts);
  auto texts = numbered_texts(20);
  for (auto &t : texts) t += " shared word";
  auto v = client.embed(texts);
  REQUIRE(v.size() == 20);
  CHECK(client.embed_dim() == 16u);
  CHECK(client.requests_sent() == 4);
  // The mock hashes words into buckets; recompute the first vector.
  std::vector<double> expected(16, 0.0);
  for (const auto &w : qm::split_whitespace(texts[7]))
    expected[qm::fnv1a64(w) % 16] += 1.0;
  CHECK(v[7] == expected);
}

TEST_CASE("stdio mock: dropped request recovers by retry") {
  auto opts = mock_options("--drop-first 1");
  opts.timeout = 200ms;
  qm::SidecarClient client(opts);
  std::vector<std::string> texts = {"one two"};
  CHECK(client.embed(texts).size() == 1);
  CHECK(client.requests_sent() == 2);
}

TEST_CASE("stdio mock: child exit triggers a respawn") {
  auto opts = mock_options("--close-after 1");
  opts.batch_size = 1;
  qm::SidecarClient client(opts);
  std::vector<std::string> texts = {"a", "b", "c"};
  CHECK(client.score(texts).size() == 3);
  CHECK(client.connections_opened() >= 2);
}

TEST_CASE("stdio mock: a failed batch fails only its caller") {
  qm::SidecarClient client(mock_options("--error-on poison"));
  std::vector<std::string> good = {"fine text", "also fine"};
  std::vector<std::string> bad = {"poison pill"};
  std::atomic<int> good_ok{0}, bad_failed{0};
  std::vector<std::thread> threads;
  for (int i = 0; i < 4; ++i) {
    threads.emplace_back([&] {
      if (client.score(good).size() == 2) ++good_ok;
    });
    threads.emplace_back([&] {
      try {
        client.score(bad);
      } catch (const qm::SidecarError &) {
        ++bad_failed;
      }
    });
  }
  for (auto &t : threads) t.join();
  CHECK(good_ok == 4);
  CHECK(bad_failed == 4);
  CHECK(client.connections_opened() == 1);
}

TEST_CASE("stdio mock: canned lexical vectors reproduce lexical pairing") {
  auto qb = qm::load_dataset(fixture("qb.jsonl"), qm::Source::TriviaQB).records;
  auto nq = qm::load_dataset(fixture("nq.jsonl"), qm::Source::NaturalNQ).records;
  auto candidates = qm::pair_by_answer(qb, nq);

  // Collect the texts pairing will embed and freeze their lexical vectors.
  std::vector<std::string> corpus;
  for (const auto &c : candidates) {
    for (const auto &q : qb)
      if (q.id == c.qb_id) corpus.push_back(qm::last_sentence(q.text));
    for (const auto &n : nq)
      if (n.id == c.nq_id) corpus.push_back(std::string(qm::trim(n.text)));
  }
  std::sort(corpus.begin(), corpus.end());
  corpus.erase(std::unique(corpus.begin(), corpus.end()), corpus.end());
  qm::LexicalProvider lexical;
  lexical.prepare(corpus);
  auto vectors = lexical.embed(corpus);
  qm::Json table = qm::Json::object();
  for (std::size_t i = 0; i < corpus.size(); ++i) table[corpus[i]] = vectors[i];
  qm::testing::TempDir dir;
  auto table_path = dir.path() / "table.json";
  qm::testing::spit(table_path, table.dump());

  auto opts = mock_options("--no-ready --table '" + table_path.string() + "'");
  opts.batch_size = 4;
  qm::SidecarClient client(opts);
  qm::SidecarSimilarityProvider provider(client);
  auto scored = qm::score_pairs(candidates, qb, nq, provider, 64);
  auto expected = qm::Json::parse(qm::testing::slurp(fixture("oracle_values.json")))
                      .at("tfidf_fixture_pairs");
  REQUIRE(scored.size() == expected.size());
  for (const auto &p : scored) {
    CHECK(p.provider == qm::ProviderKind::Sidecar);
    CHECK(std::abs(p.similarity -
                   expected.at(p.qb_id + "|" + p.nq_id).get<double>()) < 1e-12);
  }
}

TEST_CASE("stdio mock: quality filtering through the sidecar") {
  std::vector<qm::GeneratedQuestion> qs;
  for (int i = 0; i < 10; ++i) {
    qm::GeneratedQuestion g;
    g.id = "g" + std::to_string(i);
    g.text = "question number " + std::to_string(i * 7);
    qs.push_back(g);
  }
  {
    qm::SidecarClient client(mock_options("--score 0.9"));
    qm::SidecarQualityScorer scorer(client);
    CHECK(qm::filter_wellformed(qs, scorer, 0.5).retained.size() == 10);
  }
  {
    qm::SidecarClient client(mock_options("--score 0.5"));
    qm::SidecarQualityScorer scorer(client);
    CHECK(qm::filter_wellformed(qs, scorer, 0.5).retained.empty());
  }
  {
    qm::SidecarClient client(mock_options(""));
    qm::SidecarQualityScorer scorer(client);
    auto result = qm::filter_wellformed(qs, scorer, 0.5, 3);
    std::vector<std::string> texts;
    for (const auto &q : qs) texts.push_back(q.text);
    auto direct = client.score(texts);
    std::vector<std::string> want, got;
    for (std::size_t i = 0; i < qs.size(); ++i)
      if (direct[i] > 0.5) want.push_back(qs[i].id);
    for (const auto &q : result.retained) got.push_back(q.id);
    CHECK(got == want);
  }
}
