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

#ifndef QUIZMORPH_SIDECAR_H_
#define QUIZMORPH_SIDECAR_H_

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "quizmorph/error.h"
#include "quizmorph/jsonl.h"
#include "quizmorph/pairing.h"
#include "quizmorph/quality.h"

namespace quizmorph {

// Line-oriented byte stream to a sidecar.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual void write_line(std::string_view line) = 0;
  // Blocks for the next line; false at end of stream.
  virtual bool read_line(std::string &line) = 0;
  // Unblocks a pending read_line(); the transport is unusable afterwards.
  virtual void shutdown() = 0;
};

std::unique_ptr<Transport> connect_tcp(const std::string &host,
                                       std::uint16_t port);
// Runs `command` under /bin/sh and talks to its stdin/stdout.
std::unique_ptr<Transport> spawn_process(const std::string &command);

// "host:port", "tcp://host:port" or "exec:<command>".
std::unique_ptr<Transport> open_transport(std::string_view endpoint);

class SidecarError : public Error {
 public:
  explicit SidecarError(const std::string &what, bool retriable)
      : Error(what), retriable_(retriable) {}
  bool retriable() const { return retriable_; }

 private:
  bool retriable_;
};

struct SidecarOptions {
  std::string endpoint;
  std::chrono::milliseconds timeout{30000};
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{500};
  std::size_t batch_size = 64;
};

// Newline-delimited JSON client. Requests are pipelined on one connection
// and matched to responses by req_id, so arrival order does not matter.
class SidecarClient {
 public:
  using TransportFactory = std::function<std::unique_ptr<Transport>()>;

  explicit SidecarClient(SidecarOptions options);
  SidecarClient(SidecarOptions options, TransportFactory factory);
  ~SidecarClient();
  SidecarClient(const SidecarClient &) = delete;
  SidecarClient &operator=(const SidecarClient &) = delete;

  std::vector<Embedding> embed(std::span<const std::string> texts);
  // Scores are clamped to [0, 1].
  std::vector<double> score(std::span<const std::string> texts);

  std::optional<std::size_t> embed_dim() const;
  std::size_t connections_opened() const { return connections_opened_; }
  std::size_t requests_sent() const { return requests_sent_; }

 private:
  struct Connection;
  enum class Op { Embed, Score };

  std::shared_ptr<Connection> connection();
  void reset(const std::shared_ptr<Connection> &conn);
  std::future<Json> submit(Op op, std::span<const std::string> texts,
                           std::shared_ptr<Connection> &conn,
                           std::int64_t &req_id);
  Json await(std::future<Json> &future, const std::shared_ptr<Connection> &conn,
             std::int64_t req_id);
  Json validate(Op op, const Json &response, std::size_t expected,
                const std::shared_ptr<Connection> &conn);
  std::vector<Json> run(Op op, std::span<const std::string> texts);

  SidecarOptions options_;
  TransportFactory factory_;
  mutable std::mutex mutex_;
  std::shared_ptr<Connection> conn_;
  std::optional<std::size_t> dim_;
  std::atomic<std::int64_t> next_id_{1};
  std::atomic<std::size_t> connections_opened_{0};
  std::atomic<std::size_t> requests_sent_{0};
};

class SidecarSimilarityProvider : public SimilarityProvider {
 public:
  explicit SidecarSimilarityProvider(SidecarClient &client) : client_(client) {}
  std::vector<Embedding> embed(std::span<const std::string> texts) override {
    return client_.embed(texts);
  }
  ProviderKind kind() const override { return ProviderKind::Sidecar; }

 private:
  SidecarClient &client_;
};

class SidecarQualityScorer : public QualityScorer {
 public:
  explicit SidecarQualityScorer(SidecarClient &client) : client_(client) {}
  std::vector<double> score(std::span<const std::string> texts) override {
    return client_.score(texts);
  }
  std::string_view name() const override { return "sidecar"; }

 private:
  SidecarClient &client_;
};

}  // namespace quizmorph

#endif  // QUIZMORPH_SIDECAR_H_
