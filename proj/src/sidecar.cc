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

#include "quizmorph/sidecar.h"

#include <fcntl.h>
#include <netdb.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>

namespace quizmorph {

namespace {

SidecarError io_error(const std::string &what) {
  return SidecarError(what + ": " + std::strerror(errno), true);
}

// Shared line buffering over a readable descriptor.
class LineReader {
 public:
  bool next(int fd, std::string &line,
            const std::function<ssize_t(int, char *, std::size_t)> &read_fn) {
    for (;;) {
      auto nl = buffer_.find('\n');
      if (nl != std::string::npos) {
        line.assign(buffer_, 0, nl);
        buffer_.erase(0, nl + 1);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return true;
      }
      char chunk[4096];
      ssize_t n = read_fn(fd, chunk, sizeof chunk);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) return false;
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

 private:
  std::string buffer_;
};

void write_all(int fd, std::string_view data, bool socket) {
  while (!data.empty()) {
    ssize_t n = socket ? ::send(fd, data.data(), data.size(), MSG_NOSIGNAL)
                       : ::write(fd, data.data(), data.size());
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) throw io_error("sidecar write failed");
    data.remove_prefix(static_cast<std::size_t>(n));
  }
}

class TcpTransport : public Transport {
 public:
  explicit TcpTransport(int fd) : fd_(fd) {}
  ~TcpTransport() override { ::close(fd_); }

  void write_line(std::string_view line) override {
    std::string framed(line);
    framed.push_back('\n');
    write_all(fd_, framed, true);
  }
  bool read_line(std::string &line) override {
    return reader_.next(fd_, line, [](int fd, char *buf, std::size_t len) {
      return ::recv(fd, buf, len, 0);
    });
  }
  void shutdown() override { ::shutdown(fd_, SHUT_RDWR); }

 private:
  int fd_;
  LineReader reader_;
};

class ProcessTransport : public Transport {
 public:
  ProcessTransport(pid_t pid, int in_fd, int out_fd)
      : pid_(pid), in_fd_(in_fd), out_fd_(out_fd) {}
  ~ProcessTransport() override {
    shutdown();
    ::close(in_fd_);
    ::close(out_fd_);
    int status = 0;
    while (::waitpid(pid_, &status, 0) < 0 && errno == EINTR) {
    }
  }

  void write_line(std::string_view line) override {
    std::string framed(line);
    framed.push_back('\n');
    write_all(in_fd_, framed, false);
  }
  bool read_line(std::string &line) override {
    return reader_.next(out_fd_, line, [](int fd, char *buf, std::size_t len) {
      return ::read(fd, buf, len);
    });
  }
  void shutdown() override {
    // The shell may fork the command, so signal the whole group.
    if (!killed_.exchange(true)) ::kill(-pid_, SIGTERM);
  }

 private:
  pid_t pid_;
  int in_fd_;
  int out_fd_;
  std::atomic<bool> killed_{false};
  LineReader reader_;
};

}  // namespace

std::unique_ptr<Transport> connect_tcp(const std::string &host,
                                       std::uint16_t port) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo *found = nullptr;
  const std::string service = std::to_string(port);
  if (int rc = ::getaddrinfo(host.c_str(), service.c_str(), &hints, &found))
    throw SidecarError("cannot resolve sidecar host " + host + ": " +
                           ::gai_strerror(rc),
                       true);
  int fd = -1;
  for (addrinfo *ai = found; ai; ai = ai->ai_next) {
    fd = ::socket(ai->ai_family, ai->ai_socktype | SOCK_CLOEXEC,
                  ai->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(found);
  if (fd < 0) throw io_error("cannot connect to sidecar at " + host + ":" + service);
  return std::make_unique<TcpTransport>(fd);
}

std::unique_ptr<Transport> spawn_process(const std::string &command) {
  ::signal(SIGPIPE, SIG_IGN);
  int to_child[2], from_child[2];
  if (::pipe2(to_child, O_CLOEXEC) != 0) throw io_error("pipe");
  if (::pipe2(from_child, O_CLOEXEC) != 0) {
    ::close(to_child[0]);
    ::close(to_child[1]);
    throw io_error("pipe");
  }
  pid_t pid = ::fork();
  if (pid < 0) {
    for (int fd : {to_child[0], to_child[1], from_child[0], from_child[1]})
      ::close(fd);
    throw io_error("fork");
  }
  if (pid == 0) {
    ::setpgid(0, 0);
    ::dup2(to_child[0], STDIN_FILENO);
    ::dup2(from_child[1], STDOUT_FILENO);
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char *>(nullptr));
    ::_exit(127);
  }
  ::setpgid(pid, pid);
  ::close(to_child[0]);
  ::close(from_child[1]);
  return std::make_unique<ProcessTransport>(pid, to_child[1], from_child[0]);
}

std::unique_ptr<Transport> open_transport(std::string_view endpoint) {
  if (endpoint.starts_with("exec:"))
    return spawn_process(std::string(endpoint.substr(5)));
  std::string_view addr = endpoint;
  if (addr.starts_with("tcp://")) addr.remove_prefix(6);
  auto colon = addr.rfind(':');
  if (colon == std::string_view::npos || colon == 0 || colon + 1 == addr.size())
    throw Error("sidecar endpoint must be host:port, tcp://host:port or "
                "exec:<command>, got '" + std::string(endpoint) + "'");
  std::string host(addr.substr(0, colon));
  if (host.size() > 2 && host.front() == '[' && host.back() == ']')
    host = host.substr(1, host.size() - 2);
  int port = 0;
  for (char c : addr.substr(colon + 1)) {
    if (c < '0' || c > '9' || port > 65535)
      throw Error("bad sidecar port in '" + std::string(endpoint) + "'");
    port = port * 10 + (c - '0');
  }
  if (port <= 0 || port > 65535)
    throw Error("bad sidecar port in '" + std::string(endpoint) + "'");
  return connect_tcp(host, static_cast<std::uint16_t>(port));
}

// ---------------------------------------------------------------------------

struct SidecarClient::Connection {
  std::unique_ptr<Transport> transport;
  std::mutex write_mutex;
  std::mutex mutex;  // guards everything below
  std::map<std::int64_t, std::promise<Json>> pending;
  bool closed = false;
  std::optional<std::size_t> ready_dim;
  std::thread reader;

  ~Connection() {
    if (transport) transport->shutdown();
    if (reader.joinable()) reader.join();
  }

  void read_loop() {
    std::string line;
    while (transport->read_line(line)) {
      Json msg = Json::parse(line, nullptr, false);
      if (msg.is_discarded() || !msg.is_object()) continue;
      if (msg.contains("ready")) {
        std::lock_guard lock(mutex);
        if (msg.contains("embed_dim") && msg["embed_dim"].is_number_unsigned())
          ready_dim = msg["embed_dim"].get<std::size_t>();
        continue;
      }
      auto id = msg.find("req_id");
      if (id == msg.end() || !id->is_number_integer()) continue;
      std::lock_guard lock(mutex);
      auto it = pending.find(id->get<std::int64_t>());
      if (it == pending.end()) continue;  // late reply to an abandoned request
      it->second.set_value(std::move(msg));
      pending.erase(it);
    }
    std::lock_guard lock(mutex);
    closed = true;
    for (auto &[req, promise] : pending)
      promise.set_exception(std::make_exception_ptr(
          SidecarError("sidecar connection closed", true)));
    pending.clear();
  }
};

SidecarClient::SidecarClient(SidecarOptions options)
    : SidecarClient(options, [endpoint = options.endpoint] {
        return open_transport(endpoint);
      }) {}

SidecarClient::SidecarClient(SidecarOptions options, TransportFactory factory)
    : options_(std::move(options)), factory_(std::move(factory)) {
  if (options_.batch_size == 0) options_.batch_size = 1;
  if (options_.max_attempts < 1) options_.max_attempts = 1;
}

SidecarClient::~SidecarClient() {
  std::shared_ptr<Connection> conn;
  {
    std::lock_guard lock(mutex_);
    conn = std::move(conn_);
  }
}

std::optional<std::size_t> SidecarClient::embed_dim() const {
  std::lock_guard lock(mutex_);
  return dim_;
}

std::shared_ptr<SidecarClient::Connection> SidecarClient::connection() {
  std::lock_guard lock(mutex_);
  if (conn_) {
    std::lock_guard conn_lock(conn_->mutex);
    if (!conn_->closed) return conn_;
  }
  auto conn = std::make_shared<Connection>();
  conn->transport = factory_();
  conn->reader = std::thread([raw = conn.get()] { raw->read_loop(); });
  ++connections_opened_;
  conn_ = conn;
  return conn;
}

void SidecarClient::reset(const std::shared_ptr<Connection> &conn) {
  {
    std::lock_guard lock(mutex_);
    if (conn_ == conn) conn_.reset();
  }
  conn->transport->shutdown();
}

std::future<Json> SidecarClient::submit(Op op,
                                        std::span<const std::string> texts,
                                        std::shared_ptr<Connection> &conn,
                                        std::int64_t &req_id) {
  conn = connection();
  req_id = next_id_++;
  Json request = {{"req_id", req_id},
                  {"op", op == Op::Embed ? "embed" : "score"},
                  {"texts", Json::array()}};
  for (const std::string &t : texts) request["texts"].push_back(t);
  const std::string line =
      request.dump(-1, ' ', false, Json::error_handler_t::replace);

  std::future<Json> future;
  {
    std::lock_guard lock(conn->mutex);
    if (conn->closed) throw SidecarError("sidecar connection closed", true);
    future = conn->pending[req_id].get_future();
  }
  try {
    std::lock_guard lock(conn->write_mutex);
    conn->transport->write_line(line);
  } catch (...) {
    std::lock_guard lock(conn->mutex);
    conn->pending.erase(req_id);
    throw;
  }
  ++requests_sent_;
  return future;
}

Json SidecarClient::await(std::future<Json> &future,
                          const std::shared_ptr<Connection> &conn,
                          std::int64_t req_id) {
  if (future.wait_for(options_.timeout) != std::future_status::ready) {
    std::lock_guard lock(conn->mutex);
    conn->pending.erase(req_id);
    throw SidecarError("sidecar request " + std::to_string(req_id) +
                           " timed out after " +
                           std::to_string(options_.timeout.count()) + " ms",
                       true);
  }
  return future.get();
}

Json SidecarClient::validate(Op op, const Json &response, std::size_t expected,
                             const std::shared_ptr<Connection> &conn) {
  if (auto err = response.find("error"); err != response.end())
    throw SidecarError("sidecar reported an error: " +
                           (err->is_string() ? err->get<std::string>()
                                             : err->dump()),
                       false);
  auto protocol = [&](const std::string &what) {
    reset(conn);
    return SidecarError("sidecar protocol error: " + what, true);
  };
  const char *key = op == Op::Embed ? "vectors" : "scores";
  auto it = response.find(key);
  if (it == response.end() || !it->is_array())
    throw protocol(std::string("response lacks `") + key + "`");
  if (it->size() != expected)
    throw protocol("expected " + std::to_string(expected) + " results, got " +
                   std::to_string(it->size()));

  if (op == Op::Score) {
    for (const Json &s : *it)
      if (!s.is_number()) throw protocol("non-numeric score");
    return *it;
  }

  std::size_t dim = 0;
  for (const Json &v : *it) {
    if (!v.is_array() || v.empty())
      throw protocol("embedding is not a nonempty array");
    for (const Json &x : v)
      if (!x.is_number()) throw protocol("non-numeric embedding component");
    if (dim == 0) dim = v.size();
    if (v.size() != dim)
      throw protocol("embeddings of dimension " + std::to_string(dim) +
                     " and " + std::to_string(v.size()) + " in one response");
  }
  std::optional<std::size_t> ready_dim;
  {
    std::lock_guard lock(conn->mutex);
    ready_dim = conn->ready_dim;
  }
  if (ready_dim && *ready_dim != dim)
    throw protocol("announced dimension " + std::to_string(*ready_dim) +
                   " but sent " + std::to_string(dim));
  std::optional<std::size_t> previous;
  {
    std::lock_guard lock(mutex_);
    if (!dim_) dim_ = dim;
    if (*dim_ != dim) previous = dim_;
  }
  if (previous)
    throw protocol("dimension changed from " + std::to_string(*previous) +
                   " to " + std::to_string(dim));
  return *it;
}

std::vector<Json> SidecarClient::run(Op op, std::span<const std::string> texts) {
  struct Slot {
    std::span<const std::string> texts;
    std::size_t first = 0;
    std::future<Json> future;
    std::shared_ptr<Connection> conn;
    std::int64_t req_id = 0;
    std::exception_ptr error;
  };
  auto send = [&](Slot &slot) {
    slot.error = nullptr;
    try {
      slot.future = submit(op, slot.texts, slot.conn, slot.req_id);
    } catch (const SidecarError &) {
      slot.error = std::current_exception();
    } catch (const std::exception &e) {
      slot.error = std::make_exception_ptr(SidecarError(e.what(), false));
    }
  };

  // Every batch goes out before the first wait.
  std::vector<Slot> slots;
  for (std::size_t begin = 0; begin < texts.size();
       begin += options_.batch_size) {
    Slot slot;
    slot.first = begin;
    slot.texts = texts.subspan(
        begin, std::min(options_.batch_size, texts.size() - begin));
    slots.push_back(std::move(slot));
  }
  for (Slot &slot : slots) send(slot);

  const char *op_name = op == Op::Embed ? "embed" : "score";
  std::vector<Json> results(slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    Slot &slot = slots[i];
    auto backoff = options_.initial_backoff;
    for (int attempt = 1;; ++attempt) {
      try {
        if (slot.error) std::rethrow_exception(slot.error);
        Json response = await(slot.future, slot.conn, slot.req_id);
        results[i] = validate(op, response, slot.texts.size(), slot.conn);
        break;
      } catch (const SidecarError &e) {
        if (!e.retriable() || attempt >= options_.max_attempts)
          throw SidecarError(
              std::string("sidecar ") + op_name + " batch " +
                  std::to_string(i) + " (texts " + std::to_string(slot.first) +
                  ".." + std::to_string(slot.first + slot.texts.size() - 1) +
                  ") failed after " + std::to_string(attempt) +
                  " attempt(s): " + e.what(),
              false);
        std::this_thread::sleep_for(backoff);
        backoff *= 2;
        send(slot);
      }
    }
  }
  return results;
}

std::vector<Embedding> SidecarClient::embed(std::span<const std::string> texts) {
  std::vector<Embedding> out;
  out.reserve(texts.size());
  for (const Json &batch : run(Op::Embed, texts))
    for (const Json &v : batch) out.push_back(v.get<Embedding>());
  return out;
}

std::vector<double> SidecarClient::score(std::span<const std::string> texts) {
  std::vector<double> out;
  out.reserve(texts.size());
  for (const Json &batch : run(Op::Score, texts))
    for (const Json &s : batch) out.push_back(std::clamp(s.get<double>(), 0.0, 1.0));
  return out;
}

}  // namespace quizmorph
