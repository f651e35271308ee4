#pragma once

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "hyperforge/engine.h"

namespace httplib {
class Server;
}

namespace hyperforge::io {

struct ServerOptions {
  double default_r = 2.0;
  int default_cutoff = 14;
};

struct Session {
  std::mutex mu;
  EngineState state;
};

struct Job {
  enum class Status { kPending, kRunning, kDone, kFailed };
  std::mutex mu;
  std::condition_variable cv;
  Status status = Status::kPending;
  nlohmann::json result;
};

// In-memory session store behind a JSON-over-HTTP API. Requests on one
// session are serialized by the session mutex; verification jobs run on
// their own threads and are polled by id.
class Service {
 public:
  explicit Service(ServerOptions opts = {});
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Binds to host:port (port 0 picks a free one) and returns the port.
  int bind(const std::string& host, int port);
  void listen();  // blocks until stop()
  void start();   // listen on a background thread
  void stop();

 private:
  void routes();
  std::shared_ptr<Session> find_session(const std::string& id);
  std::shared_ptr<Job> find_job(const std::string& id);

  ServerOptions opts_;
  std::unique_ptr<httplib::Server> http_;
  std::thread listener_;
  std::mutex store_mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::map<std::string, std::shared_ptr<Job>> jobs_;
  std::vector<std::thread> workers_;
  std::uint64_t next_session_ = 1;
  std::uint64_t next_job_ = 1;
};

}  // namespace hyperforge::io
