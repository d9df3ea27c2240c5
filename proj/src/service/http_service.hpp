#pragma once

#include "service/job_manager.hpp"

#include <memory>
#include <optional>
#include <string>
#include <thread>

namespace httplib {
class Server;
}

namespace elminer {

struct ServiceConfig {
  std::string data_dir = "elminer-data";
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  int job_concurrency = 2;
  std::optional<std::string> ontology_file;
  std::optional<std::string> ui_dir;  // static files served at /
};

// JSON-over-HTTP API plus server-sent events for live results.
class HttpService {
 public:
  explicit HttpService(ServiceConfig config);
  ~HttpService();

  // Binds and serves on a background thread. Throws std::runtime_error if binding fails.
  void start();
  void stop();
  int port() const { return port_; }
  JobManager& jobs() { return *manager_; }

 private:
  void routes();

  ServiceConfig config_;
  std::unique_ptr<JobManager> manager_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;
};

}  // namespace elminer
