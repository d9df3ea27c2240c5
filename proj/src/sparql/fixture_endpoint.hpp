#pragma once

#include "oracle/local_graph.hpp"
#include "sparql/client.hpp"

#include <atomic>
#include <memory>
#include <string>
#include <thread>
#include <vector>

namespace httplib {
class Server;
}

namespace elminer {

// Loopback SPARQL endpoint over an immutable in-memory graph. Answers only the retrieval,
// counting and class-instance query templates; anything else gets HTTP 400.
class FixtureEndpoint {
 public:
  // Throws TurtleParseError for malformed Turtle.
  static std::unique_ptr<FixtureEndpoint> from_file(const std::string& turtle_path);
  explicit FixtureEndpoint(const std::vector<Triple>& triples);
  ~FixtureEndpoint();

  FixtureEndpoint(const FixtureEndpoint&) = delete;
  FixtureEndpoint& operator=(const FixtureEndpoint&) = delete;

  std::string url() const;
  EndpointConfig config() const;
  const LocalGraph& graph() const { return graph_; }

  // Requests answered or refused so far, malformed ones included.
  long query_count() const { return queries_.load(); }
  // The next `n` requests fail with `status`.
  void fail_next(int n, int status = 503);

  // JSON results document for a recognized query; throws std::invalid_argument otherwise.
  std::string answer(const std::string& query) const;

 private:
  LocalGraph graph_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<long> queries_{0};
  std::atomic<int> failures_{0};
  std::atomic<int> failure_status_{503};
};

}  // namespace elminer
