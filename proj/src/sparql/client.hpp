#pragma once

#include "miner/source.hpp"
#include "model/diagnostics.hpp"

#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace elminer {

struct EndpointConfig {
  enum class Method { Get, Post };

  std::string url;
  Method method = Method::Get;  // GET falls back to POST when the URL would be too long
  double timeout_s = 60;
  int max_retries = 3;
  int politeness_delay_ms = 0;
  int backoff_ms = 200;  // first retry delay, doubled per attempt
  int parallelism = 2;
  long query_budget = 10000;
  std::size_t batch_size = 100;
  std::size_t max_get_url = 2000;
  std::size_t class_page_size = 5000;
  std::size_t instance_cap = 1000000;
  std::size_t truncation_cap = 10000;  // row count that suggests the server cut the result
  std::optional<std::string> basic_user;
  std::optional<std::string> basic_password;

  void validate() const;
};

// A single row of a SPARQL JSON results document, variable name to term.
using Binding = std::map<std::string, RdfTerm>;

// Parses application/sparql-results+json. Throws std::runtime_error on malformed input.
std::vector<Binding> parse_sparql_json(const std::string& body);

class SparqlClient : public TripleSource {
 public:
  explicit SparqlClient(EndpointConfig config, Diagnostics* diag = nullptr);

  // Triples whose subject is in `subjects`, batch results concatenated in batch order.
  std::vector<Triple> fetch(const std::vector<RdfTerm>& subjects, const CancellationToken* token) override;

  std::map<RdfTerm, long> count_predicates(const std::vector<RdfTerm>& subjects,
                                           const CancellationToken* token = nullptr);
  std::map<RdfTerm, long> count_triples(const std::vector<RdfTerm>& subjects,
                                        const CancellationToken* token = nullptr);
  // Sorted instances of the class, paged with LIMIT/OFFSET up to the configured cap.
  std::vector<RdfTerm> class_instances(const std::string& class_iri, const CancellationToken* token = nullptr);

  // Runs one SELECT query with retries; every attempt counts against the budget.
  std::vector<Binding> select(const std::string& query, const CancellationToken* token = nullptr);

  long query_count() const { return queries_.load(); }
  const EndpointConfig& config() const { return config_; }

 private:
  std::vector<std::vector<Binding>> select_batches(const std::vector<std::vector<RdfTerm>>& batches,
                                                   std::string (*build)(const std::vector<RdfTerm>&),
                                                   const CancellationToken* token);
  std::map<RdfTerm, long> counts(const std::vector<RdfTerm>& subjects, std::string (*build)(const std::vector<RdfTerm>&),
                                 const CancellationToken* token);
  std::string request(const std::string& query);
  void reserve_query();
  void wait_politeness();

  EndpointConfig config_;
  Diagnostics* diag_;
  std::string host_;  // scheme://host[:port]
  std::string path_;
  std::atomic<long> queries_{0};
  std::mutex pace_mu_;
  std::chrono::steady_clock::time_point last_request_{};
};

}  // namespace elminer
