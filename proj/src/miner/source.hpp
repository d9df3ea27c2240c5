#pragma once

#include "model/rdf_term.hpp"
#include "oracle/local_graph.hpp"

#include <atomic>
#include <stdexcept>
#include <string>
#include <vector>

namespace elminer {

class CancellationToken {
 public:
  void cancel() { flag_.store(true, std::memory_order_release); }
  bool cancelled() const { return flag_.load(std::memory_order_acquire); }

 private:
  std::atomic<bool> flag_{false};
};

class Cancelled : public std::runtime_error {
 public:
  Cancelled() : std::runtime_error("cancelled") {}
};

class FetchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class QueryBudgetExceeded : public std::runtime_error {
 public:
  explicit QueryBudgetExceeded(long budget)
      : std::runtime_error("query budget of " + std::to_string(budget) + " exhausted") {}
};

// Supplies all triples whose subject is one of the given IRIs.
class TripleSource {
 public:
  virtual ~TripleSource() = default;
  virtual std::vector<Triple> fetch(const std::vector<RdfTerm>& subjects, const CancellationToken* token) = 0;
};

// In-process source over a materialized graph; batches like a remote endpoint would.
class LocalGraphSource : public TripleSource {
 public:
  LocalGraphSource(const LocalGraph& graph, std::size_t batch_size = 100) : graph_(graph), batch_size_(batch_size) {}

  std::vector<Triple> fetch(const std::vector<RdfTerm>& subjects, const CancellationToken* token) override;
  long query_count() const { return queries_; }

 private:
  const LocalGraph& graph_;
  std::size_t batch_size_;
  long queries_ = 0;
};

}  // namespace elminer
