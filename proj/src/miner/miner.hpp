#pragma once

#include "index/index.hpp"
#include "miner/source.hpp"
#include "model/diagnostics.hpp"
#include "model/weighting.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <regex>
#include <string>
#include <vector>

namespace elminer {

enum class SamplingStrategy { Uniform, PredicatesCounting, TriplesCounting };

struct MinerConfig {
  Rational min_support = 1;
  int max_depth = 1;
  std::size_t batch_size = 100;
  std::optional<std::size_t> sample_size;
  SamplingStrategy strategy = SamplingStrategy::Uniform;
  std::uint64_t seed = 0;
  std::vector<std::string> ignore_predicates;

  // Throws std::invalid_argument naming the offending setting.
  void validate() const;
};

// Streaming consumer of top-level results. Called in emission order.
using EmitSink = std::function<void(const MinedPattern&)>;

struct MineResult {
  std::vector<MinedPattern> emitted;  // raw top-level patterns in emission order
  std::vector<MinedPattern> closed;   // closed conjunctions over `emitted`
  bool partial = false;
  std::string stop_reason;  // empty when the run completed
};

struct Redistribution {
  std::vector<RdfTerm> uris;      // IRI objects
  std::vector<RdfTerm> literals;  // literal objects
  Weighting weights;              // over every object, blank nodes included
};

class Miner {
 public:
  Miner(MinerConfig config, TripleSource& source, Diagnostics* diag = nullptr,
        const CancellationToken* token = nullptr);

  std::vector<MinedPattern> mine_datatype(const std::vector<RdfTerm>& literals, const Weighting& w) const;
  std::vector<MinedPattern> mine_type(const ThreeLevelIndex& idx, const Weighting& w) const;
  std::vector<MinedPattern> mine_value(const ThreeLevelIndex& idx, const std::string& p, const Weighting& w) const;
  std::optional<MinedPattern> mine_self(const ThreeLevelIndex& idx, const std::string& p, const Weighting& w) const;
  std::vector<MinedPattern> mine_enum(const std::vector<RdfTerm>& uris, const std::vector<RdfTerm>& literals,
                                      const Weighting& w) const;
  static std::vector<MinedPattern> mine_closed_conjunctions(const std::vector<MinedPattern>& patterns);
  static Redistribution redistribute(const ThreeLevelIndex& idx, const std::string& p, const Weighting& w);
  std::vector<MinedPattern> mine_some(const ThreeLevelIndex& idx, const std::string& p, const Weighting& w,
                                      int level);

  // Full recursive call; returns closed conjunctions. Throws Cancelled, FetchError,
  // QueryBudgetExceeded.
  std::vector<MinedPattern> mine_scope(const std::vector<RdfTerm>& uris, const std::vector<RdfTerm>& literals,
                                 const Weighting& w, int level = 0);

  // Top-level call that streams each predicate's patterns once complete. Never throws the
  // errors above; they end the run with `partial` set.
  MineResult run(const std::vector<RdfTerm>& uris, const Weighting& w, const EmitSink& sink = {});

  // Fetch, filter, index and prune for one scope.
  ThreeLevelIndex scope_index(const std::vector<RdfTerm>& uris, const Weighting& w);

  // Observes every weight redistribution (predicate, level of the new scope, scope).
  std::function<void(const std::string&, int, const Redistribution&)> on_redistribute;
  // Receives every triple retrieved, for proof verification.
  std::function<void(const std::vector<Triple>&)> on_retrieved;

  const MinerConfig& config() const { return config_; }

 private:
  std::vector<MinedPattern> predicate_patterns(const ThreeLevelIndex& idx, const std::string& p,
                                               const Weighting& w, int level);
  bool ignored(const std::string& predicate) const;
  void check_cancel() const;

  MinerConfig config_;
  TripleSource& source_;
  Diagnostics* diag_;
  const CancellationToken* token_;
  std::vector<std::regex> ignore_;
};

// Uniform weights 1/|U| over the distinct members of `uris`.
Weighting uniform_weighting(const std::vector<RdfTerm>& uris);

// Sort order used for every emitted set.
void sort_by_pattern(std::vector<MinedPattern>& patterns);

class EmptyTargetSet : public std::invalid_argument {
 public:
  EmptyTargetSet() : std::invalid_argument("the target set of URIs is empty") {}
};

// True when the axiom `target SubClassOf: pattern` already follows from the ontology.
using CoverageFilter = std::function<bool(const Pattern&)>;

// Uniform weights, no literals, and patterns covered by the filter dropped from both the
// stream and the closed set.
MineResult initial_call(Miner& miner, const std::vector<RdfTerm>& uris, const CoverageFilter& covered,
                        const EmitSink& sink = {}, Diagnostics* diag = nullptr);

}  // namespace elminer
