#pragma once

#include "miner/miner.hpp"
#include "model/diagnostics.hpp"
#include "model/prefix_map.hpp"
#include "ontology/ontology.hpp"
#include "sparql/client.hpp"

#include <json.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace elminer {

// Everything needed to run one mining job. Exactly one data source and one target.
struct JobConfig {
  std::optional<std::string> endpoint_url;
  std::optional<std::string> fixture_file;
  std::optional<std::string> class_iri;
  std::optional<std::vector<std::string>> uris;

  MinerConfig miner;
  long query_budget = 10000;
  std::optional<bool> verify_proofs;  // defaults to on for fixtures, off for endpoints
  double timeout_s = 60;
  int max_retries = 3;
  int politeness_delay_ms = 0;
  int parallelism = 2;
  std::size_t instance_cap = 1000000;

  PrefixMap prefixes;  // rendering only

  // Throws std::invalid_argument with a message naming the offending setting.
  void validate() const;
  bool verify() const { return verify_proofs.value_or(fixture_file.has_value()); }

  nlohmann::json to_json() const;
  // Throws std::invalid_argument on unknown keys, wrong types or invalid values.
  static JobConfig from_json(const nlohmann::json& j);
};

struct ResultRecord {
  long id = 0;
  Pattern pattern = Pattern::named_class("http://www.w3.org/2002/07/owl#Thing");
  std::string rendered;  // Manchester text with the job's prefixes
  Rational support;
  std::size_t proof_set_size = 0;
  std::vector<std::string> proof_set_sample;  // at most 10 terms, N-Triples syntax
  int depth = 0;
  bool partial = false;
  bool conjunction = false;  // produced by merging streamed results with equal proof sets

  nlohmann::json to_json() const;
  static ResultRecord from_json(const nlohmann::json& j);
};

struct JobOutcome {
  std::vector<ResultRecord> streamed;  // in emission order
  std::vector<ResultRecord> closed;    // closed conjunctions over the streamed results
  bool partial = false;
  bool fetch_failed = false;
  std::string stop_reason;
  long queries = 0;
  std::size_t target_size = 0;
  long proof_failures = 0;
  PrefixMap prefixes;  // used for `rendered`
  Diagnostics diagnostics;
};

class JobSetupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using ResultSink = std::function<void(const ResultRecord&)>;

// Resolves the target set, samples it, mines, filters through the ontology and verifies proof
// sets when enabled. An unreadable or malformed fixture throws JobSetupError; fetch errors,
// budget exhaustion and cancellation end the run as partial.
JobOutcome run_job(const JobConfig& config, const OntologyStore* ontology, const CancellationToken* token,
                   const ResultSink& on_result = {});

ResultRecord make_record(const MinedPattern& m, long id, const PrefixMap& prefixes, bool partial);

// `Class SubClassOf: pattern`, or just the pattern when the job has no target class.
std::string axiom_text(const JobConfig& config, const Pattern& pattern);

}  // namespace elminer
