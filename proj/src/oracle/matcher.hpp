#pragma once

#include "model/diagnostics.hpp"
#include "model/pattern.hpp"
#include "model/weighting.hpp"
#include "oracle/local_graph.hpp"

#include <stdexcept>
#include <utility>

namespace elminer {

// The matching function: does `term` satisfy `c` in `g`?
bool matches(const LocalGraph& g, const RdfTerm& term, const Pattern& c, Diagnostics* diag = nullptr);

struct SupportResult {
  Rational support;
  ProofSet proof_set;
};

SupportResult support_of(const LocalGraph& g, const std::vector<RdfTerm>& candidates, const Pattern& c,
                         const Weighting& w);

class CombinatorialBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleOptions {
  std::size_t candidate_cap = 1'000'000;
};

// Brute-force reference for the miner: generates every candidate pattern over the graph's
// vocabulary scope by scope, keeps frequent ones under the shallowest rule and forms closed
// conjunctions. Triples with a blank-node subject are ignored, as no endpoint query can reach
// them. Meant for graphs of a few hundred triples.
std::vector<MinedPattern> enumerate_shallowest_frequent(const LocalGraph& g, const std::vector<RdfTerm>& uris,
                                                        const std::vector<RdfTerm>& literals, const Weighting& w,
                                                        const Rational& min_support, int max_depth,
                                                        const OracleOptions& options = {});

}  // namespace elminer
