#pragma once

#include "model/pattern.hpp"
#include "model/rational.hpp"
#include "model/rdf_term.hpp"

#include <unordered_map>
#include <vector>

namespace elminer {

using Weighting = std::unordered_map<RdfTerm, Rational, RdfTermHash>;

// Sorted, duplicate-free set of terms.
using ProofSet = std::vector<RdfTerm>;

ProofSet make_proof_set(std::vector<RdfTerm> terms);
Rational weight_of(const Weighting& w, const RdfTerm& t);  // 0 when absent
Rational support_of_set(const ProofSet& s, const Weighting& w);

struct MinedPattern {
  Pattern pattern;
  ProofSet proof_set;
  Rational support;
};

}  // namespace elminer
