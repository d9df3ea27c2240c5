#include "model/weighting.hpp"

#include <algorithm>

namespace elminer {

ProofSet make_proof_set(std::vector<RdfTerm> terms) {
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  return terms;
}

Rational weight_of(const Weighting& w, const RdfTerm& t) {
  auto it = w.find(t);
  return it == w.end() ? Rational(0) : it->second;
}

Rational support_of_set(const ProofSet& s, const Weighting& w) {
  Rational sum = 0;
  for (auto& t : s) sum += weight_of(w, t);
  return sum;
}

}  // namespace elminer
