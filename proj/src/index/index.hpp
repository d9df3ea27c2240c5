#pragma once

#include "model/weighting.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace elminer {

class UnknownPredicate : public std::out_of_range {
 public:
  explicit UnknownPredicate(const std::string& p) : std::out_of_range("predicate not in index: " + p) {}
};

// predicate -> object -> subjects. Ordered maps keep iteration deterministic.
class ThreeLevelIndex {
 public:
  using SubjectSet = std::set<RdfTerm>;
  using ObjectMap = std::map<RdfTerm, SubjectSet>;

  static ThreeLevelIndex build(const std::vector<Triple>& triples);

  // Keeps predicates whose distinct-subject support reaches `min_support`.
  ThreeLevelIndex pruned(const Weighting& w, const Rational& min_support) const;

  Rational predicate_support(const std::string& predicate, const Weighting& w) const;
  // Distinct subjects over all objects of the predicate.
  SubjectSet subjects_of(const std::string& predicate) const;

  const std::map<std::string, ObjectMap>& levels() const { return levels_; }
  bool has(const std::string& predicate) const { return levels_.count(predicate) > 0; }
  const ObjectMap& at(const std::string& predicate) const;
  std::size_t triple_count() const;
  std::vector<Triple> triples() const;

 private:
  std::map<std::string, ObjectMap> levels_;
};

}  // namespace elminer
