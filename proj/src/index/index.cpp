#include "index/index.hpp"

#include <algorithm>

namespace elminer {

ThreeLevelIndex ThreeLevelIndex::build(const std::vector<Triple>& triples) {
  ThreeLevelIndex idx;
  for (auto& t : triples) idx.levels_[t.predicate.value()][t.object].insert(t.subject);
  return idx;
}

ThreeLevelIndex ThreeLevelIndex::pruned(const Weighting& w, const Rational& min_support) const {
  ThreeLevelIndex out;
  for (auto& [p, objects] : levels_) {
    if (predicate_support(p, w) >= min_support) out.levels_.emplace(p, objects);
  }
  return out;
}

const ThreeLevelIndex::ObjectMap& ThreeLevelIndex::at(const std::string& predicate) const {
  auto it = levels_.find(predicate);
  if (it == levels_.end()) throw UnknownPredicate(predicate);
  return it->second;
}

ThreeLevelIndex::SubjectSet ThreeLevelIndex::subjects_of(const std::string& predicate) const {
  SubjectSet out;
  for (auto& [o, subjects] : at(predicate)) out.insert(subjects.begin(), subjects.end());
  return out;
}

Rational ThreeLevelIndex::predicate_support(const std::string& predicate, const Weighting& w) const {
  Rational sum = 0;
  for (auto& s : subjects_of(predicate)) sum += weight_of(w, s);
  return sum;
}

std::size_t ThreeLevelIndex::triple_count() const {
  std::size_t n = 0;
  for (auto& [p, objects] : levels_) {
    for (auto& [o, subjects] : objects) n += subjects.size();
  }
  return n;
}

std::vector<Triple> ThreeLevelIndex::triples() const {
  std::vector<Triple> out;
  for (auto& [p, objects] : levels_) {
    RdfTerm pred = RdfTerm::iri(p);
    for (auto& [o, subjects] : objects) {
      for (auto& s : subjects) out.push_back({s, pred, o});
    }
  }
  return out;
}

}  // namespace elminer
