#pragma once

#include "model/rdf_term.hpp"

#include <map>
#include <set>
#include <utility>
#include <vector>

namespace elminer {

// A fully materialized graph with a per-subject index.
class LocalGraph {
 public:
  LocalGraph() = default;
  explicit LocalGraph(const std::vector<Triple>& triples);

  void add(const Triple& t);
  bool contains(const Triple& t) const { return triples_.count(t) > 0; }
  bool contains(const RdfTerm& s, const std::string& p, const RdfTerm& o) const;

  // (predicate, object) pairs of a subject, sorted.
  const std::set<std::pair<RdfTerm, RdfTerm>>& outgoing(const RdfTerm& subject) const;
  std::vector<RdfTerm> objects(const RdfTerm& subject, const std::string& predicate) const;

  const std::set<Triple>& triples() const { return triples_; }
  std::vector<Triple> triples_with_subjects(const std::vector<RdfTerm>& subjects) const;
  std::size_t size() const { return triples_.size(); }

 private:
  std::set<Triple> triples_;
  std::map<RdfTerm, std::set<std::pair<RdfTerm, RdfTerm>>> by_subject_;
};

}  // namespace elminer
