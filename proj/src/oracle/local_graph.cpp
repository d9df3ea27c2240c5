#include "oracle/local_graph.hpp"

namespace elminer {

LocalGraph::LocalGraph(const std::vector<Triple>& triples) {
  for (auto& t : triples) add(t);
}

void LocalGraph::add(const Triple& t) {
  if (triples_.insert(t).second) by_subject_[t.subject].emplace(t.predicate, t.object);
}

bool LocalGraph::contains(const RdfTerm& s, const std::string& p, const RdfTerm& o) const {
  auto it = by_subject_.find(s);
  if (it == by_subject_.end()) return false;
  return it->second.count({RdfTerm::iri(p), o}) > 0;
}

const std::set<std::pair<RdfTerm, RdfTerm>>& LocalGraph::outgoing(const RdfTerm& subject) const {
  static const std::set<std::pair<RdfTerm, RdfTerm>> empty;
  auto it = by_subject_.find(subject);
  return it == by_subject_.end() ? empty : it->second;
}

std::vector<RdfTerm> LocalGraph::objects(const RdfTerm& subject, const std::string& predicate) const {
  std::vector<RdfTerm> out;
  for (auto& [p, o] : outgoing(subject)) {
    if (p.value() == predicate) out.push_back(o);
  }
  return out;
}

std::vector<Triple> LocalGraph::triples_with_subjects(const std::vector<RdfTerm>& subjects) const {
  std::vector<Triple> out;
  std::set<RdfTerm> seen;
  for (auto& s : subjects) {
    if (!seen.insert(s).second) continue;
    for (auto& [p, o] : outgoing(s)) out.push_back({s, p, o});
  }
  return out;
}

}  // namespace elminer
