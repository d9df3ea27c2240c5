#pragma once

#include "oracle/local_graph.hpp"

#include <random>
#include <string>
#include <vector>

namespace elminer::testing {

inline const std::string kEx = "http://example.org/";

// Random graph: at most 8 predicates (rdf:type included) and 200 triples, with cycles,
// shared objects, blank nodes and typed literals.
struct RandomGraph {
  LocalGraph graph;
  std::vector<RdfTerm> targets;
};

inline RandomGraph random_graph(std::mt19937& rng) {
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
  int n_subjects = 3 + pick(10);
  int n_preds = 1 + pick(7);
  int n_classes = 1 + pick(4);
  int n_triples = 5 + pick(196);
  std::vector<RdfTerm> subjects;
  for (int i = 0; i < n_subjects; ++i) subjects.push_back(RdfTerm::iri(kEx + "s" + std::to_string(i)));
  std::vector<RdfTerm> objects = subjects;
  for (int i = 0; i < 4; ++i) objects.push_back(RdfTerm::iri(kEx + "o" + std::to_string(i)));
  objects.push_back(RdfTerm::blank("b0"));
  objects.push_back(RdfTerm::blank("b1"));
  const char* decimals[] = {"1", "2.5", "4", "5.0", "-3"};
  for (auto* d : decimals) objects.push_back(RdfTerm::typed_literal(d, vocab::kXsdDecimal));
  objects.push_back(RdfTerm::literal("English"));
  objects.push_back(RdfTerm::lang_literal("chat", "fr"));
  objects.push_back(RdfTerm::typed_literal("true", vocab::kXsdBoolean));
  objects.push_back(RdfTerm::typed_literal("2020-01-01", std::string(vocab::kXsd) + "date"));

  RandomGraph out;
  if (pick(3) != 0) {
    // distinct objects sharing a class, so only an existential can be frequent
    for (int i = 0; i < n_subjects; ++i) {
      out.graph.add({subjects[i], RdfTerm::iri(kEx + "p0"), objects[n_subjects + i % 4]});
    }
    for (int k = 0; k < 4; ++k) {
      out.graph.add({objects[n_subjects + k], RdfTerm::iri(vocab::kRdfType), RdfTerm::iri(kEx + "C0")});
    }
  }
  std::vector<RdfTerm> all_subjects = subjects;
  all_subjects.push_back(RdfTerm::blank("b0"));
  all_subjects.push_back(RdfTerm::blank("b1"));
  for (int i = 0; i < n_triples && out.graph.size() < 200; ++i) {
    RdfTerm s = all_subjects[pick(static_cast<int>(all_subjects.size()))];
    int p = pick(n_preds + 1);
    if (p == n_preds) {
      out.graph.add({s, RdfTerm::iri(vocab::kRdfType), RdfTerm::iri(kEx + "C" + std::to_string(pick(n_classes)))});
    } else {
      out.graph.add({s, RdfTerm::iri(kEx + "p" + std::to_string(p)), objects[pick(static_cast<int>(objects.size()))]});
    }
  }
  for (auto& s : subjects) {
    if (pick(3) != 0) out.targets.push_back(s);
  }
  if (out.targets.empty()) out.targets.push_back(subjects.front());
  return out;
}

}  // namespace elminer::testing
