#pragma once

#include "model/rdf_term.hpp"

#include <optional>
#include <string>
#include <vector>

namespace elminer {

std::string triples_query(const std::vector<RdfTerm>& subjects);
std::string count_predicates_query(const std::vector<RdfTerm>& subjects);
std::string count_triples_query(const std::vector<RdfTerm>& subjects);
std::string class_instances_query(const std::string& class_iri, std::size_t limit, std::size_t offset);

// Disjoint consecutive batches of at most `batch_size` terms covering `terms`.
std::vector<std::vector<RdfTerm>> partition_batches(const std::vector<RdfTerm>& terms, std::size_t batch_size);

// A query recognized as one of the supported templates, ignoring case and whitespace.
struct RecognizedQuery {
  enum class Kind { Triples, CountPredicates, CountTriples, ClassInstances };
  Kind kind;
  std::vector<std::string> subjects;  // VALUES members
  std::string class_iri;
  std::optional<std::size_t> limit;
  std::size_t offset = 0;
};

std::optional<RecognizedQuery> recognize_query(const std::string& query);

}  // namespace elminer
