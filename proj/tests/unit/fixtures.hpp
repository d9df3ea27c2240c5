#pragma once

#include "model/prefix_map.hpp"
#include "oracle/local_graph.hpp"
#include "rdf/turtle.hpp"

#include <string>
#include <vector>

namespace elminer::testing {

inline std::string data_path(const std::string& name) { return std::string(ELM_TEST_DATA) + "/" + name; }

inline const std::string kRes = "http://dbpedia.org/resource/";
inline const std::string kDbo = "http://dbpedia.org/ontology/";
inline const std::string kDbp = "http://dbpedia.org/property/";
inline const std::string kDct = "http://purl.org/dc/terms/";
inline const std::string kDbc = "http://dbpedia.org/resource/Category:";
inline const std::string kSkos = "http://www.w3.org/2004/02/skos/core#";

inline RdfTerm res(const std::string& local) { return RdfTerm::iri(kRes + local); }
inline RdfTerm dbc(const std::string& local) { return RdfTerm::iri(kDbc + local); }

inline const LocalGraph& book_graph() {
  static const LocalGraph g(parse_turtle_file(data_path("books.ttl")).triples);
  return g;
}

inline std::vector<RdfTerm> books() {
  return {res("The_Hobbit"), res("The_Silmarillion"), res("The_Fellowship_of_the_Ring"), res("The_Two_Towers"),
          res("The_Return_of_the_King")};
}

inline PrefixMap book_prefixes() { return PrefixMap::from_json_file(data_path("books_prefixes.json")); }

}  // namespace elminer::testing
