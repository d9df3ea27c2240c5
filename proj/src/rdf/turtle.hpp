#pragma once

#include "model/prefix_map.hpp"
#include "model/rdf_term.hpp"

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace elminer {

class TurtleParseError : public std::runtime_error {
 public:
  TurtleParseError(const std::string& message, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct TurtleDocument {
  std::vector<Triple> triples;  // document order, duplicates removed
  PrefixMap prefixes;
};

TurtleDocument parse_turtle(const std::string& text, const std::string& base_iri = "");
// Throws std::runtime_error when the file cannot be read.
TurtleDocument parse_turtle_file(const std::string& path);

// Subjects and predicates keep their first-appearance order. Blank nodes used exactly once as
// an object are nested as `[ ... ]`, well-formed lists as `( ... )`.
std::string write_turtle(const std::vector<Triple>& triples, const PrefixMap& prefixes);

// Graph isomorphism where terms accepted by `relabelable` (blank nodes, typically plus
// generated shape IRIs) may be renamed bijectively and all other terms must match exactly.
bool isomorphic(const std::vector<Triple>& a, const std::vector<Triple>& b,
                const std::function<bool(const RdfTerm&)>& relabelable);

bool isomorphic(const std::vector<Triple>& a, const std::vector<Triple>& b);

}  // namespace elminer
