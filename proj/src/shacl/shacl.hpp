#pragma once

#include "model/pattern.hpp"
#include "model/prefix_map.hpp"
#include "model/rdf_term.hpp"

#include <string>
#include <vector>

namespace elminer {

enum class ShaclVocabulary {
  Draft,   // sh:predicate, sh:constraint, sh:Shape
  Modern,  // sh:path, direct constraint properties, sh:NodeShape
};

struct ShaclOptions {
  std::string shape_namespace = "http://example.org/shapes#";
  ShaclVocabulary vocabulary = ShaclVocabulary::Draft;
  // Emit `T[<= l]` as sh:minInclusive and `T[>= l]` as sh:maxInclusive, for consumers that
  // expect the swapped mapping, instead of the value-preserving one.
  bool swapped_bounds = false;
};

// Hands out :shape1, :shape2, ... in the configured namespace.
class ShapeNamer {
 public:
  explicit ShapeNamer(std::string ns) : ns_(std::move(ns)) {}
  RdfTerm next();

 private:
  std::string ns_;
  int counter_ = 0;
};

struct ShapeGraph {
  std::vector<Triple> triples;
  RdfTerm root;
};

// One top-level shape for the pattern; nested shapes are blank nodes.
ShapeGraph to_shacl(const Pattern& p, ShapeNamer& namer, const ShaclOptions& options = {});

struct ShapeDocument {
  std::vector<Triple> triples;
  std::vector<RdfTerm> roots;  // one per input pattern, in input order
};

// Shapes for several patterns. A conjunct equal to another exported pattern refers to that
// pattern's named shape instead of being inlined; such references come first in sh:and,
// in shape order.
ShapeDocument to_shacl_document(const std::vector<Pattern>& patterns, const ShaclOptions& options = {});

// Turtle with sh:, rdf:, xsd:, the shape namespace (as the empty prefix) and `prefixes`.
std::string shapes_to_turtle(const std::vector<Triple>& triples, const PrefixMap& prefixes,
                             const ShaclOptions& options = {});

// SELECT query reporting focus nodes that lack a `p` self-loop.
std::string self_constraint_query(const std::string& property);

}  // namespace elminer
