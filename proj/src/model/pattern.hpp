#pragma once

#include "datatypes/datatypes.hpp"
#include "model/prefix_map.hpp"
#include "model/rdf_term.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace elminer {

// An OWL 2 EL superclass expression C, or a data range R. Both share one immutable
// node tree; `is_data_range()` tells them apart. Copying is cheap (shared nodes).
class Pattern {
 public:
  enum class Kind {
    // class expressions
    NamedClass,
    And,
    Enum,
    SomeObject,
    ValueObject,
    SelfRestriction,
    SomeData,
    ValueData,
    // data ranges
    Datatype,
    AndRange,
    EnumLiteral,
    MaxInclusive,
    MinInclusive,
  };

  static Pattern named_class(std::string iri);
  // Children are flattened, deduplicated and sorted; a single remaining child is returned as is.
  // Throws std::invalid_argument when class expressions and data ranges are mixed or the list is empty.
  static Pattern conjunction(std::vector<Pattern> children);
  static Pattern enumeration(RdfTerm individual);
  static Pattern some(std::string property, Pattern filler);
  static Pattern value(std::string property, RdfTerm object);
  static Pattern self(std::string property);
  static Pattern datatype(DatatypeId id);
  static Pattern enum_literal(RdfTerm literal);
  // `[<= bound]`; the bound is retyped to the facet's datatype.
  static Pattern max_inclusive(DatatypeId type, const RdfTerm& bound);
  // `[>= bound]`
  static Pattern min_inclusive(DatatypeId type, const RdfTerm& bound);
  // Conjunction kept exactly as given, for exercising canonicalize().
  static Pattern raw_conjunction(std::vector<Pattern> children);

  Kind kind() const { return node_->kind; }
  bool is_data_range() const;

  // Property IRI for Some/Value/Self, class IRI for NamedClass.
  const std::string& iri() const { return node_->iri; }
  // Individual or literal for Enum/EnumLiteral/Value*, bound for Min/MaxInclusive.
  const RdfTerm& term() const { return node_->term; }
  DatatypeId datatype_id() const { return node_->datatype; }
  // Conjuncts of And/AndRange; the single filler of Some*.
  const std::vector<Pattern>& children() const { return node_->children; }
  const Pattern& filler() const { return node_->children.front(); }

  // Conjuncts when this is a conjunction, otherwise {*this}.
  std::vector<Pattern> conjuncts() const;

  friend bool operator==(const Pattern& a, const Pattern& b);

 private:
  struct Node {
    Kind kind;
    std::string iri;
    RdfTerm term;
    DatatypeId datatype = DatatypeId::RdfsLiteral;
    std::vector<Pattern> children;
  };
  explicit Pattern(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Pattern make(Node node);

  std::shared_ptr<const Node> node_;
};

// Number of nested expressions; some-restrictions add one level.
int depth(const Pattern& p);

// Flattens nested conjunctions, sorts conjuncts by canonical_key and removes duplicates.
Pattern canonicalize(const Pattern& p);

// Manchester-style text. Uses prefixed names where the map allows.
std::string serialize(const Pattern& p, const PrefixMap& prefixes = {});

// Serialization with full IRIs; defines the canonical conjunct order.
std::string canonical_key(const Pattern& p);

class PatternParseError : public std::runtime_error {
 public:
  PatternParseError(const std::string& message, std::size_t offset)
      : std::runtime_error(message + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Parses the output of serialize(). The result is canonical.
Pattern parse_pattern(const std::string& text, const PrefixMap& prefixes = {});

// Term rendering shared by the Manchester serializer and the Turtle writer.
std::string render_iri(const std::string& iri, const PrefixMap& prefixes);
std::string render_literal(const RdfTerm& literal, const PrefixMap& prefixes);

}  // namespace elminer
