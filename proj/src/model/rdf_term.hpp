#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace elminer {

namespace vocab {
inline constexpr const char* kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr const char* kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr const char* kOwl = "http://www.w3.org/2002/07/owl#";
inline constexpr const char* kXsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr const char* kSh = "http://www.w3.org/ns/shacl#";

inline const std::string kRdfType = std::string(kRdf) + "type";
inline const std::string kRdfFirst = std::string(kRdf) + "first";
inline const std::string kRdfRest = std::string(kRdf) + "rest";
inline const std::string kRdfNil = std::string(kRdf) + "nil";
inline const std::string kRdfsSubClassOf = std::string(kRdfs) + "subClassOf";
inline const std::string kXsdInteger = std::string(kXsd) + "integer";
inline const std::string kXsdDecimal = std::string(kXsd) + "decimal";
inline const std::string kXsdDouble = std::string(kXsd) + "double";
inline const std::string kXsdBoolean = std::string(kXsd) + "boolean";
inline const std::string kXsdString = std::string(kXsd) + "string";
}  // namespace vocab

// An IRI, a blank node or a literal. Immutable value type with structural equality.
class RdfTerm {
 public:
  enum class Kind { Iri, BlankNode, Literal };

  RdfTerm() = default;

  // Throws std::invalid_argument when the IRI has no scheme.
  static RdfTerm iri(std::string value);
  static RdfTerm blank(std::string label);
  static RdfTerm literal(std::string lexical);
  static RdfTerm typed_literal(std::string lexical, std::string datatype_iri);
  static RdfTerm lang_literal(std::string lexical, std::string language_tag);

  Kind kind() const { return kind_; }
  bool is_iri() const { return kind_ == Kind::Iri; }
  bool is_blank() const { return kind_ == Kind::BlankNode; }
  bool is_literal() const { return kind_ == Kind::Literal; }

  // IRI string, blank node label, or literal lexical form.
  const std::string& value() const { return value_; }
  const std::optional<std::string>& datatype() const { return datatype_; }
  const std::optional<std::string>& language() const { return language_; }

  // N-Triples style rendering; also the canonical sort key of the term.
  std::string to_ntriples() const;

  friend bool operator==(const RdfTerm&, const RdfTerm&) = default;
  friend auto operator<=>(const RdfTerm& a, const RdfTerm& b) {
    if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
    if (auto c = a.value_ <=> b.value_; c != 0) return c;
    if (auto c = a.datatype_ <=> b.datatype_; c != 0) return c;
    return a.language_ <=> b.language_;
  }

 private:
  Kind kind_ = Kind::Iri;
  std::string value_;
  std::optional<std::string> datatype_;
  std::optional<std::string> language_;
};

bool has_iri_scheme(const std::string& iri);

struct Triple {
  RdfTerm subject;
  RdfTerm predicate;
  RdfTerm object;

  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

// Throws std::invalid_argument when the predicate is not an IRI or the subject is a literal.
Triple make_triple(RdfTerm subject, RdfTerm predicate, RdfTerm object);

struct RdfTermHash {
  std::size_t operator()(const RdfTerm& t) const noexcept;
};

struct TripleHash {
  std::size_t operator()(const Triple& t) const noexcept;
};

std::string escape_string_literal(const std::string& s);

}  // namespace elminer

template <>
struct std::hash<elminer::RdfTerm> : elminer::RdfTermHash {};
