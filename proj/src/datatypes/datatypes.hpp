#pragma once

#include "model/diagnostics.hpp"
#include "model/rational.hpp"
#include "model/rdf_term.hpp"

#include <array>
#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace elminer {

// The 19 datatypes of OWL 2 EL.
enum class DatatypeId {
  RdfsLiteral,
  OwlReal,
  OwlRational,
  XsdDecimal,
  XsdInteger,
  XsdNonNegativeInteger,
  XsdString,
  XsdNormalizedString,
  XsdToken,
  XsdNMTOKEN,
  XsdName,
  XsdNCName,
  XsdDateTime,
  XsdDateTimeStamp,
  RdfPlainLiteral,
  RdfXMLLiteral,
  XsdHexBinary,
  XsdBase64Binary,
  XsdAnyURI,
};

inline constexpr std::size_t kDatatypeCount = 19;

const std::array<DatatypeId, kDatatypeCount>& all_datatypes();

const std::string& datatype_iri(DatatypeId id);
std::optional<DatatypeId> datatype_from_iri(const std::string& iri);

// Direct supertype in the hierarchy; nullopt for rdfs:Literal.
std::optional<DatatypeId> parent_datatype(DatatypeId id);
// Reflexive.
bool is_subtype_of(DatatypeId sub, DatatypeId super);

// May carry a `[>= l]` facet.
bool gt_eligible(DatatypeId id);
// May carry a `[<= l]` facet.
bool lt_eligible(DatatypeId id);

// Lexical-space check of an untyped lexical form.
bool lexical_accepts(DatatypeId id, const std::string& lexical);

// Datatypes a literal is assigned to: its declared type, rdf:PlainLiteral for language-tagged
// literals, or every type whose grammar accepts an untyped lexical form. A typed literal whose
// declared type is outside the 19 yields the empty set.
std::vector<DatatypeId> candidate_datatypes(const RdfTerm& literal, Diagnostics* diag = nullptr);

class IncomparableLiterals : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Total order on the value space of a GT-eligible type. Numerics compare exactly;
// dateTimes compare as instants, with a missing timezone read as UTC.
std::strong_ordering value_compare(const RdfTerm& a, const RdfTerm& b, DatatypeId dt,
                                   Diagnostics* diag = nullptr);

// True when the literal's lexical form lies in the value space of `dt` as far as
// value_compare is concerned.
bool has_comparable_value(const RdfTerm& literal, DatatypeId dt);

// Exact numeric value of a numeric lexical form under `dt` (decimal, integer or "n/d").
std::optional<Rational> numeric_value(const std::string& lexical, DatatypeId dt);

struct DateTimeValue {
  Rational seconds;  // since 1970-01-01T00:00:00Z
  bool has_timezone = false;
};
std::optional<DateTimeValue> datetime_value(const std::string& lexical);

}  // namespace elminer
