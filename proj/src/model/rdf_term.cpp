#include "model/rdf_term.hpp"

#include <cctype>
#include <stdexcept>

namespace elminer {

bool has_iri_scheme(const std::string& iri) {
  auto colon = iri.find(':');
  if (colon == std::string::npos || colon == 0) return false;
  if (!std::isalpha(static_cast<unsigned char>(iri[0]))) return false;
  for (std::size_t i = 1; i < colon; ++i) {
    unsigned char c = static_cast<unsigned char>(iri[i]);
    if (!std::isalnum(c) && c != '+' && c != '-' && c != '.') return false;
  }
  return true;
}

RdfTerm RdfTerm::iri(std::string value) {
  if (!has_iri_scheme(value)) throw std::invalid_argument("not an absolute IRI: " + value);
  RdfTerm t;
  t.kind_ = Kind::Iri;
  t.value_ = std::move(value);
  return t;
}

RdfTerm RdfTerm::blank(std::string label) {
  RdfTerm t;
  t.kind_ = Kind::BlankNode;
  t.value_ = std::move(label);
  return t;
}

RdfTerm RdfTerm::literal(std::string lexical) {
  RdfTerm t;
  t.kind_ = Kind::Literal;
  t.value_ = std::move(lexical);
  return t;
}

RdfTerm RdfTerm::typed_literal(std::string lexical, std::string datatype_iri) {
  RdfTerm t = literal(std::move(lexical));
  t.datatype_ = std::move(datatype_iri);
  return t;
}

RdfTerm RdfTerm::lang_literal(std::string lexical, std::string language_tag) {
  RdfTerm t = literal(std::move(lexical));
  for (auto& c : language_tag) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  t.language_ = std::move(language_tag);
  return t;
}

std::string escape_string_literal(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

std::string RdfTerm::to_ntriples() const {
  switch (kind_) {
    case Kind::Iri: return "<" + value_ + ">";
    case Kind::BlankNode: return "_:" + value_;
    case Kind::Literal: {
      std::string out = "\"" + escape_string_literal(value_) + "\"";
      if (language_) out += "@" + *language_;
      if (datatype_) out += "^^<" + *datatype_ + ">";
      return out;
    }
  }
  return {};
}

Triple make_triple(RdfTerm subject, RdfTerm predicate, RdfTerm object) {
  if (!predicate.is_iri()) throw std::invalid_argument("predicate must be an IRI");
  if (subject.is_literal()) throw std::invalid_argument("subject must not be a literal");
  return Triple{std::move(subject), std::move(predicate), std::move(object)};
}

namespace {
inline void hash_combine(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}
}  // namespace

std::size_t RdfTermHash::operator()(const RdfTerm& t) const noexcept {
  std::size_t h = std::hash<int>{}(static_cast<int>(t.kind()));
  hash_combine(h, std::hash<std::string>{}(t.value()));
  if (t.datatype()) hash_combine(h, std::hash<std::string>{}(*t.datatype()));
  if (t.language()) hash_combine(h, std::hash<std::string>{}(*t.language()) ^ 0x5bd1e995);
  return h;
}

std::size_t TripleHash::operator()(const Triple& t) const noexcept {
  RdfTermHash th;
  std::size_t h = th(t.subject);
  hash_combine(h, th(t.predicate));
  hash_combine(h, th(t.object));
  return h;
}

}  // namespace elminer
