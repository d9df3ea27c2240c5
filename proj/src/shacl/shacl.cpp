#include "shacl/shacl.hpp"

#include "rdf/turtle.hpp"

#include <algorithm>
#include <map>

namespace elminer {

namespace {

const std::string kSh = vocab::kSh;

RdfTerm sh(const std::string& local) { return RdfTerm::iri(kSh + local); }

class Builder {
 public:
  Builder(const ShaclOptions& opt, const std::map<std::string, RdfTerm>& shared) : opt_(opt), shared_(shared) {}

  RdfTerm shape(const Pattern& p, const RdfTerm& node) {
    using K = Pattern::Kind;
    switch (p.kind()) {
      case K::NamedClass:
        property(node, RdfTerm::iri(vocab::kRdfType), {{sh("hasValue"), RdfTerm::iri(p.iri())}});
        break;
      case K::ValueObject:
      case K::ValueData:
        property(node, RdfTerm::iri(p.iri()), {{sh("hasValue"), p.term()}});
        break;
      case K::SomeObject:
      case K::SomeData: {
        RdfTerm inner = shape(p.filler(), blank());
        property(node, RdfTerm::iri(p.iri()),
                 {{sh("qualifiedMinCount"), RdfTerm::typed_literal("1", vocab::kXsdInteger)},
                  {sh("qualifiedValueShape"), inner}});
        break;
      }
      case K::And:
      case K::AndRange: {
        std::vector<std::pair<std::string, RdfTerm>> refs;  // (shape IRI, term) for shared conjuncts
        std::vector<RdfTerm> inline_members;
        for (auto& c : p.children()) {
          auto it = shared_.find(canonical_key(c));
          if (it != shared_.end()) {
            refs.emplace_back(it->second.value(), it->second);
          } else {
            inline_members.push_back(shape(c, blank()));
          }
        }
        std::stable_sort(refs.begin(), refs.end(), [](auto& a, auto& b) { return shape_less(a.first, b.first); });
        std::vector<RdfTerm> members;
        for (auto& r : refs) members.push_back(r.second);
        members.insert(members.end(), inline_members.begin(), inline_members.end());
        constraint(node, {{sh("and"), list(members)}});
        break;
      }
      case K::Enum:
      case K::EnumLiteral:
        constraint(node, {{sh("in"), list({p.term()})}});
        break;
      case K::SelfRestriction:
        self(node, p.iri());
        break;
      case K::Datatype:
        constraint(node, {{sh("datatype"), RdfTerm::iri(datatype_iri(p.datatype_id()))}});
        break;
      case K::MaxInclusive:
      case K::MinInclusive: {
        bool upper = p.kind() == K::MaxInclusive;
        if (opt_.swapped_bounds) upper = !upper;
        constraint(node, {{sh("datatype"), RdfTerm::iri(datatype_iri(p.datatype_id()))},
                          {sh(upper ? "maxInclusive" : "minInclusive"), p.term()}});
        break;
      }
    }
    return node;
  }

  std::vector<Triple> triples;

 private:
  bool draft() const { return opt_.vocabulary == ShaclVocabulary::Draft; }

  // :shape2 before :shape10
  static bool shape_less(const std::string& a, const std::string& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }

  RdfTerm blank() { return RdfTerm::blank("s" + std::to_string(++blank_counter_)); }

  void add(const RdfTerm& s, const RdfTerm& p, const RdfTerm& o) { triples.push_back(make_triple(s, p, o)); }

  void property(const RdfTerm& node, const RdfTerm& predicate,
                const std::vector<std::pair<RdfTerm, RdfTerm>>& facets) {
    RdfTerm prop = blank();
    add(node, sh("property"), prop);
    add(prop, sh(draft() ? "predicate" : "path"), predicate);
    for (auto& [k, v] : facets) add(prop, k, v);
  }

  void constraint(const RdfTerm& node, const std::vector<std::pair<RdfTerm, RdfTerm>>& facets) {
    RdfTerm target = node;
    if (draft()) {
      target = blank();
      add(node, sh("constraint"), target);
    }
    for (auto& [k, v] : facets) add(target, k, v);
  }

  void self(const RdfTerm& node, const std::string& property) {
    RdfTerm c = blank();
    add(node, sh(draft() ? "constraint" : "sparql"), c);
    add(c, RdfTerm::iri(vocab::kRdfType), sh("SPARQLConstraint"));
    add(c, sh(draft() ? "sparql" : "select"), RdfTerm::literal(self_constraint_query(property)));
  }

  RdfTerm list(const std::vector<RdfTerm>& members) {
    if (members.empty()) return RdfTerm::iri(vocab::kRdfNil);
    RdfTerm head = blank();
    RdfTerm cell = head;
    for (std::size_t i = 0; i < members.size(); ++i) {
      add(cell, RdfTerm::iri(vocab::kRdfFirst), members[i]);
      RdfTerm rest = i + 1 < members.size() ? blank() : RdfTerm::iri(vocab::kRdfNil);
      add(cell, RdfTerm::iri(vocab::kRdfRest), rest);
      cell = rest;
    }
    return head;
  }

  const ShaclOptions& opt_;
  const std::map<std::string, RdfTerm>& shared_;
  int blank_counter_ = 0;
};

RdfTerm shape_class(const ShaclOptions& opt) {
  return sh(opt.vocabulary == ShaclVocabulary::Draft ? "Shape" : "NodeShape");
}

}  // namespace

RdfTerm ShapeNamer::next() { return RdfTerm::iri(ns_ + "shape" + std::to_string(++counter_)); }

std::string self_constraint_query(const std::string& property) {
  return "SELECT $this ($this AS ?subject) (<" + property + "> AS ?predicate) ($this AS ?object)\nWHERE {\n"
         "  FILTER NOT EXISTS {\n    $this <" + property + "> ?value .\n    FILTER (sameTerm($this, ?value))\n  }\n}";
}

ShapeGraph to_shacl(const Pattern& p, ShapeNamer& namer, const ShaclOptions& options) {
  std::map<std::string, RdfTerm> none;
  Builder b(options, none);
  ShapeGraph g;
  g.root = namer.next();
  b.triples.push_back(make_triple(g.root, RdfTerm::iri(vocab::kRdfType), shape_class(options)));
  b.shape(p, g.root);
  g.triples = std::move(b.triples);
  return g;
}

ShapeDocument to_shacl_document(const std::vector<Pattern>& patterns, const ShaclOptions& options) {
  ShapeNamer namer(options.shape_namespace);
  std::map<std::string, RdfTerm> shared;
  ShapeDocument doc;
  for (auto& p : patterns) {
    auto key = canonical_key(p);
    auto it = shared.find(key);
    if (it != shared.end()) {
      doc.roots.push_back(it->second);
      continue;
    }
    RdfTerm root = namer.next();
    shared.emplace(key, root);
    doc.roots.push_back(root);
  }
  Builder b(options, shared);
  std::vector<RdfTerm> built;
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    const RdfTerm& root = doc.roots[i];
    if (std::find(built.begin(), built.end(), root) != built.end()) continue;
    built.push_back(root);
    b.triples.push_back(make_triple(root, RdfTerm::iri(vocab::kRdfType), shape_class(options)));
    b.shape(patterns[i], root);
  }
  doc.triples = std::move(b.triples);
  return doc;
}

std::string shapes_to_turtle(const std::vector<Triple>& triples, const PrefixMap& prefixes,
                             const ShaclOptions& options) {
  PrefixMap pm;
  pm.add("rdf", vocab::kRdf);
  pm.add("xsd", vocab::kXsd);
  pm.add("sh", vocab::kSh);
  pm.merge(prefixes);
  pm.add("", options.shape_namespace);
  return write_turtle(triples, pm);
}

}  // namespace elminer
