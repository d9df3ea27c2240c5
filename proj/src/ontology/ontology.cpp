#include "ontology/ontology.hpp"

#include "rdf/turtle.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace elminer {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool is_conjunction(const Pattern& p) {
  return p.kind() == Pattern::Kind::And || p.kind() == Pattern::Kind::AndRange;
}

bool is_some(const Pattern& p) {
  return p.kind() == Pattern::Kind::SomeObject || p.kind() == Pattern::Kind::SomeData;
}

bool looks_like_manchester(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    return t.rfind("Prefix:", 0) == 0 || t.find("SubClassOf:") != std::string::npos;
  }
  return false;
}

std::string class_token(const std::string& token, const PrefixMap& prefixes, int line) {
  if (token.size() >= 2 && token.front() == '<' && token.back() == '>') return token.substr(1, token.size() - 2);
  if (auto iri = prefixes.expand(token)) return *iri;
  throw OntologyParseError("cannot resolve class name '" + token + "'", line);
}

}  // namespace

OntologyStore OntologyStore::parse(const std::string& text, const PrefixMap& prefixes, Diagnostics* diag) {
  OntologyStore store;
  if (!looks_like_manchester(text)) {
    TurtleDocument doc;
    try {
      doc = parse_turtle(text);
    } catch (const TurtleParseError& e) {
      throw OntologyParseError(e.what(), e.line());
    }
    for (auto& t : doc.triples) {
      if (t.predicate.value() != vocab::kRdfsSubClassOf) continue;
      if (!t.subject.is_iri() || !t.object.is_iri()) {
        if (diag) diag->count("ontology_triples_ignored");
        continue;
      }
      store.add(t.subject.value(), Pattern::named_class(t.object.value()));
    }
    store.close_hierarchy();
    return store;
  }

  PrefixMap pm = prefixes;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto t = trim(raw);
    if (t.empty() || t[0] == '#') continue;
    if (t.rfind("Prefix:", 0) == 0) {
      auto rest = trim(t.substr(7));
      auto colon = rest.find(':');
      auto lt = rest.find('<'), gt = rest.rfind('>');
      if (colon == std::string::npos || lt == std::string::npos || gt == std::string::npos || gt < lt)
        throw OntologyParseError("malformed Prefix declaration", line);
      pm.add(trim(rest.substr(0, colon)), rest.substr(lt + 1, gt - lt - 1));
      continue;
    }
    auto kw = t.find("SubClassOf:");
    if (kw == std::string::npos) throw OntologyParseError("expected 'Class SubClassOf: pattern'", line);
    auto subclass = class_token(trim(t.substr(0, kw)), pm, line);
    try {
      store.add(subclass, parse_pattern(trim(t.substr(kw + 11)), pm));
    } catch (const PatternParseError& e) {
      throw OntologyParseError(e.what(), line);
    }
  }
  store.close_hierarchy();
  return store;
}

OntologyStore OntologyStore::load_file(const std::string& path, const PrefixMap& prefixes, Diagnostics* diag) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read ontology file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), prefixes, diag);
}

void OntologyStore::add(const std::string& subclass, const Pattern& superclass) {
  if (keys_.emplace(subclass, canonical_key(superclass)).second) axioms_.push_back({subclass, superclass});
}

bool OntologyStore::contains(const std::string& subclass, const Pattern& superclass) const {
  return keys_.count({subclass, canonical_key(superclass)}) > 0;
}

void OntologyStore::close_hierarchy() {
  std::map<std::string, std::set<std::string>> direct;
  for (auto& a : axioms_) {
    direct[a.subclass];
    if (a.superclass.kind() == Pattern::Kind::NamedClass) {
      direct[a.subclass].insert(a.superclass.iri());
      direct[a.superclass.iri()];
    }
  }
  hierarchy_.clear();
  for (auto& [cls, _] : direct) {
    std::set<std::string> seen{cls};
    std::vector<std::string> stack{cls};
    while (!stack.empty()) {
      auto c = stack.back();
      stack.pop_back();
      for (auto& s : direct[c]) {
        if (seen.insert(s).second) stack.push_back(s);
      }
    }
    hierarchy_[cls] = std::move(seen);
  }
}

std::set<std::string> OntologyStore::superclasses(const std::string& cls) const {
  auto it = hierarchy_.find(cls);
  return it == hierarchy_.end() ? std::set<std::string>{cls} : it->second;
}

bool OntologyStore::subsumed(const Pattern& x, const Pattern& y, std::vector<std::string>& trace) const {
  auto mark = trace.size();
  auto fail = [&] {
    trace.resize(mark);
    return false;
  };
  if (x == y) {
    trace.push_back(serialize(x) + " is " + serialize(y));
    return true;
  }
  if (is_conjunction(y)) {
    for (auto& yc : y.children()) {
      if (!subsumed(x, yc, trace)) return fail();
    }
    return true;
  }
  if (is_conjunction(x)) {
    for (auto& xc : x.children()) {
      if (subsumed(xc, y, trace)) {
        trace.push_back(serialize(x) + " has conjunct " + serialize(xc));
        return true;
      }
    }
    return fail();
  }
  if (x.kind() == Pattern::Kind::NamedClass && y.kind() == Pattern::Kind::NamedClass) {
    if (superclasses(x.iri()).count(y.iri())) {
      trace.push_back("<" + x.iri() + "> SubClassOf <" + y.iri() + "> by the class hierarchy");
      return true;
    }
    return fail();
  }
  if (is_some(x) && is_some(y) && x.iri() == y.iri()) {
    if (subsumed(x.filler(), y.filler(), trace)) {
      trace.push_back(serialize(x) + " narrows " + serialize(y));
      return true;
    }
    return fail();
  }
  if ((x.kind() == Pattern::Kind::ValueObject || x.kind() == Pattern::Kind::ValueData) && is_some(y) &&
      x.iri() == y.iri()) {
    Pattern one = x.kind() == Pattern::Kind::ValueObject ? Pattern::enumeration(x.term()) : Pattern::enum_literal(x.term());
    if (subsumed(one, y.filler(), trace)) {
      trace.push_back(serialize(x) + " is " + serialize(Pattern::some(x.iri(), one)));
      return true;
    }
    return fail();
  }
  return fail();
}

Coverage OntologyStore::explain(const std::string& target, const Pattern& c) const {
  Coverage cov;
  auto supers = superclasses(target);

  std::vector<std::pair<Pattern, std::string>> known;
  for (auto& s : supers) {
    known.emplace_back(Pattern::named_class(s), "<" + target + "> SubClassOf <" + s + "> by the class hierarchy");
  }
  for (auto& a : axioms_) {
    if (supers.count(a.subclass) && a.superclass.kind() != Pattern::Kind::NamedClass) {
      known.emplace_back(a.superclass, "asserted <" + a.subclass + "> SubClassOf " + serialize(a.superclass));
    }
  }

  for (auto& part : c.conjuncts()) {
    bool found = false;
    for (auto& [d, origin] : known) {
      std::vector<std::string> steps;
      if (subsumed(d, part, steps)) {
        cov.trace.push_back(origin);
        cov.trace.insert(cov.trace.end(), steps.begin(), steps.end());
        found = true;
        break;
      }
    }
    if (!found) {
      cov.trace.clear();
      return cov;
    }
  }
  cov.covered = true;
  return cov;
}

void OntologyStore::accept_axiom(const std::string& subclass, const Pattern& superclass) {
  if (contains(subclass, superclass)) {
    throw DuplicateAxiom("axiom already asserted: <" + subclass + "> SubClassOf " + serialize(superclass));
  }
  add(subclass, canonicalize(superclass));
  if (superclass.kind() == Pattern::Kind::NamedClass) close_hierarchy();
}

namespace {

std::vector<const Axiom*> sorted_axioms(const std::vector<Axiom>& axioms) {
  std::vector<const Axiom*> out;
  for (auto& a : axioms) out.push_back(&a);
  std::sort(out.begin(), out.end(), [](const Axiom* a, const Axiom* b) {
    if (a->subclass != b->subclass) return a->subclass < b->subclass;
    return canonical_key(a->superclass) < canonical_key(b->superclass);
  });
  return out;
}

}  // namespace

std::string OntologyStore::export_manchester(const PrefixMap& prefixes) const {
  std::string out;
  for (auto& [p, ns] : prefixes.entries()) out += "Prefix: " + p + ": <" + ns + ">\n";
  if (!prefixes.empty() && !axioms_.empty()) out += "\n";
  for (auto* a : sorted_axioms(axioms_)) {
    out += render_iri(a->subclass, prefixes) + " SubClassOf: " + serialize(a->superclass, prefixes) + "\n";
  }
  return out;
}

TurtleExport OntologyStore::export_turtle(const PrefixMap& prefixes) const {
  TurtleExport ex;
  std::vector<Triple> triples;
  for (auto* a : sorted_axioms(axioms_)) {
    if (a->superclass.kind() == Pattern::Kind::NamedClass) {
      triples.push_back(make_triple(RdfTerm::iri(a->subclass), RdfTerm::iri(vocab::kRdfsSubClassOf),
                                    RdfTerm::iri(a->superclass.iri())));
    } else {
      ex.unsupported.push_back(*a);
    }
  }
  PrefixMap pm;
  pm.add("rdfs", vocab::kRdfs);
  pm.merge(prefixes);
  ex.document = write_turtle(triples, pm);
  return ex;
}

}  // namespace elminer
