#pragma once

#include "model/diagnostics.hpp"
#include "model/pattern.hpp"
#include "model/prefix_map.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace elminer {

struct Axiom {
  std::string subclass;
  Pattern superclass;
};

class DuplicateAxiom : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OntologyParseError : public std::runtime_error {
 public:
  OntologyParseError(const std::string& message, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct Coverage {
  bool covered = false;
  std::vector<std::string> trace;  // one derivation step per line when covered
};

struct TurtleExport {
  std::string document;
  std::vector<Axiom> unsupported;  // axioms that are not a plain rdfs:subClassOf between classes
};

// SubClassOf axioms with named subclasses. covers() is a sound structural approximation of
// entailment: it never claims coverage a reasoner would reject, but misses some.
class OntologyStore {
 public:
  // Turtle (rdfs:subClassOf triples between IRIs) or a Manchester list: optional
  // `Prefix: p: <ns>` lines, then one `Class SubClassOf: pattern` per line.
  static OntologyStore parse(const std::string& text, const PrefixMap& prefixes = {}, Diagnostics* diag = nullptr);
  static OntologyStore load_file(const std::string& path, const PrefixMap& prefixes = {}, Diagnostics* diag = nullptr);

  const std::vector<Axiom>& axioms() const { return axioms_; }
  bool empty() const { return axioms_.empty(); }
  bool contains(const std::string& subclass, const Pattern& superclass) const;

  // Reflexive-transitive named superclasses.
  std::set<std::string> superclasses(const std::string& cls) const;

  bool covers(const std::string& target, const Pattern& c) const { return explain(target, c).covered; }
  Coverage explain(const std::string& target, const Pattern& c) const;

  // Throws DuplicateAxiom and leaves the store unchanged when the axiom is already asserted.
  void accept_axiom(const std::string& subclass, const Pattern& superclass);

  std::string export_manchester(const PrefixMap& prefixes = {}) const;
  TurtleExport export_turtle(const PrefixMap& prefixes = {}) const;

 private:
  void add(const std::string& subclass, const Pattern& superclass);
  void close_hierarchy();
  bool subsumed(const Pattern& x, const Pattern& y, std::vector<std::string>& trace) const;

  std::vector<Axiom> axioms_;
  std::set<std::pair<std::string, std::string>> keys_;  // (subclass, canonical key)
  std::map<std::string, std::set<std::string>> hierarchy_;
};

}  // namespace elminer
