#pragma once

#include <map>
#include <optional>
#include <string>

namespace elminer {

// prefix -> namespace IRI. The empty prefix is allowed (":The_Hobbit").
class PrefixMap {
 public:
  PrefixMap() = default;

  // rdf, rdfs, owl, xsd and sh.
  static PrefixMap well_known();

  // JSON object of prefix -> namespace. Throws std::runtime_error on bad input.
  static PrefixMap from_json_text(const std::string& text);
  static PrefixMap from_json_file(const std::string& path);
  std::string to_json_text() const;

  void add(std::string prefix, std::string ns);
  void merge(const PrefixMap& other);  // entries of `other` win

  // Shortest valid prefixed name for the IRI (longest namespace wins), if any.
  std::optional<std::string> compact(const std::string& iri) const;
  // Expands "p:local". Returns nullopt when the prefix is unknown.
  std::optional<std::string> expand(const std::string& pname) const;

  const std::map<std::string, std::string>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

 private:
  std::map<std::string, std::string> entries_;
};

// True when `local` can be written after "prefix:" in both Turtle and the Manchester grammar.
bool is_safe_local_name(const std::string& local);

}  // namespace elminer
