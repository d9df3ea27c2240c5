#include "model/prefix_map.hpp"

#include "model/rdf_term.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace elminer {

bool is_safe_local_name(const std::string& local) {
  if (local.empty()) return true;
  for (char ch : local) {
    unsigned char c = static_cast<unsigned char>(ch);
    if (std::isalnum(c) || c == '_' || c == '-' || c == '.' || c >= 0x80) continue;
    return false;
  }
  if (local.front() == '.' || local.front() == '-' || local.back() == '.') return false;
  return true;
}

PrefixMap PrefixMap::well_known() {
  PrefixMap m;
  m.add("rdf", vocab::kRdf);
  m.add("rdfs", vocab::kRdfs);
  m.add("owl", vocab::kOwl);
  m.add("xsd", vocab::kXsd);
  m.add("sh", vocab::kSh);
  return m;
}

PrefixMap PrefixMap::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("prefix map is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::runtime_error("prefix map must be a JSON object");
  PrefixMap m;
  for (auto& [k, v] : j.items()) {
    if (!v.is_string()) throw std::runtime_error("prefix '" + k + "' must map to a string");
    m.add(k, v.get<std::string>());
  }
  return m;
}

PrefixMap PrefixMap::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open prefix file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

std::string PrefixMap::to_json_text() const {
  nlohmann::json j = nlohmann::json::object();
  for (auto& [k, v] : entries_) j[k] = v;
  return j.dump();
}

void PrefixMap::add(std::string prefix, std::string ns) {
  if (!prefix.empty() && prefix.back() == ':') prefix.pop_back();
  entries_[std::move(prefix)] = std::move(ns);
}

void PrefixMap::merge(const PrefixMap& other) {
  for (auto& [k, v] : other.entries_) entries_[k] = v;
}

std::optional<std::string> PrefixMap::compact(const std::string& iri) const {
  const std::string* best_prefix = nullptr;
  std::size_t best_len = 0;
  for (auto& [prefix, ns] : entries_) {
    if (ns.empty() || ns.size() > iri.size() || iri.compare(0, ns.size(), ns) != 0) continue;
    if (!is_safe_local_name(iri.substr(ns.size()))) continue;
    if (best_prefix == nullptr || ns.size() > best_len ||
        (ns.size() == best_len && prefix < *best_prefix)) {
      best_prefix = &prefix;
      best_len = ns.size();
    }
  }
  if (!best_prefix) return std::nullopt;
  return *best_prefix + ":" + iri.substr(best_len);
}

std::optional<std::string> PrefixMap::expand(const std::string& pname) const {
  auto colon = pname.find(':');
  if (colon == std::string::npos) return std::nullopt;
  auto it = entries_.find(pname.substr(0, colon));
  if (it == entries_.end()) return std::nullopt;
  return it->second + pname.substr(colon + 1);
}

}  // namespace elminer
