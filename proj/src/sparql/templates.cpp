#include "sparql/templates.hpp"

#include <cctype>
#include <stdexcept>

namespace elminer {

namespace {

std::string values_clause(const std::vector<RdfTerm>& subjects) {
  std::string out = "VALUES ?s {";
  for (auto& s : subjects) {
    if (!s.is_iri()) throw std::invalid_argument("only IRIs can be listed in VALUES: " + s.to_ntriples());
    out += " <" + s.value() + ">";
  }
  return out + " }";
}

bool is_punct(char c) {
  return c == '{' || c == '}' || c == '(' || c == ')' || c == '.' || c == ',' || c == ';' || c == '[' || c == ']';
}

struct Shape {
  std::string text;
  std::vector<std::string> iris;
  std::vector<std::string> values;
};

// Lower-cases keywords, drops insignificant whitespace, replaces IRIs with "<>" and collapses
// the VALUES member list to a single "<>".
std::optional<Shape> normalize(const std::string& q) {
  Shape sh;
  bool in_values = false;
  bool pending_space = false;
  auto push = [&](const std::string& tok) {
    bool punct_edge = sh.text.empty() || is_punct(sh.text.back()) || is_punct(tok.front());
    if (pending_space && !punct_edge) sh.text += ' ';
    pending_space = false;
    sh.text += tok;
  };
  for (std::size_t i = 0; i < q.size();) {
    char c = q[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = true;
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < q.size() && q[i] != '\n') ++i;
      pending_space = true;
      continue;
    }
    if (c == '<') {
      auto end = q.find('>', i);
      if (end == std::string::npos) return std::nullopt;
      std::string iri = q.substr(i + 1, end - i - 1);
      i = end + 1;
      if (in_values) {
        if (sh.values.empty()) push("<>");
        sh.values.push_back(iri);
        pending_space = false;
      } else {
        sh.iris.push_back(iri);
        push("<>");
      }
      continue;
    }
    if (is_punct(c)) {
      if (c == '{' && sh.text.size() >= 9 && sh.text.compare(sh.text.size() - 9, 9, "values ?s") == 0) {
        in_values = true;
      } else if (c == '}') {
        in_values = false;
      }
      push(std::string(1, c));
      ++i;
      continue;
    }
    std::string word;
    while (i < q.size() && !std::isspace(static_cast<unsigned char>(q[i])) && !is_punct(q[i]) && q[i] != '<' &&
           q[i] != '#') {
      word += static_cast<char>(std::tolower(static_cast<unsigned char>(q[i])));
      ++i;
    }
    push(word);
  }
  return sh;
}

bool parse_tail(const std::string& tail, RecognizedQuery& out) {
  // " limit N offset M" in either order, both optional
  std::size_t i = 0;
  auto number = [&](std::size_t& value) {
    while (i < tail.size() && tail[i] == ' ') ++i;
    std::size_t start = i;
    while (i < tail.size() && std::isdigit(static_cast<unsigned char>(tail[i]))) ++i;
    if (start == i) return false;
    value = std::stoul(tail.substr(start, i - start));
    return true;
  };
  while (i < tail.size()) {
    while (i < tail.size() && tail[i] == ' ') ++i;
    if (tail.compare(i, 5, "limit") == 0) {
      i += 5;
      std::size_t v;
      if (!number(v)) return false;
      out.limit = v;
    } else if (tail.compare(i, 6, "offset") == 0) {
      i += 6;
      if (!number(out.offset)) return false;
    } else if (i < tail.size()) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::string triples_query(const std::vector<RdfTerm>& subjects) {
  return "SELECT ?s ?p ?o WHERE { ?s ?p ?o . " + values_clause(subjects) + " }";
}

std::string count_predicates_query(const std::vector<RdfTerm>& subjects) {
  return "SELECT ?s (COUNT(DISTINCT ?p) AS ?c) WHERE { ?s ?p [] . " + values_clause(subjects) + " } GROUP BY ?s";
}

std::string count_triples_query(const std::vector<RdfTerm>& subjects) {
  return "SELECT ?s (COUNT(?o) AS ?c) WHERE { ?s ?p ?o . " + values_clause(subjects) + " } GROUP BY ?s";
}

std::string class_instances_query(const std::string& class_iri, std::size_t limit, std::size_t offset) {
  return "SELECT ?s WHERE { ?s <" + vocab::kRdfType + "> <" + class_iri + "> } ORDER BY ?s LIMIT " +
         std::to_string(limit) + " OFFSET " + std::to_string(offset);
}

std::vector<std::vector<RdfTerm>> partition_batches(const std::vector<RdfTerm>& terms, std::size_t batch_size) {
  if (batch_size == 0) throw std::invalid_argument("batch size must be positive");
  std::vector<std::vector<RdfTerm>> out;
  for (std::size_t start = 0; start < terms.size(); start += batch_size) {
    auto end = std::min(terms.size(), start + batch_size);
    out.emplace_back(terms.begin() + static_cast<long>(start), terms.begin() + static_cast<long>(end));
  }
  return out;
}

std::optional<RecognizedQuery> recognize_query(const std::string& query) {
  auto shape = normalize(query);
  if (!shape) return std::nullopt;
  const std::string& t = shape->text;
  RecognizedQuery r;
  r.subjects = shape->values;

  static const std::string kTriples = "select ?s ?p ?o where{?s ?p ?o.values ?s{<>}}";
  static const std::string kCountPred = "select ?s(count(distinct ?p)as ?c)where{?s ?p[].values ?s{<>}}group by ?s";
  static const std::string kCountTriples = "select ?s(count(?o)as ?c)where{?s ?p ?o.values ?s{<>}}group by ?s";
  auto same = [&](const std::string& tmpl) {
    if (t == tmpl) return true;
    // an empty VALUES list has no "<>"
    std::string empty = tmpl;
    empty.replace(empty.find("{<>}"), 4, "{}");
    return shape->values.empty() && t == empty;
  };
  if (shape->iris.empty()) {
    if (same(kTriples)) {
      r.kind = RecognizedQuery::Kind::Triples;
      return r;
    }
    if (same(kCountPred)) {
      r.kind = RecognizedQuery::Kind::CountPredicates;
      return r;
    }
    if (same(kCountTriples)) {
      r.kind = RecognizedQuery::Kind::CountTriples;
      return r;
    }
  }

  static const std::string kClassIri = "select ?s where{?s <> <>}order by ?s";
  static const std::string kClassA = "select ?s where{?s a <>}order by ?s";
  std::string prefix;
  if (t.rfind(kClassIri, 0) == 0 && shape->iris.size() == 2 && shape->iris[0] == vocab::kRdfType) {
    prefix = kClassIri;
    r.class_iri = shape->iris[1];
  } else if (t.rfind(kClassA, 0) == 0 && shape->iris.size() == 1) {
    prefix = kClassA;
    r.class_iri = shape->iris[0];
  } else {
    return std::nullopt;
  }
  r.kind = RecognizedQuery::Kind::ClassInstances;
  if (!parse_tail(t.substr(prefix.size()), r)) return std::nullopt;
  return r;
}

}  // namespace elminer
