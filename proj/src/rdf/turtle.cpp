#include "rdf/turtle.hpp"

#include "model/pattern.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace elminer {

namespace {

bool is_pn_char(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '-' || c == '.' || c == ':' || c == '%' || c >= 0x80;
}

class TurtleParser {
 public:
  TurtleParser(const std::string& text, std::string base) : s_(text), base_(std::move(base)) {}

  TurtleDocument run() {
    while (true) {
      skip_ws();
      if (eof()) break;
      statement();
    }
    return std::move(doc_);
  }

 private:
  [[noreturn]] void fail(const std::string& msg) { throw TurtleParseError(msg, line_); }

  bool eof() const { return i_ >= s_.size(); }
  char peek(std::size_t ahead = 0) const { return i_ + ahead < s_.size() ? s_[i_ + ahead] : '\0'; }

  char get() {
    char c = s_[i_++];
    if (c == '\n') ++line_;
    return c;
  }

  void skip_ws() {
    while (!eof()) {
      char c = peek();
      if (c == '#') {
        while (!eof() && peek() != '\n') ++i_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        get();
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    get();
  }

  bool keyword_ahead(const char* kw, bool case_insensitive) const {
    std::size_t n = std::char_traits<char>::length(kw);
    if (i_ + n > s_.size()) return false;
    for (std::size_t k = 0; k < n; ++k) {
      char a = s_[i_ + k];
      char b = kw[k];
      if (case_insensitive ? std::tolower(static_cast<unsigned char>(a)) != b : a != b) return false;
    }
    char after = i_ + n < s_.size() ? s_[i_ + n] : ' ';
    return !std::isalnum(static_cast<unsigned char>(after)) && after != ':' && after != '_';
  }

  void statement() {
    if (peek() == '@') {
      if (keyword_ahead("@prefix", false)) {
        i_ += 7;
        prefix_decl();
        expect('.');
        return;
      }
      if (keyword_ahead("@base", false)) {
        i_ += 5;
        base_decl();
        expect('.');
        return;
      }
      fail("unknown directive");
    }
    if (keyword_ahead("prefix", true)) {
      i_ += 6;
      prefix_decl();
      return;
    }
    if (keyword_ahead("base", true)) {
      i_ += 4;
      base_decl();
      return;
    }
    triples();
    expect('.');
  }

  void prefix_decl() {
    skip_ws();
    std::string prefix;
    while (!eof() && peek() != ':') {
      unsigned char c = static_cast<unsigned char>(peek());
      if (!std::isalnum(c) && c != '_' && c != '-' && c != '.' && c < 0x80) fail("bad prefix name");
      prefix += get();
    }
    if (eof()) fail("expected ':' in prefix declaration");
    get();
    skip_ws();
    std::string ns = iriref();
    doc_.prefixes.add(prefix, ns);
  }

  void base_decl() {
    skip_ws();
    base_ = iriref();
  }

  std::string resolve(const std::string& iri) {
    if (has_iri_scheme(iri)) return iri;
    if (base_.empty()) fail("relative IRI <" + iri + "> without a base");
    if (iri.empty()) return base_;
    if (iri[0] == '#') {
      auto hash = base_.find('#');
      return base_.substr(0, hash) + iri;
    }
    if (iri[0] == '/') {
      auto scheme_end = base_.find("://");
      auto path_start = scheme_end == std::string::npos ? std::string::npos : base_.find('/', scheme_end + 3);
      return (path_start == std::string::npos ? base_ : base_.substr(0, path_start)) + iri;
    }
    auto slash = base_.rfind('/');
    return (slash == std::string::npos ? base_ : base_.substr(0, slash + 1)) + iri;
  }

  std::string iriref() {
    if (peek() != '<') fail("expected an IRI");
    get();
    std::string out;
    while (true) {
      if (eof()) fail("unterminated IRI");
      char c = get();
      if (c == '>') break;
      if (c == '\\') {
        out += unicode_escape();
        continue;
      }
      if (c == ' ' || c == '\n' || c == '"' || c == '{' || c == '}' || c == '|' || c == '^' || c == '`') {
        fail("invalid character in IRI");
      }
      out += c;
    }
    return resolve(out);
  }

  std::string unicode_escape() {
    if (eof()) fail("dangling escape");
    char kind = get();
    int digits = kind == 'u' ? 4 : kind == 'U' ? 8 : 0;
    if (digits == 0) fail(std::string("bad escape \\") + kind);
    unsigned long cp = 0;
    for (int k = 0; k < digits; ++k) {
      if (eof() || !std::isxdigit(static_cast<unsigned char>(peek()))) fail("bad unicode escape");
      cp = cp * 16 + std::stoul(std::string(1, get()), nullptr, 16);
    }
    std::string out;
    if (cp < 0x80) {
      out += static_cast<char>(cp);
    } else if (cp < 0x800) {
      out += static_cast<char>(0xC0 | (cp >> 6));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
      out += static_cast<char>(0xE0 | (cp >> 12));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (cp >> 18));
      out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    }
    return out;
  }

  std::string prefixed_name_text() {
    std::string out;
    while (!eof()) {
      unsigned char c = static_cast<unsigned char>(peek());
      if (c == '\\' && i_ + 1 < s_.size()) {
        get();
        out += get();
        continue;
      }
      if (!is_pn_char(c)) break;
      out += get();
    }
    while (!out.empty() && out.back() == '.') {
      out.pop_back();
      --i_;
    }
    return out;
  }

  RdfTerm prefixed_name() {
    std::size_t start = i_;
    std::string pname = prefixed_name_text();
    if (pname.find(':') == std::string::npos) {
      i_ = start;
      fail("unexpected token '" + pname + "'");
    }
    auto iri = doc_.prefixes.expand(pname);
    if (!iri) fail("unknown prefix in '" + pname + "'");
    return RdfTerm::iri(*iri);
  }

  RdfTerm blank_label() {
    i_ += 2;
    std::string label;
    while (!eof() && is_pn_char(static_cast<unsigned char>(peek())) && peek() != ':') label += get();
    while (!label.empty() && label.back() == '.') {
      label.pop_back();
      --i_;
    }
    if (label.empty()) fail("empty blank node label");
    auto it = labels_.find(label);
    if (it != labels_.end()) return it->second;
    RdfTerm b = RdfTerm::blank("b" + std::to_string(++blank_counter_));
    labels_.emplace(label, b);
    return b;
  }

  RdfTerm fresh_blank() { return RdfTerm::blank("b" + std::to_string(++blank_counter_)); }

  void emit(const RdfTerm& s, const RdfTerm& p, const RdfTerm& o) {
    Triple t{s, p, o};
    if (seen_.insert(t).second) doc_.triples.push_back(std::move(t));
  }

  void triples() {
    skip_ws();
    RdfTerm subject;
    if (peek() == '[') {
      subject = blank_property_list();
      skip_ws();
      if (peek() == '.') return;
    } else {
      subject = subject_term();
    }
    predicate_object_list(subject);
  }

  RdfTerm subject_term() {
    skip_ws();
    char c = peek();
    if (c == '<') return RdfTerm::iri(iriref());
    if (c == '_' && peek(1) == ':') return blank_label();
    if (c == '(') return collection();
    if (c == '[') return blank_property_list();
    if (c == '"' || c == '\'') fail("literal in subject position");
    return prefixed_name();
  }

  RdfTerm predicate() {
    skip_ws();
    if (peek() == 'a' && (std::isspace(static_cast<unsigned char>(peek(1))) || peek(1) == '<' || peek(1) == '[')) {
      get();
      return RdfTerm::iri(vocab::kRdfType);
    }
    if (peek() == '<') return RdfTerm::iri(iriref());
    return prefixed_name();
  }

  void predicate_object_list(const RdfTerm& subject) {
    while (true) {
      RdfTerm pred = predicate();
      while (true) {
        RdfTerm obj = object();
        emit(subject, pred, obj);
        skip_ws();
        if (peek() == ',') {
          get();
          continue;
        }
        break;
      }
      skip_ws();
      if (peek() != ';') return;
      while (peek() == ';') {
        get();
        skip_ws();
      }
      if (peek() == '.' || peek() == ']') return;
    }
  }

  RdfTerm blank_property_list() {
    expect('[');
    RdfTerm node = fresh_blank();
    skip_ws();
    if (peek() != ']') predicate_object_list(node);
    expect(']');
    return node;
  }

  RdfTerm collection() {
    expect('(');
    std::vector<RdfTerm> items;
    while (true) {
      skip_ws();
      if (peek() == ')') {
        get();
        break;
      }
      if (eof()) fail("unterminated collection");
      items.push_back(object());
    }
    if (items.empty()) return RdfTerm::iri(vocab::kRdfNil);
    RdfTerm head = fresh_blank();
    RdfTerm cur = head;
    for (std::size_t k = 0; k < items.size(); ++k) {
      emit(cur, RdfTerm::iri(vocab::kRdfFirst), items[k]);
      RdfTerm next = k + 1 < items.size() ? fresh_blank() : RdfTerm::iri(vocab::kRdfNil);
      emit(cur, RdfTerm::iri(vocab::kRdfRest), next);
      cur = next;
    }
    return head;
  }

  RdfTerm object() {
    skip_ws();
    char c = peek();
    if (c == '"' || c == '\'') return string_literal();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-' ||
        (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      return numeric_literal();
    }
    if (keyword_ahead("true", false)) {
      i_ += 4;
      return RdfTerm::typed_literal("true", vocab::kXsdBoolean);
    }
    if (keyword_ahead("false", false)) {
      i_ += 5;
      return RdfTerm::typed_literal("false", vocab::kXsdBoolean);
    }
    return subject_term();
  }

  RdfTerm numeric_literal() {
    std::string lex;
    if (peek() == '+' || peek() == '-') lex += get();
    bool dot = false, exp = false, digits = false;
    while (!eof()) {
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits = true;
        lex += get();
      } else if (c == '.' && !dot && !exp && std::isdigit(static_cast<unsigned char>(peek(1)))) {
        dot = true;
        lex += get();
      } else if ((c == 'e' || c == 'E') && !exp && digits) {
        exp = true;
        lex += get();
        if (peek() == '+' || peek() == '-') lex += get();
      } else {
        break;
      }
    }
    if (!digits) fail("malformed number");
    const std::string& dt = exp ? vocab::kXsdDouble : dot ? vocab::kXsdDecimal : vocab::kXsdInteger;
    return RdfTerm::typed_literal(lex, dt);
  }

  RdfTerm string_literal() {
    char q = get();
    bool longq = peek() == q && peek(1) == q;
    if (longq) {
      get();
      get();
    } else if (peek() == q) {
      // empty short string
    }
    std::string val;
    while (true) {
      if (eof()) fail("unterminated string");
      char c = peek();
      if (longq) {
        if (c == q && peek(1) == q && peek(2) == q) {
          i_ += 3;
          while (peek() == q) val += get();  // """a"""" ends with a quote in the value
          break;
        }
      } else {
        if (c == q) {
          get();
          break;
        }
        if (c == '\n') fail("newline in short string");
      }
      get();
      if (c == '\\') {
        if (eof()) fail("dangling escape");
        char e = peek();
        switch (e) {
          case 't': get(); val += '\t'; break;
          case 'b': get(); val += '\b'; break;
          case 'n': get(); val += '\n'; break;
          case 'r': get(); val += '\r'; break;
          case 'f': get(); val += '\f'; break;
          case '"': get(); val += '"'; break;
          case '\'': get(); val += '\''; break;
          case '\\': get(); val += '\\'; break;
          case 'u':
          case 'U': val += unicode_escape(); break;
          default: fail(std::string("bad escape \\") + e);
        }
        continue;
      }
      val += c;
    }
    if (peek() == '@') {
      get();
      std::string lang;
      while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-')) lang += get();
      if (lang.empty()) fail("empty language tag");
      return RdfTerm::lang_literal(val, lang);
    }
    if (peek() == '^' && peek(1) == '^') {
      i_ += 2;
      std::string dt = peek() == '<' ? iriref() : prefixed_name().value();
      return RdfTerm::typed_literal(val, dt);
    }
    return RdfTerm::literal(val);
  }

  const std::string& s_;
  std::size_t i_ = 0;
  int line_ = 1;
  std::string base_;
  TurtleDocument doc_;
  std::set<Triple> seen_;
  std::map<std::string, RdfTerm> labels_;
  int blank_counter_ = 0;
};

// ---------------------------------------------------------------------------
// Writer

class TurtleWriter {
 public:
  TurtleWriter(const std::vector<Triple>& triples, const PrefixMap& prefixes)
      : triples_(triples), prefixes_(prefixes) {
    for (std::size_t k = 0; k < triples_.size(); ++k) {
      const auto& t = triples_[k];
      if (!by_subject_.count(t.subject)) subject_order_.push_back(t.subject);
      by_subject_[t.subject].push_back(k);
      if (t.object.is_blank()) ++object_refs_[t.object];
    }
  }

  std::string run() {
    std::ostringstream out;
    for (auto& [prefix, ns] : prefixes_.entries()) out << "@prefix " << prefix << ": <" << ns << "> .\n";
    if (!prefixes_.empty()) out << "\n";
    bool first = true;
    auto write_top = [&](const RdfTerm& subject) {
      if (!first) out << "\n";
      first = false;
      if (subject.is_blank() && object_refs_[subject] == 0) {
        out << "[]";
      } else {
        out << term(subject, 0);
      }
      out << " ";
      body(out, subject, 1);
      out << " .\n";
    };
    for (const auto& subject : subject_order_) {
      if (subject.is_blank() && inlinable(subject)) continue;
      write_top(subject);
    }
    // Blank nodes on a cycle of single references are never reached from a top-level subject.
    for (const auto& subject : subject_order_) {
      if (written_.count(subject)) continue;
      forced_label_.insert(subject);
      write_top(subject);
    }
    return out.str();
  }

 private:
  bool inlinable(const RdfTerm& node) const {
    if (forced_label_.count(node)) return false;
    auto it = object_refs_.find(node);
    return it != object_refs_.end() && it->second == 1;
  }

  // Items of a well-formed list starting at `node`, or nullopt.
  std::optional<std::vector<RdfTerm>> list_items(const RdfTerm& node) const {
    std::vector<RdfTerm> items;
    RdfTerm cur = node;
    std::set<RdfTerm> visited;
    while (!(cur.is_iri() && cur.value() == vocab::kRdfNil)) {
      if (!cur.is_blank() || !visited.insert(cur).second) return std::nullopt;
      if (cur != node && !inlinable(cur)) return std::nullopt;
      auto it = by_subject_.find(cur);
      if (it == by_subject_.end() || it->second.size() != 2) return std::nullopt;
      std::optional<RdfTerm> first, rest;
      for (auto k : it->second) {
        const auto& t = triples_[k];
        if (t.predicate.value() == vocab::kRdfFirst) first = t.object;
        if (t.predicate.value() == vocab::kRdfRest) rest = t.object;
      }
      if (!first || !rest) return std::nullopt;
      items.push_back(*first);
      cur = *rest;
    }
    return items;
  }

  std::string indent(int level) const { return std::string(static_cast<std::size_t>(level) * 4, ' '); }

  void body(std::ostringstream& out, const RdfTerm& subject, int level) {
    auto it = by_subject_.find(subject);
    if (it == by_subject_.end() || !written_.insert(subject).second) return;
    std::vector<RdfTerm> pred_order;
    std::map<RdfTerm, std::vector<RdfTerm>> objects;
    for (auto k : it->second) {
      const auto& t = triples_[k];
      if (!objects.count(t.predicate)) pred_order.push_back(t.predicate);
      objects[t.predicate].push_back(t.object);
    }
    for (std::size_t pi = 0; pi < pred_order.size(); ++pi) {
      const auto& pred = pred_order[pi];
      if (pi > 0) out << " ;\n" << indent(level);
      out << (pred.value() == vocab::kRdfType ? "a" : term(pred, level)) << " ";
      const auto& objs = objects[pred];
      for (std::size_t oi = 0; oi < objs.size(); ++oi) {
        if (oi > 0) out << " , ";
        out << term(objs[oi], level);
      }
    }
  }

  std::string term(const RdfTerm& t, int level) {
    if (t.is_iri()) return render_iri(t.value(), prefixes_);
    if (t.is_literal()) return literal(t);
    if (inlinable(t)) {
      if (auto items = list_items(t)) {
        for (RdfTerm cur = t; cur.is_blank();) {
          written_.insert(cur);
          const RdfTerm* rest = nullptr;
          for (auto k : by_subject_[cur]) {
            if (triples_[k].predicate.value() == vocab::kRdfRest) rest = &triples_[k].object;
          }
          cur = *rest;
        }
        std::string s = "(";
        for (auto& item : *items) s += " " + term(item, level);
        return s + " )";
      }
      if (!by_subject_.count(t)) return "[]";
      std::ostringstream out;
      out << "[\n" << indent(level + 1);
      body(out, t, level + 1);
      out << "\n" << indent(level) << "]";
      return out.str();
    }
    return "_:" + t.value();
  }

  std::string literal(const RdfTerm& t) {
    if (t.datatype()) {
      const std::string& dt = *t.datatype();
      const std::string& lex = t.value();
      auto bare_number = [&](bool allow_dot) {
        if (lex.empty()) return false;
        std::size_t k = (lex[0] == '+' || lex[0] == '-') ? 1 : 0;
        bool digits_before = false, dot = false, digits_after = false;
        for (; k < lex.size(); ++k) {
          char c = lex[k];
          if (std::isdigit(static_cast<unsigned char>(c))) {
            (dot ? digits_after : digits_before) = true;
          } else if (c == '.' && allow_dot && !dot) {
            dot = true;
          } else {
            return false;
          }
        }
        return allow_dot ? (dot && digits_after) : digits_before;
      };
      if (dt == vocab::kXsdInteger && bare_number(false)) return lex;
      if (dt == vocab::kXsdDecimal && bare_number(true)) return lex;
      if (dt == vocab::kXsdBoolean && (lex == "true" || lex == "false")) return lex;
    }
    return render_literal(t, prefixes_);
  }

  const std::vector<Triple>& triples_;
  const PrefixMap& prefixes_;
  std::vector<RdfTerm> subject_order_;
  std::map<RdfTerm, std::vector<std::size_t>> by_subject_;
  std::map<RdfTerm, int> object_refs_;
  std::set<RdfTerm> written_;
  std::set<RdfTerm> forced_label_;
};

// ---------------------------------------------------------------------------
// Isomorphism

class IsoMatcher {
 public:
  IsoMatcher(const std::vector<Triple>& a, const std::vector<Triple>& b,
             const std::function<bool(const RdfTerm&)>& relabel)
      : relabel_(relabel) {
    a_.insert(a.begin(), a.end());
    b_.insert(b.begin(), b.end());
  }

  bool run() {
    if (a_.size() != b_.size()) return false;
    auto nodes_a = collect(a_);
    auto nodes_b = collect(b_);
    if (nodes_a.size() != nodes_b.size()) return false;
    colour_a_ = refine(a_, nodes_a);
    colour_b_ = refine(b_, nodes_b);
    std::multiset<std::size_t> ca, cb;
    for (auto& [n, c] : colour_a_) ca.insert(c);
    for (auto& [n, c] : colour_b_) cb.insert(c);
    if (ca != cb) return false;
    order_.assign(nodes_a.begin(), nodes_a.end());
    std::sort(order_.begin(), order_.end(), [&](const RdfTerm& x, const RdfTerm& y) {
      return class_size(colour_a_[x]) < class_size(colour_a_[y]);
    });
    candidates_.assign(nodes_b.begin(), nodes_b.end());
    return search(0);
  }

 private:
  std::set<RdfTerm> collect(const std::set<Triple>& g) const {
    std::set<RdfTerm> out;
    for (auto& t : g) {
      for (const RdfTerm* x : {&t.subject, &t.predicate, &t.object}) {
        if (relabel_(*x)) out.insert(*x);
      }
    }
    return out;
  }

  std::map<RdfTerm, std::size_t> refine(const std::set<Triple>& g, const std::set<RdfTerm>& nodes) const {
    std::map<RdfTerm, std::size_t> colour;
    for (auto& n : nodes) colour[n] = 1;
    auto hash_term = [&](const RdfTerm& t, const std::map<RdfTerm, std::size_t>& c) -> std::size_t {
      auto it = c.find(t);
      if (it != c.end()) return it->second * 0x9e3779b97f4a7c15ULL;
      return std::hash<std::string>()(t.to_ntriples());
    };
    for (std::size_t round = 0; round < nodes.size() + 1; ++round) {
      std::map<RdfTerm, std::vector<std::size_t>> sig;
      for (auto& t : g) {
        std::size_t hs = hash_term(t.subject, colour), hp = hash_term(t.predicate, colour),
                    ho = hash_term(t.object, colour);
        if (colour.count(t.subject)) sig[t.subject].push_back(hp * 31 + ho * 7 + 1);
        if (colour.count(t.predicate)) sig[t.predicate].push_back(hs * 17 + ho * 13 + 2);
        if (colour.count(t.object)) sig[t.object].push_back(hs * 11 + hp * 5 + 3);
      }
      std::map<RdfTerm, std::size_t> next;
      for (auto& n : nodes) {
        auto& v = sig[n];
        std::sort(v.begin(), v.end());
        std::size_t h = colour[n];
        for (auto x : v) h = h * 1000003ULL ^ x;
        next[n] = h;
      }
      std::set<std::size_t> before, after;
      for (auto& [n, c] : colour) before.insert(c);
      for (auto& [n, c] : next) after.insert(c);
      bool stable = after.size() == before.size();
      colour = std::move(next);
      if (stable && round > 0) break;
    }
    return colour;
  }

  std::size_t class_size(std::size_t c) const {
    std::size_t n = 0;
    for (auto& [t, col] : colour_a_) n += col == c;
    return n;
  }

  RdfTerm map_term(const RdfTerm& t) const {
    auto it = mapping_.find(t);
    return it == mapping_.end() ? t : it->second;
  }

  bool fully_mapped(const RdfTerm& t) const { return !relabel_(t) || mapping_.count(t); }

  bool consistent(const RdfTerm& just_mapped) const {
    for (auto& t : a_) {
      if (t.subject != just_mapped && t.predicate != just_mapped && t.object != just_mapped) continue;
      if (!fully_mapped(t.subject) || !fully_mapped(t.predicate) || !fully_mapped(t.object)) continue;
      Triple m{map_term(t.subject), map_term(t.predicate), map_term(t.object)};
      if (!b_.count(m)) return false;
    }
    return true;
  }

  bool search(std::size_t k) {
    if (k == order_.size()) return true;
    const RdfTerm& node = order_[k];
    for (auto& cand : candidates_) {
      if (used_.count(cand) || colour_b_.at(cand) != colour_a_.at(node)) continue;
      mapping_[node] = cand;
      used_.insert(cand);
      if (consistent(node) && search(k + 1)) return true;
      mapping_.erase(node);
      used_.erase(cand);
    }
    return false;
  }

  const std::function<bool(const RdfTerm&)>& relabel_;
  std::set<Triple> a_, b_;
  std::map<RdfTerm, std::size_t> colour_a_, colour_b_;
  std::vector<RdfTerm> order_, candidates_;
  std::map<RdfTerm, RdfTerm> mapping_;
  std::set<RdfTerm> used_;
};

}  // namespace

TurtleDocument parse_turtle(const std::string& text, const std::string& base_iri) {
  TurtleParser parser(text, base_iri);
  return parser.run();
}

TurtleDocument parse_turtle_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_turtle(ss.str());
}

std::string write_turtle(const std::vector<Triple>& triples, const PrefixMap& prefixes) {
  TurtleWriter writer(triples, prefixes);
  return writer.run();
}

bool isomorphic(const std::vector<Triple>& a, const std::vector<Triple>& b,
                const std::function<bool(const RdfTerm&)>& relabelable) {
  IsoMatcher m(a, b, relabelable);
  return m.run();
}

bool isomorphic(const std::vector<Triple>& a, const std::vector<Triple>& b) {
  return isomorphic(a, b, [](const RdfTerm& t) { return t.is_blank(); });
}

}  // namespace elminer
