#include "model/pattern.hpp"

#include <algorithm>
#include <cctype>

namespace elminer {

namespace {

bool is_range_kind(Pattern::Kind k) {
  switch (k) {
    case Pattern::Kind::Datatype:
    case Pattern::Kind::AndRange:
    case Pattern::Kind::EnumLiteral:
    case Pattern::Kind::MaxInclusive:
    case Pattern::Kind::MinInclusive:
      return true;
    default:
      return false;
  }
}

bool is_conjunction_kind(Pattern::Kind k) { return k == Pattern::Kind::And || k == Pattern::Kind::AndRange; }

bool is_bare_number(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  bool digits = false, dot = false;
  for (; i < s.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits = true;
    } else if (s[i] == '.' && !dot) {
      dot = true;
    } else {
      return false;
    }
  }
  // "5." would swallow the next token's boundary in Turtle; keep it quoted.
  return digits && s.back() != '.';
}

std::string write(const Pattern& p, const PrefixMap& prefixes);

std::string write_child(const Pattern& c, const PrefixMap& prefixes) {
  std::string s = write(c, prefixes);
  return is_conjunction_kind(c.kind()) ? "(" + s + ")" : s;
}

std::string write_term(const RdfTerm& t, const PrefixMap& prefixes) {
  if (t.is_literal()) return render_literal(t, prefixes);
  if (t.is_blank()) return "_:" + t.value();
  return render_iri(t.value(), prefixes);
}

std::string write(const Pattern& p, const PrefixMap& prefixes) {
  using K = Pattern::Kind;
  switch (p.kind()) {
    case K::NamedClass:
      return render_iri(p.iri(), prefixes);
    case K::And:
    case K::AndRange: {
      std::string out;
      for (const auto& c : p.children()) {
        if (!out.empty()) out += " and ";
        out += write_child(c, prefixes);
      }
      return out;
    }
    case K::Enum:
    case K::EnumLiteral:
      return "{" + write_term(p.term(), prefixes) + "}";
    case K::SomeObject:
    case K::SomeData:
      return render_iri(p.iri(), prefixes) + " some " + write_child(p.filler(), prefixes);
    case K::ValueObject:
    case K::ValueData:
      return render_iri(p.iri(), prefixes) + " value " + write_term(p.term(), prefixes);
    case K::SelfRestriction:
      return render_iri(p.iri(), prefixes) + " Self";
    case K::Datatype:
      return render_iri(datatype_iri(p.datatype_id()), prefixes);
    case K::MaxInclusive:
    case K::MinInclusive: {
      const std::string& lex = p.term().value();
      std::string bound = is_bare_number(lex) ? lex : "\"" + escape_string_literal(lex) + "\"";
      return render_iri(datatype_iri(p.datatype_id()), prefixes) +
             (p.kind() == K::MaxInclusive ? "[<= " : "[>= ") + bound + "]";
    }
  }
  return {};
}

}  // namespace

std::string render_iri(const std::string& iri, const PrefixMap& prefixes) {
  if (auto c = prefixes.compact(iri)) return *c;
  return "<" + iri + ">";
}

std::string render_literal(const RdfTerm& literal, const PrefixMap& prefixes) {
  std::string out = "\"" + escape_string_literal(literal.value()) + "\"";
  if (literal.language()) out += "@" + *literal.language();
  if (literal.datatype()) out += "^^" + render_iri(*literal.datatype(), prefixes);
  return out;
}

Pattern Pattern::make(Node node) { return Pattern(std::make_shared<const Node>(std::move(node))); }

bool Pattern::is_data_range() const { return is_range_kind(node_->kind); }

Pattern Pattern::named_class(std::string iri) { return make(Node{Kind::NamedClass, std::move(iri), {}, {}, {}}); }

Pattern Pattern::conjunction(std::vector<Pattern> children) {
  if (children.empty()) throw std::invalid_argument("conjunction needs at least one conjunct");
  std::vector<Pattern> flat;
  for (auto& c : children) {
    if (is_conjunction_kind(c.kind())) {
      for (auto& g : c.children()) flat.push_back(canonicalize(g));
    } else {
      flat.push_back(canonicalize(c));
    }
  }
  bool range = flat.front().is_data_range();
  for (auto& c : flat) {
    if (c.is_data_range() != range) {
      throw std::invalid_argument("cannot conjoin a class expression with a data range");
    }
  }
  std::vector<std::pair<std::string, Pattern>> keyed;
  keyed.reserve(flat.size());
  for (auto& c : flat) keyed.emplace_back(canonical_key(c), c);
  std::sort(keyed.begin(), keyed.end(), [](auto& a, auto& b) { return a.first < b.first; });
  keyed.erase(std::unique(keyed.begin(), keyed.end(), [](auto& a, auto& b) { return a.first == b.first; }),
              keyed.end());
  if (keyed.size() == 1) return keyed.front().second;
  std::vector<Pattern> sorted;
  for (auto& [k, c] : keyed) sorted.push_back(c);
  return make(Node{range ? Kind::AndRange : Kind::And, {}, {}, {}, std::move(sorted)});
}

Pattern Pattern::enumeration(RdfTerm individual) {
  if (individual.is_literal()) return enum_literal(std::move(individual));
  if (individual.is_blank()) throw std::invalid_argument("blank nodes cannot appear in enumerations");
  return make(Node{Kind::Enum, {}, std::move(individual), {}, {}});
}

Pattern Pattern::some(std::string property, Pattern filler) {
  Kind k = filler.is_data_range() ? Kind::SomeData : Kind::SomeObject;
  return make(Node{k, std::move(property), {}, {}, {std::move(filler)}});
}

Pattern Pattern::value(std::string property, RdfTerm object) {
  if (object.is_blank()) throw std::invalid_argument("value restrictions cannot name blank nodes");
  Kind k = object.is_literal() ? Kind::ValueData : Kind::ValueObject;
  return make(Node{k, std::move(property), std::move(object), {}, {}});
}

Pattern Pattern::self(std::string property) {
  return make(Node{Kind::SelfRestriction, std::move(property), {}, {}, {}});
}

Pattern Pattern::datatype(DatatypeId id) { return make(Node{Kind::Datatype, {}, {}, id, {}}); }

Pattern Pattern::enum_literal(RdfTerm literal) {
  if (!literal.is_literal()) throw std::invalid_argument("literal enumeration needs a literal");
  return make(Node{Kind::EnumLiteral, {}, std::move(literal), {}, {}});
}

Pattern Pattern::max_inclusive(DatatypeId type, const RdfTerm& bound) {
  if (!lt_eligible(type)) throw std::invalid_argument(datatype_iri(type) + " cannot carry an upper bound");
  return make(Node{Kind::MaxInclusive, {}, RdfTerm::typed_literal(bound.value(), datatype_iri(type)), type, {}});
}

Pattern Pattern::min_inclusive(DatatypeId type, const RdfTerm& bound) {
  if (!gt_eligible(type)) throw std::invalid_argument(datatype_iri(type) + " cannot carry a lower bound");
  return make(Node{Kind::MinInclusive, {}, RdfTerm::typed_literal(bound.value(), datatype_iri(type)), type, {}});
}

Pattern Pattern::raw_conjunction(std::vector<Pattern> children) {
  if (children.size() < 2) throw std::invalid_argument("raw conjunction needs at least two conjuncts");
  bool range = children.front().is_data_range();
  return make(Node{range ? Kind::AndRange : Kind::And, {}, {}, {}, std::move(children)});
}

std::vector<Pattern> Pattern::conjuncts() const {
  if (is_conjunction_kind(kind())) return children();
  return {*this};
}

bool operator==(const Pattern& a, const Pattern& b) {
  if (a.node_ == b.node_) return true;
  return a.kind() == b.kind() && canonical_key(a) == canonical_key(b);
}

int depth(const Pattern& p) {
  using K = Pattern::Kind;
  switch (p.kind()) {
    case K::And:
    case K::AndRange: {
      int d = 1;
      for (auto& c : p.children()) d = std::max(d, depth(c));
      return d;
    }
    case K::SomeObject:
    case K::SomeData:
      return 1 + depth(p.filler());
    default:
      return 1;
  }
}

Pattern canonicalize(const Pattern& p) {
  using K = Pattern::Kind;
  switch (p.kind()) {
    case K::And:
    case K::AndRange:
      return Pattern::conjunction(p.children());
    case K::SomeObject:
    case K::SomeData:
      return Pattern::some(p.iri(), canonicalize(p.filler()));
    default:
      return p;
  }
}

std::string serialize(const Pattern& p, const PrefixMap& prefixes) { return write(p, prefixes); }

std::string canonical_key(const Pattern& p) {
  static const PrefixMap none;
  return write(p, none);
}

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class Tok { Iri, Name, String, Number, LBrace, RBrace, LParen, RParen, LBracket, RBracket, Le, Ge, End };

struct Token {
  Tok type;
  std::string text;
  std::size_t offset;
  // for String tokens
  std::string lang;
  std::string datatype;  // raw: <iri> or pname
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_ws();
      if (i_ >= s_.size()) {
        out.push_back({Tok::End, {}, i_, {}, {}});
        return out;
      }
      std::size_t start = i_;
      char c = s_[i_];
      switch (c) {
        case '{': ++i_; out.push_back({Tok::LBrace, "{", start, {}, {}}); continue;
        case '}': ++i_; out.push_back({Tok::RBrace, "}", start, {}, {}}); continue;
        case '(': ++i_; out.push_back({Tok::LParen, "(", start, {}, {}}); continue;
        case ')': ++i_; out.push_back({Tok::RParen, ")", start, {}, {}}); continue;
        case '[': ++i_; out.push_back({Tok::LBracket, "[", start, {}, {}}); continue;
        case ']': ++i_; out.push_back({Tok::RBracket, "]", start, {}, {}}); continue;
        default: break;
      }
      if (c == '<' && i_ + 1 < s_.size() && s_[i_ + 1] == '=') {
        i_ += 2;
        out.push_back({Tok::Le, "<=", start, {}, {}});
        continue;
      }
      if (c == '>' && i_ + 1 < s_.size() && s_[i_ + 1] == '=') {
        i_ += 2;
        out.push_back({Tok::Ge, ">=", start, {}, {}});
        continue;
      }
      if (c == '<') {
        auto end = s_.find('>', i_);
        if (end == std::string::npos) throw PatternParseError("unterminated IRI", start);
        out.push_back({Tok::Iri, s_.substr(i_ + 1, end - i_ - 1), start, {}, {}});
        i_ = end + 1;
        continue;
      }
      if (c == '"') {
        out.push_back(string_token());
        continue;
      }
      std::string word;
      while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) &&
             std::string_view("{}()[]<>\"").find(s_[i_]) == std::string_view::npos) {
        word += s_[i_++];
      }
      if (word.empty()) throw PatternParseError(std::string("unexpected character '") + c + "'", start);
      out.push_back({is_bare_number(word) ? Tok::Number : Tok::Name, word, start, {}, {}});
    }
  }

 private:
  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  Token string_token() {
    std::size_t start = i_;
    ++i_;
    std::string val;
    while (true) {
      if (i_ >= s_.size()) throw PatternParseError("unterminated string", start);
      char c = s_[i_++];
      if (c == '"') break;
      if (c == '\\') {
        if (i_ >= s_.size()) throw PatternParseError("dangling escape", i_);
        char e = s_[i_++];
        switch (e) {
          case 'n': val += '\n'; break;
          case 'r': val += '\r'; break;
          case 't': val += '\t'; break;
          case '"': val += '"'; break;
          case '\\': val += '\\'; break;
          default: throw PatternParseError(std::string("unknown escape \\") + e, i_ - 1);
        }
        continue;
      }
      val += c;
    }
    Token t{Tok::String, val, start, {}, {}};
    if (i_ < s_.size() && s_[i_] == '@') {
      ++i_;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '-')) {
        t.lang += s_[i_++];
      }
      if (t.lang.empty()) throw PatternParseError("empty language tag", i_);
    } else if (i_ + 1 < s_.size() && s_[i_] == '^' && s_[i_ + 1] == '^') {
      i_ += 2;
      if (i_ < s_.size() && s_[i_] == '<') {
        auto end = s_.find('>', i_);
        if (end == std::string::npos) throw PatternParseError("unterminated datatype IRI", i_);
        t.datatype = s_.substr(i_, end - i_ + 1);
        i_ = end + 1;
      } else {
        while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) &&
               std::string_view("{}()[]<>\"").find(s_[i_]) == std::string_view::npos) {
          t.datatype += s_[i_++];
        }
      }
      if (t.datatype.empty()) throw PatternParseError("missing datatype", i_);
    }
    return t;
  }

  const std::string& s_;
  std::size_t i_ = 0;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, const PrefixMap& prefixes) : toks_(std::move(toks)), prefixes_(prefixes) {}

  Pattern parse_all() {
    Pattern p = expr();
    if (peek().type != Tok::End) throw PatternParseError("trailing input '" + peek().text + "'", peek().offset);
    return p;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_++]; }
  bool peek_keyword(const char* kw) const { return peek().type == Tok::Name && peek().text == kw; }

  void expect(Tok t, const char* what) {
    if (peek().type != t) throw PatternParseError(std::string("expected ") + what, peek().offset);
    ++pos_;
  }

  std::string resolve(const Token& t) {
    if (t.type == Tok::Iri) {
      if (!has_iri_scheme(t.text)) throw PatternParseError("relative IRI <" + t.text + ">", t.offset);
      return t.text;
    }
    if (t.type == Tok::Name) {
      if (auto e = prefixes_.expand(t.text)) return *e;
      throw PatternParseError("unknown prefix in '" + t.text + "'", t.offset);
    }
    throw PatternParseError("expected an IRI", t.offset);
  }

  std::string resolve_raw(const std::string& raw, std::size_t offset) {
    if (!raw.empty() && raw.front() == '<') return raw.substr(1, raw.size() - 2);
    if (auto e = prefixes_.expand(raw)) return *e;
    throw PatternParseError("unknown prefix in '" + raw + "'", offset);
  }

  RdfTerm term() {
    Token t = next();
    switch (t.type) {
      case Tok::String:
        if (!t.lang.empty()) return RdfTerm::lang_literal(t.text, t.lang);
        if (!t.datatype.empty()) return RdfTerm::typed_literal(t.text, resolve_raw(t.datatype, t.offset));
        return RdfTerm::literal(t.text);
      case Tok::Number:
        return RdfTerm::typed_literal(t.text, t.text.find('.') == std::string::npos ? vocab::kXsdInteger
                                                                                    : vocab::kXsdDecimal);
      case Tok::Iri:
      case Tok::Name:
        return RdfTerm::iri(resolve(t));
      default:
        throw PatternParseError("expected an individual or a literal", t.offset);
    }
  }

  Pattern expr() {
    std::vector<Pattern> parts{primary()};
    while (peek_keyword("and")) {
      ++pos_;
      parts.push_back(primary());
    }
    if (parts.size() == 1) return parts.front();
    try {
      return Pattern::conjunction(std::move(parts));
    } catch (const std::invalid_argument& e) {
      throw PatternParseError(e.what(), peek().offset);
    }
  }

  Pattern primary() {
    const Token& t = peek();
    if (t.type == Tok::LParen) {
      ++pos_;
      Pattern inner = expr();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (t.type == Tok::LBrace) {
      ++pos_;
      std::size_t at = peek().offset;
      RdfTerm member = term();
      expect(Tok::RBrace, "'}'");
      try {
        return Pattern::enumeration(member);
      } catch (const std::invalid_argument& e) {
        throw PatternParseError(e.what(), at);
      }
    }
    if (t.type != Tok::Iri && t.type != Tok::Name) {
      throw PatternParseError("expected a class expression", t.offset);
    }
    if (t.type == Tok::Name && (t.text == "and" || t.text == "some" || t.text == "value" || t.text == "Self")) {
      throw PatternParseError("unexpected keyword '" + t.text + "'", t.offset);
    }
    Token name_tok = next();
    std::string iri = resolve(name_tok);

    if (peek_keyword("some")) {
      ++pos_;
      return Pattern::some(iri, primary());
    }
    if (peek_keyword("value")) {
      ++pos_;
      std::size_t at = peek().offset;
      RdfTerm obj = term();
      try {
        return Pattern::value(iri, obj);
      } catch (const std::invalid_argument& e) {
        throw PatternParseError(e.what(), at);
      }
    }
    if (peek_keyword("Self")) {
      ++pos_;
      return Pattern::self(iri);
    }
    auto dt = datatype_from_iri(iri);
    if (peek().type == Tok::LBracket) {
      if (!dt) throw PatternParseError("facet on a non-datatype", peek().offset);
      ++pos_;
      Token op = next();
      if (op.type != Tok::Le && op.type != Tok::Ge) throw PatternParseError("expected '<=' or '>='", op.offset);
      Token bound = next();
      if (bound.type != Tok::Number && bound.type != Tok::String) {
        throw PatternParseError("expected a facet value", bound.offset);
      }
      expect(Tok::RBracket, "']'");
      RdfTerm lit = RdfTerm::literal(bound.text);
      try {
        return op.type == Tok::Le ? Pattern::max_inclusive(*dt, lit) : Pattern::min_inclusive(*dt, lit);
      } catch (const std::invalid_argument& e) {
        throw PatternParseError(e.what(), op.offset);
      }
    }
    if (dt) return Pattern::datatype(*dt);
    return Pattern::named_class(iri);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const PrefixMap& prefixes_;
};

}  // namespace

Pattern parse_pattern(const std::string& text, const PrefixMap& prefixes) {
  Lexer lex(text);
  Parser parser(lex.run(), prefixes);
  return canonicalize(parser.parse_all());
}

}  // namespace elminer
