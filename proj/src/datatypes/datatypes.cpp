#include "datatypes/datatypes.hpp"

#include <cctype>
#include <regex>
#include <unordered_map>

namespace elminer {

namespace {

struct DatatypeInfo {
  DatatypeId id;
  std::string iri;
  std::optional<DatatypeId> parent;
};

const std::vector<DatatypeInfo>& table() {
  using D = DatatypeId;
  static const std::vector<DatatypeInfo> t = {
      {D::RdfsLiteral, std::string(vocab::kRdfs) + "Literal", std::nullopt},
      {D::OwlReal, std::string(vocab::kOwl) + "real", D::RdfsLiteral},
      {D::OwlRational, std::string(vocab::kOwl) + "rational", D::OwlReal},
      {D::XsdDecimal, std::string(vocab::kXsd) + "decimal", D::OwlRational},
      {D::XsdInteger, std::string(vocab::kXsd) + "integer", D::XsdDecimal},
      {D::XsdNonNegativeInteger, std::string(vocab::kXsd) + "nonNegativeInteger", D::XsdInteger},
      {D::XsdString, std::string(vocab::kXsd) + "string", D::RdfsLiteral},
      {D::XsdNormalizedString, std::string(vocab::kXsd) + "normalizedString", D::XsdString},
      {D::XsdToken, std::string(vocab::kXsd) + "token", D::XsdNormalizedString},
      {D::XsdNMTOKEN, std::string(vocab::kXsd) + "NMTOKEN", D::XsdToken},
      {D::XsdName, std::string(vocab::kXsd) + "Name", D::XsdToken},
      {D::XsdNCName, std::string(vocab::kXsd) + "NCName", D::XsdName},
      {D::XsdDateTime, std::string(vocab::kXsd) + "dateTime", D::RdfsLiteral},
      {D::XsdDateTimeStamp, std::string(vocab::kXsd) + "dateTimeStamp", D::XsdDateTime},
      {D::RdfPlainLiteral, std::string(vocab::kRdf) + "PlainLiteral", D::RdfsLiteral},
      {D::RdfXMLLiteral, std::string(vocab::kRdf) + "XMLLiteral", D::RdfsLiteral},
      {D::XsdHexBinary, std::string(vocab::kXsd) + "hexBinary", D::RdfsLiteral},
      {D::XsdBase64Binary, std::string(vocab::kXsd) + "base64Binary", D::RdfsLiteral},
      {D::XsdAnyURI, std::string(vocab::kXsd) + "anyURI", D::RdfsLiteral},
  };
  return t;
}

const DatatypeInfo& info(DatatypeId id) { return table()[static_cast<std::size_t>(id)]; }

bool is_name_start(unsigned char c) { return std::isalpha(c) || c == '_' || c == ':' || c >= 0x80; }
bool is_name_char(unsigned char c) {
  return is_name_start(c) || std::isdigit(c) || c == '-' || c == '.';
}

bool all_digits(const std::string& s, std::size_t from, std::size_t to) {
  if (from >= to) return false;
  for (std::size_t i = from; i < to; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

bool is_integer_form(const std::string& s) {
  std::size_t i = (!s.empty() && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
  return all_digits(s, i, s.size());
}

bool is_decimal_form(const std::string& s) {
  static const std::regex re(R"([+-]?(\d+(\.\d*)?|\.\d+))");
  return std::regex_match(s, re);
}

bool is_fraction_form(const std::string& s) {
  static const std::regex re(R"([+-]?\d+/\d+)");
  if (!std::regex_match(s, re)) return false;
  auto slash = s.find('/');
  for (std::size_t i = slash + 1; i < s.size(); ++i) {
    if (s[i] != '0') return true;
  }
  return false;
}

bool is_normalized(const std::string& s) {
  return s.find_first_of("\r\n\t") == std::string::npos;
}

bool is_token(const std::string& s) {
  if (!is_normalized(s)) return false;
  if (s.empty()) return true;
  if (s.front() == ' ' || s.back() == ' ') return false;
  return s.find("  ") == std::string::npos;
}

bool is_nmtoken(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!is_name_char(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

bool is_name(const std::string& s) {
  return is_nmtoken(s) && is_name_start(static_cast<unsigned char>(s[0]));
}

bool is_hex_binary(const std::string& s) {
  if (s.size() % 2 != 0) return false;
  for (char c : s) {
    if (!std::isxdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

bool is_base64_binary(const std::string& raw) {
  std::string s;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] == ' ') {
      // single spaces between characters only
      if (i == 0 || i + 1 == raw.size() || raw[i + 1] == ' ') return false;
      continue;
    }
    s += raw[i];
  }
  if (s.size() % 4 != 0) return false;
  std::size_t pad = 0;
  while (pad < s.size() && s[s.size() - 1 - pad] == '=') ++pad;
  if (pad > 2) return false;
  auto is_b64 = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '/';
  };
  for (std::size_t i = 0; i + pad < s.size(); ++i) {
    if (!is_b64(s[i])) return false;
  }
  if (pad == 1) {
    static const std::string allowed = "AEIMQUYcgkosw048";
    if (allowed.find(s[s.size() - 2]) == std::string::npos) return false;
  } else if (pad == 2) {
    static const std::string allowed = "AQgw";
    if (allowed.find(s[s.size() - 3]) == std::string::npos) return false;
  }
  return true;
}

bool is_any_uri(const std::string& s) {
  for (char ch : s) {
    unsigned char c = static_cast<unsigned char>(ch);
    if (c <= 0x20 || c == 0x7f) return false;
    if (std::string_view("<>\"{}|\\^`").find(static_cast<char>(c)) != std::string_view::npos) return false;
  }
  return true;
}

// days since 1970-01-01 in the proleptic Gregorian calendar
long long days_from_civil(long long y, unsigned m, unsigned d) {
  y -= m <= 2;
  const long long era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<long long>(doe) - 719468;
}

bool is_leap(long long y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

unsigned days_in_month(long long y, unsigned m) {
  static const unsigned dm[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  return m == 2 && is_leap(y) ? 29 : dm[m - 1];
}

}  // namespace

const std::array<DatatypeId, kDatatypeCount>& all_datatypes() {
  static const auto arr = [] {
    std::array<DatatypeId, kDatatypeCount> a{};
    for (std::size_t i = 0; i < kDatatypeCount; ++i) a[i] = static_cast<DatatypeId>(i);
    return a;
  }();
  return arr;
}

const std::string& datatype_iri(DatatypeId id) { return info(id).iri; }

std::optional<DatatypeId> datatype_from_iri(const std::string& iri) {
  static const auto index = [] {
    std::unordered_map<std::string, DatatypeId> m;
    for (auto& i : table()) m.emplace(i.iri, i.id);
    return m;
  }();
  auto it = index.find(iri);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

std::optional<DatatypeId> parent_datatype(DatatypeId id) { return info(id).parent; }

bool is_subtype_of(DatatypeId sub, DatatypeId super) {
  std::optional<DatatypeId> cur = sub;
  while (cur) {
    if (*cur == super) return true;
    cur = parent_datatype(*cur);
  }
  return false;
}

bool gt_eligible(DatatypeId id) {
  switch (id) {
    case DatatypeId::OwlReal:
    case DatatypeId::OwlRational:
    case DatatypeId::XsdDecimal:
    case DatatypeId::XsdInteger:
    case DatatypeId::XsdDateTime:
    case DatatypeId::XsdDateTimeStamp:
    case DatatypeId::XsdNonNegativeInteger:
      return true;
    default:
      return false;
  }
}

bool lt_eligible(DatatypeId id) { return gt_eligible(id) && id != DatatypeId::XsdNonNegativeInteger; }

std::optional<DateTimeValue> datetime_value(const std::string& s) {
  static const std::regex re(
      R"((-?(?:[1-9]\d{3,}|0\d{3}))-(\d{2})-(\d{2})T(\d{2}):(\d{2}):(\d{2})(\.\d+)?(Z|[+-]\d{2}:\d{2})?)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) return std::nullopt;
  long long year = std::stoll(m[1].str());
  unsigned month = static_cast<unsigned>(std::stoul(m[2].str()));
  unsigned day = static_cast<unsigned>(std::stoul(m[3].str()));
  unsigned hour = static_cast<unsigned>(std::stoul(m[4].str()));
  unsigned minute = static_cast<unsigned>(std::stoul(m[5].str()));
  unsigned second = static_cast<unsigned>(std::stoul(m[6].str()));
  std::string frac = m[7].matched ? m[7].str().substr(1) : std::string();

  if (month < 1 || month > 12) return std::nullopt;
  if (day < 1 || day > days_in_month(year, month)) return std::nullopt;
  if (hour == 24) {
    if (minute != 0 || second != 0 || frac.find_first_not_of('0') != std::string::npos) return std::nullopt;
  } else if (hour > 23) {
    return std::nullopt;
  }
  if (minute > 59 || second > 59) return std::nullopt;

  DateTimeValue v;
  long long offset_minutes = 0;
  if (m[8].matched) {
    v.has_timezone = true;
    std::string tz = m[8].str();
    if (tz != "Z") {
      int sign = tz[0] == '-' ? -1 : 1;
      int th = std::stoi(tz.substr(1, 2));
      int tm = std::stoi(tz.substr(4, 2));
      if (tm > 59 || th > 14 || (th == 14 && tm != 0)) return std::nullopt;
      offset_minutes = sign * (th * 60 + tm);
    }
  }
  long long days = days_from_civil(year, month, day);
  long long secs = days * 86400 + hour * 3600LL + minute * 60LL + second - offset_minutes * 60;
  v.seconds = Rational(mpz_class(std::to_string(secs), 10));
  if (!frac.empty()) v.seconds += parse_rational("0." + frac);
  return v;
}

bool lexical_accepts(DatatypeId id, const std::string& s) {
  switch (id) {
    case DatatypeId::RdfsLiteral:
    case DatatypeId::XsdString:
    case DatatypeId::RdfPlainLiteral:
      return true;
    case DatatypeId::OwlReal:
    case DatatypeId::OwlRational:
      return is_decimal_form(s) || is_fraction_form(s);
    case DatatypeId::XsdDecimal:
      return is_decimal_form(s);
    case DatatypeId::XsdInteger:
      return is_integer_form(s);
    case DatatypeId::XsdNonNegativeInteger:
      if (!is_integer_form(s)) return false;
      return s[0] != '-' || s.find_first_not_of('0', 1) == std::string::npos;
    case DatatypeId::XsdNormalizedString:
      return is_normalized(s);
    case DatatypeId::XsdToken:
      return is_token(s);
    case DatatypeId::XsdNMTOKEN:
      return is_nmtoken(s);
    case DatatypeId::XsdName:
      return is_name(s);
    case DatatypeId::XsdNCName:
      return is_name(s) && s.find(':') == std::string::npos;
    case DatatypeId::XsdDateTime:
      return datetime_value(s).has_value();
    case DatatypeId::XsdDateTimeStamp: {
      auto v = datetime_value(s);
      return v && v->has_timezone;
    }
    case DatatypeId::RdfXMLLiteral:
      // Only ever assigned through an explicit datatype.
      return false;
    case DatatypeId::XsdHexBinary:
      return is_hex_binary(s);
    case DatatypeId::XsdBase64Binary:
      return is_base64_binary(s);
    case DatatypeId::XsdAnyURI:
      return is_any_uri(s);
  }
  return false;
}

std::vector<DatatypeId> candidate_datatypes(const RdfTerm& literal, Diagnostics* diag) {
  std::vector<DatatypeId> out;
  if (!literal.is_literal()) return out;
  if (literal.datatype()) {
    auto id = datatype_from_iri(*literal.datatype());
    if (!id) {
      if (diag) diag->count("literals_with_unsupported_datatype");
      return out;
    }
    if (*id != DatatypeId::RdfXMLLiteral && !lexical_accepts(*id, literal.value())) {
      if (diag) {
        diag->count("literals_invalid_for_declared_type");
        diag->warn("literal " + literal.to_ntriples() + " is not in the lexical space of its datatype");
      }
    }
    out.push_back(*id);
    return out;
  }
  if (literal.language()) {
    out.push_back(DatatypeId::RdfPlainLiteral);
    return out;
  }
  for (DatatypeId id : all_datatypes()) {
    if (lexical_accepts(id, literal.value())) out.push_back(id);
  }
  return out;
}

std::optional<Rational> numeric_value(const std::string& lexical, DatatypeId dt) {
  if (!lexical_accepts(dt, lexical)) return std::nullopt;
  switch (dt) {
    case DatatypeId::OwlReal:
    case DatatypeId::OwlRational:
    case DatatypeId::XsdDecimal:
    case DatatypeId::XsdInteger:
    case DatatypeId::XsdNonNegativeInteger:
      return parse_rational(lexical);
    default:
      return std::nullopt;
  }
}

bool has_comparable_value(const RdfTerm& literal, DatatypeId dt) {
  if (!literal.is_literal() || !gt_eligible(dt)) return false;
  if (dt == DatatypeId::XsdDateTime || dt == DatatypeId::XsdDateTimeStamp) {
    return lexical_accepts(dt, literal.value());
  }
  return numeric_value(literal.value(), dt).has_value();
}

std::strong_ordering value_compare(const RdfTerm& a, const RdfTerm& b, DatatypeId dt, Diagnostics* diag) {
  if (!gt_eligible(dt)) {
    throw IncomparableLiterals(datatype_iri(dt) + " has no order usable for range patterns");
  }
  if (dt == DatatypeId::XsdDateTime || dt == DatatypeId::XsdDateTimeStamp) {
    if (!lexical_accepts(dt, a.value()) || !lexical_accepts(dt, b.value())) {
      throw IncomparableLiterals("invalid " + datatype_iri(dt) + " lexical form: " + a.value() + " / " + b.value());
    }
    auto va = *datetime_value(a.value());
    auto vb = *datetime_value(b.value());
    if (va.has_timezone != vb.has_timezone && diag) {
      diag->count("mixed_timezone_comparisons");
    }
    int c = cmp(va.seconds, vb.seconds);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }
  auto va = numeric_value(a.value(), dt);
  auto vb = numeric_value(b.value(), dt);
  if (!va || !vb) {
    throw IncomparableLiterals("invalid " + datatype_iri(dt) + " lexical form: " + a.value() + " / " + b.value());
  }
  int c = cmp(*va, *vb);
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

}  // namespace elminer
