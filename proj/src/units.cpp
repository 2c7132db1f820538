#include "seed/units.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <vector>

#include "seed/errors.hpp"
#include "seed/text_util.hpp"

namespace seed::units {

std::string dimension_string(const Dimension& d) {
  std::string out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] == 0) continue;
    if (!out.empty()) out += ' ';
    out += kBaseSymbols[i];
    if (d[i] != 1) out += "^" + to_string(d[i]);
  }
  return out.empty() ? "1" : out;
}

Dimension add_dimensions(const Dimension& a, const Dimension& b) {
  Dimension r;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Dimension scale_dimension(const Dimension& a, const Rational& k) {
  Dimension r;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] * k;
  return r;
}

bool dimensionless(const Dimension& d) {
  return std::all_of(d.begin(), d.end(), [](const Rational& x) { return x == 0; });
}

// ---------------------------------------------------------------------------
// Table

namespace {

std::optional<Rational> parse_exponent_text(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    auto v = parse_decimal(text);
    if (v && is_integer(*v)) return v;
    return std::nullopt;
  }
  auto num = parse_decimal(text.substr(0, slash));
  auto den = parse_decimal(text.substr(slash + 1));
  if (!num || !den || !is_integer(*num) || !is_integer(*den) || *den == 0) return std::nullopt;
  Rational q = *num / *den;
  q.canonicalize();
  return q;
}

long double parse_scale(std::string_view text, std::size_t line_no) {
  std::string s(trim(text));
  char* end = nullptr;
  long double v = std::strtold(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v) || v <= 0) {
    throw ConfigError("unit table line " + std::to_string(line_no) + ": bad scale '" + s + "'");
  }
  return v;
}

}  // namespace

UnitTable UnitTable::parse(std::string_view text) {
  UnitTable table;
  std::size_t line_no = 0;
  for (std::string_view line : split_lines(text)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("unit table line " + std::to_string(line_no) + ": missing '='");
    }
    std::string_view lhs = trim(line.substr(0, eq));
    std::string_view rhs = trim(line.substr(eq + 1));
    if (starts_with(lhs, "prefix ")) {
      std::string token(trim(lhs.substr(7)));
      if (token.empty() || table.prefixes_.count(token)) {
        throw ConfigError("unit table line " + std::to_string(line_no) + ": bad or duplicate prefix");
      }
      table.prefixes_[token] = parse_scale(rhs, line_no);
      continue;
    }
    auto semi = rhs.find(';');
    if (semi == std::string_view::npos) {
      throw ConfigError("unit table line " + std::to_string(line_no) + ": missing ';'");
    }
    std::string token(lhs);
    if (token.empty() || table.entries_.count(token)) {
      throw ConfigError("unit table line " + std::to_string(line_no) + ": bad or duplicate token '" +
                        token + "'");
    }
    UnitEntry entry;
    entry.scale = parse_scale(rhs.substr(0, semi), line_no);
    std::istringstream dims{std::string(rhs.substr(semi + 1))};
    std::string part;
    while (dims >> part) {
      auto caret = part.find('^');
      std::string base = part.substr(0, caret);
      auto it = std::find(kBaseSymbols.begin(), kBaseSymbols.end(), base);
      std::optional<Rational> power = caret == std::string::npos
                                          ? std::optional<Rational>(Rational(1))
                                          : parse_exponent_text(part.substr(caret + 1));
      if (it == kBaseSymbols.end() || !power) {
        throw ConfigError("unit table line " + std::to_string(line_no) + ": bad dimension '" + part +
                          "'");
      }
      entry.dimension[static_cast<std::size_t>(it - kBaseSymbols.begin())] += *power;
    }
    table.entries_[token] = entry;
  }
  return table;
}

const UnitTable& UnitTable::builtin() {
  static const UnitTable table = UnitTable::parse(default_unit_table_text());
  return table;
}

std::optional<UnitEntry> UnitTable::lookup(std::string_view token) const {
  if (auto it = entries_.find(token); it != entries_.end()) return it->second;
  std::optional<UnitEntry> best;
  std::size_t best_len = 0;
  for (const auto& [prefix, factor] : prefixes_) {
    if (token.size() <= prefix.size() || !starts_with(token, prefix)) continue;
    auto it = entries_.find(token.substr(prefix.size()));
    if (it == entries_.end() || prefix.size() <= best_len) continue;
    best = it->second;
    best->scale *= factor;
    best_len = prefix.size();
  }
  return best;
}

// ---------------------------------------------------------------------------
// Unit expressions

namespace {

// Removes text/font wrappers and spacing commands, keeping their content.
std::string unwrap_unit_text(std::string_view src) {
  std::string s = unwrap_commands(src, {"text", "mathrm", "textrm", "mbox", "mathit", "operatorname"});
  replace_all(s, "\\rm ", " ");
  for (std::string_view sp : {"\\,", "\\;", "\\:", "\\!", "\\ ", "~", "\\quad", "\\qquad"}) {
    replace_all(s, sp, " ");
  }
  replace_all(s, "\\cdot", " * ");
  replace_all(s, "\\times", " * ");
  replace_all(s, "\xC2\xB7", " * ");  // middle dot
  replace_all(s, "\xE2\x8B\x85", " * ");  // dot operator
  replace_all(s, "\\left", "");
  replace_all(s, "\\right", "");
  replace_all(s, "\xE2\x88\x92", "-");  // unicode minus
  replace_all(s, "\xC2\xB5", "\xCE\xBC");  // micro sign -> Greek mu
  return s;
}

struct UnitLexer {
  std::string_view s;
  std::size_t i = 0;

  void skip_space() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool at_end() {
    skip_space();
    return i >= s.size();
  }
  char peek() {
    skip_space();
    return i < s.size() ? s[i] : '\0';
  }
  static bool token_char(unsigned char c) { return std::isalpha(c) || c >= 0x80; }

  // Letters, UTF-8 sequences, or a backslash command possibly followed by letters.
  std::string token() {
    skip_space();
    std::size_t start = i;
    if (i < s.size() && s[i] == '\\') ++i;
    while (i < s.size() && token_char(static_cast<unsigned char>(s[i]))) ++i;
    return std::string(s.substr(start, i - start));
  }
};

class UnitParser {
 public:
  UnitParser(std::string_view text, const UnitTable& table) : lex_{text}, table_(table) {}

  UnitEntry parse_all() {
    UnitEntry result;
    if (lex_.at_end()) return result;
    result = product();
    if (!lex_.at_end()) throw UnknownUnit(std::string(lex_.s.substr(lex_.i)));
    return result;
  }

 private:
  UnitEntry product() {
    UnitEntry acc = powered();
    while (!lex_.at_end()) {
      char c = lex_.peek();
      if (c == '*') {
        ++lex_.i;
        acc = combine(acc, powered(), 1);
      } else if (c == '/') {
        ++lex_.i;
        acc = combine(acc, powered(), -1);
      } else if (c == ')' || c == '}') {
        break;
      } else {
        acc = combine(acc, powered(), 1);
      }
    }
    return acc;
  }

  static UnitEntry combine(const UnitEntry& a, const UnitEntry& b, int sign) {
    UnitEntry r;
    r.scale = sign > 0 ? a.scale * b.scale : a.scale / b.scale;
    r.dimension = add_dimensions(a.dimension, scale_dimension(b.dimension, Rational(sign)));
    return r;
  }

  UnitEntry powered() {
    UnitEntry base = atom();
    if (lex_.peek() == '^') {
      ++lex_.i;
      Rational p = exponent();
      base.scale = std::pow(base.scale, to_long_double(p));
      base.dimension = scale_dimension(base.dimension, p);
    }
    return base;
  }

  Rational exponent() {
    std::string text;
    if (lex_.peek() == '{') {
      std::size_t close = matching_brace(lex_.s, lex_.i);
      if (close == std::string::npos) throw UnknownUnit(std::string(lex_.s.substr(lex_.i)));
      text = std::string(lex_.s.substr(lex_.i + 1, close - lex_.i - 1));
      lex_.i = close + 1;
    } else {
      lex_.skip_space();
      std::size_t start = lex_.i;
      if (lex_.i < lex_.s.size() && (lex_.s[lex_.i] == '-' || lex_.s[lex_.i] == '+')) ++lex_.i;
      while (lex_.i < lex_.s.size() && std::isdigit(static_cast<unsigned char>(lex_.s[lex_.i]))) {
        ++lex_.i;
      }
      text = std::string(lex_.s.substr(start, lex_.i - start));
    }
    std::string compact;
    for (char c : text) {
      if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
    }
    auto p = parse_exponent_text(compact);
    if (!p) throw UnknownUnit("^" + text);
    return *p;
  }

  UnitEntry atom() {
    char c = lex_.peek();
    if (c == '(' || c == '{') {
      const char close = c == '(' ? ')' : '}';
      ++lex_.i;
      UnitEntry inner = product();
      if (lex_.peek() != close) throw UnknownUnit(std::string(lex_.s.substr(lex_.i)));
      ++lex_.i;
      return inner;
    }
    if (starts_with(lex_.s.substr(lex_.i), "\\frac")) {
      lex_.i += 5;
      UnitEntry num = atom();
      UnitEntry den = atom();
      return combine(num, den, -1);
    }
    if (c == '1') {  // "1/s"
      ++lex_.i;
      return UnitEntry{};
    }
    std::string tok = lex_.token();
    if (tok.empty()) throw UnknownUnit(std::string(lex_.s.substr(lex_.i)));
    if (auto e = table_.lookup(tok)) return *e;
    // A bare prefix separated from its unit ("\mu m").
    if (table_.prefixes().count(tok)) {
      std::size_t save = lex_.i;
      std::string next = lex_.token();
      if (!next.empty()) {
        if (auto e = table_.lookup(tok + next); e && !table_.entries().count(tok)) return *e;
      }
      lex_.i = save;
    }
    throw UnknownUnit(tok);
  }

  UnitLexer lex_;
  const UnitTable& table_;
};

}  // namespace

UnitEntry parse_unit_expression(std::string_view text, const UnitTable& table) {
  std::string clean = unwrap_unit_text(text);
  return UnitParser(clean, table).parse_all();
}

bool is_unit_expression(std::string_view text, const UnitTable& table) {
  if (trim(text).empty()) return false;
  try {
    parse_unit_expression(text, table);
    return true;
  } catch (const Error&) {
    return false;
  }
}

// ---------------------------------------------------------------------------
// Quantities

namespace {

// Index just past the last '=' at brace depth 0, or 0.
std::size_t after_last_equals(std::string_view s) {
  int depth = 0;
  std::size_t cut = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '{' || c == '(') ++depth;
    else if (c == '}' || c == ')') --depth;
    else if (c == '=' && depth == 0) cut = i + 1;
  }
  return cut;
}

std::size_t scan_digits(std::string_view s, std::size_t i) {
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  return i;
}

// Reads a signed integer exponent written as "-19", "{-19}" or "{ - 19 }".
std::optional<long> read_power(std::string_view s, std::size_t& i) {
  while (i < s.size() && s[i] == ' ') ++i;
  std::string text;
  if (i < s.size() && s[i] == '{') {
    std::size_t close = matching_brace(s, i);
    if (close == std::string::npos) return std::nullopt;
    for (char c : s.substr(i + 1, close - i - 1)) {
      if (c != ' ') text.push_back(c);
    }
    i = close + 1;
  } else {
    std::size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    i = scan_digits(s, i);
    text = std::string(s.substr(start, i - start));
  }
  if (text.empty() || text == "-" || text == "+") return std::nullopt;
  std::size_t k = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (k == text.size() || scan_digits(text, k) != text.size() || text.size() > 6) return std::nullopt;
  return std::stol(text);
}

Rational ten_power(long p) {
  mpz_class t;
  mpz_ui_pow_ui(t.get_mpz_t(), 10, static_cast<unsigned long>(p < 0 ? -p : p));
  return p < 0 ? Rational(1, 1) / Rational(t) : Rational(t);
}

}  // namespace

Quantity parse_quantity(std::string_view src, const UnitTable& table) {
  std::string s = unwrap_unit_text(src);
  replace_all(s, "\\approx", "=");
  replace_all(s, "$", " ");
  s = s.substr(after_last_equals(s));
  std::string_view v = trim(s);
  while (!v.empty() && (v.back() == '.' || v.back() == ',')) v = trim(v.substr(0, v.size() - 1));

  std::size_t i = 0;
  bool negative = false;
  if (i < v.size() && (v[i] == '-' || v[i] == '+')) {
    negative = v[i] == '-';
    ++i;
    while (i < v.size() && v[i] == ' ') ++i;
  }
  std::size_t start = i;
  i = scan_digits(v, i);
  if (i < v.size() && v[i] == '.') i = scan_digits(v, i + 1);
  std::string_view mantissa = v.substr(start, i - start);
  auto value = parse_decimal(mantissa);
  if (!value || mantissa == ".") throw NoNumber(std::string(src));

  // aEb
  if (i + 1 < v.size() && (v[i] == 'e' || v[i] == 'E')) {
    std::size_t j = i + 1;
    if (v[j] == '-' || v[j] == '+') ++j;
    if (j < v.size() && std::isdigit(static_cast<unsigned char>(v[j]))) {
      std::size_t k = i + 1;
      auto p = read_power(v, k);
      if (p) {
        *value *= ten_power(*p);
        i = k;
      }
    }
  }
  // a^b directly on the literal ("10^{-3}")
  if (i < v.size() && v[i] == '^') {
    std::size_t k = i + 1;
    auto p = read_power(v, k);
    if (!p) throw NoNumber(std::string(src));
    auto powered = exact_power(*value, Rational(*p), 400);
    if (!powered) throw NoNumber(std::string(src));
    *value = *powered;
    i = k;
  }
  // a \times 10^{b}
  {
    std::size_t k = i;
    while (k < v.size() && v[k] == ' ') ++k;
    if (k < v.size() && (v[k] == '*' || v[k] == 'x')) {
      std::size_t m = k + 1;
      while (m < v.size() && v[m] == ' ') ++m;
      if (starts_with(v.substr(m), "10")) {
        m += 2;
        while (m < v.size() && v[m] == ' ') ++m;
        if (m < v.size() && v[m] == '^') {
          ++m;
          auto p = read_power(v, m);
          if (!p) throw NoNumber(std::string(src));
          *value *= ten_power(*p);
          i = m;
        }
      }
    }
  }
  if (negative) *value = -*value;

  std::string_view unit = trim(v.substr(i));
  UnitEntry entry = parse_unit_expression(unit, table);
  Quantity q;
  q.value = to_long_double(*value);
  q.si_scale = entry.scale;
  q.magnitude = q.value * entry.scale;
  q.dimension = entry.dimension;
  q.unit = std::string(unit);
  if (!std::isfinite(q.magnitude)) throw NoNumber(std::string(src));
  return q;
}

Quantity dimensionless_quantity(long double magnitude) {
  Quantity q;
  q.magnitude = magnitude;
  q.value = magnitude;
  return q;
}

long double express_in(const Quantity& q, std::string_view unit, const UnitTable& table) {
  UnitEntry e = parse_unit_expression(unit, table);
  if (e.dimension != q.dimension) {
    throw DimensionMismatch(dimension_string(q.dimension), dimension_string(e.dimension));
  }
  return q.magnitude / e.scale;
}

bool compare_quantities(const Quantity& pred, const Quantity& gt, long double rtol) {
  if (pred.dimension != gt.dimension) {
    throw DimensionMismatch(dimension_string(pred.dimension), dimension_string(gt.dimension));
  }
  const long double diff = std::fabs(pred.magnitude - gt.magnitude);
  long double tol = rtol * std::max(std::fabs(pred.magnitude), std::fabs(gt.magnitude));
  if (pred.magnitude == 0 || gt.magnitude == 0) {
    tol = rtol * std::max(pred.si_scale, gt.si_scale);
  }
  return diff <= tol;
}

}  // namespace seed::units
