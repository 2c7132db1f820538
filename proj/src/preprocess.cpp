#include "seed/preprocess.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <optional>
#include <utility>

#include "seed/errors.hpp"
#include "seed/latex_tables.hpp"
#include "seed/text_util.hpp"
#include "seed/units.hpp"

namespace seed {

std::vector<std::string> PreprocessConfig::default_boilerplate() {
  return {"The final answer is", "Final Answer", "The answer is", "Answer", "Therefore", "Thus",
          "Hence", "lifetime"};
}

namespace {

void note(std::vector<std::string>& notes, std::string_view id) {
  if (std::find(notes.begin(), notes.end(), id) == notes.end()) notes.emplace_back(id);
}

bool is_letter(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

// ---------------------------------------------------------------------------
// Boilerplate

std::string strip_boilerplate(std::string_view text, const std::vector<std::string>& prefixes) {
  std::vector<std::string> sorted = prefixes;
  std::sort(sorted.begin(), sorted.end(),
            [](const std::string& a, const std::string& b) { return a.size() > b.size(); });
  std::string s(trim(text));
  for (bool changed = true; changed;) {
    changed = false;
    std::string_view v = trim(s);
    while (starts_with(v, "**") || starts_with(v, "*")) {
      v.remove_prefix(1);
      changed = true;
    }
    while (!v.empty() && v.back() == '*') {
      v.remove_suffix(1);
      changed = true;
    }
    for (const std::string& p : sorted) {
      if (p.empty() || !iequals_prefix(v, p)) continue;
      if (v.size() > p.size() && is_letter(v[p.size()])) continue;
      v.remove_prefix(p.size());
      v = trim(v);
      if (!v.empty() && (v[0] == ':' || v[0] == ',')) v.remove_prefix(1);
      changed = true;
      break;
    }
    v = trim(v);
    while (!v.empty() && v[0] == '=') {
      v.remove_prefix(1);
      v = trim(v);
      changed = true;
    }
    while (!v.empty() && (v.back() == '.' || v.back() == ',' || v.back() == ';')) {
      if (v.size() >= 2 && v[v.size() - 2] == '\\') break;  // "\," "\;" are spacing commands
      v.remove_suffix(1);
      v = trim(v);
      changed = true;
    }
    std::string next(v);
    if (next == s) changed = false;
    s = std::move(next);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Extraction

struct Span {
  std::size_t begin;
  std::size_t end;  // exclusive
};

std::optional<Span> last_boxed(std::string_view s) {
  std::optional<Span> found;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\') continue;
    std::string_view name = command_name(s, i);
    if (name != "boxed" && name != "fbox") {
      i += name.empty() ? 1 : name.size();
      continue;
    }
    std::size_t open = i + 1 + name.size();
    while (open < s.size() && std::isspace(static_cast<unsigned char>(s[open]))) ++open;
    if (open >= s.size() || s[open] != '{') continue;
    std::size_t close = matching_brace(s, open);
    if (close == std::string_view::npos) close = s.size();  // truncated output
    found = Span{open + 1, close};
    i = close;
  }
  return found;
}

struct MathSegments {
  std::optional<Span> display;
  std::optional<Span> inline_math;
};

MathSegments scan_math(std::string_view s) {
  MathSegments out;
  std::size_t i = 0;
  auto find_from = [&](std::string_view needle, std::size_t from) { return s.find(needle, from); };
  while (i < s.size()) {
    if (s[i] == '\\' && i + 1 < s.size()) {
      char n = s[i + 1];
      if (n == '[' || n == '(') {
        std::string_view closer = n == '[' ? "\\]" : "\\)";
        std::size_t end = find_from(closer, i + 2);
        if (end == std::string_view::npos) {
          i += 2;
          continue;
        }
        (n == '[' ? out.display : out.inline_math) = Span{i + 2, end};
        i = end + 2;
        continue;
      }
      if (command_name(s, i) == "begin") {
        for (std::string_view env : {"equation*", "equation", "align*", "align", "displaymath"}) {
          std::string opener = "\\begin{" + std::string(env) + "}";
          if (s.compare(i, opener.size(), opener) != 0) continue;
          std::string closer = "\\end{" + std::string(env) + "}";
          std::size_t end = find_from(closer, i + opener.size());
          if (end == std::string_view::npos) break;
          out.display = Span{i + opener.size(), end};
          i = end + closer.size() - 1;
          break;
        }
      }
      i += 2;
      continue;
    }
    if (s[i] == '$') {
      if (i + 1 < s.size() && s[i + 1] == '$') {
        std::size_t end = find_from("$$", i + 2);
        if (end == std::string_view::npos) {
          i += 2;
          continue;
        }
        out.display = Span{i + 2, end};
        i = end + 2;
        continue;
      }
      std::size_t end = i + 1;
      while (end < s.size() && s[end] != '$') {
        if (s[end] == '\\') ++end;
        ++end;
      }
      if (end >= s.size()) {
        ++i;
        continue;
      }
      out.inline_math = Span{i + 1, end};
      i = end + 1;
      continue;
    }
    ++i;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Wrapper stripping

std::size_t skip_spaces(std::string_view s, std::size_t i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return i;
}

// Group starting at or after `from`: [open, close]; close == npos when unclosed.
std::optional<std::pair<std::size_t, std::size_t>> group_at(std::string_view s, std::size_t from) {
  std::size_t open = skip_spaces(s, from);
  if (open >= s.size() || s[open] != '{') return std::nullopt;
  return std::make_pair(open, matching_brace(s, open));
}

std::string inner_of(std::string_view s, std::pair<std::size_t, std::size_t> g) {
  std::size_t end = g.second == std::string_view::npos ? s.size() : g.second;
  return std::string(s.substr(g.first + 1, end - g.first - 1));
}

std::size_t after_group(std::string_view s, std::pair<std::size_t, std::size_t> g) {
  return g.second == std::string_view::npos ? s.size() : g.second + 1;
}

bool one_of(std::string_view name, std::initializer_list<std::string_view> names) {
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::string strip_wrappers(std::string s, std::vector<std::string>& notes) {
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (c == '$') {
      s.erase(i, 1);
      note(notes, "strip-math-delimiter");
      continue;
    }
    if (c == '~') {
      s[i] = ' ';
      note(notes, "spacing");
      continue;
    }
    if (c != '\\') {
      ++i;
      continue;
    }
    std::string_view name = command_name(s, i);
    if (name.empty()) {
      char n = i + 1 < s.size() ? s[i + 1] : '\0';
      if (n == ',' || n == ';' || n == ':' || n == '!' || n == ' ' || n == '>') {
        s.replace(i, 2, " ");
        note(notes, "spacing");
        continue;
      }
      if (n == '[' || n == ']' || n == '(' || n == ')') {
        s.erase(i, 2);
        note(notes, "strip-math-delimiter");
        continue;
      }
      i += 2;
      continue;
    }
    const std::size_t end_name = i + 1 + name.size();
    if (one_of(name, {"boxed", "fbox"})) {
      if (auto g = group_at(s, end_name)) {
        std::string inner = inner_of(s, *g);
        s.replace(i, after_group(s, *g) - i, inner);
      } else {
        s.erase(i, end_name - i);
      }
      note(notes, "strip-boxed");
      continue;
    }
    if (one_of(name, {"textcolor", "colorbox"})) {
      auto g1 = group_at(s, end_name);
      if (g1) {
        auto g2 = group_at(s, after_group(s, *g1));
        std::string inner = g2 ? inner_of(s, *g2) : std::string();
        s.replace(i, (g2 ? after_group(s, *g2) : after_group(s, *g1)) - i, inner);
      } else {
        s.erase(i, end_name - i);
      }
      note(notes, "strip-color");
      continue;
    }
    if (one_of(name, {"color", "tag", "label", "hspace", "vspace", "phantom", "hphantom", "vphantom"})) {
      auto g = group_at(s, end_name);
      s.replace(i, (g ? after_group(s, *g) : end_name) - i, " ");
      note(notes, name == "color" ? "strip-color" : "strip-layout");
      continue;
    }
    if (one_of(name, {"left", "right", "big", "Big", "bigg", "Bigg", "bigl", "bigr", "Bigl", "Bigr",
                      "biggl", "biggr", "Biggl", "Biggr", "bigm", "Bigm", "middle"})) {
      std::size_t stop = end_name;
      if (stop < s.size() && s[stop] == '.') ++stop;
      s.erase(i, stop - i);
      note(notes, "strip-sizing");
      continue;
    }
    if (one_of(name, {"displaystyle", "textstyle", "scriptstyle", "limits", "nolimits", "nonumber",
                      "notag"})) {
      s.replace(i, end_name - i, " ");
      note(notes, "strip-layout");
      continue;
    }
    if (one_of(name, {"quad", "qquad", "enspace", "thinspace", "medspace", "thickspace", "space"})) {
      s.replace(i, end_name - i, " ");
      note(notes, "spacing");
      continue;
    }
    i = end_name;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Font unwrapping

bool single_symbol(std::string_view t) {
  if (t.size() == 1) return is_letter(t[0]);
  if (t.size() >= 2 && t[0] == '\\') {
    return std::all_of(t.begin() + 1, t.end(), [](char c) { return is_letter(c); });
  }
  return false;
}

bool after_subscript(std::string_view s, std::size_t i) {
  std::size_t k = i;
  while (k > 0 && s[k - 1] == ' ') --k;
  if (k > 0 && s[k - 1] == '_') return true;
  if (k > 0 && s[k - 1] == '{') {
    --k;
    while (k > 0 && s[k - 1] == ' ') --k;
    return k > 0 && s[k - 1] == '_';
  }
  return false;
}

std::string unwrap_fonts(std::string s, std::vector<std::string>& notes) {
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '\\') {
      ++i;
      continue;
    }
    std::string_view name = command_name(s, i);
    if (name.empty()) {
      i += 2;
      continue;
    }
    const std::size_t end_name = i + 1 + name.size();
    const bool math_font = one_of(name, {"mathrm", "mathcal", "mathbb", "mathbf", "mathit", "mathsf",
                                         "mathtt", "boldsymbol", "bm", "pmb", "mathscr", "mathfrak",
                                         "mathnormal", "mathbfit"});
    const bool text_font = one_of(name, {"text", "textrm", "textit", "textbf", "textnormal", "mbox",
                                         "textsf", "texttt", "hbox", "textup"});
    if (one_of(name, {"rm", "bf", "it", "cal"})) {
      s.replace(i, end_name - i, " ");
      note(notes, "unwrap-font");
      continue;
    }
    if (!math_font && !text_font) {
      i = end_name;
      continue;
    }
    auto g = group_at(s, end_name);
    if (!g) {
      s.replace(i, end_name - i, " ");
      note(notes, "unwrap-font");
      continue;
    }
    std::string inner = inner_of(s, *g);
    std::string content(trim(inner));
    const std::size_t stop = after_group(s, *g);
    if (latex::is_function_name(content)) {
      s.replace(i, stop - i, " \\" + content + " ");
      note(notes, "alias-function");
      continue;
    }
    if (text_font && !content.empty() && !single_symbol(content) && !after_subscript(s, i) &&
        !units::is_unit_expression(content)) {
      s.replace(i, stop - i, " ");
      note(notes, "drop-text");
      continue;
    }
    s.replace(i, stop - i, " " + content + " ");
    note(notes, text_font ? "unwrap-text" : "unwrap-font");
  }
  return s;
}

// ---------------------------------------------------------------------------
// Unicode

// Decodes one UTF-8 code point at s[i]; advances i. Invalid bytes decode to U+FFFD.
char32_t decode_utf8(std::string_view s, std::size_t& i) {
  const unsigned char c = static_cast<unsigned char>(s[i]);
  if (c < 0x80) {
    ++i;
    return c;
  }
  const int extra = (c & 0xE0) == 0xC0 ? 1 : (c & 0xF0) == 0xE0 ? 2 : (c & 0xF8) == 0xF0 ? 3 : 0;
  if (extra == 0 || i + static_cast<std::size_t>(extra) >= s.size()) {
    ++i;
    return 0xFFFD;
  }
  char32_t cp = c & (0x3F >> extra);
  for (int k = 1; k <= extra; ++k) {
    const unsigned char cc = static_cast<unsigned char>(s[i + static_cast<std::size_t>(k)]);
    if ((cc & 0xC0) != 0x80) {
      ++i;
      return 0xFFFD;
    }
    cp = (cp << 6) | (cc & 0x3F);
  }
  i += static_cast<std::size_t>(extra) + 1;
  return cp;
}

std::optional<std::string_view> unicode_replacement(char32_t cp) {
  switch (cp) {
    case 0x03B1: return "\\alpha ";
    case 0x03B2: return "\\beta ";
    case 0x03B3: return "\\gamma ";
    case 0x03B4: return "\\delta ";
    case 0x03B5: return "\\varepsilon ";
    case 0x03F5: return "\\epsilon ";
    case 0x03B6: return "\\zeta ";
    case 0x03B7: return "\\eta ";
    case 0x03B8: return "\\theta ";
    case 0x03D1: return "\\vartheta ";
    case 0x03B9: return "\\iota ";
    case 0x03BA: return "\\kappa ";
    case 0x03BB: return "\\lambda ";
    case 0x03BC: return "\\mu ";
    case 0x00B5: return "\\mu ";
    case 0x03BD: return "\\nu ";
    case 0x03BE: return "\\xi ";
    case 0x03BF: return "o";
    case 0x03C0: return "\\pi ";
    case 0x03C1: return "\\rho ";
    case 0x03C2: return "\\varsigma ";
    case 0x03C3: return "\\sigma ";
    case 0x03C4: return "\\tau ";
    case 0x03C5: return "\\upsilon ";
    case 0x03C6: return "\\varphi ";
    case 0x03D5: return "\\phi ";
    case 0x03C7: return "\\chi ";
    case 0x03C8: return "\\psi ";
    case 0x03C9: return "\\omega ";
    case 0x0393: return "\\Gamma ";
    case 0x0394: return "\\Delta ";
    case 0x0398: return "\\Theta ";
    case 0x039B: return "\\Lambda ";
    case 0x039E: return "\\Xi ";
    case 0x03A0: return "\\Pi ";
    case 0x03A3: return "\\Sigma ";
    case 0x03A5: return "\\Upsilon ";
    case 0x03A6: return "\\Phi ";
    case 0x03A8: return "\\Psi ";
    case 0x03A9: return "\\Omega ";
    case 0x2126: return "\\Omega ";
    case 0x0391: return "A";
    case 0x0392: return "B";
    case 0x0395: return "E";
    case 0x0396: return "Z";
    case 0x0397: return "H";
    case 0x0399: return "I";
    case 0x039A: return "K";
    case 0x039C: return "M";
    case 0x039D: return "N";
    case 0x039F: return "O";
    case 0x03A1: return "P";
    case 0x03A4: return "T";
    case 0x03A7: return "X";
    case 0x0127: return "\\hbar ";
    case 0x210F: return "\\hbar ";
    case 0x2212: return "-";
    case 0x2013: return "-";
    case 0x2014: return "-";
    case 0x00D7: return "\\times ";
    case 0x00B7: return "\\cdot ";
    case 0x22C5: return "\\cdot ";
    case 0x2217: return "*";
    case 0x00F7: return "/";
    case 0x2264: return "\\le ";
    case 0x2A7D: return "\\le ";
    case 0x2265: return "\\ge ";
    case 0x2A7E: return "\\ge ";
    case 0x2248: return "=";
    case 0x221E: return "\\infty ";
    case 0x221A: return "\\sqrt ";
    case 0x2202: return "\\partial ";
    case 0x2207: return "\\nabla ";
    case 0x2208: return "\\in ";
    case 0x00C5: return "\\AA ";
    case 0x212B: return "\\AA ";
    case 0x2032: return "'";
    case 0x2033: return "''";
    case 0x27E8: return "(";
    case 0x27E9: return ")";
    case 0x2329: return "(";
    case 0x232A: return ")";
    case 0x00A0: return " ";
    case 0x2002: return " ";
    case 0x2003: return " ";
    case 0x2009: return " ";
    case 0x200A: return " ";
    case 0x202F: return " ";
    case 0x200B: return "";
    case 0xFEFF: return "";
    default: return std::nullopt;
  }
}

std::optional<char> superscript_char(char32_t cp) {
  switch (cp) {
    case 0x2070: return '0';
    case 0x00B9: return '1';
    case 0x00B2: return '2';
    case 0x00B3: return '3';
    case 0x2074: return '4';
    case 0x2075: return '5';
    case 0x2076: return '6';
    case 0x2077: return '7';
    case 0x2078: return '8';
    case 0x2079: return '9';
    case 0x207A: return '+';
    case 0x207B: return '-';
    default: return std::nullopt;
  }
}

std::optional<char> subscript_char(char32_t cp) {
  if (cp >= 0x2080 && cp <= 0x2089) return static_cast<char>('0' + (cp - 0x2080));
  return std::nullopt;
}

std::string normalize_unicode(std::string_view s, std::vector<std::string>& notes) {
  std::string out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (static_cast<unsigned char>(s[i]) < 0x80) {
      out.push_back(s[i++]);
      continue;
    }
    note(notes, "unicode");
    std::size_t save = i;
    char32_t cp = decode_utf8(s, i);
    if (superscript_char(cp) || subscript_char(cp)) {
      const bool super = superscript_char(cp).has_value();
      std::string run;
      std::size_t j = save;
      while (j < s.size()) {
        std::size_t k = j;
        char32_t next = static_cast<unsigned char>(s[k]) < 0x80 ? 0 : decode_utf8(s, k);
        auto ch = super ? superscript_char(next) : subscript_char(next);
        if (!ch) break;
        run.push_back(*ch);
        j = k;
      }
      out += super ? "^{" : "_{";
      out += run;
      out += "}";
      i = j;
      continue;
    }
    if (auto r = unicode_replacement(cp)) {
      if (r->find("\\times") != std::string_view::npos || *r == "=") note(notes, "alias");
      out += *r;
      continue;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "\\unicode{%04X}", static_cast<unsigned>(cp));
    out += buf;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Aliases

std::string apply_aliases(std::string s, std::vector<std::string>& notes) {
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (c == '%') {
      s.replace(i, 1, " \\times 10^{-2} ");
      note(notes, "alias-percent");
      i += 16;
      continue;
    }
    if (c != '\\') {
      ++i;
      continue;
    }
    std::string_view name = command_name(s, i);
    if (name.empty()) {
      char n = i + 1 < s.size() ? s[i + 1] : '\0';
      if (n == '{' || n == '}') {
        s.replace(i, 2, n == '{' ? "(" : ")");
        note(notes, "alias-brace");
        continue;
      }
      if (n == '%') {
        s.replace(i, 2, " \\times 10^{-2} ");
        note(notes, "alias-percent");
        i += 16;
        continue;
      }
      i += 2;
      continue;
    }
    const std::size_t end_name = i + 1 + name.size();
    std::optional<std::string> repl;
    if (one_of(name, {"dfrac", "tfrac", "cfrac"})) repl = "\\frac";
    else if (one_of(name, {"leq", "leqslant", "leqq"})) repl = "\\le";
    else if (one_of(name, {"geq", "geqslant", "geqq"})) repl = "\\ge";
    else if (one_of(name, {"approx", "simeq", "doteq", "eqsim"})) repl = "=";
    else if (one_of(name, {"ast", "star"})) repl = "*";
    else if (name == "div") repl = "/";
    else if (one_of(name, {"lvert", "rvert", "vert", "mid"})) repl = "|";
    else if (one_of(name, {"langle", "lbrace", "lparen"})) repl = "(";
    else if (one_of(name, {"rangle", "rbrace", "rparen"})) repl = ")";
    else if (name == "lbrack") repl = "[";
    else if (name == "rbrack") repl = "]";
    else if (name == "hslash") repl = "\\hbar";
    else if (name == "prime") repl = "'";
    else if (name == "cdotp") repl = "\\cdot";
    else if (name == "lg") repl = "\\log";
    else if (name == "arctg") repl = "\\arctan";
    else if (name == "operatorname") {
      std::size_t after = end_name;
      if (after < s.size() && s[after] == '*') ++after;
      if (auto g = group_at(s, after)) {
        std::string content(trim(inner_of(s, *g)));
        if (latex::is_function_name(content)) {
          s.replace(i, after_group(s, *g) - i, "\\" + content + " ");
          note(notes, "alias-function");
          continue;
        }
        if (after != end_name) {
          s.erase(end_name, 1);
          note(notes, "alias-function");
        }
      }
      i = end_name;
      continue;
    }
    if (!repl) {
      i = end_name;
      continue;
    }
    // Keep a following letter from fusing onto the replacement command name.
    std::string r = *repl;
    if (r[0] == '\\' && end_name < s.size() && is_letter(s[end_name])) r += ' ';
    s.replace(i, end_name - i, r);
    note(notes, one_of(name, {"approx", "simeq", "doteq", "eqsim"}) ? "alias-approx" : "alias");
    i += r.size();
  }
  return s;
}

// ---------------------------------------------------------------------------
// Balancing

char opener_for(char closer) { return closer == ')' ? '(' : closer == ']' ? '[' : '{'; }
char closer_for(char opener) { return opener == '(' ? ')' : opener == '[' ? ']' : '}'; }

bool closes(char opener, char closer) {
  if (opener == '{') return closer == '}';
  return closer == ')' || closer == ']';
}

struct BalanceResult {
  std::string text;
  std::size_t inserted = 0;
};

BalanceResult balance(std::string_view s) {
  BalanceResult r;
  std::string& out = r.text;
  struct Open {
    char c;
    std::size_t pos;
  };
  std::vector<Open> stack;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '\\' && i + 1 < s.size()) {
      out.push_back(c);
      out.push_back(s[++i]);
      continue;
    }
    if (c == '(' || c == '[' || c == '{') {
      stack.push_back({c, out.size()});
      out.push_back(c);
      continue;
    }
    if (c == ')' || c == ']' || c == '}') {
      // Close intervening openers when a matching one exists further down.
      auto match = std::find_if(stack.rbegin(), stack.rend(),
                                [c](const Open& o) { return closes(o.c, c); });
      if (match != stack.rend()) {
        while (!closes(stack.back().c, c)) {
          out.push_back(closer_for(stack.back().c));
          stack.pop_back();
          ++r.inserted;
        }
        stack.pop_back();
        out.push_back(c);
        continue;
      }
      // Unmatched closer: open it just inside the innermost open group.
      std::size_t at = stack.empty() ? 0 : stack.back().pos + 1;
      out.insert(out.begin() + static_cast<std::ptrdiff_t>(at), opener_for(c));
      ++r.inserted;
      out.push_back(c);
      continue;
    }
    out.push_back(c);
  }
  while (!stack.empty()) {
    out.push_back(closer_for(stack.back().c));
    stack.pop_back();
    ++r.inserted;
  }
  return r;
}

// Position after one macro argument starting at i (group, command, or char); npos if none.
std::size_t skip_argument(std::string_view s, std::size_t i) {
  i = skip_spaces(s, i);
  if (i >= s.size()) return std::string_view::npos;
  char c = s[i];
  if (c == '{') {
    std::size_t close = matching_brace(s, i);
    return close == std::string_view::npos ? close : close + 1;
  }
  if (c == '}' || c == ')' || c == ']' || c == '&') return std::string_view::npos;
  if (c == '\\') {
    std::string_view name = command_name(s, i);
    return i + 1 + (name.empty() ? 1 : name.size());
  }
  return i + 1;
}

bool frac_arity_ok(std::string_view s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\') continue;
    std::string_view name = command_name(s, i);
    if (name.empty()) {
      ++i;
      continue;
    }
    if (name == "frac") {
      std::size_t a = skip_argument(s, i + 5);
      if (a == std::string_view::npos || skip_argument(s, a) == std::string_view::npos) return false;
    }
    i += name.size();
  }
  return true;
}

CleanLatex one_pass(std::string_view raw, const PreprocessConfig& cfg, std::vector<std::string>& notes) {
  std::string s = strip_wrappers(std::string(raw), notes);
  s = unwrap_fonts(std::move(s), notes);
  s = normalize_unicode(s, notes);
  s = apply_aliases(std::move(s), notes);
  std::string stripped = strip_boilerplate(s, cfg.boilerplate);
  if (collapse_whitespace(stripped) != collapse_whitespace(s)) note(notes, "boilerplate");
  BalanceResult b = balance(stripped);
  if (b.inserted > cfg.balance_limit) throw Unbalanceable(b.inserted, cfg.balance_limit);
  if (b.inserted > 0) note(notes, "balance");
  if (!frac_arity_ok(b.text)) throw Unbalanceable("\\frac is missing an argument");
  std::string collapsed = collapse_whitespace(b.text);
  return CleanLatex{collapsed, {}};
}

}  // namespace

std::string extract_final_answer(std::string_view response, const PreprocessConfig& cfg) {
  std::string candidate;
  if (auto boxed = last_boxed(response)) {
    candidate = std::string(response.substr(boxed->begin, boxed->end - boxed->begin));
    // \boxed{\boxed{x}}: unwrap while the whole candidate is one group.
    for (auto inner = last_boxed(candidate); inner; inner = last_boxed(candidate)) {
      const std::string_view t = trim(candidate);
      const std::size_t lead = static_cast<std::size_t>(t.data() - candidate.data());
      if (t.front() != '\\' || inner->end + 1 != lead + t.size()) break;
      if (std::string_view(candidate).substr(lead, inner->begin - lead).find('}') != std::string_view::npos) break;
      candidate = candidate.substr(inner->begin, inner->end - inner->begin);
    }
  } else {
    MathSegments m = scan_math(response);
    if (m.display) {
      candidate = std::string(response.substr(m.display->begin, m.display->end - m.display->begin));
    } else if (m.inline_math) {
      candidate = std::string(
          response.substr(m.inline_math->begin, m.inline_math->end - m.inline_math->begin));
    } else {
      auto lines = split_lines(response);
      for (auto it = lines.rbegin(); it != lines.rend(); ++it) {
        if (!trim(*it).empty()) {
          candidate = std::string(trim(*it));
          break;
        }
      }
    }
  }
  std::string out = strip_boilerplate(candidate, cfg.boilerplate);
  if (trim(out).empty()) throw EmptyResponse();
  return out;
}

CleanLatex canonicalize_latex(std::string_view raw, const PreprocessConfig& cfg) {
  std::vector<std::string> notes;
  std::string current(raw);
  for (int round = 0; round < 8; ++round) {
    CleanLatex next = one_pass(current, cfg, notes);
    if (next.text == current) break;
    current = std::move(next.text);
  }
  if (std::find(notes.begin(), notes.end(), "collapse-whitespace") == notes.end() &&
      collapse_whitespace(raw) != std::string(raw)) {
    note(notes, "collapse-whitespace");
  }
  return CleanLatex{current, notes};
}

bool is_balanced(std::string_view latex) {
  std::vector<char> stack;
  for (std::size_t i = 0; i < latex.size(); ++i) {
    char c = latex[i];
    if (c == '\\') {
      ++i;
      continue;
    }
    if (c == '(' || c == '[' || c == '{') {
      stack.push_back(c);
    } else if (c == ')' || c == ']' || c == '}') {
      if (stack.empty() || !closes(stack.back(), c)) return false;
      stack.pop_back();
    }
  }
  return stack.empty() && frac_arity_ok(latex);
}

}  // namespace seed
