#include "seed/tokenizer.hpp"

#include <cctype>

#include "seed/errors.hpp"
#include "seed/latex_tables.hpp"
#include "seed/text_util.hpp"

namespace seed {

namespace {

bool ends_operand(const Token& t) {
  switch (t.kind) {
    case Tok::Number:
    case Tok::Symbol:
    case Tok::Constant:
    case Tok::RParen:
    case Tok::RBrace:
    case Tok::RBracket:
    case Tok::Bang:
    case Tok::Prime:
    case Tok::End:
      return true;
    case Tok::Pipe:
      return !t.open;
    default:
      return false;
  }
}

bool starts_operand(const Token& t) {
  switch (t.kind) {
    case Tok::Number:
    case Tok::Symbol:
    case Tok::Constant:
    case Tok::Function:
    case Tok::Frac:
    case Tok::Sqrt:
    case Tok::LParen:
    case Tok::LBrace:
    case Tok::LBracket:
    case Tok::Begin:
      return true;
    case Tok::Pipe:
      return t.open;
    default:
      return false;
  }
}

bool is_letter(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

// Pending macro arguments of \frac, \sqrt and ^.
struct Frame {
  int remaining = 0;
  int open_depth = -1;          // brace depth outside the argument group being read
  bool optional_allowed = false;  // \sqrt before its first argument
  int bracket_depth = -1;       // bracket depth outside an open [n] of \sqrt
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  std::vector<Token> run() {
    while (true) {
      skip_space();
      if (i_ >= s_.size()) break;
      lex_one();
    }
    return std::move(out_);
  }

 private:
  void skip_space() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool arg_expected() const {
    if (frames_.empty()) return false;
    const Frame& f = frames_.back();
    return f.open_depth < 0 && f.bracket_depth < 0;
  }

  // Single-token arguments take one digit: "\frac12", "x^23".
  bool single_digit_mode() const { return arg_expected(); }

  void emit(Token t) {
    const bool expecting = arg_expected();
    if (!out_.empty() && ends_operand(out_.back()) && starts_operand(t) && !expecting) {
      Token im;
      im.kind = Tok::ImplicitMul;
      im.pos = t.pos;
      out_.push_back(im);
    }
    const Tok kind = t.kind;
    out_.push_back(std::move(t));

    if (kind == Tok::LBrace) {
      if (expecting) frames_.back().open_depth = brace_depth_;
      ++brace_depth_;
    } else if (kind == Tok::RBrace) {
      --brace_depth_;
      if (!frames_.empty() && frames_.back().open_depth == brace_depth_) {
        frames_.back().open_depth = -1;
        consume_argument();
      }
    } else if (kind == Tok::LBracket) {
      if (expecting && frames_.back().optional_allowed) {
        frames_.back().bracket_depth = bracket_depth_;
        frames_.back().optional_allowed = false;
      }
      ++bracket_depth_;
    } else if (kind == Tok::RBracket) {
      --bracket_depth_;
      if (!frames_.empty() && frames_.back().bracket_depth == bracket_depth_) {
        frames_.back().bracket_depth = -1;
      }
    } else if (expecting && kind != Tok::Minus && kind != Tok::Plus) {
      consume_argument();
    }

    if (kind == Tok::Frac) frames_.push_back(Frame{2, -1, false, -1});
    else if (kind == Tok::Sqrt) frames_.push_back(Frame{1, -1, true, -1});
    else if (kind == Tok::Caret) frames_.push_back(Frame{1, -1, false, -1});
  }

  void consume_argument() {
    if (frames_.empty()) return;
    frames_.back().optional_allowed = false;
    if (--frames_.back().remaining <= 0) frames_.pop_back();
  }

  Token make(Tok kind, std::size_t pos) {
    Token t;
    t.kind = kind;
    t.pos = pos;
    return t;
  }

  // Brace group content starting at s_[i_] == '{'; advances past it.
  std::string read_group(std::size_t pos) {
    std::size_t close = matching_brace(s_, i_);
    if (close == std::string_view::npos) throw ParseError(pos, "'}'");
    std::string inner(s_.substr(i_ + 1, close - i_ - 1));
    i_ = close + 1;
    return inner;
  }

  // Subscript after a symbol: "_x", "_{max}", "_\mu", "_{\text B}". Whitespace removed.
  std::string read_subscript() {
    std::size_t save = i_;
    skip_space();
    if (i_ >= s_.size() || s_[i_] != '_') {
      i_ = save;
      return {};
    }
    const std::size_t pos = i_;
    ++i_;
    skip_space();
    if (i_ >= s_.size()) throw ParseError(pos, "subscript");
    std::string content;
    if (s_[i_] == '{') {
      std::string inner = read_group(pos);
      for (char c : inner) {
        if (!std::isspace(static_cast<unsigned char>(c))) content.push_back(c);
      }
      if (content.empty()) throw ParseError(pos, "subscript");
    } else if (s_[i_] == '\\') {
      std::string_view name = command_name(s_, i_);
      if (name.empty()) throw ParseError(pos, "subscript");
      content = "\\" + std::string(name);
      i_ += 1 + name.size();
    } else {
      content = std::string(1, s_[i_]);
      ++i_;
    }
    return "_" + content;
  }

  void symbol(std::string name, std::size_t pos) {
    Token t = make(Tok::Symbol, pos);
    t.text = std::move(name) + read_subscript();
    emit(std::move(t));
  }

  void lex_number() {
    const std::size_t pos = i_;
    const bool single = single_digit_mode();
    std::size_t j = i_;
    if (single && is_digit(s_[j])) {
      ++j;
    } else {
      while (j < s_.size() && is_digit(s_[j])) ++j;
      if (j < s_.size() && s_[j] == '.' && j + 1 < s_.size() && is_digit(s_[j + 1])) {
        ++j;
        while (j < s_.size() && is_digit(s_[j])) ++j;
      }
    }
    Token t = make(Tok::Number, pos);
    auto v = parse_decimal(s_.substr(i_, j - i_));
    if (!v) throw ParseError(pos, "number");
    t.value = *v;
    i_ = j;
    // Scientific notation glued to the literal: "3e8", "1.6e-19".
    if (!single && i_ + 1 < s_.size() && s_[i_] == 'e') {
      std::size_t k = i_ + 1;
      if (s_[k] == '-' || s_[k] == '+') ++k;
      if (k < s_.size() && is_digit(s_[k])) {
        std::size_t m = k;
        while (m < s_.size() && is_digit(s_[m])) ++m;
        if (m - k <= 4) {
          long p = std::stol(std::string(s_.substr(i_ + 1, m - i_ - 1)));
          mpz_class ten;
          mpz_ui_pow_ui(ten.get_mpz_t(), 10, static_cast<unsigned long>(p < 0 ? -p : p));
          if (p < 0) t.value /= Rational(ten); else t.value *= Rational(ten);
          i_ = m;
        }
      }
    }
    emit(std::move(t));
  }

  void lex_command() {
    const std::size_t pos = i_;
    std::string_view name = command_name(s_, i_);
    if (name.empty()) {
      char n = i_ + 1 < s_.size() ? s_[i_ + 1] : '\0';
      i_ += 2;
      switch (n) {
        case '\\': emit(make(Tok::RowSep, pos)); return;
        case ',': case ';': case ':': case '!': case ' ': return;
        case '{': emit(make(Tok::LParen, pos)); return;
        case '}': emit(make(Tok::RParen, pos)); return;
        default: throw UnknownCommand(std::string(1, n), pos);
      }
    }
    i_ += 1 + name.size();
    auto cls = latex::classify(name);
    if (!cls) throw UnknownCommand(std::string(name), pos);
    switch (*cls) {
      case latex::CommandClass::Greek:
      case latex::CommandClass::SymbolLike:
        symbol("\\" + std::string(name), pos);
        return;
      case latex::CommandClass::Constant: {
        std::string sub = read_subscript();
        if (!sub.empty()) {
          Token t = make(Tok::Symbol, pos);
          t.text = "\\" + std::string(name) + sub;
          emit(std::move(t));
          return;
        }
        Token t = make(Tok::Constant, pos);
        t.text = name == "pi" ? "pi" : "i";
        emit(std::move(t));
        return;
      }
      case latex::CommandClass::Function: {
        Token t = make(Tok::Function, pos);
        t.text = std::string(name);
        std::string sub = read_subscript();
        if (!sub.empty()) t.sub = sub.substr(1);
        if (!t.sub.empty() && t.text != "log") throw ParseError(pos, "no subscript on \\" + t.text);
        emit(std::move(t));
        return;
      }
      case latex::CommandClass::Frac: emit(make(Tok::Frac, pos)); return;
      case latex::CommandClass::Sqrt: emit(make(Tok::Sqrt, pos)); return;
      case latex::CommandClass::Accent: lex_accent(name, pos); return;
      case latex::CommandClass::Relation: {
        Token t = make(Tok::RelOp, pos);
        t.op = (name == "le" || name == "leq") ? RelOp::Le
               : (name == "ge" || name == "geq") ? RelOp::Ge
               : name == "lt" ? RelOp::Lt : RelOp::Gt;
        emit(std::move(t));
        return;
      }
      case latex::CommandClass::Times: emit(make(Tok::Star, pos)); return;
      case latex::CommandClass::Partial: emit(make(Tok::Partial, pos)); return;
      case latex::CommandClass::In: emit(make(Tok::In, pos)); return;
      case latex::CommandClass::Sizing:
        skip_space();
        if (i_ < s_.size() && s_[i_] == '.') ++i_;
        return;
      case latex::CommandClass::Environment: {
        skip_space();
        if (i_ >= s_.size() || s_[i_] != '{') throw ParseError(i_, "environment name");
        Token t = make(name == "begin" ? Tok::Begin : Tok::End, pos);
        t.text = std::string(trim(read_group(pos)));
        emit(std::move(t));
        return;
      }
      case latex::CommandClass::Operatorname: {
        skip_space();
        if (i_ < s_.size() && s_[i_] == '*') ++i_;
        skip_space();
        if (i_ >= s_.size() || s_[i_] != '{') throw ParseError(i_, "operator name");
        std::string fn(trim(read_group(pos)));
        if (fn.empty()) throw ParseError(pos, "operator name");
        Token t = make(Tok::Function, pos);
        t.text = fn;
        emit(std::move(t));
        return;
      }
    }
  }

  // \hat{x} on one symbol becomes the symbol "\hat{x}"; otherwise the accent is dropped.
  void lex_accent(std::string_view accent, std::size_t pos) {
    skip_space();
    if (i_ >= s_.size()) throw ParseError(pos, "accent argument");
    std::string inner;
    const std::size_t save = i_;
    if (s_[i_] == '{') {
      inner = std::string(trim(read_group(pos)));
    } else if (s_[i_] == '\\') {
      std::string_view n = command_name(s_, i_);
      inner = "\\" + std::string(n);
      i_ += 1 + n.size();
    } else {
      inner = std::string(1, s_[i_]);
      ++i_;
    }
    bool single = inner.size() == 1 && is_letter(inner[0]);
    if (!single && inner.size() > 1 && inner[0] == '\\') {
      auto cls = latex::classify(std::string_view(inner).substr(1));
      single = cls && (*cls == latex::CommandClass::Greek || *cls == latex::CommandClass::SymbolLike);
      for (std::size_t k = 1; k < inner.size(); ++k) single = single && is_letter(inner[k]);
    }
    if (single) {
      symbol("\\" + std::string(accent) + "{" + inner + "}", pos);
      return;
    }
    i_ = save;  // transparent: lex the argument normally
  }

  void lex_one() {
    const char c = s_[i_];
    const std::size_t pos = i_;
    if (is_digit(c) || (c == '.' && i_ + 1 < s_.size() && is_digit(s_[i_ + 1]))) {
      lex_number();
      return;
    }
    if (is_letter(c)) {
      ++i_;
      if (c == 'e') {
        std::size_t k = i_;
        while (k < s_.size() && s_[k] == ' ') ++k;
        if (k < s_.size() && s_[k] == '^') {
          Token t = make(Tok::Constant, pos);
          t.text = "e";
          emit(std::move(t));
          return;
        }
      }
      symbol(std::string(1, c), pos);
      return;
    }
    if (c == '\\') {
      lex_command();
      return;
    }
    ++i_;
    switch (c) {
      case '+': emit(make(Tok::Plus, pos)); return;
      case '-': emit(make(Tok::Minus, pos)); return;
      case '*': emit(make(Tok::Star, pos)); return;
      case '/': emit(make(Tok::Slash, pos)); return;
      case '^': emit(make(Tok::Caret, pos)); return;
      case '!': emit(make(Tok::Bang, pos)); return;
      case '\'': emit(make(Tok::Prime, pos)); return;
      case '(': emit(make(Tok::LParen, pos)); return;
      case ')': emit(make(Tok::RParen, pos)); return;
      case '{': emit(make(Tok::LBrace, pos)); return;
      case '}': emit(make(Tok::RBrace, pos)); return;
      case '[': emit(make(Tok::LBracket, pos)); return;
      case ']': emit(make(Tok::RBracket, pos)); return;
      case ',': emit(make(Tok::Comma, pos)); return;
      case '&': emit(make(Tok::Amp, pos)); return;
      case '|': {
        Token t = make(Tok::Pipe, pos);
        t.open = !(open_pipes_ > 0 && !out_.empty() && ends_operand(out_.back()));
        open_pipes_ += t.open ? 1 : -1;
        emit(std::move(t));
        return;
      }
      case '=': {
        Token t = make(Tok::RelOp, pos);
        t.op = RelOp::Eq;
        emit(std::move(t));
        return;
      }
      case '<':
      case '>': {
        Token t = make(Tok::RelOp, pos);
        const bool eq = i_ < s_.size() && s_[i_] == '=';
        if (eq) ++i_;
        t.op = c == '<' ? (eq ? RelOp::Le : RelOp::Lt) : (eq ? RelOp::Ge : RelOp::Gt);
        emit(std::move(t));
        return;
      }
      case '_': throw ParseError(pos, "symbol before subscript");
      default: throw ParseError(pos, "supported character");
    }
  }

  std::string_view s_;
  std::size_t i_ = 0;
  std::vector<Token> out_;
  std::vector<Frame> frames_;
  int brace_depth_ = 0;
  int bracket_depth_ = 0;
  int open_pipes_ = 0;
};

}  // namespace

std::vector<Token> tokenize(std::string_view src) { return Lexer(src).run(); }

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::Number: return "Number " + to_string(t.value);
    case Tok::Symbol: return "Symbol " + t.text;
    case Tok::Constant: return "Constant " + t.text;
    case Tok::Function: return "Function " + t.text;
    case Tok::Frac: return "Frac";
    case Tok::Sqrt: return "Sqrt";
    case Tok::Begin: return "Begin " + t.text;
    case Tok::End: return "End " + t.text;
    case Tok::Plus: return "+";
    case Tok::Minus: return "-";
    case Tok::Star: return "*";
    case Tok::Slash: return "/";
    case Tok::Caret: return "^";
    case Tok::Bang: return "!";
    case Tok::Prime: return "'";
    case Tok::LParen: return "(";
    case Tok::RParen: return ")";
    case Tok::LBrace: return "{";
    case Tok::RBrace: return "}";
    case Tok::LBracket: return "[";
    case Tok::RBracket: return "]";
    case Tok::Comma: return ",";
    case Tok::Amp: return "&";
    case Tok::RowSep: return "\\\\";
    case Tok::Pipe: return t.open ? "|open" : "|close";
    case Tok::RelOp: return "RelOp " + std::string(relop_latex(t.op));
    case Tok::ImplicitMul: return "ImplicitMul";
    case Tok::Partial: return "Partial";
    case Tok::In: return "In";
  }
  return "?";
}

}  // namespace seed
