#include "seed/parser.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <exception>

#include "seed/errors.hpp"
#include "seed/evaluate.hpp"
#include "seed/latex_tables.hpp"
#include "seed/text_util.hpp"

namespace seed {

std::string_view answer_type_name(AnswerType t) {
  switch (t) {
    case AnswerType::Expression: return "expression";
    case AnswerType::Equation: return "equation";
    case AnswerType::Numeric: return "numeric";
    case AnswerType::Tuple: return "tuple";
    case AnswerType::Interval: return "interval";
  }
  return "expression";
}

std::optional<AnswerType> parse_answer_type(std::string_view name) {
  std::string lower;
  for (char c : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  for (AnswerType t : {AnswerType::Expression, AnswerType::Equation, AnswerType::Numeric,
                       AnswerType::Tuple, AnswerType::Interval}) {
    if (lower == answer_type_name(t)) return t;
  }
  return std::nullopt;
}

namespace {

constexpr int kMaxDepth = 200;

// A parse result plus whether its Mul children may be spliced into an
// enclosing product (fractions, negations, brace groups; never parentheses).
struct Parsed {
  Node node;
  bool splice = false;
};

Node negate(Node n) {
  if (n.kind == Kind::Number) {
    n.value = -n.value;
    return n;
  }
  if (n.kind == Kind::Mul && !n.children.empty() && n.children[0].kind == Kind::Number) {
    n.children[0].value = -n.children[0].value;
    return n;
  }
  if (n.kind == Kind::Mul) {
    n.children.insert(n.children.begin(), Node::number(-1));
    return n;
  }
  return Node::mul({Node::number(-1), std::move(n)});
}

void append_factor(std::vector<Node>& factors, Parsed p) {
  if (p.splice && p.node.kind == Kind::Mul) {
    for (auto& c : p.node.children) factors.push_back(std::move(c));
  } else {
    factors.push_back(std::move(p.node));
  }
}

struct Chain {
  std::vector<Node> sides;
  std::vector<RelOp> ops;
  std::vector<std::size_t> op_positions;
};

class Parser {
 public:
  Parser(const std::vector<Token>& t, std::size_t begin, std::size_t end)
      : t_(t), i_(begin), end_(end) {}

  Chain chain() {
    Chain c;
    c.sides.push_back(add().node);
    while (at(Tok::RelOp)) {
      c.ops.push_back(t_[i_].op);
      c.op_positions.push_back(t_[i_].pos);
      ++i_;
      c.sides.push_back(add().node);
    }
    return c;
  }

  void expect_end() {
    if (i_ < end_) throw ParseError(t_[i_].pos, "end of input, found '" + describe(t_[i_]) + "'");
  }

  Parsed add() {
    Guard g(*this);
    Parsed first = mul();
    if (!at(Tok::Plus) && !at(Tok::Minus)) return first;
    std::vector<Node> terms;
    terms.push_back(std::move(first.node));
    while (at(Tok::Plus) || at(Tok::Minus)) {
      const bool minus = at(Tok::Minus);
      ++i_;
      Node term = mul().node;
      terms.push_back(minus ? negate(std::move(term)) : std::move(term));
    }
    return {Node::add(std::move(terms)), false};
  }

  Parsed mul() {
    Guard g(*this);
    Parsed first = unary();
    if (!at(Tok::Star) && !at(Tok::Slash) && !at(Tok::ImplicitMul)) return first;
    std::vector<Node> factors;
    append_factor(factors, std::move(first));
    while (at(Tok::Star) || at(Tok::Slash) || at(Tok::ImplicitMul)) {
      const bool divide = at(Tok::Slash);
      ++i_;
      Parsed next = unary();
      if (divide) {
        factors.push_back(Node::pow(std::move(next.node), Node::number(-1)));
      } else {
        append_factor(factors, std::move(next));
      }
    }
    return {Node::mul(std::move(factors)), true};
  }

  Parsed unary() {
    Guard g(*this);
    if (at(Tok::Minus)) {
      ++i_;
      Parsed inner = unary();
      return {negate(std::move(inner.node)), true};
    }
    if (at(Tok::Plus)) {
      ++i_;
      return unary();
    }
    return power();
  }

  Parsed power() {
    Parsed base = postfix();
    if (!at(Tok::Caret)) return base;
    ++i_;
    Node exponent = script_argument();
    return {Node::pow(std::move(base.node), std::move(exponent)), false};
  }

  // Superscript: a brace group or one unary operand (right-associative).
  Node script_argument() {
    if (at(Tok::LBrace)) return brace_group().node;
    return unary().node;
  }

  Parsed postfix() {
    Parsed p = primary();
    while (true) {
      if (at(Tok::Bang)) {
        ++i_;
        p = {Node::function("factorial", {std::move(p.node)}), false};
      } else if (at(Tok::Prime)) {
        if (p.node.kind != Kind::Symbol) throw ParseError(t_[i_].pos, "symbol before prime");
        ++i_;
        p.node.name += "'";
      } else {
        return p;
      }
    }
  }

  Parsed primary() {
    Guard g(*this);
    if (i_ >= end_) throw ParseError(end_pos(), "operand");
    const Token& tok = t_[i_];
    switch (tok.kind) {
      case Tok::Number:
        ++i_;
        return {Node::number(tok.value), false};
      case Tok::Constant:
        ++i_;
        return {Node::constant(tok.text), false};
      case Tok::Symbol:
        return symbol_or_application();
      case Tok::LParen:
      case Tok::LBracket:
        return {paren_group(), false};
      case Tok::LBrace:
        return brace_group();
      case Tok::Pipe: {
        if (!tok.open) throw ParseError(tok.pos, "operand");
        ++i_;
        Node inner = add().node;
        if (!at(Tok::Pipe) || t_[i_].open) throw ParseError(pos(), "closing '|'");
        ++i_;
        return {Node::function("abs", {std::move(inner)}), false};
      }
      case Tok::Function:
        return function();
      case Tok::Frac:
        return frac();
      case Tok::Sqrt:
        return sqrt();
      case Tok::Begin:
        return {matrix(), false};
      default:
        throw ParseError(tok.pos, "operand, found '" + describe(tok) + "'");
    }
  }

 private:
  struct Guard {
    explicit Guard(Parser& p) : p_(p) {
      if (++p_.depth_ > kMaxDepth) throw ParseError(p_.pos(), "shallower nesting");
    }
    ~Guard() { --p_.depth_; }
    Parser& p_;
  };

  bool at(Tok k) const { return i_ < end_ && t_[i_].kind == k; }
  std::size_t end_pos() const {
    if (end_ == 0) return 0;
    return t_[end_ - 1].pos + 1;
  }
  std::size_t pos() const { return i_ < end_ ? t_[i_].pos : end_pos(); }

  void expect(Tok k, std::string_view what) {
    if (!at(k)) throw ParseError(pos(), std::string(what));
    ++i_;
  }

  // Index of the token closing the group opened at `open`, or npos.
  std::size_t matching(std::size_t open) const {
    int depth = 0;
    for (std::size_t k = open; k < end_; ++k) {
      switch (t_[k].kind) {
        case Tok::LParen: case Tok::LBracket: case Tok::LBrace: ++depth; break;
        case Tok::RParen: case Tok::RBracket: case Tok::RBrace:
          if (--depth == 0) return k;
          break;
        default: break;
      }
    }
    return std::string::npos;
  }

  Node paren_group() {
    const std::size_t open = i_;
    ++i_;
    Node inner = add().node;
    if (!at(Tok::RParen) && !at(Tok::RBracket)) throw ParseError(pos(), "')'");
    (void)open;
    ++i_;
    return inner;
  }

  Parsed brace_group() {
    expect(Tok::LBrace, "'{'");
    Parsed inner = add();
    expect(Tok::RBrace, "'}'");
    return inner;
  }

  // Macro argument: brace group or a single primary.
  Parsed argument() {
    if (at(Tok::LBrace)) return brace_group();
    return primary();
  }

  Parsed symbol_or_application() {
    Node sym = Node::symbol(t_[i_].text);
    ++i_;
    while (at(Tok::Prime)) {
      sym.name += "'";
      ++i_;
    }
    // name(sym, sym, ...) reads as a function application: g(E), f'(x).
    std::size_t k = i_;
    if (k < end_ && t_[k].kind == Tok::ImplicitMul) ++k;
    if (k < end_ && t_[k].kind == Tok::LParen) {
      std::vector<Node> args;
      std::size_t m = k + 1;
      bool ok = false;
      while (m < end_ && t_[m].kind == Tok::Symbol) {
        args.push_back(Node::symbol(t_[m].text));
        ++m;
        if (m < end_ && t_[m].kind == Tok::RParen) {
          ok = true;
          ++m;
          break;
        }
        if (m < end_ && t_[m].kind == Tok::Comma) {
          ++m;
          continue;
        }
        break;
      }
      if (ok) {
        i_ = m;
        return {Node::function(sym.name, std::move(args)), false};
      }
    }
    return {std::move(sym), false};
  }

  std::vector<Node> paren_arguments() {
    expect(Tok::LParen, "'('");
    std::vector<Node> args;
    args.push_back(add().node);
    while (at(Tok::Comma)) {
      ++i_;
      args.push_back(add().node);
    }
    if (!at(Tok::RParen) && !at(Tok::RBracket)) throw ParseError(pos(), "')'");
    ++i_;
    return args;
  }

  Parsed function() {
    const Token& tok = t_[i_];
    ++i_;
    std::string name = tok.text;
    std::optional<Node> power;
    if (at(Tok::Caret)) {
      ++i_;
      power = script_argument();
      if (at(Tok::ImplicitMul)) ++i_;
    }
    std::vector<Node> args;
    if (at(Tok::LParen)) {
      args = paren_arguments();
    } else if (at(Tok::LBrace)) {
      args.push_back(brace_group().node);
    } else {
      // Implicit-product argument, stopping before the next function.
      std::vector<Node> factors;
      append_factor(factors, unary());
      while (at(Tok::ImplicitMul) && i_ + 1 < end_ && t_[i_ + 1].kind != Tok::Function) {
        ++i_;
        append_factor(factors, unary());
      }
      args.push_back(factors.size() == 1 ? std::move(factors[0]) : Node::mul(std::move(factors)));
    }
    const bool known = latex::is_function_name(name);
    if (known && args.size() != 1) throw ParseError(tok.pos, "one argument to \\" + name);

    Parsed result;
    if (name == "exp") {
      result = {Node::pow(Node::constant("e"), std::move(args[0])), false};
    } else if (name == "log" || name == "ln") {
      Node ln = Node::function("ln", {std::move(args[0])});
      if (!tok.sub.empty()) {
        Node base = parse_latex(tok.sub);
        Node ln_base = Node::function("ln", {std::move(base)});
        result = {Node::mul({std::move(ln), Node::pow(std::move(ln_base), Node::number(-1))}), true};
      } else {
        result = {std::move(ln), false};
      }
    } else {
      result = {Node::function(name, std::move(args)), false};
    }
    if (power) return {Node::pow(std::move(result.node), std::move(*power)), false};
    return result;
  }

  Parsed sqrt() {
    ++i_;
    std::optional<Node> index;
    if (at(Tok::LBracket)) {
      ++i_;
      index = add().node;
      expect(Tok::RBracket, "']'");
    }
    Node radicand = argument().node;
    Node exponent = Node::number(make_rational(1, 2));
    if (index) {
      if (index->kind == Kind::Number && is_integer(index->value) && index->value > 0) {
        exponent = Node::number(Rational(1) / index->value);
      } else {
        exponent = Node::pow(std::move(*index), Node::number(-1));
      }
    }
    return {Node::pow(std::move(radicand), std::move(exponent)), false};
  }

  // Reads an optional "^n" / "^{n}" order at k; returns the order (default 1).
  std::optional<long> order_at(std::size_t& k, std::size_t stop) const {
    if (k >= stop || t_[k].kind != Tok::Caret) return 1;
    ++k;
    const Token* num = nullptr;
    if (k < stop && t_[k].kind == Tok::LBrace) {
      if (k + 2 < stop && t_[k + 1].kind == Tok::Number && t_[k + 2].kind == Tok::RBrace) {
        num = &t_[k + 1];
        k += 3;
      }
    } else if (k < stop && t_[k].kind == Tok::Number) {
      num = &t_[k];
      ++k;
    }
    if (!num || !is_integer(num->value) || num->value < 1 || num->value > 9) return std::nullopt;
    return num->value.get_num().get_si();
  }

  static bool is_d(const Token& t, bool partial) {
    return partial ? t.kind == Tok::Partial : (t.kind == Tok::Symbol && t.text == "d");
  }

  // \frac{d}{dx} f, \frac{df}{dx}, \frac{d^2 f}{dx^2}, and \partial variants.
  std::optional<Parsed> derivative(std::size_t frac_index) {
    std::size_t n0 = frac_index + 1;
    if (n0 >= end_ || t_[n0].kind != Tok::LBrace) return std::nullopt;
    std::size_t n1 = matching(n0);
    if (n1 == std::string::npos || n1 + 1 >= end_ || t_[n1 + 1].kind != Tok::LBrace) return std::nullopt;
    std::size_t d0 = n1 + 1;
    std::size_t d1 = matching(d0);
    if (d1 == std::string::npos) return std::nullopt;

    const bool partial = n0 + 1 < n1 && t_[n0 + 1].kind == Tok::Partial;
    if (n0 + 1 >= n1 || !is_d(t_[n0 + 1], partial)) return std::nullopt;
    // Denominator: d [IM] var [^n]
    std::size_t k = d0 + 1;
    if (k >= d1 || !is_d(t_[k], partial)) return std::nullopt;
    ++k;
    if (k < d1 && t_[k].kind == Tok::ImplicitMul) ++k;
    if (k >= d1 || t_[k].kind != Tok::Symbol) return std::nullopt;
    Node var = Node::symbol(t_[k].text);
    ++k;
    auto den_order = order_at(k, d1);
    if (!den_order || k != d1) return std::nullopt;
    // Numerator: d [^n] [IM] rest
    std::size_t m = n0 + 2;
    auto num_order = order_at(m, n1);
    if (!num_order || *num_order != *den_order) return std::nullopt;
    if (m < n1 && t_[m].kind == Tok::ImplicitMul) ++m;

    Node operand;
    if (m == n1) {
      i_ = d1 + 1;
      if (at(Tok::ImplicitMul)) ++i_;
      operand = unary().node;
    } else {
      Parser sub(t_, m, n1);
      sub.depth_ = depth_;
      operand = sub.add().node;
      sub.expect_end();
      i_ = d1 + 1;
    }
    for (long r = 0; r < *den_order; ++r) operand = Node::derivative(std::move(operand), var);
    return Parsed{std::move(operand), false};
  }

  Parsed frac() {
    const std::size_t at_frac = i_;
    if (auto d = derivative(at_frac)) return std::move(*d);
    ++i_;
    Parsed num = argument();
    Parsed den = argument();
    std::vector<Node> factors;
    append_factor(factors, std::move(num));
    factors.push_back(Node::pow(std::move(den.node), Node::number(-1)));
    return {Node::mul(std::move(factors)), true};
  }

  Node matrix() {
    const Token& begin = t_[i_];
    static const char* const kEnvs[] = {"pmatrix", "bmatrix", "vmatrix", "Bmatrix",
                                        "Vmatrix", "matrix",  "smallmatrix"};
    bool known = false;
    for (const char* e : kEnvs) known = known || begin.text == e;
    if (!known) throw ParseError(begin.pos, "matrix environment, found '" + begin.text + "'");
    ++i_;
    std::vector<std::vector<Node>> rows(1);
    while (true) {
      if (at(Tok::End)) {
        if (t_[i_].text != begin.text) throw ParseError(pos(), "\\end{" + begin.text + "}");
        ++i_;
        break;
      }
      rows.back().push_back(add().node);
      if (at(Tok::Amp)) {
        ++i_;
      } else if (at(Tok::RowSep)) {
        ++i_;
        if (at(Tok::End)) continue;
        rows.emplace_back();
      } else if (!at(Tok::End)) {
        throw ParseError(pos(), "'&', '\\\\' or \\end");
      }
    }
    const std::size_t cols = rows.front().size();
    std::vector<Node> cells;
    for (auto& r : rows) {
      if (r.size() != cols) throw ParseError(begin.pos, "rows of equal length");
      for (auto& c : r) cells.push_back(std::move(c));
    }
    return Node::matrix(rows.size(), cols, std::move(cells));
  }

  const std::vector<Token>& t_;
  std::size_t i_;
  std::size_t end_;
  int depth_ = 0;

  friend Chain parse_range(const std::vector<Token>&, std::size_t, std::size_t);
};

Chain parse_range(const std::vector<Token>& tokens, std::size_t begin, std::size_t end) {
  if (begin >= end) {
    throw ParseError(begin < tokens.size() ? tokens[begin].pos : (tokens.empty() ? 0 : tokens.back().pos + 1),
                     "expression");
  }
  Parser p(tokens, begin, end);
  Chain c = p.chain();
  p.expect_end();
  return c;
}

// ---------------------------------------------------------------------------
// Typed answers

bool is_open(Tok k) { return k == Tok::LParen || k == Tok::LBracket || k == Tok::LBrace || k == Tok::Begin; }
bool is_close(Tok k) { return k == Tok::RParen || k == Tok::RBracket || k == Tok::RBrace || k == Tok::End; }

// Positions in [begin, end) at group depth 0 whose kind satisfies `pred`.
template <typename Pred>
std::vector<std::size_t> top_level(const std::vector<Token>& t, std::size_t begin, std::size_t end,
                                   Pred pred) {
  std::vector<std::size_t> out;
  int depth = 0;
  for (std::size_t k = begin; k < end; ++k) {
    if (is_open(t[k].kind)) ++depth;
    else if (is_close(t[k].kind)) --depth;
    else if (depth == 0 && pred(t[k])) out.push_back(k);
  }
  return out;
}

// True when t[begin] opens a group closed exactly by t[end-1].
bool wrapped(const std::vector<Token>& t, std::size_t begin, std::size_t end) {
  if (end - begin < 2 || !is_open(t[begin].kind) || t[begin].kind == Tok::Begin) return false;
  int depth = 0;
  for (std::size_t k = begin; k < end; ++k) {
    if (is_open(t[k].kind)) ++depth;
    else if (is_close(t[k].kind) && --depth == 0) return k == end - 1;
  }
  return false;
}

Node last_side(const std::vector<Token>& t, std::size_t begin, std::size_t end) {
  Chain c = parse_range(t, begin, end);
  return std::move(c.sides.back());
}

std::size_t after_last(const std::vector<std::size_t>& positions, std::size_t begin) {
  return positions.empty() ? begin : positions.back() + 1;
}

TypedAnswer parse_tuple(const std::vector<Token>& t) {
  std::size_t begin = 0;
  std::size_t end = t.size();
  auto is_comma = [](const Token& x) { return x.kind == Tok::Comma; };
  auto is_eq = [](const Token& x) { return x.kind == Tok::RelOp && x.op == RelOp::Eq; };
  auto is_in = [](const Token& x) { return x.kind == Tok::In; };
  begin = after_last(top_level(t, begin, end, is_in), begin);
  if (top_level(t, begin, end, is_comma).empty()) {
    begin = after_last(top_level(t, begin, end, is_eq), begin);
    if (wrapped(t, begin, end)) {
      ++begin;
      --end;
    }
  }
  auto commas = top_level(t, begin, end, is_comma);
  if (commas.empty()) throw TypeMismatch("tuple needs at least two comma-separated components");
  TypedAnswer a;
  a.answer_type = AnswerType::Tuple;
  std::size_t start = begin;
  commas.push_back(end);
  for (std::size_t c : commas) {
    a.parts.push_back(last_side(t, start, c));
    start = c + 1;
  }
  return a;
}

TypedAnswer parse_interval(const std::vector<Token>& t) {
  std::size_t begin = 0;
  std::size_t end = t.size();
  auto is_comma = [](const Token& x) { return x.kind == Tok::Comma; };
  auto is_rel = [](const Token& x) { return x.kind == Tok::RelOp; };
  auto is_eq = [](const Token& x) { return x.kind == Tok::RelOp && x.op == RelOp::Eq; };
  auto is_in = [](const Token& x) { return x.kind == Tok::In; };
  begin = after_last(top_level(t, begin, end, is_in), begin);

  TypedAnswer a;
  a.answer_type = AnswerType::Interval;
  auto rels = top_level(t, begin, end, is_rel);
  if (top_level(t, begin, end, is_comma).empty() && rels.size() == 2) {
    // a < x <= b
    Chain c = parse_range(t, begin, end);
    auto lower = [](RelOp op) { return op == RelOp::Lt || op == RelOp::Le; };
    auto upper = [](RelOp op) { return op == RelOp::Gt || op == RelOp::Ge; };
    if (lower(c.ops[0]) && lower(c.ops[1])) {
      a.parts.push_back(Node::interval(std::move(c.sides[0]), std::move(c.sides[2]),
                                       c.ops[0] == RelOp::Lt, c.ops[1] == RelOp::Lt));
      return a;
    }
    if (upper(c.ops[0]) && upper(c.ops[1])) {
      a.parts.push_back(Node::interval(std::move(c.sides[2]), std::move(c.sides[0]),
                                       c.ops[1] == RelOp::Gt, c.ops[0] == RelOp::Gt));
      return a;
    }
    throw TypeMismatch("inequality chain does not describe an interval");
  }
  begin = after_last(top_level(t, begin, end, is_eq), begin);
  if (!wrapped(t, begin, end) || t[begin].kind == Tok::LBrace) {
    throw TypeMismatch("interval must look like (a, b), [a, b], (a, b] or [a, b)");
  }
  const bool lower_open = t[begin].kind == Tok::LParen;
  const bool upper_open = t[end - 1].kind == Tok::RParen;
  auto commas = top_level(t, begin + 1, end - 1, is_comma);
  if (commas.size() != 1) throw TypeMismatch("interval needs exactly two endpoints");
  Node lo = last_side(t, begin + 1, commas[0]);
  Node hi = last_side(t, commas[0] + 1, end - 1);
  a.parts.push_back(Node::interval(std::move(lo), std::move(hi), lower_open, upper_open));
  return a;
}

TypedAnswer parse_numeric(std::string_view text) {
  TypedAnswer a;
  a.answer_type = AnswerType::Numeric;
  try {
    units::Quantity q = units::parse_quantity(text);
    a.parts.push_back(Node::unit_quantity(Node::number(Rational(static_cast<double>(q.value))), q.unit));
    a.quantity = q;
    return a;
  } catch (const Error&) {
    // Closed-form numbers such as \frac{\sqrt{3}}{2}.
    std::exception_ptr first = std::current_exception();
    Node expr;
    try {
      auto tokens = tokenize(text);
      expr = last_side(tokens, 0, tokens.size());
    } catch (const Error&) {
      std::rethrow_exception(first);
    }
    if (!free_symbols(expr).empty() || !unknown_functions(expr).empty() || !is_evaluable(expr)) {
      std::rethrow_exception(first);
    }
    Evaluation e;
    try {
      e = evaluate(expr, {});
    } catch (const std::exception&) {
      std::rethrow_exception(first);
    }
    if (std::fabs(e.value.imag()) > 1e-12L * std::max(1.0L, std::abs(e.value))) std::rethrow_exception(first);
    a.parts.push_back(std::move(expr));
    a.quantity = units::dimensionless_quantity(e.value.real());
    return a;
  }
}

}  // namespace

Node parse_expression(const std::vector<Token>& tokens) {
  Chain c = parse_range(tokens, 0, tokens.size());
  if (c.sides.size() == 1) return std::move(c.sides[0]);
  if (c.sides.size() > 2) throw ParseError(c.op_positions[1], "at most one relation operator");
  return Node::relation(c.ops[0], std::move(c.sides[0]), std::move(c.sides[1]));
}

Node parse_latex(std::string_view latex) { return parse_expression(tokenize(latex)); }

TypedAnswer parse_answer(std::string_view text, AnswerType declared) {
  if (declared == AnswerType::Numeric) return parse_numeric(text);
  auto tokens = tokenize(text);
  switch (declared) {
    case AnswerType::Expression: {
      TypedAnswer a;
      a.parts.push_back(last_side(tokens, 0, tokens.size()));
      return a;
    }
    case AnswerType::Equation: {
      Chain c = parse_range(tokens, 0, tokens.size());
      if (c.ops.size() != 1) {
        throw TypeMismatch("equation needs exactly one relation operator, found " +
                           std::to_string(c.ops.size()));
      }
      TypedAnswer a;
      a.answer_type = AnswerType::Equation;
      a.parts.push_back(Node::relation(c.ops[0], std::move(c.sides[0]), std::move(c.sides[1])));
      return a;
    }
    case AnswerType::Tuple: return parse_tuple(tokens);
    case AnswerType::Interval: return parse_interval(tokens);
    case AnswerType::Numeric: break;
  }
  return parse_numeric(text);
}

TypedAnswer parse_answer(const CleanLatex& src, AnswerType declared) {
  return parse_answer(std::string_view(src.text), declared);
}

}  // namespace seed
