#include "seed/math_node.hpp"

#include <algorithm>
#include <cctype>

namespace seed {

std::string_view kind_name(Kind kind) {
  switch (kind) {
    case Kind::Number: return "Number";
    case Kind::Constant: return "Constant";
    case Kind::Symbol: return "Symbol";
    case Kind::Pow: return "Pow";
    case Kind::Function: return "Function";
    case Kind::Mul: return "Mul";
    case Kind::Add: return "Add";
    case Kind::Derivative: return "Derivative";
    case Kind::Matrix: return "Matrix";
    case Kind::UnitQuantity: return "UnitQuantity";
    case Kind::Interval: return "Interval";
    case Kind::Tuple: return "Tuple";
    case Kind::Relation: return "Relation";
  }
  return "?";
}

std::string_view relop_latex(RelOp op) {
  switch (op) {
    case RelOp::Eq: return "=";
    case RelOp::Lt: return "<";
    case RelOp::Le: return "\\le";
    case RelOp::Gt: return ">";
    case RelOp::Ge: return "\\ge";
  }
  return "=";
}

RelOp flip(RelOp op) {
  switch (op) {
    case RelOp::Lt: return RelOp::Gt;
    case RelOp::Le: return RelOp::Ge;
    case RelOp::Gt: return RelOp::Lt;
    case RelOp::Ge: return RelOp::Le;
    case RelOp::Eq: return RelOp::Eq;
  }
  return op;
}

Node Node::number(Rational v) {
  Node n;
  n.kind = Kind::Number;
  n.value = std::move(v);
  return n;
}

Node Node::number(long v) { return number(Rational(v)); }

Node Node::symbol(std::string name) {
  Node n;
  n.kind = Kind::Symbol;
  n.name = std::move(name);
  return n;
}

Node Node::constant(std::string name) {
  Node n;
  n.kind = Kind::Constant;
  n.name = std::move(name);
  return n;
}

Node Node::function(std::string name, std::vector<Node> args) {
  Node n;
  n.kind = Kind::Function;
  n.name = std::move(name);
  n.children = std::move(args);
  return n;
}

Node Node::add(std::vector<Node> terms) {
  Node n;
  n.kind = Kind::Add;
  n.children = std::move(terms);
  return n;
}

Node Node::mul(std::vector<Node> factors) {
  Node n;
  n.kind = Kind::Mul;
  n.children = std::move(factors);
  return n;
}

Node Node::pow(Node base, Node exponent) {
  Node n;
  n.kind = Kind::Pow;
  n.children.reserve(2);
  n.children.push_back(std::move(base));
  n.children.push_back(std::move(exponent));
  return n;
}

Node Node::relation(RelOp op, Node lhs, Node rhs) {
  Node n;
  n.kind = Kind::Relation;
  n.op = op;
  n.children.reserve(2);
  n.children.push_back(std::move(lhs));
  n.children.push_back(std::move(rhs));
  return n;
}

Node Node::tuple(std::vector<Node> parts) {
  Node n;
  n.kind = Kind::Tuple;
  n.children = std::move(parts);
  return n;
}

Node Node::interval(Node lower, Node upper, bool lower_open, bool upper_open) {
  Node n;
  n.kind = Kind::Interval;
  n.lower_open = lower_open;
  n.upper_open = upper_open;
  n.children.reserve(2);
  n.children.push_back(std::move(lower));
  n.children.push_back(std::move(upper));
  return n;
}

Node Node::matrix(std::size_t rows, std::size_t cols, std::vector<Node> cells) {
  Node n;
  n.kind = Kind::Matrix;
  n.rows = rows;
  n.cols = cols;
  n.children = std::move(cells);
  return n;
}

Node Node::derivative(Node expr, Node variable) {
  Node n;
  n.kind = Kind::Derivative;
  n.children.reserve(2);
  n.children.push_back(std::move(expr));
  n.children.push_back(std::move(variable));
  return n;
}

Node Node::unit_quantity(Node magnitude, std::string unit) {
  Node n;
  n.kind = Kind::UnitQuantity;
  n.name = std::move(unit);
  n.children.push_back(std::move(magnitude));
  return n;
}

Node Node::shell() const {
  Node n;
  n.kind = kind;
  n.value = value;
  n.name = name;
  n.op = op;
  n.lower_open = lower_open;
  n.upper_open = upper_open;
  n.rows = rows;
  n.cols = cols;
  return n;
}

namespace {

std::strong_ordering compare_payload(const Node& a, const Node& b) {
  switch (a.kind) {
    case Kind::Number: {
      int c = cmp(a.value, b.value);
      return c < 0 ? std::strong_ordering::less
                   : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    case Kind::Constant:
    case Kind::Symbol:
    case Kind::Function:
    case Kind::UnitQuantity:
      return a.name <=> b.name;
    case Kind::Relation:
      return a.op <=> b.op;
    case Kind::Interval:
      if (auto c = a.lower_open <=> b.lower_open; c != 0) return c;
      return a.upper_open <=> b.upper_open;
    case Kind::Matrix:
      if (auto c = a.rows <=> b.rows; c != 0) return c;
      return a.cols <=> b.cols;
    default:
      return std::strong_ordering::equal;
  }
}

}  // namespace

std::strong_ordering compare(const Node& a, const Node& b) {
  if (auto c = a.kind <=> b.kind; c != 0) return c;
  if (auto c = compare_payload(a, b); c != 0) return c;
  if (auto c = a.children.size() <=> b.children.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (auto c = compare(a.children[i], b.children[i]); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

bool operator==(const Node& a, const Node& b) { return compare(a, b) == 0; }

bool same_label(const Node& a, const Node& b) {
  return a.kind == b.kind && compare_payload(a, b) == 0;
}

std::string label(const Node& n) {
  switch (n.kind) {
    case Kind::Number: return to_string(n.value);
    case Kind::Constant: return n.name;
    case Kind::Symbol: return n.name;
    case Kind::Function: return n.name + "()";
    case Kind::Add: return "+";
    case Kind::Mul: return "*";
    case Kind::Pow: return "^";
    case Kind::Relation: return std::string(relop_latex(n.op));
    case Kind::Tuple: return "tuple";
    case Kind::Interval:
      return std::string("interval") + (n.lower_open ? "(" : "[") + (n.upper_open ? ")" : "]");
    case Kind::Matrix:
      return "matrix[" + std::to_string(n.rows) + "x" + std::to_string(n.cols) + "]";
    case Kind::Derivative: return "d/d";
    case Kind::UnitQuantity: return "unit[" + n.name + "]";
  }
  return "?";
}

std::size_t node_count(const Node& n) {
  std::size_t total = 1;
  for (const auto& c : n.children) total += node_count(c);
  return total;
}

std::size_t depth(const Node& n) {
  std::size_t d = 0;
  for (const auto& c : n.children) d = std::max(d, depth(c));
  return d + 1;
}

bool contains_kind(const Node& n, Kind kind) {
  if (n.kind == kind) return true;
  return std::any_of(n.children.begin(), n.children.end(),
                     [kind](const Node& c) { return contains_kind(c, kind); });
}

namespace {

void sexpr_into(const Node& n, std::string& out) {
  switch (n.kind) {
    case Kind::Number: out += to_string(n.value); return;
    case Kind::Constant: out += "<" + n.name + ">"; return;
    case Kind::Symbol: out += n.name; return;
    case Kind::Function: out += "Fn[" + n.name + "]"; break;
    case Kind::Relation: out += "Rel[" + std::string(relop_latex(n.op)) + "]"; break;
    case Kind::Interval: out += label(n); break;
    case Kind::Matrix: out += label(n); break;
    case Kind::UnitQuantity: out += label(n); break;
    default: out += kind_name(n.kind); break;
  }
  out += '(';
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    if (i) out += ", ";
    sexpr_into(n.children[i], out);
  }
  out += ')';
}

}  // namespace

std::string to_sexpr(const Node& n) {
  std::string out;
  sexpr_into(n, out);
  return out;
}

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t structural_hash(const Node& n) { return fnv1a(to_sexpr(n)); }

// ---------------------------------------------------------------------------
// LaTeX serialization

namespace {

const char* const kKnownFunctions[] = {"sin",    "cos",    "tan",    "cot",    "sec",  "csc",
                                       "sinh",   "cosh",   "tanh",   "coth",   "arcsin",
                                       "arccos", "arctan", "ln",     "exp"};

bool is_known_function(const std::string& name) {
  return std::find(std::begin(kKnownFunctions), std::end(kKnownFunctions), name) !=
         std::end(kKnownFunctions);
}

// A name the tokenizer reads back as one symbol token: a letter or a command
// symbol, optionally followed by a subscript.
bool is_symbol_name(const std::string& name) {
  if (name.empty()) return false;
  if (std::isalpha(static_cast<unsigned char>(name[0]))) {
    return name.size() == 1 || name[1] == '_' || name[1] == '\'';
  }
  return name[0] == '\\';
}

std::string symbol_latex(const std::string& name) {
  int depth = 0;
  for (std::size_t i = 0; i < name.size(); ++i) {
    char c = name[i];
    if (c == '{') ++depth;
    else if (c == '}') --depth;
    else if (c == '_' && depth == 0) {
      std::string base = name.substr(0, i);
      std::string sub = name.substr(i + 1);
      std::string primes;
      while (!sub.empty() && sub.back() == '\'') {
        primes.push_back('\'');
        sub.pop_back();
      }
      return base + "_{" + sub + "}" + primes;
    }
  }
  return name;
}

bool is_terminating(const Rational& q) {
  mpz_class d = q.get_den();
  while (d % 2 == 0) d /= 2;
  while (d % 5 == 0) d /= 5;
  return d == 1;
}

std::string number_latex(const Rational& q) {
  if (is_integer(q)) return q.get_num().get_str();
  if (is_terminating(q)) {
    // Exact decimal expansion.
    mpz_class num = abs(q.get_num());
    mpz_class den = q.get_den();
    std::size_t digits = 0;
    mpz_class scale = 1;
    while ((scale * num) % den != 0) {
      scale *= 10;
      ++digits;
    }
    mpz_class scaled = scale * num / den;
    std::string s = scaled.get_str();
    if (s.size() <= digits) s.insert(0, digits - s.size() + 1, '0');
    s.insert(s.size() - digits, ".");
    return (sgn(q) < 0 ? "-" : "") + s;
  }
  std::string body = "\\frac{" + mpz_class(abs(q.get_num())).get_str() + "}{" + q.get_den().get_str() + "}";
  return (sgn(q) < 0 ? "-" : "") + body;
}

std::string latex(const Node& n);

std::string wrapped(const Node& n) { return "(" + latex(n) + ")"; }

std::string mul_latex(const Node& n, bool drop_leading_sign) {
  std::string out;
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    const Node& f = n.children[i];
    if (i) out += " \\cdot ";
    if (i == 0 && f.kind == Kind::Number) {
      Rational v = drop_leading_sign ? Rational(abs(f.value)) : f.value;
      out += number_latex(v);
    } else if (f.kind == Kind::Number && sgn(f.value) < 0) {
      out += "(" + number_latex(f.value) + ")";
    } else if (f.kind == Kind::Add || f.kind == Kind::Mul || f.kind == Kind::Relation ||
               (f.kind == Kind::Number && !is_integer(f.value) && !is_terminating(f.value))) {
      out += wrapped(f);
    } else {
      out += latex(f);
    }
  }
  return out;
}

bool is_negative_term(const Node& t) {
  if (t.kind == Kind::Number) return sgn(t.value) < 0;
  return t.kind == Kind::Mul && !t.children.empty() && t.children[0].kind == Kind::Number &&
         sgn(t.children[0].value) < 0;
}

std::string term_latex(const Node& t) {
  if (t.kind == Kind::Add || t.kind == Kind::Relation) return wrapped(t);
  return latex(t);
}

std::string pow_latex(const Node& n) {
  const Node& base = n.children[0];
  const Node& exp = n.children[1];
  if (exp.kind == Kind::Number && exp.value.get_num() == 1 && exp.value.get_den() > 1 &&
      exp.value.get_den().fits_slong_p()) {
    const long degree = exp.value.get_den().get_si();
    if (degree == 2) return "\\sqrt{" + latex(base) + "}";
    return "\\sqrt[" + std::to_string(degree) + "]{" + latex(base) + "}";
  }
  std::string b = (base.kind == Kind::Constant && base.name == "e") ? "e" : "{" + latex(base) + "}";
  return b + "^{" + latex(exp) + "}";
}

std::string function_latex(const Node& n) {
  auto args = [&] {
    std::string s;
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      if (i) s += ", ";
      s += latex(n.children[i]);
    }
    return s;
  };
  if (n.name == "abs" && n.children.size() == 1) return "|" + latex(n.children[0]) + "|";
  if (n.name == "factorial" && n.children.size() == 1) return "{" + latex(n.children[0]) + "}!";
  if (is_known_function(n.name)) return "\\" + n.name + "(" + args() + ")";
  if (is_symbol_name(n.name)) return symbol_latex(n.name) + "(" + args() + ")";
  return "\\operatorname{" + n.name + "}(" + args() + ")";
}

std::string latex(const Node& n) {
  switch (n.kind) {
    case Kind::Number: return number_latex(n.value);
    case Kind::Symbol: return symbol_latex(n.name);
    case Kind::Constant:
      if (n.name == "pi") return "\\pi";
      if (n.name == "i") return "\\imath";
      return "e^{1}";
    case Kind::Add: {
      std::string out;
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        const Node& t = n.children[i];
        if (i == 0) {
          out += term_latex(t);
        } else if (is_negative_term(t)) {
          out += " - ";
          if (t.kind == Kind::Number) out += number_latex(Rational(abs(t.value)));
          else out += mul_latex(t, true);
        } else {
          out += " + " + term_latex(t);
        }
      }
      return out;
    }
    case Kind::Mul: return mul_latex(n, false);
    case Kind::Pow: return pow_latex(n);
    case Kind::Function: return function_latex(n);
    case Kind::Relation:
      return latex(n.children[0]) + " " + std::string(relop_latex(n.op)) + " " + latex(n.children[1]);
    case Kind::Tuple: {
      std::string out = "(";
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (i) out += ", ";
        out += latex(n.children[i]);
      }
      return out + ")";
    }
    case Kind::Interval:
      return std::string(n.lower_open ? "(" : "[") + latex(n.children[0]) + ", " +
             latex(n.children[1]) + (n.upper_open ? ")" : "]");
    case Kind::Matrix: {
      std::string out = "\\begin{pmatrix}";
      for (std::size_t r = 0; r < n.rows; ++r) {
        if (r) out += " \\\\";
        for (std::size_t c = 0; c < n.cols; ++c) {
          out += c ? " & " : " ";
          out += latex(n.children[r * n.cols + c]);
        }
      }
      return out + " \\end{pmatrix}";
    }
    case Kind::Derivative:
      return "\\frac{d}{d" + latex(n.children[1]) + "}(" + latex(n.children[0]) + ")";
    case Kind::UnitQuantity:
      return latex(n.children[0]) + " " + n.name;
  }
  return "";
}

}  // namespace

std::string to_latex(const Node& n) { return latex(n); }

}  // namespace seed
