#include "seed/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace seed {

namespace {

constexpr long double kOverflow = 1e300L;

bool finite(const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Real results carry a +0 imaginary part. A -0, or rounding residue such as
// the imaginary part of (i*sqrt(x))^2, would put a negative real on the lower
// side of the branch cut and flip the principal power.
Complex checked(const Complex& z, const char* what) {
  if (!finite(z) || std::abs(z) > kOverflow) throw EvalDomainError(std::string("non-finite ") + what);
  if (std::fabs(z.imag()) <= 64 * std::numeric_limits<long double>::epsilon() * std::fabs(z.real())) {
    return {z.real(), 0};
  }
  return z;
}

Complex int_power(Complex base, long e) {
  if (e == 0) return {1, 0};
  if (e < 0) {
    if (base == Complex(0, 0)) throw EvalDomainError("zero to a negative power");
    return Complex(1, 0) / int_power(base, -e);
  }
  Complex result(1, 0);
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

// Smooth, name-keyed stand-in for an uninterpreted function: equal names and
// arguments give equal values, different names almost surely differ.
Complex unknown_function(const std::string& name, const std::vector<Complex>& args) {
  std::uint64_t h = fnv1a(name);
  auto coeff = [&h]() {
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 33;
    return 0.5L + static_cast<long double>(h % 1000003ULL) / 1000003.0L;
  };
  Complex acc(coeff(), 0);
  for (const Complex& a : args) {
    const long double c1 = coeff(), c2 = coeff(), c3 = coeff();
    acc += c1 * std::sin(c2 * a + c3) + c3 * a;
  }
  return acc;
}

const std::set<std::string, std::less<>>& known_functions() {
  static const std::set<std::string, std::less<>> k = {
      "sin",    "cos",    "tan",    "cot",    "sec", "csc", "sinh", "cosh",      "tanh",
      "coth",   "arcsin", "arccos", "arctan", "ln",  "abs", "exp",  "factorial",
  };
  return k;
}

Complex apply_known(const std::string& f, const Complex& x) {
  if (f == "sin") return std::sin(x);
  if (f == "cos") return std::cos(x);
  if (f == "tan") return std::tan(x);
  if (f == "cot") return Complex(1, 0) / std::tan(x);
  if (f == "sec") return Complex(1, 0) / std::cos(x);
  if (f == "csc") return Complex(1, 0) / std::sin(x);
  if (f == "sinh") return std::sinh(x);
  if (f == "cosh") return std::cosh(x);
  if (f == "tanh") return std::tanh(x);
  if (f == "coth") return Complex(1, 0) / std::tanh(x);
  if (f == "arcsin") return std::asin(x);
  if (f == "arccos") return std::acos(x);
  if (f == "arctan") return std::atan(x);
  if (f == "exp") return std::exp(x);
  if (f == "abs") return {std::abs(x), 0};
  if (f == "ln") {
    if (x == Complex(0, 0)) throw EvalDomainError("log of zero");
    return std::log(x);
  }
  if (f == "factorial") {
    if (std::fabs(x.imag()) > 1e-12L || x.real() < 0) throw EvalDomainError("factorial of non-natural");
    return {std::tgamma(x.real() + 1), 0};
  }
  throw NotEvaluable("unknown function " + f);
}

Evaluation eval(const Node& n, const Env& env) {
  switch (n.kind) {
    case Kind::Number: {
      const long double v = to_long_double(n.value);
      return {{v, 0}, std::fabs(v)};
    }
    case Kind::Constant: {
      Complex v;
      if (n.name == "pi") v = {3.14159265358979323846264338327950288L, 0};
      else if (n.name == "e") v = {2.71828182845904523536028747135266250L, 0};
      else if (n.name == "i") v = {0, 1};
      else throw NotEvaluable("constant " + n.name);
      return {v, std::abs(v)};
    }
    case Kind::Symbol: {
      auto it = env.find(n.name);
      if (it == env.end()) throw NotEvaluable("unbound symbol " + n.name);
      return {it->second, std::abs(it->second)};
    }
    case Kind::Add: {
      Evaluation out{{0, 0}, 0};
      for (const Node& c : n.children) {
        Evaluation e = eval(c, env);
        out.value += e.value;
        out.scale += e.scale;
      }
      out.value = checked(out.value, "sum");
      return out;
    }
    case Kind::Mul: {
      Evaluation out{{1, 0}, 1};
      for (const Node& c : n.children) {
        Evaluation e = eval(c, env);
        out.value *= e.value;
        out.scale *= e.scale;
      }
      out.value = checked(out.value, "product");
      if (!std::isfinite(out.scale)) out.scale = std::abs(out.value);
      return out;
    }
    case Kind::Pow: {
      Evaluation b = eval(n.children[0], env);
      const Node& ex = n.children[1];
      Complex v;
      if (ex.kind == Kind::Number && is_integer(ex.value) && abs(ex.value) <= 4096) {
        v = int_power(b.value, ex.value.get_num().get_si());
      } else {
        Complex e = eval(ex, env).value;
        if (b.value == Complex(0, 0)) {
          if (e.real() > 0) v = {0, 0};
          else throw EvalDomainError("zero to a non-positive power");
        } else if (b.value.imag() == 0 && b.value.real() > 0 && e.imag() == 0) {
          v = {std::pow(b.value.real(), e.real()), 0};
        } else {
          v = std::pow(b.value, e);
        }
      }
      v = checked(v, "power");
      return {v, std::abs(v)};
    }
    case Kind::Function: {
      std::vector<Complex> args;
      for (const Node& c : n.children) args.push_back(eval(c, env).value);
      Complex v;
      if (known_functions().count(n.name) && args.size() == 1) {
        v = apply_known(n.name, args[0]);
      } else {
        v = unknown_function(n.name, args);
      }
      v = checked(v, "function value");
      return {v, std::abs(v)};
    }
    default:
      throw NotEvaluable(std::string(kind_name(n.kind)) + " has no numeric value");
  }
}

void collect(const Node& n, std::set<std::string>& syms, std::set<std::string>& fns) {
  if (n.kind == Kind::Symbol) syms.insert(n.name);
  if (n.kind == Kind::Function && !known_functions().count(n.name)) fns.insert(n.name);
  for (const Node& c : n.children) collect(c, syms, fns);
}

}  // namespace

bool is_known_function(std::string_view name) { return known_functions().count(name) > 0; }

Evaluation evaluate(const Node& n, const Env& env) { return eval(n, env); }

bool is_rational_function(const Node& n) {
  switch (n.kind) {
    case Kind::Number:
    case Kind::Symbol:
      return true;
    case Kind::Add:
    case Kind::Mul:
      return std::all_of(n.children.begin(), n.children.end(), is_rational_function);
    case Kind::Pow:
      return n.children[1].kind == Kind::Number && is_integer(n.children[1].value) &&
             abs(n.children[1].value) <= 64 && is_rational_function(n.children[0]);
    default:
      return false;
  }
}

std::optional<Rational> evaluate_exact(const Node& n, const ExactEnv& env) {
  switch (n.kind) {
    case Kind::Number:
      return n.value;
    case Kind::Symbol: {
      auto it = env.find(n.name);
      if (it == env.end()) return std::nullopt;
      return it->second;
    }
    case Kind::Add: {
      Rational acc = 0;
      for (const Node& c : n.children) {
        auto v = evaluate_exact(c, env);
        if (!v) return std::nullopt;
        acc += *v;
      }
      return acc;
    }
    case Kind::Mul: {
      Rational acc = 1;
      for (const Node& c : n.children) {
        auto v = evaluate_exact(c, env);
        if (!v) return std::nullopt;
        acc *= *v;
      }
      return acc;
    }
    case Kind::Pow: {
      const Node& ex = n.children[1];
      if (ex.kind != Kind::Number || !is_integer(ex.value) || abs(ex.value) > 64) return std::nullopt;
      auto b = evaluate_exact(n.children[0], env);
      if (!b) return std::nullopt;
      if (*b == 0 && ex.value < 0) throw EvalDomainError("division by zero");
      auto r = exact_power(*b, ex.value, 64, 1u << 20);
      if (!r) return std::nullopt;
      return r;
    }
    default:
      return std::nullopt;
  }
}

bool is_evaluable(const Node& n) {
  switch (n.kind) {
    case Kind::Number:
    case Kind::Symbol:
      return true;
    case Kind::Constant:
      return n.name == "pi" || n.name == "e" || n.name == "i";
    case Kind::Add:
    case Kind::Mul:
    case Kind::Pow:
    case Kind::Function:
      return std::all_of(n.children.begin(), n.children.end(), is_evaluable);
    default:
      return false;
  }
}

std::vector<std::string> free_symbols(const Node& n) {
  std::set<std::string> syms, fns;
  collect(n, syms, fns);
  return {syms.begin(), syms.end()};
}

std::vector<std::string> unknown_functions(const Node& n) {
  std::set<std::string> syms, fns;
  collect(n, syms, fns);
  return {fns.begin(), fns.end()};
}

}  // namespace seed
