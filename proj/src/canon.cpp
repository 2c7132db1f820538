#include "seed/canon.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "seed/errors.hpp"
#include "seed/evaluate.hpp"

namespace seed {

namespace {

struct NodeLess {
  bool operator()(const Node& a, const Node& b) const { return compare(a, b) < 0; }
};

Node make_add(std::vector<Node> terms);
Node make_mul(std::vector<Node> factors, int depth = 0);
Node make_pow(Node base, Node exponent, int depth = 0);

constexpr int kMaxRecursion = 16;

bool is_positive(const Node& n);

bool is_real(const Node& n) {
  switch (n.kind) {
    case Kind::Number:
    case Kind::Symbol:
      return true;
    case Kind::Constant:
      return n.name == "pi" || n.name == "e";
    case Kind::Add:
    case Kind::Mul:
      return std::all_of(n.children.begin(), n.children.end(), is_real);
    case Kind::Pow:
      if (n.children[1].kind == Kind::Number && is_integer(n.children[1].value)) {
        return is_real(n.children[0]);
      }
      return is_positive(n.children[0]) && is_real(n.children[1]);
    case Kind::Function:
      if (n.name == "abs") return true;
      if (n.name == "ln") return is_positive(n.children[0]);
      if (n.name == "sin" || n.name == "cos" || n.name == "tan" || n.name == "sinh" ||
          n.name == "cosh" || n.name == "tanh" || n.name == "arctan") {
        return is_real(n.children[0]);
      }
      return false;
    default:
      return false;
  }
}

// Conservative: true only when the value is a positive real for every
// positive assignment of the symbols.
bool is_positive(const Node& n) {
  switch (n.kind) {
    case Kind::Number:
      return n.value > 0;
    case Kind::Constant:
      return n.name == "pi" || n.name == "e";
    case Kind::Symbol:
      return true;
    case Kind::Pow:
      return is_positive(n.children[0]) && is_real(n.children[1]);
    case Kind::Mul:
    case Kind::Add:
      return std::all_of(n.children.begin(), n.children.end(), is_positive);
    case Kind::Function:
      return n.name == "cosh";
    default:
      return false;
  }
}

// term = coefficient * monomial; the monomial of a Number is Number 1.
std::pair<Rational, Node> split_coefficient(const Node& term) {
  if (term.kind == Kind::Number) return {term.value, Node::number(1)};
  if (term.kind == Kind::Mul && !term.children.empty() && term.children[0].kind == Kind::Number) {
    std::vector<Node> rest(term.children.begin() + 1, term.children.end());
    if (rest.size() == 1) return {term.children[0].value, std::move(rest[0])};
    return {term.children[0].value, Node::mul(std::move(rest))};
  }
  return {Rational(1), term};
}

Node with_coefficient(const Rational& c, Node mono) {
  if (mono.is_number()) return Node::number(c * mono.value);
  if (c == 1) return mono;
  if (c == 0) return Node::number(0);
  std::vector<Node> factors{Node::number(c)};
  if (mono.kind == Kind::Mul) {
    for (auto& f : mono.children) factors.push_back(std::move(f));
  } else {
    factors.push_back(std::move(mono));
  }
  return Node::mul(std::move(factors));
}

std::pair<Node, Node> base_exponent(const Node& f) {
  if (f.kind == Kind::Pow) return {f.children[0], f.children[1]};
  return {f, Node::number(1)};
}

Node make_mul(std::vector<Node> factors, int depth) {
  Rational coeff = 1;
  std::vector<Node> flat;
  std::vector<Node> stack(std::make_move_iterator(factors.rbegin()), std::make_move_iterator(factors.rend()));
  while (!stack.empty()) {
    Node f = std::move(stack.back());
    stack.pop_back();
    if (f.kind == Kind::Mul) {
      for (auto it = f.children.rbegin(); it != f.children.rend(); ++it) stack.push_back(std::move(*it));
    } else if (f.kind == Kind::Number) {
      coeff *= f.value;
    } else {
      flat.push_back(std::move(f));
    }
  }
  if (coeff == 0) return Node::number(0);

  // Merge equal bases; exponents combine through make_add.
  std::map<Node, std::vector<Node>, NodeLess> by_base;
  for (Node& f : flat) {
    auto [b, e] = base_exponent(f);
    by_base[std::move(b)].push_back(std::move(e));
  }
  std::vector<Node> out;
  bool again = false;
  for (auto& [b, exps] : by_base) {
    Node e = exps.size() == 1 ? std::move(exps[0]) : make_add(std::move(exps));
    Node p = exps.size() == 1 && e.is_number(1) ? b : make_pow(b, std::move(e), depth);
    if (p.kind == Kind::Number || p.kind == Kind::Mul) again = true;
    out.push_back(std::move(p));
  }
  if (again && depth < kMaxRecursion) {
    out.push_back(Node::number(coeff));
    return make_mul(std::move(out), depth + 1);
  }
  std::sort(out.begin(), out.end(), NodeLess{});
  if (out.empty()) return Node::number(coeff);
  if (coeff == 1 && out.size() == 1) return std::move(out[0]);
  if (coeff != 1) out.insert(out.begin(), Node::number(coeff));
  return Node::mul(std::move(out));
}

Node make_add(std::vector<Node> terms) {
  std::vector<Node> flat;
  std::vector<Node> stack(std::make_move_iterator(terms.rbegin()), std::make_move_iterator(terms.rend()));
  while (!stack.empty()) {
    Node t = std::move(stack.back());
    stack.pop_back();
    if (t.kind == Kind::Add) {
      for (auto it = t.children.rbegin(); it != t.children.rend(); ++it) stack.push_back(std::move(*it));
    } else if (t.kind == Kind::Mul && t.children.size() == 2 && t.children[0].is_number() &&
               t.children[1].kind == Kind::Add) {
      // c * (a + b) inside a sum is distributed so like terms can meet.
      const Node c = t.children[0];
      for (auto it = t.children[1].children.rbegin(); it != t.children[1].children.rend(); ++it) {
        stack.push_back(make_mul({c, std::move(*it)}));
      }
    } else {
      flat.push_back(std::move(t));
    }
  }

  Rational constant = 0;
  std::map<Node, Rational, NodeLess> collected;
  for (Node& t : flat) {
    if (t.is_number()) {
      constant += t.value;
      continue;
    }
    auto [c, mono] = split_coefficient(t);
    collected[std::move(mono)] += c;
  }
  std::vector<std::pair<Rational, Node>> kept;
  for (auto& [mono, c] : collected) {
    if (c != 0) kept.emplace_back(c, mono);
  }
  if (constant != 0) kept.emplace_back(constant, Node::number(1));
  if (kept.empty()) return Node::number(0);
  if (kept.size() == 1) return with_coefficient(kept[0].first, std::move(kept[0].second));

  Rational content = 0;
  for (auto& [c, mono] : kept) content = rational_content(content, c);
  const Rational f = kept[0].first < 0 ? Rational(-content) : content;
  std::vector<Node> out;
  for (auto& [c, mono] : kept) out.push_back(with_coefficient(c / f, std::move(mono)));
  Node sum = Node::add(std::move(out));
  if (f == 1) return sum;
  return Node::mul({Node::number(f), std::move(sum)});
}

// Pulls positive symbol/constant factors with negative exponents out of a sum:
// returns (s^k, A') with A = s^k * A' and A' free of those negative powers.
std::pair<std::vector<Node>, Node> together(const Node& sum) {
  std::map<Node, Rational, NodeLess> lowest;
  std::set<Node, NodeLess> seen_everywhere;
  for (const Node& term : sum.children) {
    auto [c, mono] = split_coefficient(term);
    std::vector<Node> fs = mono.kind == Kind::Mul ? mono.children : std::vector<Node>{mono};
    for (const Node& f : fs) {
      auto [b, e] = base_exponent(f);
      if ((b.kind == Kind::Symbol || b.kind == Kind::Constant) && is_positive(b) && e.is_number() &&
          e.value < 0) {
        auto it = lowest.find(b);
        if (it == lowest.end() || e.value < it->second) lowest[b] = e.value;
      }
    }
  }
  if (lowest.empty()) return {{}, sum};
  std::vector<Node> pulled;
  std::vector<Node> multiplier;
  for (auto& [b, k] : lowest) {
    pulled.push_back(make_pow(b, Node::number(k)));
    multiplier.push_back(make_pow(b, Node::number(-k)));
  }
  std::vector<Node> terms;
  for (const Node& term : sum.children) {
    std::vector<Node> fs = multiplier;
    fs.push_back(term);
    terms.push_back(make_mul(std::move(fs)));
  }
  return {std::move(pulled), make_add(std::move(terms))};
}

Node make_pow(Node base, Node exponent, int depth) {
  if (exponent.is_number(0)) return Node::number(1);
  if (exponent.is_number(1)) return base;
  if (base.is_number(1)) return Node::number(1);
  if (base.is_number(0) && exponent.is_number() && exponent.value > 0) return Node::number(0);

  if (base.is_number() && exponent.is_number()) {
    if (auto r = exact_power(base.value, exponent.value)) return Node::number(*r);
    if (base.value > 0 && !is_integer(base.value) && !is_integer(exponent.value)) {
      Node num = Node::number(Rational(base.value.get_num()));
      Node den = Node::number(Rational(base.value.get_den()));
      return make_mul({make_pow(num, exponent, depth + 1),
                       make_pow(den, Node::number(-exponent.value), depth + 1)},
                      depth + 1);
    }
    return Node::pow(std::move(base), std::move(exponent));
  }
  if (depth >= kMaxRecursion) return Node::pow(std::move(base), std::move(exponent));

  const bool integer_exponent = exponent.is_number() && is_integer(exponent.value);

  if (base.kind == Kind::Pow) {
    const Node& b0 = base.children[0];
    if (integer_exponent || is_positive(b0)) {
      return make_pow(b0, make_mul({base.children[1], exponent}), depth + 1);
    }
  }

  if (base.kind == Kind::Mul) {
    std::vector<Node> out;
    std::vector<Node> residual;
    for (const Node& f : base.children) {
      if (integer_exponent || is_positive(f)) {
        out.push_back(make_pow(f, exponent, depth + 1));
      } else {
        residual.push_back(f);
      }
    }
    if (residual.size() == base.children.size()) {
      // Nothing distributes; try pulling negative powers out of inner sums.
      std::vector<Node> rebuilt;
      bool changed = false;
      for (const Node& f : residual) {
        if (f.kind == Kind::Add) {
          auto [pulled, rest] = together(f);
          if (!pulled.empty()) {
            changed = true;
            for (auto& p : pulled) rebuilt.push_back(std::move(p));
            rebuilt.push_back(std::move(rest));
            continue;
          }
        }
        rebuilt.push_back(f);
      }
      if (changed) return make_pow(make_mul(std::move(rebuilt), depth + 1), exponent, depth + 1);
      return Node::pow(std::move(base), std::move(exponent));
    }
    if (!residual.empty()) {
      Node rest = residual.size() == 1 ? std::move(residual[0]) : Node::mul(std::move(residual));
      out.push_back(make_pow(std::move(rest), exponent, depth + 1));
    }
    return make_mul(std::move(out), depth + 1);
  }

  if (base.kind == Kind::Add && !integer_exponent) {
    auto [pulled, rest] = together(base);
    if (!pulled.empty()) {
      pulled.push_back(std::move(rest));
      return make_pow(make_mul(std::move(pulled), depth + 1), std::move(exponent), depth + 1);
    }
  }
  return Node::pow(std::move(base), std::move(exponent));
}

Rational factorial(long n) {
  Rational r = 1;
  for (long k = 2; k <= n; ++k) r *= k;
  return r;
}

Node make_function(Node f) {
  if (f.children.size() != 1) return f;
  const Node& x = f.children[0];
  if (f.name == "abs") {
    if (x.is_number()) return Node::number(abs(x.value));
    if (is_positive(x)) return x;
    if (x.kind == Kind::Function && x.name == "abs") return x;
  } else if (f.name == "factorial") {
    if (x.is_number() && is_integer(x.value) && x.value >= 0 && x.value <= 20) {
      return Node::number(factorial(x.value.get_num().get_si()));
    }
  } else if (f.name == "ln") {
    if (x.is_number(1)) return Node::number(0);
    if (x.kind == Kind::Constant && x.name == "e") return Node::number(1);
  } else if (f.name == "sin" || f.name == "tan" || f.name == "sinh" || f.name == "tanh" ||
             f.name == "arcsin" || f.name == "arctan") {
    if (x.is_number(0)) return Node::number(0);
  } else if (f.name == "cos" || f.name == "cosh") {
    if (x.is_number(0)) return Node::number(1);
  }
  return f;
}

Node rewrite(const Node& n) {
  std::vector<Node> kids;
  kids.reserve(n.children.size());
  for (const Node& c : n.children) kids.push_back(rewrite(c));
  switch (n.kind) {
    case Kind::Add:
      return make_add(std::move(kids));
    case Kind::Mul:
      return make_mul(std::move(kids));
    case Kind::Pow:
      return make_pow(std::move(kids[0]), std::move(kids[1]));
    case Kind::Function: {
      Node f = n.shell();
      f.children = std::move(kids);
      return make_function(std::move(f));
    }
    default: {
      Node out = n.shell();
      out.children = std::move(kids);
      return out;
    }
  }
}

constexpr int kMaxRounds = 8;

}  // namespace

Node canonical(const Node& node) {
  Node cur = rewrite(node);
  for (int round = 1; round < kMaxRounds; ++round) {
    Node next = rewrite(cur);
    if (next == cur) break;
    cur = std::move(next);
  }
  return cur;
}

CanonicalTree canonicalize(const Node& node) {
  CanonicalTree t;
  t.root = canonical(node);
  t.size = node_count(t.root);
  t.hash = structural_hash(t.root);
  return t;
}

Node standardize_relation(const Node& relation) {
  if (relation.kind != Kind::Relation) throw NotARelation();
  Node diff = canonical(Node::add({relation.children[0], Node::mul({Node::number(-1), relation.children[1]})}));
  auto [c, rest] = split_coefficient(diff);
  RelOp op = c < 0 ? flip(relation.op) : relation.op;
  if (c == 0) {
    // 0 op 0 has no sign to carry; keep the direction that reads as < or <=.
    rest = Node::number(0);
    if (op == RelOp::Gt || op == RelOp::Ge) op = flip(op);
  }
  return Node::relation(op, std::move(rest), Node::number(0));
}

// ---------------------------------------------------------------------------
// Randomized equivalence

namespace {

bool structural_only(const Node& n) {
  return contains_kind(n, Kind::Derivative) || contains_kind(n, Kind::Matrix) ||
         contains_kind(n, Kind::Tuple) || contains_kind(n, Kind::Interval) ||
         contains_kind(n, Kind::UnitQuantity) || contains_kind(n, Kind::Relation);
}

std::uint64_t pair_seed(const EquivConfig& cfg, const Node& a, const Node& b) {
  std::uint64_t ha = structural_hash(a), hb = structural_hash(b);
  if (ha > hb) std::swap(ha, hb);
  std::string bytes;
  for (std::uint64_t v : {cfg.seed, ha, hb}) {
    for (int k = 0; k < 8; ++k) bytes.push_back(static_cast<char>((v >> (8 * k)) & 0xff));
  }
  return fnv1a(bytes);
}

std::vector<std::string> union_symbols(const Node& a, const Node& b) {
  auto sa = free_symbols(a);
  auto sb = free_symbols(b);
  std::vector<std::string> out;
  std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(out));
  return out;
}

long double uniform(std::mt19937_64& rng, long double lo, long double hi) {
  const long double u = static_cast<long double>(rng() >> 11) / 9007199254740992.0L;  // 53-bit
  return lo + (hi - lo) * u;
}

bool close(const Evaluation& x, const Evaluation& y, long double rtol) {
  const long double diff = std::abs(x.value - y.value);
  const long double mag = std::max(std::abs(x.value), std::abs(y.value));
  const long double noise = 64.0L * LDBL_EPSILON * std::max(x.scale, y.scale);
  return diff <= rtol * mag + noise;
}

bool exact_sampling(const Node& a, const Node& b, const EquivConfig& cfg, std::mt19937_64& rng) {
  static const long kPrimes[] = {2, 3, 5, 7, 11, 13};
  const auto symbols = union_symbols(a, b);
  for (int trial = 0; trial < cfg.trials; ++trial) {
    bool done = false;
    for (int attempt = 0; attempt < cfg.retries && !done; ++attempt) {
      ExactEnv env;
      for (const auto& s : symbols) {
        const long p = kPrimes[rng() % 6];
        const long q = 1 + static_cast<long>(rng() % 3);
        const long k = static_cast<long>(rng() % 8);
        env[s] = make_rational(p, q) + k;
      }
      try {
        auto va = evaluate_exact(a, env);
        auto vb = evaluate_exact(b, env);
        if (!va || !vb) throw EvalDomainError("exact evaluation unavailable");
        if (*va != *vb) return false;
        done = true;
      } catch (const EvalDomainError&) {
      }
    }
    if (!done) throw Inconclusive();
  }
  return true;
}

bool numeric_sampling(const Node& a, const Node& b, const EquivConfig& cfg, std::mt19937_64& rng) {
  const auto symbols = union_symbols(a, b);
  for (int trial = 0; trial < cfg.trials; ++trial) {
    bool done = false;
    for (int attempt = 0; attempt < cfg.retries && !done; ++attempt) {
      Env env;
      for (const auto& s : symbols) env[s] = Complex(uniform(rng, 0.3L, 2.7L), 0);
      try {
        Evaluation va = evaluate(a, env);
        Evaluation vb = evaluate(b, env);
        if (!close(va, vb, cfg.eval_rtol)) return false;
        done = true;
      } catch (const EvalDomainError&) {
      }
    }
    if (!done) throw Inconclusive();
  }
  return true;
}

// Nearest fraction with a bounded denominator (continued fractions).
Rational approximate(long double x, long max_den = 1000000) {
  const bool neg = x < 0;
  long double v = std::fabs(x);
  mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  for (int iter = 0; iter < 40; ++iter) {
    const long double fl = std::floor(v);
    if (fl > 1e15L) break;
    mpz_class a = static_cast<unsigned long>(fl);
    mpz_class h2 = a * h1 + h0, k2 = a * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    const long double frac = v - fl;
    if (frac < 1e-15L) break;
    v = 1 / frac;
  }
  if (k1 == 0) return 0;
  Rational r(h1, k1);
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

}  // namespace

EquivOutcome equivalence(const Node& a_in, const Node& b_in, const EquivConfig& cfg) {
  if (a_in.kind == Kind::Relation && b_in.kind == Kind::Relation) {
    return {equation_equivalent(a_in, b_in, cfg), "relation-scale"};
  }
  const Node a = canonical(a_in);
  const Node b = canonical(b_in);
  if (a == b) return {true, "structural"};
  if (structural_only(a) || structural_only(b)) return {false, "structural-only"};
  if (!is_evaluable(a) || !is_evaluable(b)) return {false, "structural-only"};
  if (unknown_functions(a) != unknown_functions(b)) return {false, "function-mismatch"};
  std::mt19937_64 rng(pair_seed(cfg, a, b));
  if (is_rational_function(a) && is_rational_function(b)) {
    return {exact_sampling(a, b, cfg, rng), "exact-sampling"};
  }
  return {numeric_sampling(a, b, cfg, rng), "numeric-sampling"};
}

bool equivalent(const Node& a, const Node& b, const EquivConfig& cfg) {
  return equivalence(a, b, cfg).equivalent;
}

bool equation_equivalent(const Node& a_in, const Node& b_in, const EquivConfig& cfg) {
  const Node a = standardize_relation(a_in);
  const Node b = standardize_relation(b_in);
  if (a == b) return true;
  const bool a_eq = a.op == RelOp::Eq, b_eq = b.op == RelOp::Eq;
  if (a_eq != b_eq) return false;
  const Node& ra = a.children[0];
  const Node& rb = b.children[0];
  if (!is_evaluable(ra) || !is_evaluable(rb) || structural_only(ra) || structural_only(rb)) return false;
  if (unknown_functions(ra) != unknown_functions(rb)) return false;

  // Scale guess from one regular sample, then an identity test of ra = k * rb.
  std::mt19937_64 rng(pair_seed(cfg, ra, rb) ^ 0x9e3779b97f4a7c15ULL);
  const auto symbols = union_symbols(ra, rb);
  std::optional<Rational> k;
  for (int attempt = 0; attempt < cfg.retries * cfg.trials && !k; ++attempt) {
    Env env;
    for (const auto& s : symbols) env[s] = Complex(uniform(rng, 0.3L, 2.7L), 0);
    try {
      const Complex va = evaluate(ra, env).value;
      const Complex vb = evaluate(rb, env).value;
      if (std::abs(vb) < 1e-12L || std::abs(va) < 1e-12L) continue;
      const Complex ratio = va / vb;
      if (std::fabs(ratio.imag()) > 1e-9L * std::abs(ratio)) return false;
      k = approximate(ratio.real());
    } catch (const EvalDomainError&) {
    }
  }
  if (!k || *k == 0) return false;
  if (!a_eq) {
    const bool same_dir = a.op == b.op && *k > 0;
    const bool flipped = a.op == flip(b.op) && *k < 0;
    if (!same_dir && !flipped) return false;
  }
  try {
    return equivalent(ra, Node::mul({Node::number(*k), rb}), cfg);
  } catch (const Inconclusive&) {
    return false;
  }
}

}  // namespace seed
