#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "seed/rational.hpp"

namespace seed {

// Declaration order is the canonical kind rank used by the total order.
enum class Kind : std::uint8_t {
  Number,
  Constant,
  Symbol,
  Pow,
  Function,
  Mul,
  Add,
  Derivative,
  Matrix,
  UnitQuantity,
  Interval,
  Tuple,
  Relation,
};

enum class RelOp : std::uint8_t { Eq, Lt, Le, Gt, Ge };

std::string_view kind_name(Kind kind);
std::string_view relop_latex(RelOp op);
RelOp flip(RelOp op);

// Expression tree node. Payload fields are meaningful only for the kinds noted.
struct Node {
  Kind kind = Kind::Number;
  Rational value;          // Number
  std::string name;        // Symbol, Constant ("pi", "e", "i"), Function, UnitQuantity (unit text)
  RelOp op = RelOp::Eq;    // Relation
  bool lower_open = false; // Interval
  bool upper_open = false; // Interval
  std::size_t rows = 0;    // Matrix
  std::size_t cols = 0;    // Matrix
  std::vector<Node> children;

  static Node number(Rational v);
  static Node number(long v);
  static Node symbol(std::string name);
  static Node constant(std::string name);
  static Node function(std::string name, std::vector<Node> args);
  static Node add(std::vector<Node> terms);
  static Node mul(std::vector<Node> factors);
  static Node pow(Node base, Node exponent);
  static Node relation(RelOp op, Node lhs, Node rhs);
  static Node tuple(std::vector<Node> parts);
  static Node interval(Node lower, Node upper, bool lower_open, bool upper_open);
  static Node matrix(std::size_t rows, std::size_t cols, std::vector<Node> cells);
  static Node derivative(Node expr, Node variable);
  static Node unit_quantity(Node magnitude, std::string unit);

  bool is_number() const { return kind == Kind::Number; }
  bool is_number(long v) const { return kind == Kind::Number && value == v; }

  // Copy of this node without children; carries the full label.
  Node shell() const;
};

// Total order: kind rank, payload, child count, then children left to right.
std::strong_ordering compare(const Node& a, const Node& b);
bool operator==(const Node& a, const Node& b);
inline bool operator<(const Node& a, const Node& b) { return compare(a, b) < 0; }

// Labels compare payload only (no children).
bool same_label(const Node& a, const Node& b);
std::string label(const Node& n);

std::size_t node_count(const Node& n);
std::size_t depth(const Node& n);
bool contains_kind(const Node& n, Kind kind);

// Debug form, e.g. "Mul(8, pi, Pow(M, 2))". Stable and used for hashing.
std::string to_sexpr(const Node& n);
std::uint64_t structural_hash(const Node& n);
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed = 14695981039346656037ull);

// LaTeX that tokenizes and parses back to a structurally identical tree for
// every tree the parser produces.
std::string to_latex(const Node& n);

}  // namespace seed
