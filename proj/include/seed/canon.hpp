#pragma once

#include <cstdint>
#include <string>

#include "seed/math_node.hpp"

namespace seed {

struct CanonicalTree {
  Node root;
  std::size_t size = 0;
  std::uint64_t hash = 0;
};

// Bottom-up rewrite to a fixpoint. Total and deterministic; the value is
// preserved for positive real symbol assignments (symbols are assumed positive).
//  - Add/Mul flattened, children sorted; exact rational folding.
//  - Mul: equal bases merged by summing exponents; coefficient first.
//  - Add: like terms collected; terms ordered by monomial with the constant
//    last; every Add is primitive with a positive leading coefficient, its
//    rational content pulled out as Mul(c, Add).
Node canonical(const Node& node);
CanonicalTree canonicalize(const Node& node);

// Relation(R, op', 0) with canonical(lhs - rhs) = c * R for a rational c;
// op' is flipped when c < 0. Throws NotARelation.
Node standardize_relation(const Node& relation);

struct EquivConfig {
  int trials = 8;
  int retries = 5;              // per trial, on singular samples
  long double eval_rtol = 1e-9L;
  std::uint64_t seed = 0x5eedULL;
};

struct EquivOutcome {
  bool equivalent = false;
  // structural | exact-sampling | numeric-sampling | structural-only |
  // function-mismatch | relation-scale
  std::string method;
};

// Structural equality of canonical forms, else randomized evaluation.
// Throws Inconclusive when every retry of some trial hits a singularity.
EquivOutcome equivalence(const Node& a, const Node& b, const EquivConfig& cfg = {});
bool equivalent(const Node& a, const Node& b, const EquivConfig& cfg = {});

// Same solution set: standardized sides equal up to a nonzero rational
// scale (equalities) or a positive one with matching direction (inequalities).
bool equation_equivalent(const Node& a, const Node& b, const EquivConfig& cfg = {});

}  // namespace seed
