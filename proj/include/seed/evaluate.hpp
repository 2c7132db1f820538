#pragma once

#include <complex>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "seed/math_node.hpp"

namespace seed {

using Complex = std::complex<long double>;
using Env = std::map<std::string, Complex, std::less<>>;
using ExactEnv = std::map<std::string, Rational, std::less<>>;

// Singular sample point (division by zero, log of zero, overflow).
class EvalDomainError : public std::runtime_error {
 public:
  explicit EvalDomainError(const std::string& what) : std::runtime_error(what) {}
};

// Node kind with no numeric meaning (Matrix, Derivative, Relation, ...).
class NotEvaluable : public std::runtime_error {
 public:
  explicit NotEvaluable(const std::string& what) : std::runtime_error(what) {}
};

struct Evaluation {
  Complex value;
  long double scale = 0;  // magnitude bound of the summands; sizes rounding noise
};

// Principal-branch complex evaluation. Functions outside the known set are
// evaluated as fixed pseudo-random smooth functions keyed by name.
Evaluation evaluate(const Node& n, const Env& env);

// Exact evaluation of a rational function; nullopt when the tree is not one.
// Throws EvalDomainError on division by zero.
std::optional<Rational> evaluate_exact(const Node& n, const ExactEnv& env);

// Number/Symbol/Add/Mul/Pow with integer Number exponents |e| <= 64.
bool is_rational_function(const Node& n);
bool is_evaluable(const Node& n);
bool is_known_function(std::string_view name);

// Sorted, unique.
std::vector<std::string> free_symbols(const Node& n);
std::vector<std::string> unknown_functions(const Node& n);

}  // namespace seed
