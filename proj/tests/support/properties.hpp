#pragma once

#include <cmath>
#include <random>

#include "seed/canon.hpp"
#include "seed/evaluate.hpp"

namespace seed::testing {

inline bool idempotent(const Node& t) {
  const Node once = canonical(t);
  return canonical(once) == once;
}

enum class Homomorphism { Holds, Violated, Skipped };

// Evaluates t and canonical(t) at one positive sample (symbols are assumed
// positive). Agreement is relative to the summand magnitude bound, 1e-12.
inline Homomorphism homomorphic(const Node& t, std::mt19937_64& rng) {
  Env env;
  for (const auto& s : free_symbols(t)) {
    const long double u = static_cast<long double>(rng() >> 11) / 9007199254740992.0L;
    env[s] = Complex(0.3L + 2.4L * u, 0);
  }
  Evaluation before;
  try {
    before = evaluate(t, env);
  } catch (const EvalDomainError&) {
    return Homomorphism::Skipped;
  }
  if (before.scale > 1e12L) return Homomorphism::Skipped;  // ill-conditioned sample
  Evaluation after;
  try {
    after = evaluate(canonical(t), env);
  } catch (const EvalDomainError&) {
    return Homomorphism::Violated;
  }
  const long double diff = std::abs(before.value - after.value);
  const long double bound = std::max({std::abs(before.value), std::abs(after.value), before.scale, after.scale, 1.0L});
  return diff <= 1e-12L * bound ? Homomorphism::Holds : Homomorphism::Violated;
}

}  // namespace seed::testing
