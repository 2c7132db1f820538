#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace seed {

// Exact rational with canonical (reduced, positive-denominator) form.
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);

// Parses an unsigned or signed decimal literal ("12", "-0.25", ".5") exactly.
std::optional<Rational> parse_decimal(std::string_view text);

std::string to_string(const Rational& q);

bool is_integer(const Rational& q);
int sign(const Rational& q);

// Exact power when the result stays small: integer exponents up to
// `max_exponent` in magnitude, and p/q exponents when the base is a positive
// perfect q-th power. Returns nullopt otherwise (including 0 to a negative power).
std::optional<Rational> exact_power(const Rational& base, const Rational& exponent,
                                    unsigned max_exponent = 64, std::size_t max_bits = 4096);

// gcd of numerators over lcm of denominators; zero only when all inputs are zero.
Rational rational_content(const Rational& a, const Rational& b);

long double to_long_double(const Rational& q);

}  // namespace seed
