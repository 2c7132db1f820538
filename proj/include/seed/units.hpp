#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "seed/rational.hpp"

namespace seed::units {

// Exponents over (m, kg, s, A, K, mol, cd).
using Dimension = std::array<Rational, 7>;

inline constexpr std::array<std::string_view, 7> kBaseSymbols = {"m", "kg", "s", "A", "K", "mol", "cd"};

std::string dimension_string(const Dimension& d);
Dimension add_dimensions(const Dimension& a, const Dimension& b);
Dimension scale_dimension(const Dimension& a, const Rational& k);
bool dimensionless(const Dimension& d);

struct UnitEntry {
  long double scale = 1;  // SI value of one unit
  Dimension dimension{};
};

struct Quantity {
  long double magnitude = 0;  // in SI base units
  Dimension dimension{};
  long double si_scale = 1;   // SI value of one `unit`
  long double value = 0;      // numeric part as written
  std::string unit;           // unit text as written (may be empty)
};

// Immutable after construction. Token lookup tries an exact match first and
// then a single SI prefix followed by a declared token.
class UnitTable {
 public:
  // Parses the line format `token = scale ; m^a kg^b ...`. Throws ConfigError
  // with the offending line on malformed input or duplicate tokens.
  static UnitTable parse(std::string_view text);
  static const UnitTable& builtin();

  std::optional<UnitEntry> lookup(std::string_view token) const;
  const std::map<std::string, UnitEntry, std::less<>>& entries() const { return entries_; }
  const std::map<std::string, long double, std::less<>>& prefixes() const { return prefixes_; }

 private:
  std::map<std::string, UnitEntry, std::less<>> entries_;
  std::map<std::string, long double, std::less<>> prefixes_;
};

// Compiled-in copy of data/units.txt.
std::string_view default_unit_table_text();

// Product/quotient of unit tokens with integer or rational powers, e.g.
// "m/s^2", "J \cdot s", "\frac{kg}{m^{3}}". Empty text is dimensionless.
UnitEntry parse_unit_expression(std::string_view text, const UnitTable& table = UnitTable::builtin());

// True when `text` is a non-empty unit expression over known tokens.
bool is_unit_expression(std::string_view text, const UnitTable& table = UnitTable::builtin());

// Number (decimal, `aEb`, `a \times 10^{b}`) followed by an optional unit
// expression. Throws NoNumber or UnknownUnit.
Quantity parse_quantity(std::string_view src, const UnitTable& table = UnitTable::builtin());

// Dimensionless quantity with the given magnitude.
Quantity dimensionless_quantity(long double magnitude);

// Expresses `q` in `unit`; throws DimensionMismatch when dimensions differ.
long double express_in(const Quantity& q, std::string_view unit,
                       const UnitTable& table = UnitTable::builtin());

// Throws DimensionMismatch when dimensions differ. Symmetric in its arguments.
bool compare_quantities(const Quantity& pred, const Quantity& gt, long double rtol);

}  // namespace seed::units
