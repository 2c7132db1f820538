#include <cmath>
#include <random>

#include "doctest.h"
#include "seed/errors.hpp"
#include "seed/units.hpp"

using namespace seed;
using namespace seed::units;

namespace {

constexpr long double kElectronVolt = 1.602176634e-19L;

bool close(long double a, long double b, long double rel = 1e-15L) {
  return std::fabs(a - b) <= rel * std::max(std::fabs(a), std::fabs(b));
}

Dimension dim(std::initializer_list<int> exps) {
  Dimension d{};
  std::size_t i = 0;
  for (int e : exps) d[i++] = e;
  return d;
}

}  // namespace

TEST_SUITE("units") {
  TEST_CASE("prefixed lookup") {
    // 5 meV = 5e-3 * 1.602176634e-19 J, computed by hand.
    const Quantity q = parse_quantity("5 meV");
    CHECK(close(q.magnitude, 5e-3L * kElectronVolt));
    CHECK(q.dimension == dim({2, 1, -2}));
    CHECK(q.value == 5);
    CHECK(q.unit == "meV");
    CHECK(parse_quantity("1 km").magnitude == 1000);
    CHECK(close(parse_quantity("3 \\mu s").magnitude, 3e-6L));
    CHECK(parse_quantity("2 kg").dimension == dim({0, 1}));
    CHECK(close(parse_quantity("2 kg").magnitude, 2));
  }

  TEST_CASE("electron volts against joules") {
    const Quantity a = parse_quantity("1 eV"), b = parse_quantity("1.602176634 \\times 10^{-19} J");
    CHECK(compare_quantities(a, b, 1e-2L));
    CHECK(compare_quantities(b, a, 1e-2L));
    CHECK(close(express_in(a, "J"), kElectronVolt));
  }

  TEST_CASE("number formats") {
    CHECK(close(parse_quantity("3e8 m/s").magnitude, 3e8L));
    CHECK(close(parse_quantity("3 \\times 10^{8} \\, m/s").magnitude, 3e8L));
    CHECK(close(parse_quantity("-2.5").magnitude, -2.5L));
    CHECK(dimensionless(parse_quantity("0.5").dimension));
    CHECK_THROWS_AS(parse_quantity("m/s"), NoNumber);
    CHECK_THROWS_AS(parse_quantity("3 furlongs"), UnknownUnit);
  }

  TEST_CASE("unit expressions") {
    CHECK(parse_unit_expression("m/s^2").dimension == dim({1, 0, -2}));
    CHECK(parse_unit_expression("J \\cdot s").dimension == dim({2, 1, -1}));
    CHECK(parse_unit_expression("\\frac{kg}{m^{3}}").dimension == dim({-3, 1}));
    CHECK(parse_unit_expression("N").dimension == parse_unit_expression("kg m s^{-2}").dimension);
    CHECK(dimensionless(parse_unit_expression("").dimension));
    CHECK(is_unit_expression("eV"));
    CHECK_FALSE(is_unit_expression("x"));
    CHECK_FALSE(is_unit_expression(""));
  }

  TEST_CASE("dimension mismatch") {
    CHECK_THROWS_AS(compare_quantities(parse_quantity("1 m"), parse_quantity("1 s"), 1e-2L), DimensionMismatch);
    CHECK_THROWS_AS(express_in(parse_quantity("1 m"), "s"), DimensionMismatch);
  }

  TEST_CASE("tolerance") {
    CHECK(compare_quantities(parse_quantity("100 m"), parse_quantity("100.9 m"), 1e-2L));
    CHECK_FALSE(compare_quantities(parse_quantity("100 m"), parse_quantity("102 m"), 1e-2L));
    CHECK(compare_quantities(parse_quantity("0 m"), parse_quantity("0 m"), 1e-2L));
  }

  TEST_CASE("symmetry and round trip over the table") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> mag(-1e3, 1e3);
    for (const auto& [token, entry] : UnitTable::builtin().entries()) {
      const long double v = mag(rng);
      const Quantity q = parse_quantity(std::to_string(static_cast<double>(v)) + " " + token);
      INFO(token);
      CHECK(close(express_in(q, token), q.value, 1e-12L));
      const Quantity r = parse_quantity(std::to_string(static_cast<double>(v) * 1.001) + " " + token);
      CHECK(compare_quantities(q, r, 1e-2L) == compare_quantities(r, q, 1e-2L));
      CHECK(compare_quantities(q, r, 1e-4L) == compare_quantities(r, q, 1e-4L));
    }
  }

  TEST_CASE("dimension algebra") {
    const Dimension a = dim({1, 0, -1}), b = dim({0, 1, 0});
    CHECK(add_dimensions(a, b) == dim({1, 1, -1}));
    CHECK(scale_dimension(a, 2) == dim({2, 0, -2}));
    CHECK(dimensionless(add_dimensions(a, scale_dimension(a, -1))));
    CHECK(dimension_string(dim({2, 1, -2})) == "m^2 kg s^-2");
  }

  TEST_CASE("table parsing") {
    const UnitTable t = UnitTable::parse("prefix k = 1e3\nfoo = 2 ; m^1\n");
    REQUIRE(t.lookup("kfoo"));
    CHECK(t.lookup("kfoo")->scale == 2000);
    CHECK_FALSE(t.lookup("bar"));
    CHECK_THROWS_AS(UnitTable::parse("foo = 2 ; m^1\nfoo = 3 ; m^1\n"), ConfigError);
    CHECK_THROWS_AS(UnitTable::parse("foo 2"), ConfigError);
    CHECK_THROWS_AS(UnitTable::parse("foo = 2 ; q^1"), ConfigError);
  }
}
