#include "seed/rational.hpp"

#include <cmath>

namespace seed {

Rational make_rational(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::optional<Rational> parse_decimal(std::string_view text) {
  if (text.empty()) return std::nullopt;
  bool negative = false;
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    ++i;
  }
  std::string digits;
  std::size_t frac_digits = 0;
  bool seen_point = false;
  bool any_digit = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c >= '0' && c <= '9') {
      digits.push_back(c);
      any_digit = true;
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      return std::nullopt;
    }
  }
  if (!any_digit) return std::nullopt;
  mpz_class num(digits, 10);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_digits);
  Rational q(num, den);
  q.canonicalize();
  if (negative) q = -q;
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

bool is_integer(const Rational& q) { return q.get_den() == 1; }

int sign(const Rational& q) { return sgn(q); }

namespace {

std::optional<mpz_class> exact_root(const mpz_class& value, unsigned long degree) {
  mpz_class root;
  if (mpz_root(root.get_mpz_t(), value.get_mpz_t(), degree) == 0) return std::nullopt;
  return root;
}

}  // namespace

std::optional<Rational> exact_power(const Rational& base, const Rational& exponent,
                                    unsigned max_exponent, std::size_t max_bits) {
  if (!exponent.get_den().fits_ulong_p()) return std::nullopt;
  const unsigned long root_degree = exponent.get_den().get_ui();
  if (!exponent.get_num().fits_slong_p()) return std::nullopt;
  const long power = exponent.get_num().get_si();
  if (static_cast<unsigned long>(power < 0 ? -power : power) > max_exponent) return std::nullopt;
  if (base == 0) {
    if (power < 0) return std::nullopt;
    return power == 0 ? Rational(1) : Rational(0);
  }

  mpz_class num = base.get_num();
  mpz_class den = base.get_den();
  if (root_degree != 1) {
    if (sgn(num) < 0 || root_degree > 64) return std::nullopt;
    auto rn = exact_root(num, root_degree);
    auto rd = exact_root(den, root_degree);
    if (!rn || !rd) return std::nullopt;
    num = *rn;
    den = *rd;
  }
  const unsigned long abs_power = static_cast<unsigned long>(power < 0 ? -power : power);
  const std::size_t bits =
      (mpz_sizeinbase(num.get_mpz_t(), 2) + mpz_sizeinbase(den.get_mpz_t(), 2)) * abs_power;
  if (bits > max_bits) return std::nullopt;
  mpz_class pn, pd;
  mpz_pow_ui(pn.get_mpz_t(), num.get_mpz_t(), abs_power);
  mpz_pow_ui(pd.get_mpz_t(), den.get_mpz_t(), abs_power);
  Rational result = power < 0 ? Rational(pd, pn) : Rational(pn, pd);
  result.canonicalize();
  return result;
}

Rational rational_content(const Rational& a, const Rational& b) {
  mpz_class num, den;
  mpz_gcd(num.get_mpz_t(), a.get_num().get_mpz_t(), b.get_num().get_mpz_t());
  mpz_lcm(den.get_mpz_t(), a.get_den().get_mpz_t(), b.get_den().get_mpz_t());
  if (num == 0) return Rational(0);
  Rational q(num, den);
  q.canonicalize();
  return q;
}

long double to_long_double(const Rational& q) {
  // get_d() loses the extra long double bits; divide in long double when both
  // parts fit, otherwise fall back to double.
  if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()) {
    return static_cast<long double>(q.get_num().get_si()) /
           static_cast<long double>(q.get_den().get_si());
  }
  return static_cast<long double>(q.get_d());
}

}  // namespace seed
