#include "bconv/rational.hpp"

#include <cctype>

#include "bconv/errors.hpp"

namespace bconv {

namespace {

bool is_signed_integer(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  if (!is_signed_integer(s)) throw ContractViolation("malformed integer '" + std::string(s) + "'");
  std::string digits(s[0] == '+' ? s.substr(1) : s);
  return Integer(digits, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  Rational out;
  if (slash == std::string_view::npos) {
    out = Rational(parse_integer(text));
  } else {
    const Integer num = parse_integer(text.substr(0, slash));
    const std::string_view den_text = text.substr(slash + 1);
    if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+')) {
      throw ContractViolation("denominator must be unsigned in '" + std::string(text) + "'");
    }
    const Integer den = parse_integer(den_text);
    if (den == 0) throw ContractViolation("zero denominator in '" + std::string(text) + "'");
    out = Rational(num, den);
  }
  out.canonicalize();
  return out;
}

std::string to_fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_compact_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return to_fraction_string(q);
}

long valuation(const Integer& value, unsigned long prime) {
  Integer v = abs(value);
  return strip_factor(v, prime);
}

long strip_factor(Integer& value, unsigned long prime) {
  if (value == 0) throw ContractViolation("valuation of zero");
  long count = 0;
  while (mpz_divisible_ui_p(value.get_mpz_t(), prime)) {
    mpz_divexact_ui(value.get_mpz_t(), value.get_mpz_t(), prime);
    ++count;
  }
  return count;
}

Integer pow_integer(const Integer& base, unsigned long exponent) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

Rational pow_rational(const Rational& base, unsigned long exponent) {
  return make_rational(pow_integer(base.get_num(), exponent), pow_integer(base.get_den(), exponent));
}

Integer floor_of(const Rational& q) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

Rational fractional_part(const Rational& q) {
  Rational out = q - Rational(floor_of(q));
  out.canonicalize();
  return out;
}

}  // namespace bconv
