#include "tdeg/rational.hpp"

#include <numeric>

#include "tdeg/error.hpp"

namespace tdeg {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DomainError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view part, std::size_t offset) {
    std::size_t i = 0;
    if (!part.empty() && (part[0] == '-' || part[0] == '+')) i = 1;
    if (i == part.size()) throw ParseError(offset, "expected integer in '" + std::string(text) + "'");
    for (std::size_t j = i; j < part.size(); ++j) {
      if (part[j] < '0' || part[j] > '9')
        throw ParseError(offset + j, "unexpected character in '" + std::string(text) + "'");
    }
    std::string digits(part[0] == '+' ? part.substr(1) : part);
    return Integer(digits, 10);
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text, 0));
  Integer num = parse_int(text.substr(0, slash), 0);
  Integer den = parse_int(text.substr(slash + 1), slash + 1);
  if (den == 0) throw ParseError(slash + 1, "zero denominator");
  return make_rational(num, den);
}

std::string to_string(const Rational& value) { return value.get_str(); }
std::string to_string(const Integer& value) { return value.get_str(); }

bool is_integer(const Rational& value) { return value.get_den() == 1; }

Integer floor(const Rational& value) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

Integer ceil(const Rational& value) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer out;
  mpz_gcd(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

std::uint64_t lcm(std::uint64_t a, std::uint64_t b) { return std::lcm(a, b); }

std::uint64_t to_u64(const Integer& value) {
  if (value < 0) throw DomainError("negative value " + value.get_str() + " where a natural was expected");
  if (mpz_sizeinbase(value.get_mpz_t(), 2) > 64) throw DomainError("value " + value.get_str() + " exceeds 64 bits");
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, value.get_mpz_t());
  return out;
}

}  // namespace tdeg
