#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace tdeg {

using Integer = mpz_class;
using Rational = mpq_class;

/// Builds num/den in canonical form. Throws DomainError when den == 0.
Rational make_rational(const Integer& num, const Integer& den = 1);

/// Parses "p", "-p" or "p/q" (whitespace-free). Throws ParseError.
Rational parse_rational(std::string_view text);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

bool is_integer(const Rational& value);
Integer floor(const Rational& value);
Integer ceil(const Rational& value);
Integer lcm(const Integer& a, const Integer& b);
Integer gcd(const Integer& a, const Integer& b);
std::uint64_t lcm(std::uint64_t a, std::uint64_t b);

/// Converts to uint64; throws DomainError when negative or too large.
std::uint64_t to_u64(const Integer& value);

}  // namespace tdeg
