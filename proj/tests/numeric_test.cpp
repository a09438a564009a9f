#include <gtest/gtest.h>

#include "tdeg/error.hpp"
#include "tdeg/literal.hpp"
#include "tdeg/piecewise.hpp"
#include "tdeg/polynomial.hpp"
#include "tdeg/rational.hpp"

using namespace tdeg;

TEST(Rational, ParsesAndPrints) {
  EXPECT_EQ(parse_rational("3/6"), make_rational(1, 2));
  EXPECT_EQ(parse_rational("-4"), Rational(-4));
  EXPECT_EQ(to_string(make_rational(6, 3)), "2");
  EXPECT_EQ(to_string(make_rational(-1, 4)), "-1/4");
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(make_rational(1, 0), DomainError);
  EXPECT_THROW(parse_rational("1/x"), ParseError);
}

TEST(Rational, FloorCeil) {
  EXPECT_EQ(tdeg::floor(make_rational(-3, 2)), -2);
  EXPECT_EQ(tdeg::ceil(make_rational(-3, 2)), -1);
  EXPECT_EQ(tdeg::floor(Rational(5)), 5);
  EXPECT_EQ(tdeg::lcm(std::uint64_t{4}, std::uint64_t{6}), 12u);
  EXPECT_THROW(to_u64(Integer(-1)), DomainError);
}

TEST(Polynomial, Arithmetic) {
  const Polynomial n = Polynomial::variable();
  const Polynomial p = n * n + 3 * n;
  EXPECT_EQ(p.degree(), 2);
  EXPECT_EQ(p(Rational(2)), 10);
  EXPECT_EQ((p - n * n).degree(), 1);
  EXPECT_EQ(p.compose_affine(2, 1)(Rational(1)), p(Rational(3)));
  EXPECT_EQ(parse_polynomial("(n + 1)^2"), n * n + 2 * n + Polynomial::constant(1));
}

TEST(Piecewise, CanonicalModulus) {
  const Polynomial n = Polynomial::variable();
  const PiecewisePoly f(4, {n, n * 2, n, n * 2});
  EXPECT_EQ(f.modulus(), 2u);
  EXPECT_EQ(PiecewisePoly(3, {n, n, n}).modulus(), 1u);
  EXPECT_TRUE(pw_equal(f, parse_piecewise("pw mod 2 { 0: n; 1: 2n }")));
}

TEST(Piecewise, FzipOfNAndSquare) {
  const PiecewisePoly z = pw_from_fzip(parse_piecewise("n"), parse_piecewise("n^2"));
  const std::vector<int> expected = {0, 0, 1, 1, 2, 4, 3, 9};
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_EQ(z.value(i), expected[i]) << i;
  EXPECT_EQ(z.modulus(), 2u);
}

TEST(Piecewise, ShiftAndMinimum) {
  const PiecewisePoly f = parse_piecewise("n^2 - 4n + 1");
  EXPECT_EQ(pw_min(f), Rational(-3));
  EXPECT_EQ(pw_normalize(f).offset, 3);
  EXPECT_EQ(pw_shift(f, 2).value(0), -3);
  EXPECT_EQ(f.value_at(Integer(-1)), 6);
  EXPECT_FALSE(pw_min(parse_piecewise("pw mod 2 { 0: n; 1: -n }")).has_value());
}

TEST(Piecewise, NaturalsBelow) {
  const auto below = naturals_below(parse_polynomial("n^2 - 5n + 6"), 1);
  ASSERT_TRUE(below.has_value());
  EXPECT_EQ(*below, (std::vector<std::uint64_t>{2, 3}));
  EXPECT_FALSE(naturals_below(parse_polynomial("-n"), 0).has_value());
}

TEST(Piecewise, IntegerValued) {
  EXPECT_TRUE(integer_valued_on_naturals(parse_polynomial("n(n + 1)/2")));
  EXPECT_FALSE(integer_valued_on_naturals(parse_polynomial("n/2")));
  EXPECT_THROW(parse_piecewise("n/2").eval(1), DomainError);
}
