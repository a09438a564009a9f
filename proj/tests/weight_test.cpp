#include <gtest/gtest.h>

#include "oracle.hpp"
#include "tdeg/error.hpp"
#include "tdeg/literal.hpp"
#include "tdeg/weight.hpp"

using namespace tdeg;

TEST(Weight, Validation) {
  EXPECT_THROW(Weight({}, 1), DomainError);
  EXPECT_THROW(Weight({Rational(-1)}, 0), DomainError);
  EXPECT_THROW(WeightTuple({Weight::from_elements({0, 3})}), DomainError);
  EXPECT_THROW(parse_weight_tuple("[[1,2"), ParseError);
}

TEST(Weight, WorkedExample) {
  const WeightTuple t = parse_weight_tuple("[[2,4,6,8],[1,7,4]]");
  EXPECT_EQ(tuple_norm(t), 5u);
  const std::vector<int> expected = {24, 35, 84, 75};
  for (std::uint64_t n = 0; n < 4; ++n) EXPECT_EQ(weight_product_numeric(t, parse_function("n"), n), expected[n]);
  EXPECT_EQ(product_step(t, 2).first_input, 5u);
  EXPECT_EQ(product_step(t, 3).count, 2u);
  EXPECT_EQ(t.to_string(), "[[2,4,6,8],[1,7,4]]");
}

TEST(Weight, SymbolicMatchesWalk) {
  const WeightTuple t = parse_weight_tuple("[[1,2,0],[3,1/2],[0,1,1,5]]");
  const PiecewisePoly f = parse_piecewise("pw mod 3 { 0: n^2; 1: 2n + 1; 2: 7 }");
  const PiecewisePoly closed = weight_product_symbolic(t, f);
  const auto walked = oracle::weight_product(t, [&](std::uint64_t i) { return f.value(i); }, 120);
  for (std::uint64_t n = 0; n < 120; ++n) EXPECT_EQ(closed.value(n), walked[n]) << n;
}

TEST(Weight, SymbolicRejectsExponential) {
  EXPECT_THROW(weight_product_symbolic(parse_weight_tuple("[[1,0]]"), parse_function("exp(1, 2)")), NotSymbolicError);
}

TEST(Weight, Naturalize) {
  const Naturalized z = naturalize(parse_weight_tuple("[[1/2,1/3,1],[2,1/4]]"));
  EXPECT_EQ(z.scale, 12);
  EXPECT_EQ(z.tuple, parse_weight_tuple("[[6,4,12],[24,3]]"));
}

TEST(Weight, SolveConstants) {
  const PiecewisePoly sq = parse_piecewise("n^2");
  const WeightTuple t = solve_constants(parse_weight_tuple("[[1/4,1/4,0]]"), sq, parse_piecewise("2n^2 + n"));
  EXPECT_TRUE(pw_equal(weight_product_symbolic(t, sq), parse_piecewise("2n^2 + n")));
  EXPECT_THROW(solve_constants(parse_weight_tuple("[[1,0]]"), sq, parse_piecewise("2n^2")), DomainError);
}
