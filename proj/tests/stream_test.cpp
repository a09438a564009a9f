#include <gtest/gtest.h>

#include "tdeg/error.hpp"
#include "tdeg/literal.hpp"
#include "tdeg/stream.hpp"

using namespace tdeg;

TEST(Stream, PrefixOfIdentity) { EXPECT_EQ(stream_prefix(parse_function("poly: n"), 10).str(), "1101001000"); }

TEST(Stream, FzipPrefix) {
  EXPECT_EQ(stream_prefix(parse_function("fzip(n, n^2)"), 15).str(), "111010100100001");
}

TEST(Stream, Exponential) {
  EXPECT_EQ(stream_prefix(parse_function("exp(1, 2)"), 12).str(), "101001000010");
}

TEST(Stream, ShiftMatchesShiftedPolynomial) {
  EXPECT_TRUE(prefix_equal(parse_function("shift(n^2, 3)"), parse_function("(n + 3)^2"), 500));
}

TEST(Stream, NegativeBlockThrows) {
  EXPECT_THROW(stream_prefix(parse_function("n - 2"), 10), NegativeBlockError);
}

TEST(Stream, ParseBlocks) {
  const BlockSeq s = parse_blocks(BitWord::from_string("1101001000"));
  EXPECT_EQ(s.sizes, (std::vector<std::uint64_t>{0, 1, 2}));
  EXPECT_EQ(s.trailing, 3u);
  EXPECT_FALSE(parse_blocks(BitWord()).trailing.has_value());
  EXPECT_THROW(parse_blocks(BitWord::from_string("01")), MalformedStreamError);
  EXPECT_THROW(BitWord::from_string("012"), ParseError);
}

TEST(Stream, LazyTakeMatchesPrefix) {
  BlockStream s(parse_function("3n + 1"));
  BitWord w = s.take(7);
  w.append(s.take(13));
  EXPECT_EQ(w, stream_prefix(parse_function("3n + 1"), 20));
}

TEST(Stream, CommonPrefix) {
  EXPECT_TRUE(agree_on_common_prefix(BitWord::from_string("1101"), BitWord::from_string("11")));
  EXPECT_FALSE(agree_on_common_prefix(BitWord::from_string("10"), BitWord::from_string("11")));
}

TEST(Literal, ErrorsCarryPosition) {
  try {
    parse_function("poly: n +");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_GE(e.position(), 8u);
  }
  EXPECT_THROW(parse_piecewise("exp(1, 2)"), NotSymbolicError);
}

TEST(Literal, RoundTrip) {
  for (const char* text : {"poly: n^2 + 1", "pw mod 2 { 0: n; 1: 3n + 2 }", "fzip(n, n^2)", "exp(2, 3)"}) {
    const BlockFunction f = parse_function(text);
    EXPECT_TRUE(prefix_equal(f, parse_function(f.to_string()), 300)) << text;
  }
}
