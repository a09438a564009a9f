#include <gtest/gtest.h>

#include <random>

#include "tdeg/error.hpp"
#include "tdeg/fst.hpp"

using namespace tdeg;

namespace {

BitWord bits(const char* s) { return BitWord::from_string(s); }

// Doubles every bit.
Fst doubler() {
  return Fst({{Fst::Edge{0, bits("00")}, Fst::Edge{0, bits("11")}}});
}

// Emits only every second input bit.
Fst halver() {
  return Fst({{Fst::Edge{1, bits("0")}, Fst::Edge{1, bits("1")}}, {Fst::Edge{0, BitWord()}, Fst::Edge{0, BitWord()}}});
}

BitWord random_word(std::mt19937_64& rng, std::size_t length) {
  BitWord w;
  for (std::size_t i = 0; i < length; ++i) w.push_back(rng() & 1);
  return w;
}

}  // namespace

TEST(Fst, Validation) {
  EXPECT_THROW(Fst({}), DomainError);
  EXPECT_THROW(Fst({{Fst::Edge{3, BitWord()}, Fst::Edge{0, BitWord()}}}), DomainError);
}

TEST(Fst, RunAndDelta) {
  EXPECT_EQ(fst_run(doubler(), bits("101")).str(), "110011");
  EXPECT_EQ(halver().run(bits("10110")).str(), "110");
  EXPECT_EQ(halver().delta(0, bits("101")), 1u);
  EXPECT_EQ(Fst::identity().run(bits("0110")), bits("0110"));
}

TEST(Fst, CompositionAgreesWithCascade) {
  std::mt19937_64 rng(7);
  const Fst machines[] = {doubler(), halver(), Fst::identity()};
  for (const Fst& outer : machines) {
    for (const Fst& inner : machines) {
      const Fst both = fst_compose(outer, inner);
      for (int i = 0; i < 20; ++i) {
        const BitWord w = random_word(rng, 1 + rng() % 50);
        EXPECT_EQ(both.run(w), outer.run(inner.run(w)));
      }
    }
  }
}

TEST(Fst, CompositionKeepsReachablePairsOnly) {
  // Doubled input always returns the halver to its start state.
  EXPECT_EQ(fst_compose(halver(), doubler()).state_count(), 1u);
  EXPECT_EQ(fst_compose(doubler(), halver()).state_count(), 2u);
  EXPECT_EQ(fst_compose(halver(), doubler()).run(bits("1011")), bits("1011"));
}

TEST(Fst, DotRendering) {
  const std::string dot = doubler().to_dot();
  EXPECT_NE(dot.find("digraph"), std::string::npos);
  EXPECT_NE(dot.find("1/11"), std::string::npos);
}
