#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "tdeg/block_function.hpp"
#include "tdeg/weight.hpp"

namespace tdeg {

/// Witness for <source> >= <target>: S^{n0}(target) = weights (x) S^{m0}(source).
struct Certificate {
  BlockFunction source;
  BlockFunction target;
  WeightTuple weights;
  std::uint64_t m0 = 0;
  std::uint64_t n0 = 0;
  std::uint64_t depth = 100;
};

struct Verdict {
  enum class Kind { ProvedSymbolic, VerifiedToDepth, Refuted };
  Verdict(Kind k) : kind(k) {}  // NOLINT(google-explicit-constructor)

  Kind kind;
  std::uint64_t depth = 0;            // VerifiedToDepth
  std::optional<std::uint64_t> at;    // Refuted: least failing index
  Rational expected = 0;              // Refuted: S^{n0}(target)(at)
  Rational actual = 0;                // Refuted: product value at `at`

  bool ok() const { return kind != Kind::Refuted; }
  std::string to_string() const;
};

/// Symbolic comparison when both sides are piecewise polynomials, otherwise
/// pointwise up to depth. A symbolic mismatch is located by scanning for the
/// least failing index.
Verdict certificate_check(const Certificate& c, std::uint64_t depth);

/// JSON object with fields source, target (function literals), weights (list
/// of lists, last entry the constant, rationals as "p/q" strings), m0, n0, depth.
std::string certificate_to_json(const Certificate& c);
/// Throws ParseError on malformed documents.
Certificate certificate_from_json(const std::string& text);

}  // namespace tdeg
