#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>

#include "tdeg/piecewise.hpp"

namespace tdeg {

/// A function N -> Z whose values are the block sizes of a stream.
///
/// Piecewise polynomials (and fzip/shift combinations of them) are symbolic;
/// anything involving an exponential a * b^n is evaluation-only.
class BlockFunction {
 public:
  struct Exponential {
    Integer scale;  // a >= 1
    Integer base;   // b >= 2
  };
  struct Fzip {
    std::shared_ptr<const BlockFunction> left;
    std::shared_ptr<const BlockFunction> right;
  };
  struct Shifted {
    std::shared_ptr<const BlockFunction> base;
    std::uint64_t k;
  };
  using Variant = std::variant<PiecewisePoly, Exponential, Fzip, Shifted>;

  BlockFunction(PiecewisePoly f) : v_(std::move(f)) {}  // NOLINT(google-explicit-constructor)
  BlockFunction(Polynomial p) : v_(PiecewisePoly(std::move(p))) {}  // NOLINT(google-explicit-constructor)

  static BlockFunction exponential(const Integer& scale, const Integer& base);
  static BlockFunction fzip(BlockFunction left, BlockFunction right);
  static BlockFunction shifted(BlockFunction base, std::uint64_t k);

  const Variant& variant() const { return v_; }

  Integer operator()(std::uint64_t n) const;

  bool is_symbolic() const;
  /// Throws NotSymbolicError for exponential-based functions.
  PiecewisePoly to_symbolic() const;

  /// Function literal that parse_function() reads back.
  std::string to_string() const;

 private:
  explicit BlockFunction(Variant v) : v_(std::move(v)) {}

  Variant v_;
};

/// f(n); fzip(l, r)(n) is l(n / 2) for even n and r((n - 1) / 2) for odd n.
Integer pw_eval(const BlockFunction& f, std::uint64_t n);

}  // namespace tdeg
