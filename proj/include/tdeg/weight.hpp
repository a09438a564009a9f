#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tdeg/block_function.hpp"
#include "tdeg/piecewise.hpp"

namespace tdeg {

/// <a_0, ..., a_{k-1}, b>: coefficients a_i >= 0 and a constant b of any sign.
class Weight {
 public:
  /// Throws DomainError if coeffs is empty or has a negative entry.
  Weight(std::vector<Rational> coeffs, Rational constant);
  /// Last element is the constant; at least two elements.
  static Weight from_elements(std::vector<Rational> elements);

  const std::vector<Rational>& coeffs() const { return coeffs_; }
  const Rational& constant() const { return constant_; }
  /// |alpha|: number of elements including the constant.
  std::size_t size() const { return coeffs_.size() + 1; }
  /// Number of input values consumed, |alpha| - 1.
  std::size_t arity() const { return coeffs_.size(); }
  bool is_constant() const;

  friend bool operator==(const Weight&, const Weight&) = default;

 private:
  std::vector<Rational> coeffs_;
  Rational constant_;
};

/// A cyclic tuple of weights with at least one non-constant weight.
class WeightTuple {
 public:
  explicit WeightTuple(std::vector<Weight> weights);

  const std::vector<Weight>& weights() const { return weights_; }
  std::size_t size() const { return weights_.size(); }
  const Weight& operator[](std::size_t i) const { return weights_[i]; }

  /// "[[2,4,6,8],[1,7,4]]"
  std::string to_string() const;

  friend bool operator==(const WeightTuple&, const WeightTuple&) = default;

 private:
  std::vector<Weight> weights_;
};

/// Parses "[[a,...,b],...]" with rational entries. Throws ParseError.
WeightTuple parse_weight_tuple(std::string_view text);

/// a_0 v_0 + ... + a_{k-1} v_{k-1} + b. Throws DomainError if values is too short.
Rational weight_apply(const Weight& w, std::span<const Rational> values);

/// ||alpha|| = sum of (|alpha_i| - 1).
std::uint64_t tuple_norm(const WeightTuple& tuple);

using ValueFn = std::function<Rational(std::uint64_t)>;

/// (alpha (x) f)(n) by the defining recursion: each step applies the head
/// weight, rotates the tuple and shifts f by |alpha_0| - 1.
Rational weight_product_numeric(const WeightTuple& tuple, const ValueFn& f, std::uint64_t n);
Rational weight_product_numeric(const WeightTuple& tuple, const BlockFunction& f, std::uint64_t n);
Rational weight_product_numeric(const WeightTuple& tuple, const PiecewisePoly& f, std::uint64_t n);

/// Which weight produces output n and the input indices it reads.
struct ProductStep {
  std::size_t weight;
  std::uint64_t first_input;
  std::size_t count;
};
ProductStep product_step(const WeightTuple& tuple, std::uint64_t n);

struct Naturalized {
  WeightTuple tuple;
  Integer scale;
};

/// Multiplies every entry by the lcm of all denominators.
Naturalized naturalize(const WeightTuple& tuple);

/// Closed form of alpha (x) f as a piecewise polynomial. For output residue i
/// (mod m) the first input index is (n - i) / m * L + c_i with
/// c_i = sum_{j<i} (|alpha_j| - 1); input residues repeat with period
/// N / gcd(L, N), giving output modulus m * N / gcd(L, N) before minimization.
PiecewisePoly weight_product_symbolic(const WeightTuple& tuple, const PiecewisePoly& f);
/// Throws NotSymbolicError for exponential-based functions.
PiecewisePoly weight_product_symbolic(const WeightTuple& tuple, const BlockFunction& f);

/// Replaces the constants of tuple so that tuple (x) source == target exactly.
/// Throws DomainError when no choice of constants works.
WeightTuple solve_constants(const WeightTuple& tuple, const PiecewisePoly& source, const PiecewisePoly& target);

}  // namespace tdeg
