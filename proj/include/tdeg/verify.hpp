#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "tdeg/constructions.hpp"

namespace tdeg {

/// Outcome of a property suite. Case order is fixed, so results are reproducible.
struct SuiteResult {
  explicit SuiteResult(std::string suite) : name(std::move(suite)) {}

  std::string name;
  std::uint64_t passed = 0;
  std::uint64_t total = 0;
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  bool ok() const { return total > 0 && passed == total; }
  void record(bool pass, const std::string& label);
  /// "<name>: passed/total"
  std::string summary() const;
};

/// Items 1-3 in both directions and items 4-5 forward on n, n^2, n^2 + n and
/// a mod-2 function, symbolically and on a prefix_bits-bit stream prefix.
SuiteResult verify_lemma24(std::size_t prefix_bits = 10000);

/// Linear f = a n + b (1 <= a <= 5, 0 <= b <= 5) and exponential f = a b^n
/// (a <= 3, b in {2, 3}) against g in {n^2, n^3}, plus the one-block-drop
/// identity checked symbolically.
SuiteResult verify_symmetry(std::size_t prefix_bits = 10000);

/// Random conforming (alphas, betas, h) triples checked for n < depth.
SuiteResult verify_gamma(std::uint64_t cases = 100, std::uint64_t depth = 200, std::uint64_t seed = 1);

/// Forward quadratic weights for integer 1 <= a, b <= grid.
SuiteResult verify_quadweights(std::uint64_t grid = 20);

/// Inverse quadratic weights for integer 2a > b > 0, a <= grid.
SuiteResult verify_quad_inverse(std::uint64_t grid = 20);

/// Evaluates the printed constants at a = b = 1, n = 0. Each case passes when
/// the printed constant differs from the solved one and breaks the identity.
SuiteResult verify_printed_constants();

/// Diamond constructions on generated inputs.
SuiteResult verify_diamond(std::uint64_t mixed = 20, std::uint64_t linear = 20, std::uint64_t quadratic = 50,
                           std::uint64_t seed = 1, std::size_t prefix_bits = 10000);

// ---------------------------------------------------------------------------
// Generators

using Rng = std::mt19937_64;

std::uint64_t uniform(Rng& rng, std::uint64_t lo, std::uint64_t hi);

/// Tuple of 1..max_weights weights of arity 1..max_arity with natural
/// coefficients in [0, max_coeff] (at least one positive per weight) and
/// constants in [0, max_const].
WeightTuple random_tuple(Rng& rng, std::uint64_t max_weights, std::uint64_t max_arity, std::uint64_t max_coeff,
                         std::uint64_t max_const);

/// Natural-valued piecewise polynomial with modulus <= max_modulus and degree <= max_degree.
PiecewisePoly random_piecewise(Rng& rng, std::uint64_t max_modulus, int max_degree);

/// Mixed image of fzip(n, n^2) under a random weight product and shift.
PiecewisePoly random_mixed(Rng& rng);

/// All-linear natural function with modulus <= 4, slopes possibly fractional.
PiecewisePoly random_all_linear(Rng& rng);

/// All-quadratic image of a shifted n^2 under a random tuple of at most 4 weights.
PiecewisePoly random_all_quadratic(Rng& rng);

/// Stream prefix from explicit block values.
BitWord stream_from_values(const std::function<Integer(std::uint64_t)>& value, std::size_t length);

}  // namespace tdeg
