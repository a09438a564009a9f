#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tdeg/polynomial.hpp"

namespace tdeg {

/// f(n) = pieces[n mod N](n). Pieces are polynomials in n itself, so
/// fzip(n, n^2) needs the piece (n-1)^2/4 on the odd class.
///
/// The representation is canonical: construction reduces the modulus to the
/// least period of the piece sequence, so two functions are equal exactly
/// when their representations are.
class PiecewisePoly {
 public:
  PiecewisePoly(std::uint64_t modulus, std::vector<Polynomial> pieces);
  explicit PiecewisePoly(Polynomial single);

  std::uint64_t modulus() const { return modulus_; }
  const std::vector<Polynomial>& pieces() const { return pieces_; }
  const Polynomial& piece(std::uint64_t residue) const { return pieces_[residue % modulus_]; }
  /// Pieces repeated to a multiple of the modulus.
  std::vector<Polynomial> refined_pieces(std::uint64_t modulus) const;
  int max_degree() const;

  Rational value(std::uint64_t n) const;
  /// Value at a possibly negative index, using the backward polynomial extension.
  Rational value_at(const Integer& n) const;
  /// Throws DomainError when f(n) is not an integer.
  Integer eval(std::uint64_t n) const;

  /// True when every value on every residue class is an integer.
  bool is_integer_valued() const;

  /// "poly: <expr>" for modulus 1, otherwise "pw mod N { 0: ...; 1: ... }".
  std::string to_string() const;

  friend bool operator==(const PiecewisePoly&, const PiecewisePoly&) = default;

 private:
  void canonicalize();

  std::uint64_t modulus_;
  std::vector<Polynomial> pieces_;
};

/// piece(r + modulus * t) as a polynomial in t.
Polynomial progression(const Polynomial& piece, std::uint64_t residue, std::uint64_t modulus);

/// Integer-valued on every t >= 0 (checked on deg + 1 consecutive points).
bool integer_valued_on_naturals(const Polynomial& p);

/// Exact minimum of p(t) over t in N, or nullopt when unbounded below.
std::optional<Rational> min_on_naturals(const Polynomial& p);

/// All t in N with p(t) < threshold, or nullopt when that set is infinite.
std::optional<std::vector<std::uint64_t>> naturals_below(const Polynomial& p, const Rational& threshold);

/// S^k(f)(n) = f(n + k). Negative k extends each piece backwards; it is
/// only meaningful when the caller knows the extension is the intended function.
PiecewisePoly pw_shift(const PiecewisePoly& f, std::int64_t k);

/// Pointwise equality, decided by refining both sides to the lcm modulus.
bool pw_equal(const PiecewisePoly& f, const PiecewisePoly& g);

/// fzip(f, g)(2m) = f(m), fzip(f, g)(2m + 1) = g(m).
PiecewisePoly pw_from_fzip(const PiecewisePoly& f, const PiecewisePoly& g);

/// Least value over all n, or nullopt when unbounded below.
std::optional<Rational> pw_min(const PiecewisePoly& f);

struct Normalized {
  PiecewisePoly function;
  Integer offset;
};

/// f + offset with the least natural offset making every value nonnegative.
/// Throws DomainError if a piece has a negative leading coefficient.
Normalized pw_normalize(const PiecewisePoly& f);

/// Values f(n) for n in [0, count).
std::vector<Rational> pw_values(const PiecewisePoly& f, std::uint64_t count);

}  // namespace tdeg
