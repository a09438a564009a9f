#pragma once

#include <string>
#include <vector>

#include "tdeg/rational.hpp"

namespace tdeg {

/// Dense univariate polynomial in n with exact rational coefficients.
/// Index i of coefficients() is the coefficient of n^i; the highest stored
/// coefficient is never zero, so the zero polynomial has no coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coefficients);

  static Polynomial constant(const Rational& c);
  static Polynomial monomial(const Rational& c, unsigned degree);
  /// The polynomial n.
  static Polynomial variable();

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  /// Coefficient of n^i (zero past the degree).
  Rational coefficient(std::size_t i) const;
  /// Zero for the zero polynomial.
  Rational leading() const;

  Rational operator()(const Rational& x) const;

  /// p(scale * n + offset).
  Polynomial compose_affine(const Rational& scale, const Rational& offset) const;
  Polynomial derivative() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// Re-parseable expression in the variable n, e.g. "1/4*n^2 - 1/2*n + 1/4".
  std::string to_string() const;

 private:
  void trim();

  std::vector<Rational> coeffs_;
};

}  // namespace tdeg
