#pragma once

#include <string_view>

#include "tdeg/block_function.hpp"
#include "tdeg/polynomial.hpp"

namespace tdeg {

/// Function literals:
///
///   poly: <expr>                    a single polynomial in n
///   pw mod N { 0: <expr>; ... }     one expression per residue class
///   fzip(<f>, <g>)
///   exp(a, b)                       a * b^n
///   shift(<f>, k)                   f(n + k)
///
/// A bare <expr> is accepted wherever a function is expected. Expressions
/// use integers, n, + - * / ^ and parentheses; juxtaposition multiplies
/// ("3n^2"), and division is only by constants.
///
/// Throws ParseError with the offending position.
BlockFunction parse_function(std::string_view text);

/// Parses a literal that must be symbolic (no exp). Throws NotSymbolicError otherwise.
PiecewisePoly parse_piecewise(std::string_view text);

Polynomial parse_polynomial(std::string_view text);

}  // namespace tdeg
