#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tdeg/block_function.hpp"
#include "tdeg/block_op.hpp"
#include "tdeg/certificate.hpp"
#include "tdeg/weight.hpp"

namespace tdeg {

// ---------------------------------------------------------------------------
// Block-level equivalences and inequalities

enum class Direction { Forward, Backward };

struct Lemma24Params {
  std::uint64_t a = 1;
  std::uint64_t b = 0;                  // item 5
  std::vector<std::uint64_t> prefix;    // item 2 backward: f(0), ..., f(a-1)
};

/// Pipeline realizing one of the five basic moves on <f>:
///   1  f -> a f       (backward: a f -> f)
///   2  f -> f(n + a)  (backward: prepends params.prefix)
///   3  f -> f + a     (backward: f + a -> f)
///   4  f -> f(a n)
///   5  f -> a f(2n) + b f(2n + 1)
/// Items 4 and 5 have no backward direction. Throws DomainError.
Pipeline lemma24_pipeline(int item, const Lemma24Params& params, Direction direction);

// ---------------------------------------------------------------------------
// fzip

struct LinearKind {
  std::uint64_t a;  // f(n) = a n + b, a >= 1
  std::uint64_t b;
};
struct ExponentialKind {
  std::uint64_t a;  // f(n) = a b^n, a >= 1, b >= 2
  std::uint64_t b;
};
using SymmetricKind = std::variant<LinearKind, ExponentialKind>;

/// Maps <fzip(f, g)> to <fzip(g, f)>: drop the first block, then undo the
/// one-step advance of f on the odd blocks.
Pipeline fzip_symmetry_pipeline(const SymmetricKind& kind);

/// The function f of a SymmetricKind as a BlockFunction.
BlockFunction symmetric_function(const SymmetricKind& kind);

/// gamma with (gamma (x) h)(n) = (alpha (x) h)(n) for even n and
/// (beta (x) h)(n) for odd n. For an even number of weights gamma alternates
/// alpha_0, beta_1, alpha_2, ...; for an odd number it is that alternation
/// followed by beta_0, alpha_1, beta_2, ....
/// Throws DomainError unless the tuples have equal counts and lengths.
WeightTuple gamma_interleave(const WeightTuple& alphas, const WeightTuple& betas);

// ---------------------------------------------------------------------------
// Quadratic weights

/// a n^2 + b n.
struct QuadSpec {
  Rational a;
  Rational b;
};

struct QuadWeight {
  Weight weight;
  std::uint64_t k;
};

/// alpha of length 2 with alpha (x) S^k(n^2) = a n^2 + b n, k = floor(b / a).
/// Coefficients (a - b + a k) / 4 and (b - a k) / 4; the constant is solved so
/// the identity is exact. Requires a > 0 and b > 0.
QuadWeight quad_to_weight(const QuadSpec& q);

/// alpha with alpha (x) f = (n + 1)^2 for f(n) = a (n + 1)^2 + b (n + 1).
/// Coefficients b / (8 a^2) and (2a - b) / (8 a^2), constant solved.
/// Requires 2a > b > 0.
Weight quad_inverse_weight(const QuadSpec& q);

/// Commonly quoted closed forms of the two constants. They do not satisfy the
/// identities and are kept as regression cases against the solved ones.
Rational printed_quad_constant(const QuadSpec& q);
Rational printed_inverse_constant(const QuadSpec& q);

/// a n^2 + b n as a polynomial.
Polynomial quad_polynomial(const QuadSpec& q);

// ---------------------------------------------------------------------------
// Degrees between <n>, <n^2> and <fzip(n, n^2)>

enum class CaseTag { AllQuadratic, AllLinear, Mixed };

std::string to_string(CaseTag tag);

/// Classifies the pieces of g. Throws DomainError for a piece that is not
/// linear or quadratic with positive leading coefficient.
CaseTag classify_pieces(const PiecewisePoly& g);

struct DiamondReport {
  DiamondReport(PiecewisePoly g, CaseTag t) : input(std::move(g)), tag(t) {}

  PiecewisePoly input;
  CaseTag tag;
  /// Mixed: g -> fzip(n, n^2). AllLinear: the reverse direction g -> n.
  std::optional<Pipeline> pipeline;
  /// AllLinear: the forward direction n -> g as block operations.
  std::optional<Pipeline> forward;
  /// AllLinear: source n. AllQuadratic: source n^2.
  std::optional<Certificate> certificate;
  /// Blocks dropped from g (Mixed) or the certificate's n0.
  std::uint64_t final_shift = 0;
  bool verified = false;
  std::string details;
  std::optional<std::size_t> failing_op;

  /// JSON object: case, witness, final_shift, verdict, details, failing_op.
  std::string to_json() const;
};

/// fzip(n, n^2) as a piecewise polynomial.
PiecewisePoly fzip_n_n2();

/// Transduces a Mixed g back to fzip(n, n^2). The report is verified when the
/// symbolic image equals fzip(n, n^2) and the compiled transducer reproduces
/// a prefix_bits-bit prefix of it. Throws DomainError when g is not Mixed.
DiamondReport diamond_n_pipeline(const PiecewisePoly& g, std::size_t prefix_bits = 10000);

/// Weight tuple with S^{n0}(g) = alpha (x) S^{m0}(n^2), checked as a
/// certificate. Throws DomainError when g is not AllQuadratic.
DiamondReport diamond_n2_weights(const PiecewisePoly& g);

/// Weight tuple with g = alpha (x) n, and a pipeline g -> n checked on a
/// prefix_bits-bit prefix. Throws DomainError when g is not AllLinear.
DiamondReport diamond_linear_weights(const PiecewisePoly& g, std::size_t prefix_bits = 10000);

/// Pipelines whose state budgets multiply to more than this are run as a
/// cascade of per-op transducers instead of one composed machine.
inline constexpr double kComposeLimit = 1e5;

struct PrefixCheck {
  bool agrees = false;
  std::size_t output_bits = 0;
};

/// Runs the compiled pipeline on an input_bits-bit prefix of <f> and compares
/// the output with the same-length prefix of <image>. Fails when fewer than
/// min_output bits come out.
PrefixCheck pipeline_prefix_check(const Pipeline& pipeline, const BlockFunction& f, const BlockFunction& image,
                                  std::size_t input_bits, std::size_t min_output = 1);

}  // namespace tdeg
