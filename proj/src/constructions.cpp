#include "tdeg/constructions.hpp"

#include <algorithm>
#include <json.hpp>

#include "overloaded.hpp"
#include "tdeg/error.hpp"
#include "tdeg/fst.hpp"
#include "tdeg/stream.hpp"

namespace tdeg {

using detail::overloaded;

Pipeline lemma24_pipeline(int item, const Lemma24Params& p, Direction direction) {
  const bool forward = direction == Direction::Forward;
  switch (item) {
    case 1:
      if (p.a == 0) throw DomainError("item 1 needs a > 0");
      if (forward) return {MulBlock{ResidueSet::all(), p.a}};
      return {DivBlock{ResidueSet::all(), p.a}};
    case 2:
      if (forward) return {DropBlocks{p.a}};
      if (p.prefix.size() != p.a) throw DomainError("item 2 backward needs the values f(0), ..., f(a-1)");
      return {PrependBlocks{p.prefix}};
    case 3:
      if (forward) return {AddZeros{ResidueSet::all(), p.a}};
      return {SubZeros{ResidueSet::all(), p.a}};
    case 4:
      if (!forward) throw DomainError("item 4 has no backward direction");
      if (p.a == 0) throw DomainError("item 4 needs a > 0");
      return {SelectResidues{ResidueSet::single(0, p.a)}};
    case 5: {
      if (!forward) throw DomainError("item 5 has no backward direction");
      const Weight w({Rational(Integer(p.a)), Rational(Integer(p.b))}, Rational(0));
      return {MergeWeights{WeightTuple({w})}};
    }
    default:
      throw DomainError("item must be 1..5");
  }
}

Pipeline fzip_symmetry_pipeline(const SymmetricKind& kind) {
  const ResidueSet odd = ResidueSet::single(1, 2);
  return std::visit(overloaded{
                        [&](const LinearKind& k) -> Pipeline {
                          if (k.a == 0) throw DomainError("linear kind needs a >= 1");
                          return {DropBlocks{1}, SubZeros{odd, k.a}};
                        },
                        [&](const ExponentialKind& k) -> Pipeline {
                          if (k.a == 0 || k.b < 2) throw DomainError("exponential kind needs a >= 1, b >= 2");
                          return {DropBlocks{1}, DivBlock{odd, k.b}};
                        },
                    },
                    kind);
}

BlockFunction symmetric_function(const SymmetricKind& kind) {
  return std::visit(overloaded{
                        [](const LinearKind& k) {
                          return BlockFunction(Polynomial({Rational(Integer(k.b)), Rational(Integer(k.a))}));
                        },
                        [](const ExponentialKind& k) {
                          return BlockFunction::exponential(Integer(k.a), Integer(k.b));
                        },
                    },
                    kind);
}

WeightTuple gamma_interleave(const WeightTuple& alphas, const WeightTuple& betas) {
  const std::size_t m = alphas.size();
  if (betas.size() != m) throw DomainError("gamma needs tuples with the same number of weights");
  for (std::size_t i = 0; i < m; ++i)
    if (alphas[i].size() != betas[i].size())
      throw DomainError("weight " + std::to_string(i) + " has different lengths in the two tuples");
  std::vector<Weight> out;
  for (std::size_t i = 0; i < m; ++i) out.push_back(i % 2 == 0 ? alphas[i] : betas[i]);
  if (m % 2 == 1)
    for (std::size_t i = 0; i < m; ++i) out.push_back(i % 2 == 0 ? betas[i] : alphas[i]);
  return WeightTuple(std::move(out));
}

// ---------------------------------------------------------------------------

Polynomial quad_polynomial(const QuadSpec& q) { return Polynomial({Rational(0), q.b, q.a}); }

namespace {

Polynomial shifted_square(const Rational& k) {
  const Polynomial x = Polynomial::variable() + Polynomial::constant(k);
  return x * x;
}

}  // namespace

QuadWeight quad_to_weight(const QuadSpec& q) {
  if (q.a <= 0 || q.b <= 0) throw DomainError("quadratic weight needs a > 0 and b > 0");
  const Integer k = floor(q.b / q.a);
  const Rational ak = q.a * k;
  const Rational c0 = (q.a - q.b + ak) / 4;
  const Rational c1 = (q.b - ak) / 4;
  const WeightTuple base({Weight({c0, c1}, Rational(0))});
  const WeightTuple solved =
      solve_constants(base, PiecewisePoly(shifted_square(Rational(k))), PiecewisePoly(quad_polynomial(q)));
  return {solved[0], to_u64(k)};
}

Weight quad_inverse_weight(const QuadSpec& q) {
  if (!(q.b > 0 && 2 * q.a > q.b)) throw DomainError("inverse quadratic weight needs 2a > b > 0");
  const Rational scale = 1 / (8 * q.a * q.a);
  const WeightTuple base({Weight({q.b * scale, (2 * q.a - q.b) * scale}, Rational(0))});
  const Polynomial m = Polynomial::variable() + Polynomial::constant(1);
  const Polynomial f = q.a * (m * m) + q.b * m;
  return solve_constants(base, PiecewisePoly(f), PiecewisePoly(m * m))[0];
}

Rational printed_quad_constant(const QuadSpec& q) {
  const Rational k(floor(q.b / q.a));
  return -(2 * q.b * k + q.b - q.a * k * k) / 4;
}

Rational printed_inverse_constant(const QuadSpec& q) {
  return (q.b * q.b + q.a * q.b + 6 * q.a * q.a + 1) / (8 * q.a * q.a);
}

// ---------------------------------------------------------------------------

std::string to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::AllQuadratic:
      return "AllQuadratic";
    case CaseTag::AllLinear:
      return "AllLinear";
    case CaseTag::Mixed:
      return "Mixed";
  }
  return "?";
}

CaseTag classify_pieces(const PiecewisePoly& g) {
  bool linear = false;
  bool quadratic = false;
  for (std::uint64_t r = 0; r < g.modulus(); ++r) {
    const Polynomial& p = g.piece(r);
    if (p.degree() < 1 || p.degree() > 2 || p.leading() <= 0)
      throw DomainError("piece " + std::to_string(r) + " (" + p.to_string() +
                        ") is not linear or quadratic with positive leading coefficient");
    (p.degree() == 1 ? linear : quadratic) = true;
  }
  if (linear && quadratic) return CaseTag::Mixed;
  return linear ? CaseTag::AllLinear : CaseTag::AllQuadratic;
}

PiecewisePoly fzip_n_n2() {
  const Polynomial n = Polynomial::variable();
  return pw_from_fzip(PiecewisePoly(n), PiecewisePoly(n * n));
}

std::string DiamondReport::to_json() const {
  nlohmann::ordered_json j;
  j["case"] = to_string(tag);
  j["input"] = input.to_string();
  if (pipeline) j["witness"] = tdeg::to_string(*pipeline);
  if (forward) j["forward"] = tdeg::to_string(*forward);
  if (certificate) j["certificate"] = nlohmann::ordered_json::parse(certificate_to_json(*certificate));
  j["final_shift"] = final_shift;
  j["verdict"] = verified ? "verified" : "failed";
  j["details"] = details;
  j["failing_op"] = failing_op ? nlohmann::ordered_json(*failing_op) : nlohmann::ordered_json(nullptr);
  return j.dump(2);
}

PrefixCheck pipeline_prefix_check(const Pipeline& pipeline, const BlockFunction& f, const BlockFunction& image,
                                  std::size_t input_bits, std::size_t min_output) {
  double states = 1;
  for (const auto& op : pipeline) states *= static_cast<double>(state_budget(op));
  BitWord out = stream_prefix(f, input_bits);
  if (states <= kComposeLimit) {
    out = compile_pipeline(pipeline).run(out);
  } else {
    for (const auto& op : pipeline) out = compile_block_op(op).run(out);
  }
  return {out.size() >= min_output && out == stream_prefix(image, out.size()), out.size()};
}

namespace {

constexpr std::size_t kDiamondOutputBits = 1000;
constexpr std::size_t kDiamondInputLimit = std::size_t{1} << 22;

// Builds a pipeline op by op, keeping the exact image of the input.
class PipelineBuilder {
 public:
  explicit PipelineBuilder(PiecewisePoly input) : input_(std::move(input)), current_(input_) {}

  /// False (with the violation recorded) when op is not valid on the current image.
  bool push(BlockOp op) {
    const auto v = pipeline_validate({op}, current_);
    if (!v.empty()) {
      violation_ = v.front();
      violation_->op_index = ops_.size();
      ops_.push_back(std::move(op));
      return false;
    }
    current_ = apply_symbolic(op, current_);
    if (const auto* d = std::get_if<DropBlocks>(&op)) dropped_ += d->count;
    ops_.push_back(std::move(op));
    return true;
  }

  const PiecewisePoly& current() const { return current_; }
  const Pipeline& ops() const { return ops_; }
  const std::optional<Violation>& violation() const { return violation_; }
  std::uint64_t dropped() const { return dropped_; }

  /// Piece for residue r (mod 2) as a polynomial in the index within the class.
  Polynomial parity_class(std::uint64_t r) const { return progression(current_.piece(r), r, 2); }

 private:
  PiecewisePoly input_;
  PiecewisePoly current_;
  Pipeline ops_;
  std::optional<Violation> violation_;
  std::uint64_t dropped_ = 0;
};

std::optional<std::uint64_t> natural(const Rational& v) {
  if (!is_integer(v) || v < 0) return std::nullopt;
  return to_u64(v.get_num());
}

DiamondReport failed(DiamondReport r, const std::string& details) {
  r.verified = false;
  r.details = details;
  return r;
}

DiamondReport builder_failure(DiamondReport r, const PipelineBuilder& b) {
  r.pipeline = b.ops();
  r.failing_op = b.violation()->op_index;
  return failed(std::move(r), b.violation()->to_string());
}

}  // namespace

DiamondReport diamond_n_pipeline(const PiecewisePoly& g, std::size_t prefix_bits) {
  if (classify_pieces(g) != CaseTag::Mixed) throw DomainError("not Mixed: g needs both linear and quadratic pieces");
  DiamondReport report(g, CaseTag::Mixed);
  if (auto v = pipeline_validate({}, g); !v.empty()) return failed(std::move(report), v.front().to_string());

  PipelineBuilder b(g);
  auto fail = [&]() { return builder_failure(report, b); };

  // Put a linear piece on residue 0.
  const std::uint64_t N = g.modulus();
  std::uint64_t first_linear = 0;
  while (g.piece(first_linear).degree() != 1) ++first_linear;
  if (first_linear > 0 && !b.push(DropBlocks{first_linear})) return fail();

  // Keep the first piece and sum the others.
  if (N > 2) {
    std::vector<Rational> ones(N - 1, Rational(1));
    const WeightTuple t({Weight({Rational(1)}, Rational(0)), Weight(ones, Rational(0))});
    if (!b.push(MergeWeights{t})) return fail();
  }
  if (b.current().modulus() != 2)
    return failed(report, "expected a modulus-2 function after merging, got " + b.current().to_string());

  // Make the odd class a perfect square A (q + h)^2 + C.
  auto square_offset = [&]() -> Rational {
    const Polynomial odd = b.parity_class(1);
    return odd.coefficient(1) / (2 * odd.coefficient(2));
  };
  if (!is_integer(square_offset())) {
    Integer t = floor(square_offset());
    if (mpz_even_p(t.get_mpz_t())) {
      if (!b.push(DropBlocks{2})) return fail();
      t = floor(square_offset());
    }
    const Polynomial odd = b.parity_class(1);
    const Rational A = odd.coefficient(2);
    const Rational B = odd.coefficient(1) - 2 * A * t;
    const Weight inverse = quad_inverse_weight({A, B});
    // Only the odd weight needs clearing of denominators.
    const WeightTuple odd_only({Weight({inverse.coeffs()[0], Rational(0), inverse.coeffs()[1]}, Rational(0))});
    const WeightTuple merge({Weight({Rational(1)}, Rational(0)), naturalize(odd_only).tuple[0]});
    if (!b.push(MergeWeights{merge})) return fail();
    if (!is_integer(square_offset()))
      return failed(report, "odd class is not a shifted square after the inverse weight: " + b.current().to_string());
  }

  // Finish: even class -> q, odd class -> q^2, then restore the shift.
  Integer h = square_offset().get_num();
  if (h < 0) {
    if (!b.push(DropBlocks{to_u64(-2 * h)})) return fail();
    h = 0;
  }
  const ResidueSet even = ResidueSet::single(0, 2);
  const ResidueSet odd = ResidueSet::single(1, 2);
  {
    const Polynomial e = b.parity_class(0);
    const auto e0 = natural(e.coefficient(0));
    const auto e1 = natural(e.coefficient(1));
    if (!e0 || !e1) return failed(report, "even class " + e.to_string() + " has non-natural coefficients");
    if (*e0 > 0 && !b.push(SubZeros{even, *e0})) return fail();
    if (*e1 > 1 && !b.push(DivBlock{even, *e1})) return fail();
  }
  {
    const Polynomial o = b.parity_class(1);
    const Rational A = o.coefficient(2);
    const Rational C = o.coefficient(0) - A * h * h;
    if (!is_integer(C) || !natural(A)) return failed(report, "odd class " + o.to_string() + " is not A (q + h)^2 + C");
    if (C > 0 && !b.push(SubZeros{odd, to_u64(C.get_num())})) return fail();
    if (C < 0 && !b.push(AddZeros{odd, to_u64(-C.get_num())})) return fail();
    if (A > 1 && !b.push(DivBlock{odd, to_u64(A.get_num())})) return fail();
  }
  if (h > 0) {
    const std::uint64_t hh = to_u64(h);
    if (!b.push(AddZeros{even, hh})) return fail();
    std::vector<std::uint64_t> head;
    for (std::uint64_t i = 0; i < 2 * hh; ++i) head.push_back(to_u64(fzip_n_n2().eval(i)));
    if (!b.push(PrependBlocks{head})) return fail();
  }

  report.pipeline = b.ops();
  report.final_shift = b.dropped();
  if (!pw_equal(b.current(), fzip_n_n2()))
    return failed(report, "final image " + b.current().to_string() + " differs from fzip(n, n^2)");
  // Heavy division can leave little output, so the input prefix grows until
  // enough output is compared.
  std::size_t input_bits = prefix_bits;
  PrefixCheck pc = pipeline_prefix_check(b.ops(), g, fzip_n_n2(), input_bits);
  while (pc.agrees && pc.output_bits < kDiamondOutputBits && input_bits < kDiamondInputLimit) {
    input_bits *= 2;
    pc = pipeline_prefix_check(b.ops(), g, fzip_n_n2(), input_bits);
  }
  if (!pc.agrees) return failed(report, "compiled transducer disagrees with fzip(n, n^2) on a prefix");
  report.verified = true;
  report.details = "image equals fzip(n, n^2); transducer output agrees on " + std::to_string(pc.output_bits) +
                   " bits from " + std::to_string(input_bits) + " input bits";
  return report;
}

DiamondReport diamond_n2_weights(const PiecewisePoly& g) {
  if (classify_pieces(g) != CaseTag::AllQuadratic) throw DomainError("not AllQuadratic: g has a linear piece");
  DiamondReport report(g, CaseTag::AllQuadratic);
  const std::uint64_t N = g.modulus();
  auto beta = [&](const PiecewisePoly& f, std::uint64_t r) -> Rational {
    return f.piece(r).coefficient(1) / f.piece(r).coefficient(2);
  };

  // Shift by a multiple of N so that every b_r / a_r is nonnegative.
  Rational lowest = 0;
  for (std::uint64_t r = 0; r < N; ++r) lowest = std::min(lowest, beta(g, r));
  const std::uint64_t n0 = N * to_u64(ceil(-lowest / (2 * N)));
  const PiecewisePoly target = pw_shift(g, static_cast<std::int64_t>(n0));

  // Output r of cycle t is S_r (t L + tau_r)^2 + const, read from the two
  // inputs around tau_r; windows must be in increasing order.
  std::vector<Rational> b(N + 1);
  for (std::uint64_t r = 0; r < N; ++r) b[r] = beta(target, r);
  b[N] = b[0];
  Rational min_gap = 0;
  for (std::uint64_t r = 0; r < N; ++r) {
    const Rational gap = 2 + b[r + 1] - b[r];
    if (gap <= 0)
      return failed(report, "class " + std::to_string(r + 1 == N ? 0 : r + 1) +
                                " is centred at or before class " + std::to_string(r) +
                                "; no single weight product of n^2 gives g");
    if (r == 0 || gap < min_gap) min_gap = gap;
  }
  const Integer mu = ceil(2 / min_gap);
  const Integer L = 2 * Integer(N) * mu;
  std::vector<Rational> tau(N + 1);
  for (std::uint64_t r = 0; r <= N; ++r) tau[r] = mu * (2 * Rational(Integer(r)) + b[r]);
  const Integer m0 = floor(tau[0]);

  std::vector<Weight> weights;
  for (std::uint64_t r = 0; r < N; ++r) {
    const Integer width = floor(tau[r + 1]) - floor(tau[r]);
    const Rational S = target.piece(r).coefficient(2) * N * N / (L * L);
    const Rational phi = tau[r] - floor(tau[r]);
    std::vector<Rational> coeffs(to_u64(width), Rational(0));
    coeffs[0] = S * (1 - phi);
    coeffs[1] = S * phi;
    weights.emplace_back(std::move(coeffs), Rational(0));
  }
  const Polynomial n = Polynomial::variable();
  const PiecewisePoly source = pw_shift(PiecewisePoly(n * n), static_cast<std::int64_t>(to_u64(m0)));
  const WeightTuple solved = solve_constants(WeightTuple(std::move(weights)), source, target);
  Certificate c{BlockFunction(PiecewisePoly(n * n)), BlockFunction(g), solved, to_u64(m0), n0};
  report.certificate = c;
  report.final_shift = n0;
  const Verdict v = certificate_check(c, c.depth);
  report.verified = v.kind == Verdict::Kind::ProvedSymbolic;
  report.details = v.to_string();
  return report;
}

DiamondReport diamond_linear_weights(const PiecewisePoly& g, std::size_t prefix_bits) {
  if (classify_pieces(g) != CaseTag::AllLinear) throw DomainError("not AllLinear: g has a quadratic piece");
  DiamondReport report(g, CaseTag::AllLinear);
  if (auto v = pipeline_validate({}, g); !v.empty()) return failed(std::move(report), v.front().to_string());
  const std::uint64_t N = g.modulus();
  const Polynomial n = Polynomial::variable();

  // g = alpha (x) n with alpha_r = <a_r, b_r>.
  std::vector<Weight> weights;
  for (std::uint64_t r = 0; r < N; ++r) weights.emplace_back(std::vector{g.piece(r).coefficient(1)}, g.piece(r).coefficient(0));
  const WeightTuple tuple(std::move(weights));
  Certificate c{BlockFunction(n), BlockFunction(g), tuple, 0, 0};
  report.certificate = c;
  const Verdict v = certificate_check(c, c.depth);
  if (v.kind != Verdict::Kind::ProvedSymbolic) return failed(report, "certificate: " + v.to_string());

  // n -> g: naturalized merge, negative constants removed per class, then the scale divided out.
  PipelineBuilder fwd{PiecewisePoly(n)};
  {
    const Naturalized nat = naturalize(tuple);
    std::vector<Weight> clipped;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> deficits;
    for (std::uint64_t r = 0; r < N; ++r) {
      const Weight& w = nat.tuple[r];
      if (w.constant() < 0) deficits.emplace_back(r, to_u64(-w.constant().get_num()));
      clipped.emplace_back(w.coeffs(), std::max(w.constant(), Rational(0)));
    }
    bool ok = fwd.push(MergeWeights{WeightTuple(std::move(clipped))});
    for (auto [r, d] : deficits) ok = ok && fwd.push(SubZeros{ResidueSet::single(r, N), d});
    if (ok && nat.scale > 1) ok = fwd.push(DivBlock{ResidueSet::all(), to_u64(nat.scale)});
    report.forward = fwd.ops();
    if (!ok) return builder_failure(report, fwd);
    if (!pw_equal(fwd.current(), g)) return failed(report, "forward pipeline image differs from g");
    if (!pipeline_prefix_check(fwd.ops(), n, g, prefix_bits).agrees)
      return failed(report, "forward transducer disagrees with g on a prefix");
  }

  // g -> n: keep residue 0, remove its constant, divide by its slope.
  PipelineBuilder rev(g);
  {
    const Polynomial p0 = progression(g.piece(0), 0, N);
    const auto b0 = natural(p0.coefficient(0));
    const auto a0 = natural(p0.coefficient(1));
    if (!a0 || !b0) return failed(report, "class 0 of g has non-natural coefficients");
    bool ok = N == 1 || rev.push(SelectResidues{ResidueSet::single(0, N)});
    if (ok && *b0 > 0) ok = rev.push(SubZeros{ResidueSet::all(), *b0});
    if (ok && *a0 > 1) ok = rev.push(DivBlock{ResidueSet::all(), *a0});
    report.pipeline = rev.ops();
    if (!ok) return builder_failure(report, rev);
    if (!pw_equal(rev.current(), PiecewisePoly(n))) return failed(report, "reverse pipeline image differs from n");
    if (!pipeline_prefix_check(rev.ops(), g, n, prefix_bits).agrees)
      return failed(report, "reverse transducer disagrees with n on a prefix");
  }
  report.verified = true;
  report.details = "ProvedSymbolic; both pipelines agree on " + std::to_string(prefix_bits) + " input bits";
  return report;
}

}  // namespace tdeg
