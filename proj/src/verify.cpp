#include "tdeg/verify.hpp"

#include "tdeg/error.hpp"
#include "tdeg/literal.hpp"

namespace tdeg {

void SuiteResult::record(bool pass, const std::string& label) {
  ++total;
  if (pass)
    ++passed;
  else
    failures.push_back(label);
}

std::string SuiteResult::summary() const {
  return name + ": " + std::to_string(passed) + "/" + std::to_string(total);
}

std::uint64_t uniform(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

BitWord stream_from_values(const std::function<Integer(std::uint64_t)>& value, std::size_t length) {
  BitWord out;
  out.reserve(length);
  for (std::uint64_t n = 0; out.size() < length; ++n) {
    out.push_back(true);
    const Integer v = value(n);
    if (v < 0) throw NegativeBlockError("block " + std::to_string(n) + " is negative");
    const std::size_t room = length - out.size();
    out.append_zeros(v > room ? room : to_u64(v));
  }
  return out.prefix(length);
}

namespace {

using ValueOracle = std::function<Integer(std::uint64_t)>;

Polynomial n_poly() { return Polynomial::variable(); }

PiecewisePoly scaled(const PiecewisePoly& f, const Rational& c) {
  std::vector<Polynomial> pieces;
  for (const auto& p : f.pieces()) pieces.push_back(p * c);
  return PiecewisePoly(f.modulus(), std::move(pieces));
}

PiecewisePoly offset(const PiecewisePoly& f, const Rational& c) {
  std::vector<Polynomial> pieces;
  for (const auto& p : f.pieces()) pieces.push_back(p + Polynomial::constant(c));
  return PiecewisePoly(f.modulus(), std::move(pieces));
}

// Symbolic image and transducer output both agree with the oracle.
bool pipeline_matches(const Pipeline& pipeline, const PiecewisePoly& input, const ValueOracle& oracle,
                      std::size_t prefix_bits) {
  const PiecewisePoly image = pipeline_symbolic(pipeline, input);
  for (std::uint64_t n = 0; n < 100; ++n)
    if (image.value(n) != Rational(oracle(n))) return false;
  const BitWord out = compile_pipeline(pipeline).run(stream_prefix(input, prefix_bits));
  return !out.empty() && out == stream_from_values(oracle, out.size());
}

Weight random_weight(Rng& rng, std::size_t arity, std::uint64_t max_coeff, std::uint64_t max_const) {
  std::vector<Rational> coeffs(arity);
  for (auto& c : coeffs) c = Rational(Integer(uniform(rng, 0, max_coeff)));
  coeffs[uniform(rng, 0, arity - 1)] = Rational(Integer(uniform(rng, 1, std::max<std::uint64_t>(max_coeff, 1))));
  return Weight(std::move(coeffs), Rational(Integer(uniform(rng, 0, max_const))));
}

}  // namespace

SuiteResult verify_lemma24(std::size_t prefix_bits) {
  SuiteResult result("lemma24");
  const Polynomial n = n_poly();
  const std::vector<std::pair<std::string, PiecewisePoly>> inputs = {
      {"n", PiecewisePoly(n)},
      {"n^2", PiecewisePoly(n * n)},
      {"n^2 + n", PiecewisePoly(n * n + n)},
      {"pw mod 2 { 0: n + 1; 1: n^2 }", parse_piecewise("pw mod 2 { 0: n + 1; 1: n^2 }")},
  };
  for (const auto& [label, f] : inputs) {
    auto at = [f = f](std::uint64_t k) { return f.eval(k); };
    struct Case {
      int item;
      Direction dir;
      Lemma24Params params;
      PiecewisePoly input;
      ValueOracle oracle;
    };
    const std::vector<Case> cases = {
        {1, Direction::Forward, {3, 0, {}}, f, [&](std::uint64_t k) -> Integer { return 3 * at(k); }},
        {1, Direction::Backward, {3, 0, {}}, scaled(f, 3), at},
        {2, Direction::Forward, {3, 0, {}}, f, [&](std::uint64_t k) -> Integer { return at(k + 3); }},
        {2, Direction::Backward, {3, 0, {to_u64(at(0)), to_u64(at(1)), to_u64(at(2))}}, pw_shift(f, 3), at},
        {3, Direction::Forward, {3, 0, {}}, f, [&](std::uint64_t k) -> Integer { return at(k) + 3; }},
        {3, Direction::Backward, {3, 0, {}}, offset(f, 3), at},
        {4, Direction::Forward, {2, 0, {}}, f, [&](std::uint64_t k) -> Integer { return at(2 * k); }},
        {5, Direction::Forward, {2, 3, {}}, f, [&](std::uint64_t k) -> Integer { return 2 * at(2 * k) + 3 * at(2 * k + 1); }},
    };
    for (const auto& c : cases) {
      const std::string name = "item " + std::to_string(c.item) +
                               (c.dir == Direction::Forward ? " forward" : " backward") + " on " + label;
      bool pass = false;
      try {
        pass = pipeline_matches(lemma24_pipeline(c.item, c.params, c.dir), c.input, c.oracle, prefix_bits);
      } catch (const Error&) {
        pass = false;
      }
      result.record(pass, name);
    }
  }
  return result;
}

SuiteResult verify_symmetry(std::size_t prefix_bits) {
  SuiteResult result("symmetry");
  const Polynomial n = n_poly();
  const std::vector<PiecewisePoly> gs = {PiecewisePoly(n * n), PiecewisePoly(n * n * n)};
  std::vector<SymmetricKind> kinds;
  for (std::uint64_t a = 1; a <= 5; ++a)
    for (std::uint64_t b = 0; b <= 5; ++b) kinds.emplace_back(LinearKind{a, b});
  for (std::uint64_t a = 1; a <= 3; ++a)
    for (std::uint64_t b : {2, 3}) kinds.emplace_back(ExponentialKind{a, b});

  for (const auto& kind : kinds) {
    const BlockFunction f = symmetric_function(kind);
    for (const auto& g : gs) {
      const std::string label = "fzip(" + f.to_string() + ", " + g.to_string() + ")";
      bool pass = false;
      try {
        const Pipeline p = fzip_symmetry_pipeline(kind);
        pass = pipeline_prefix_check(p, BlockFunction::fzip(f, g), BlockFunction::fzip(g, f), prefix_bits, 100).agrees;
        if (pass && f.is_symbolic())
          pass = pw_equal(pipeline_symbolic(p, pw_from_fzip(f.to_symbolic(), g)), pw_from_fzip(g, f.to_symbolic()));
      } catch (const Error&) {
        pass = false;
      }
      result.record(pass, label);
    }
  }

  // Dropping the first block of fzip(f, g) gives fzip(g, f(n + 1)).
  const std::vector<PiecewisePoly> fs = {PiecewisePoly(n), PiecewisePoly(n * n + Polynomial::constant(1)),
                                         parse_piecewise("pw mod 2 { 0: 2n + 1; 1: n^2 }")};
  for (const auto& f : fs) {
    for (const auto& g : gs) {
      const PiecewisePoly image = pipeline_symbolic({DropBlocks{1}}, pw_from_fzip(f, g));
      result.record(pw_equal(image, pw_from_fzip(g, pw_shift(f, 1))),
                    "drop one block of fzip(" + f.to_string() + ", " + g.to_string() + ")");
    }
  }
  return result;
}

SuiteResult verify_gamma(std::uint64_t cases, std::uint64_t depth, std::uint64_t seed) {
  SuiteResult result("gamma");
  Rng rng(seed);
  for (std::uint64_t c = 0; c < cases; ++c) {
    const std::size_t m = uniform(rng, 1, 4);
    std::vector<Weight> as;
    std::vector<Weight> bs;
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t arity = uniform(rng, 1, 3);
      as.push_back(random_weight(rng, arity, 4, 3));
      bs.push_back(random_weight(rng, arity, 4, 3));
    }
    const WeightTuple alphas(as);
    const WeightTuple betas(bs);
    const PiecewisePoly h = random_piecewise(rng, 3, 2);
    const WeightTuple gamma = gamma_interleave(alphas, betas);
    bool pass = true;
    for (std::uint64_t k = 0; k < depth && pass; ++k) {
      const Rational want = weight_product_numeric(k % 2 == 0 ? alphas : betas, h, k);
      pass = weight_product_numeric(gamma, h, k) == want;
    }
    result.record(pass, "case " + std::to_string(c) + ": " + alphas.to_string() + " / " + betas.to_string() +
                            " on " + h.to_string());
  }
  return result;
}

SuiteResult verify_quadweights(std::uint64_t grid) {
  SuiteResult result("quadweights");
  const Polynomial n = n_poly();
  for (std::uint64_t a = 1; a <= grid; ++a) {
    for (std::uint64_t b = 1; b <= grid; ++b) {
      const QuadSpec q{Rational(Integer(a)), Rational(Integer(b))};
      bool pass = false;
      try {
        const QuadWeight qw = quad_to_weight(q);
        const Polynomial source = (n + Polynomial::constant(qw.k)) * (n + Polynomial::constant(qw.k));
        const PiecewisePoly product = weight_product_symbolic(WeightTuple({qw.weight}), PiecewisePoly(source));
        pass = qw.weight.coeffs()[0] >= 0 && qw.weight.coeffs()[1] >= 0 &&
               product == PiecewisePoly(quad_polynomial(q));
      } catch (const Error&) {
        pass = false;
      }
      result.record(pass, "a=" + std::to_string(a) + " b=" + std::to_string(b));
    }
  }
  return result;
}

SuiteResult verify_quad_inverse(std::uint64_t grid) {
  SuiteResult result("quadweights-inverse");
  const Polynomial m = n_poly() + Polynomial::constant(1);
  for (std::uint64_t a = 1; a <= grid; ++a) {
    for (std::uint64_t b = 1; b < 2 * a; ++b) {
      const QuadSpec q{Rational(Integer(a)), Rational(Integer(b))};
      bool pass = false;
      try {
        const Weight w = quad_inverse_weight(q);
        const Polynomial f = q.a * (m * m) + q.b * m;
        pass = w.coeffs()[0] > 0 && w.coeffs()[1] > 0 &&
               weight_product_symbolic(WeightTuple({w}), PiecewisePoly(f)) == PiecewisePoly(m * m);
      } catch (const Error&) {
        pass = false;
      }
      result.record(pass, "a=" + std::to_string(a) + " b=" + std::to_string(b));
    }
  }
  return result;
}

SuiteResult verify_printed_constants() {
  SuiteResult result("printed-constants");
  const QuadSpec q{1, 1};
  {
    const QuadWeight qw = quad_to_weight(q);
    const Rational printed = printed_quad_constant(q);
    // n = 0 reads (k)^2 and (k + 1)^2; the target a n^2 + b n is 0.
    const std::vector<Rational> values = {Rational(qw.k * qw.k), Rational((qw.k + 1) * (qw.k + 1))};
    const Rational with_printed = weight_apply(Weight(qw.weight.coeffs(), printed), values);
    result.notes.push_back("forward a=1 b=1: printed constant " + to_string(printed) + " gives " +
                           to_string(with_printed) + " at n=0, expected 0; solved constant " +
                           to_string(qw.weight.constant()));
    result.record(printed != qw.weight.constant() && with_printed != 0, "forward printed constant");
  }
  {
    const Weight w = quad_inverse_weight(q);
    const Rational printed = printed_inverse_constant(q);
    // n = 0 reads f(0) = a + b and f(1) = 4a + 2b; the target (n + 1)^2 is 1.
    const std::vector<Rational> values = {q.a + q.b, 4 * q.a + 2 * q.b};
    const Rational with_printed = weight_apply(Weight(w.coeffs(), printed), values);
    result.notes.push_back("inverse a=1 b=1: printed constant " + to_string(printed) + " gives " +
                           to_string(with_printed) + " at n=0, expected 1; solved constant " +
                           to_string(w.constant()));
    result.record(printed != w.constant() && with_printed != 1, "inverse printed constant");
  }
  return result;
}

SuiteResult verify_diamond(std::uint64_t mixed, std::uint64_t linear, std::uint64_t quadratic, std::uint64_t seed,
                           std::size_t prefix_bits) {
  SuiteResult result("diamond");
  Rng rng(seed);
  auto run = [&](const std::string& kind, const PiecewisePoly& g, auto&& construct) {
    bool pass = false;
    std::string details;
    try {
      const DiamondReport r = construct(g);
      pass = r.verified;
      details = r.details;
    } catch (const Error& e) {
      details = e.what();
    }
    result.record(pass, kind + " " + g.to_string() + (pass ? "" : ": " + details));
  };
  for (std::uint64_t i = 0; i < mixed; ++i)
    run("mixed", random_mixed(rng), [&](const PiecewisePoly& g) { return diamond_n_pipeline(g, prefix_bits); });
  for (std::uint64_t i = 0; i < linear; ++i)
    run("linear", random_all_linear(rng),
        [&](const PiecewisePoly& g) { return diamond_linear_weights(g, prefix_bits); });
  for (std::uint64_t i = 0; i < quadratic; ++i)
    run("quadratic", random_all_quadratic(rng), [](const PiecewisePoly& g) { return diamond_n2_weights(g); });
  return result;
}

// ---------------------------------------------------------------------------

WeightTuple random_tuple(Rng& rng, std::uint64_t max_weights, std::uint64_t max_arity, std::uint64_t max_coeff,
                         std::uint64_t max_const) {
  std::vector<Weight> ws;
  const std::uint64_t m = uniform(rng, 1, max_weights);
  for (std::uint64_t i = 0; i < m; ++i) ws.push_back(random_weight(rng, uniform(rng, 1, max_arity), max_coeff, max_const));
  return WeightTuple(std::move(ws));
}

PiecewisePoly random_piecewise(Rng& rng, std::uint64_t max_modulus, int max_degree) {
  const std::uint64_t N = uniform(rng, 1, max_modulus);
  const Rational inv(1, Integer(N));
  std::vector<Polynomial> pieces;
  for (std::uint64_t r = 0; r < N; ++r) {
    const int degree = static_cast<int>(uniform(rng, 0, static_cast<std::uint64_t>(max_degree)));
    std::vector<Rational> coeffs;
    for (int d = 0; d <= degree; ++d) coeffs.emplace_back(Integer(uniform(rng, 0, 5)));
    // Natural coefficients in the index t = (n - r) / N keep the values natural.
    pieces.push_back(Polynomial(coeffs).compose_affine(inv, -Rational(Integer(r)) * inv));
  }
  return PiecewisePoly(N, std::move(pieces));
}

PiecewisePoly random_mixed(Rng& rng) {
  const PiecewisePoly base = fzip_n_n2();
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const WeightTuple t = random_tuple(rng, 3, 3, 3, 3);
    const PiecewisePoly g = pw_shift(weight_product_symbolic(t, base), static_cast<std::int64_t>(uniform(rng, 0, 3)));
    try {
      if (g.modulus() <= 6 && classify_pieces(g) == CaseTag::Mixed) return g;
    } catch (const DomainError&) {
    }
  }
  throw Error("no Mixed function generated");
}

PiecewisePoly random_all_linear(Rng& rng) {
  const std::uint64_t N = uniform(rng, 1, 4);
  const Rational inv(1, Integer(N));
  std::vector<Polynomial> pieces;
  for (std::uint64_t r = 0; r < N; ++r) {
    const Polynomial t({Rational(Integer(uniform(rng, 0, 5))), Rational(Integer(uniform(rng, 1, 5)))});
    pieces.push_back(t.compose_affine(inv, -Rational(Integer(r)) * inv));
  }
  return PiecewisePoly(N, std::move(pieces));
}

PiecewisePoly random_all_quadratic(Rng& rng) {
  const Polynomial n = n_poly();
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const WeightTuple t = random_tuple(rng, 4, 3, 4, 3);
    const PiecewisePoly source = pw_shift(PiecewisePoly(n * n), static_cast<std::int64_t>(uniform(rng, 0, 3)));
    const PiecewisePoly g = weight_product_symbolic(t, source);
    try {
      if (classify_pieces(g) == CaseTag::AllQuadratic) return g;
    } catch (const DomainError&) {
    }
  }
  throw Error("no all-quadratic function generated");
}

}  // namespace tdeg
