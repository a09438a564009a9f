#include "tdeg/weight.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

#include "tdeg/error.hpp"

namespace tdeg {

Weight::Weight(std::vector<Rational> coeffs, Rational constant)
    : coeffs_(std::move(coeffs)), constant_(std::move(constant)) {
  if (coeffs_.empty()) throw DomainError("a weight needs at least one coefficient");
  for (auto& c : coeffs_) {
    c.canonicalize();
    if (c < 0) throw DomainError("weight coefficient " + c.get_str() + " is negative");
  }
  constant_.canonicalize();
}

Weight Weight::from_elements(std::vector<Rational> elements) {
  if (elements.size() < 2) throw DomainError("a weight needs at least two elements");
  Rational b = elements.back();
  elements.pop_back();
  return Weight(std::move(elements), std::move(b));
}

bool Weight::is_constant() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

WeightTuple::WeightTuple(std::vector<Weight> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw DomainError("a weight tuple needs at least one weight");
  bool moving = false;
  for (const auto& w : weights_) moving = moving || !w.is_constant();
  if (!moving) throw DomainError("a weight tuple of constant weights only yields an ultimately periodic stream");
}

std::string WeightTuple::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (i) out << ',';
    out << '[';
    for (const auto& c : weights_[i].coeffs()) out << c.get_str() << ',';
    out << weights_[i].constant().get_str() << ']';
  }
  out << ']';
  return out.str();
}

WeightTuple parse_weight_tuple(std::string_view text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto expect = [&](char c) {
    skip();
    if (pos >= text.size() || text[pos] != c) throw ParseError(pos, std::string("expected '") + c + "'");
    ++pos;
  };
  auto accept = [&](char c) {
    skip();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  };
  auto number = [&] {
    skip();
    const std::size_t start = pos;
    while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '-' ||
                                 text[pos] == '+' || text[pos] == '/'))
      ++pos;
    try {
      return parse_rational(text.substr(start, pos - start));
    } catch (const ParseError& e) {
      throw ParseError(start + e.position(), "bad rational '" + std::string(text.substr(start, pos - start)) + "'");
    }
  };

  std::vector<Weight> weights;
  expect('[');
  do {
    const std::size_t at = pos;
    expect('[');
    std::vector<Rational> elements;
    do elements.push_back(number());
    while (accept(','));
    expect(']');
    try {
      weights.push_back(Weight::from_elements(std::move(elements)));
    } catch (const DomainError& e) {
      throw ParseError(at, e.what());
    }
  } while (accept(','));
  expect(']');
  skip();
  if (pos != text.size()) throw ParseError(pos, "unexpected trailing input");
  try {
    return WeightTuple(std::move(weights));
  } catch (const DomainError& e) {
    throw ParseError(0, e.what());
  }
}

Rational weight_apply(const Weight& w, std::span<const Rational> values) {
  if (values.size() < w.arity())
    throw DomainError("weight needs " + std::to_string(w.arity()) + " values, got " + std::to_string(values.size()));
  Rational acc = w.constant();
  for (std::size_t i = 0; i < w.arity(); ++i) acc += w.coeffs()[i] * values[i];
  return acc;
}

std::uint64_t tuple_norm(const WeightTuple& tuple) {
  std::uint64_t total = 0;
  for (const auto& w : tuple.weights()) total += w.size() - 1;
  return total;
}

ProductStep product_step(const WeightTuple& tuple, std::uint64_t n) {
  std::size_t head = 0;
  std::uint64_t shift = 0;
  for (std::uint64_t step = 0; step < n; ++step) {
    shift += tuple[head].size() - 1;
    head = (head + 1) % tuple.size();
  }
  return {head, shift, tuple[head].arity()};
}

Rational weight_product_numeric(const WeightTuple& tuple, const ValueFn& f, std::uint64_t n) {
  const ProductStep step = product_step(tuple, n);
  std::vector<Rational> values;
  values.reserve(step.count);
  for (std::size_t j = 0; j < step.count; ++j) values.push_back(f(step.first_input + j));
  return weight_apply(tuple[step.weight], values);
}

Rational weight_product_numeric(const WeightTuple& tuple, const BlockFunction& f, std::uint64_t n) {
  return weight_product_numeric(tuple, [&](std::uint64_t i) { return Rational(f(i)); }, n);
}

Rational weight_product_numeric(const WeightTuple& tuple, const PiecewisePoly& f, std::uint64_t n) {
  return weight_product_numeric(tuple, [&](std::uint64_t i) { return f.value(i); }, n);
}

Naturalized naturalize(const WeightTuple& tuple) {
  Integer scale = 1;
  for (const auto& w : tuple.weights()) {
    for (const auto& c : w.coeffs()) scale = lcm(scale, Integer(c.get_den()));
    scale = lcm(scale, Integer(w.constant().get_den()));
  }
  std::vector<Weight> out;
  for (const auto& w : tuple.weights()) {
    std::vector<Rational> coeffs;
    for (const auto& c : w.coeffs()) coeffs.push_back(c * scale);
    out.emplace_back(std::move(coeffs), w.constant() * scale);
  }
  return {WeightTuple(std::move(out)), scale};
}

PiecewisePoly weight_product_symbolic(const WeightTuple& tuple, const PiecewisePoly& f) {
  const std::uint64_t m = tuple.size();
  const std::uint64_t L = tuple_norm(tuple);
  const std::uint64_t N = f.modulus();
  const std::uint64_t period = N / std::gcd(L, N);
  const std::uint64_t M = m * period;

  std::vector<std::uint64_t> offsets(m, 0);  // c_i
  for (std::size_t i = 1; i < m; ++i) offsets[i] = offsets[i - 1] + tuple[i - 1].arity();

  const Rational slope = Rational(Integer(L)) / Integer(m);
  std::vector<Polynomial> pieces;
  pieces.reserve(M);
  for (std::uint64_t rho = 0; rho < M; ++rho) {
    const std::uint64_t i = rho % m;
    const std::uint64_t q0 = rho / m;
    const Weight& w = tuple[i];
    // first input index as a polynomial in n: slope * n + (c_i - i * slope)
    const Rational base_offset = Rational(Integer(offsets[i])) - slope * Integer(i);
    Polynomial acc = Polynomial::constant(w.constant());
    for (std::size_t j = 0; j < w.arity(); ++j) {
      if (w.coeffs()[j] == 0) continue;
      const std::uint64_t input_residue = (q0 * L + offsets[i] + j) % N;
      acc += w.coeffs()[j] * f.piece(input_residue).compose_affine(slope, base_offset + Integer(j));
    }
    pieces.push_back(std::move(acc));
  }
  return PiecewisePoly(M, std::move(pieces));
}

PiecewisePoly weight_product_symbolic(const WeightTuple& tuple, const BlockFunction& f) {
  return weight_product_symbolic(tuple, f.to_symbolic());
}

WeightTuple solve_constants(const WeightTuple& tuple, const PiecewisePoly& source, const PiecewisePoly& target) {
  std::vector<Weight> zeroed;
  for (const auto& w : tuple.weights()) zeroed.emplace_back(w.coeffs(), Rational(0));
  const WeightTuple base(zeroed);
  const PiecewisePoly product = weight_product_symbolic(base, source);
  const std::uint64_t m = tuple.size();
  const std::uint64_t M = lcm(lcm(product.modulus(), target.modulus()), m);
  const auto prod = product.refined_pieces(M);
  const auto want = target.refined_pieces(M);
  std::vector<std::optional<Rational>> constants(m);
  for (std::uint64_t r = 0; r < M; ++r) {
    const Polynomial diff = want[r] - prod[r];
    if (!diff.is_constant())
      throw DomainError("weights do not match the target up to constants on residue " + std::to_string(r));
    const Rational c = diff.coefficient(0);
    auto& slot = constants[r % m];
    if (slot && *slot != c) throw DomainError("weight " + std::to_string(r % m) + " needs two different constants");
    slot = c;
  }
  std::vector<Weight> out;
  for (std::uint64_t i = 0; i < m; ++i) out.emplace_back(tuple[i].coeffs(), *constants[i]);
  return WeightTuple(std::move(out));
}

}  // namespace tdeg
