#include "tdeg/certificate.hpp"

#include <json.hpp>

#include "tdeg/error.hpp"
#include "tdeg/literal.hpp"

namespace tdeg {

std::string Verdict::to_string() const {
  switch (kind) {
    case Kind::ProvedSymbolic:
      return "ProvedSymbolic";
    case Kind::VerifiedToDepth:
      return "VerifiedToDepth " + std::to_string(depth);
    case Kind::Refuted:
      return "Refuted at n=" + std::to_string(*at) + " (expected " + expected.get_str() + ", got " +
             actual.get_str() + ")";
  }
  return {};
}

namespace {

ValueFn values_of(const BlockFunction& f, std::uint64_t shift) {
  if (f.is_symbolic()) {
    return [g = f.to_symbolic(), shift](std::uint64_t n) { return g.value(n + shift); };
  }
  return [f, shift](std::uint64_t n) { return Rational(f(n + shift)); };
}

std::optional<Verdict> first_mismatch(const Certificate& c, std::uint64_t limit) {
  const ValueFn source = values_of(c.source, c.m0);
  const ValueFn target = values_of(c.target, c.n0);
  for (std::uint64_t n = 0; n < limit; ++n) {
    const Rational want = target(n);
    const Rational got = weight_product_numeric(c.weights, source, n);
    if (want != got) {
      Verdict v{Verdict::Kind::Refuted};
      v.at = n;
      v.expected = want;
      v.actual = got;
      return v;
    }
  }
  return std::nullopt;
}

}  // namespace

Verdict certificate_check(const Certificate& c, std::uint64_t depth) {
  if (c.source.is_symbolic() && c.target.is_symbolic()) {
    const PiecewisePoly lhs = pw_shift(c.target.to_symbolic(), static_cast<std::int64_t>(c.n0));
    const PiecewisePoly rhs =
        weight_product_symbolic(c.weights, pw_shift(c.source.to_symbolic(), static_cast<std::int64_t>(c.m0)));
    if (pw_equal(lhs, rhs)) return {Verdict::Kind::ProvedSymbolic};
    // Two distinct pieces of degree <= d differ somewhere in their first d + 1
    // points of a residue class, so this scan always finds the mismatch.
    const std::uint64_t M = lcm(lhs.modulus(), rhs.modulus());
    const int d = std::max(lhs.max_degree(), rhs.max_degree());
    if (auto v = first_mismatch(c, M * static_cast<std::uint64_t>(std::max(d, 0) + 1))) return *v;
    throw Error("symbolic mismatch not located numerically");
  }
  if (auto v = first_mismatch(c, depth)) return *v;
  Verdict v{Verdict::Kind::VerifiedToDepth};
  v.depth = depth;
  return v;
}

std::string certificate_to_json(const Certificate& c) {
  nlohmann::ordered_json j;
  j["source"] = c.source.to_string();
  j["target"] = c.target.to_string();
  auto weights = nlohmann::json::array();
  for (const auto& w : c.weights.weights()) {
    auto entry = nlohmann::json::array();
    for (const auto& a : w.coeffs()) entry.push_back(a.get_str());
    entry.push_back(w.constant().get_str());
    weights.push_back(entry);
  }
  j["weights"] = weights;
  j["m0"] = c.m0;
  j["n0"] = c.n0;
  j["depth"] = c.depth;
  return j.dump(2);
}

Certificate certificate_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.byte, "invalid JSON");
  }
  auto field = [&](const char* name) -> const nlohmann::json& {
    if (!j.contains(name)) throw ParseError(0, std::string("missing field '") + name + "'");
    return j.at(name);
  };
  auto rational = [](const nlohmann::json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(Integer(v.dump(), 10));
    throw ParseError(0, "weight entries must be integers or \"p/q\" strings");
  };
  auto natural = [&](const char* name, std::uint64_t fallback) {
    if (!j.contains(name)) return fallback;
    const auto& v = j.at(name);
    if (!v.is_number_unsigned()) throw ParseError(0, std::string("field '") + name + "' must be a natural");
    return v.get<std::uint64_t>();
  };
  try {
    std::vector<Weight> weights;
    const auto& ws = field("weights");
    if (!ws.is_array()) throw ParseError(0, "field 'weights' must be a list of lists");
    for (const auto& w : ws) {
      if (!w.is_array()) throw ParseError(0, "field 'weights' must be a list of lists");
      std::vector<Rational> elements;
      for (const auto& x : w) elements.push_back(rational(x));
      weights.push_back(Weight::from_elements(std::move(elements)));
    }
    if (!field("source").is_string() || !field("target").is_string())
      throw ParseError(0, "source and target must be function literals");
    return Certificate{parse_function(field("source").get<std::string>()),
                       parse_function(field("target").get<std::string>()),
                       WeightTuple(std::move(weights)),
                       natural("m0", 0),
                       natural("n0", 0),
                       natural("depth", 100)};
  } catch (const DomainError& e) {
    throw ParseError(0, e.what());
  }
}

}  // namespace tdeg
