#include "tdeg/block_function.hpp"

#include "overloaded.hpp"
#include "tdeg/error.hpp"

namespace tdeg {

using detail::overloaded;

BlockFunction BlockFunction::exponential(const Integer& scale, const Integer& base) {
  if (scale < 1) throw DomainError("exponential scale must be >= 1");
  if (base < 2) throw DomainError("exponential base must be >= 2");
  return BlockFunction(Variant(Exponential{scale, base}));
}

BlockFunction BlockFunction::fzip(BlockFunction left, BlockFunction right) {
  return BlockFunction(Variant(Fzip{std::make_shared<const BlockFunction>(std::move(left)),
                                    std::make_shared<const BlockFunction>(std::move(right))}));
}

BlockFunction BlockFunction::shifted(BlockFunction base, std::uint64_t k) {
  return BlockFunction(Variant(Shifted{std::make_shared<const BlockFunction>(std::move(base)), k}));
}

Integer BlockFunction::operator()(std::uint64_t n) const {
  return std::visit(overloaded{
                        [&](const PiecewisePoly& f) { return f.eval(n); },
                        [&](const Exponential& e) {
                          Integer power;
                          mpz_pow_ui(power.get_mpz_t(), e.base.get_mpz_t(), n);
                          return Integer(e.scale * power);
                        },
                        [&](const Fzip& z) { return n % 2 == 0 ? (*z.left)(n / 2) : (*z.right)((n - 1) / 2); },
                        [&](const Shifted& s) { return (*s.base)(n + s.k); },
                    },
                    v_);
}

bool BlockFunction::is_symbolic() const {
  return std::visit(overloaded{
                        [](const PiecewisePoly&) { return true; },
                        [](const Exponential&) { return false; },
                        [](const Fzip& z) { return z.left->is_symbolic() && z.right->is_symbolic(); },
                        [](const Shifted& s) { return s.base->is_symbolic(); },
                    },
                    v_);
}

PiecewisePoly BlockFunction::to_symbolic() const {
  return std::visit(overloaded{
                        [](const PiecewisePoly& f) { return f; },
                        [](const Exponential&) -> PiecewisePoly {
                          throw NotSymbolicError("exponential block functions are evaluation-only");
                        },
                        [](const Fzip& z) { return pw_from_fzip(z.left->to_symbolic(), z.right->to_symbolic()); },
                        [](const Shifted& s) {
                          return pw_shift(s.base->to_symbolic(), static_cast<std::int64_t>(s.k));
                        },
                    },
                    v_);
}

std::string BlockFunction::to_string() const {
  return std::visit(overloaded{
                        [](const PiecewisePoly& f) { return f.to_string(); },
                        [](const Exponential& e) {
                          return "exp(" + e.scale.get_str() + ", " + e.base.get_str() + ")";
                        },
                        [](const Fzip& z) {
                          return "fzip(" + z.left->to_string() + ", " + z.right->to_string() + ")";
                        },
                        [](const Shifted& s) {
                          return "shift(" + s.base->to_string() + ", " + std::to_string(s.k) + ")";
                        },
                    },
                    v_);
}

Integer pw_eval(const BlockFunction& f, std::uint64_t n) { return f(n); }

}  // namespace tdeg
