#include "tdeg/piecewise.hpp"

#include <algorithm>
#include <sstream>

#include "tdeg/error.hpp"

namespace tdeg {

namespace {

// Past this bound the derivative of p keeps the sign of its leading coefficient.
Integer monotone_bound(const Polynomial& p) {
  const Polynomial d = p.derivative();
  if (d.degree() <= 0) return 0;
  Rational worst = 0;
  for (int i = 0; i < d.degree(); ++i) {
    Rational ratio = abs(d.coefficient(static_cast<std::size_t>(i)) / d.leading());
    if (ratio > worst) worst = ratio;
  }
  return ceil(worst) + 1;
}

constexpr std::uint64_t kScanLimit = 50'000'000;

}  // namespace

PiecewisePoly::PiecewisePoly(std::uint64_t modulus, std::vector<Polynomial> pieces)
    : modulus_(modulus), pieces_(std::move(pieces)) {
  if (modulus_ == 0) throw DomainError("modulus must be positive");
  if (pieces_.size() != modulus_)
    throw DomainError("expected " + std::to_string(modulus_) + " pieces, got " + std::to_string(pieces_.size()));
  canonicalize();
}

PiecewisePoly::PiecewisePoly(Polynomial single) : modulus_(1), pieces_{std::move(single)} {}

void PiecewisePoly::canonicalize() {
  for (std::uint64_t d = 1; d < modulus_; ++d) {
    if (modulus_ % d != 0) continue;
    bool periodic = true;
    for (std::uint64_t r = d; r < modulus_ && periodic; ++r) periodic = pieces_[r] == pieces_[r % d];
    if (periodic) {
      pieces_.resize(d);
      modulus_ = d;
      return;
    }
  }
}

std::vector<Polynomial> PiecewisePoly::refined_pieces(std::uint64_t modulus) const {
  if (modulus == 0 || modulus % modulus_ != 0)
    throw DomainError("cannot refine modulus " + std::to_string(modulus_) + " to " + std::to_string(modulus));
  std::vector<Polynomial> out;
  out.reserve(modulus);
  for (std::uint64_t r = 0; r < modulus; ++r) out.push_back(pieces_[r % modulus_]);
  return out;
}

int PiecewisePoly::max_degree() const {
  int d = -1;
  for (const auto& p : pieces_) d = std::max(d, p.degree());
  return d;
}

Rational PiecewisePoly::value(std::uint64_t n) const { return pieces_[n % modulus_](Rational(Integer(n))); }

Rational PiecewisePoly::value_at(const Integer& n) const {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), n.get_mpz_t(), modulus_);
  return pieces_[r.get_ui()](Rational(n));
}

Integer PiecewisePoly::eval(std::uint64_t n) const {
  Rational v = value(n);
  if (!is_integer(v)) throw DomainError("f(" + std::to_string(n) + ") = " + v.get_str() + " is not an integer");
  return v.get_num();
}

bool PiecewisePoly::is_integer_valued() const {
  for (std::uint64_t r = 0; r < modulus_; ++r)
    if (!integer_valued_on_naturals(progression(pieces_[r], r, modulus_))) return false;
  return true;
}

std::string PiecewisePoly::to_string() const {
  if (modulus_ == 1) return "poly: " + pieces_[0].to_string();
  std::ostringstream out;
  out << "pw mod " << modulus_ << " { ";
  for (std::uint64_t r = 0; r < modulus_; ++r) {
    if (r) out << "; ";
    out << r << ": " << pieces_[r].to_string();
  }
  out << " }";
  return out.str();
}

Polynomial progression(const Polynomial& piece, std::uint64_t residue, std::uint64_t modulus) {
  return piece.compose_affine(Rational(Integer(modulus)), Rational(Integer(residue)));
}

bool integer_valued_on_naturals(const Polynomial& p) {
  // A degree-d polynomial integral on d + 1 consecutive integers has integral
  // forward differences, hence is integral on every integer.
  for (int t = 0; t <= std::max(p.degree(), 0); ++t)
    if (!is_integer(p(Rational(t)))) return false;
  return true;
}

std::optional<Rational> min_on_naturals(const Polynomial& p) {
  if (p.degree() >= 1 && p.leading() < 0) return std::nullopt;
  if (p.degree() <= 0) return p.coefficient(0);
  const Integer bound = monotone_bound(p);
  if (bound > kScanLimit) throw DomainError("polynomial minimum search exceeds scan limit");
  const std::uint64_t limit = bound.get_ui();
  Rational best = p(Rational(0));
  for (std::uint64_t t = 1; t <= limit; ++t) {
    Rational v = p(Rational(Integer(t)));
    if (v < best) best = v;
  }
  return best;
}

std::optional<std::vector<std::uint64_t>> naturals_below(const Polynomial& p, const Rational& threshold) {
  if (p.degree() <= 0) {
    if (p.coefficient(0) < threshold) return std::nullopt;
    return std::vector<std::uint64_t>{};
  }
  if (p.leading() < 0) return std::nullopt;
  const Integer bound = monotone_bound(p);
  if (bound > kScanLimit) throw DomainError("polynomial threshold search exceeds scan limit");
  std::vector<std::uint64_t> out;
  for (std::uint64_t t = 0;; ++t) {
    const bool below = p(Rational(Integer(t))) < threshold;
    if (below) out.push_back(t);
    if (!below && Integer(t) >= bound) break;
    if (t > kScanLimit) throw DomainError("polynomial threshold search exceeds scan limit");
  }
  return out;
}

PiecewisePoly pw_shift(const PiecewisePoly& f, std::int64_t k) {
  const std::uint64_t N = f.modulus();
  const std::int64_t m = static_cast<std::int64_t>(N);
  std::vector<Polynomial> pieces;
  pieces.reserve(N);
  for (std::uint64_t r = 0; r < N; ++r) {
    const std::int64_t src = ((static_cast<std::int64_t>(r) + k) % m + m) % m;
    pieces.push_back(f.piece(static_cast<std::uint64_t>(src)).compose_affine(1, Rational(k)));
  }
  return PiecewisePoly(N, std::move(pieces));
}

bool pw_equal(const PiecewisePoly& f, const PiecewisePoly& g) {
  const std::uint64_t M = lcm(f.modulus(), g.modulus());
  return f.refined_pieces(M) == g.refined_pieces(M);
}

PiecewisePoly pw_from_fzip(const PiecewisePoly& f, const PiecewisePoly& g) {
  const std::uint64_t M = lcm(f.modulus(), g.modulus());
  std::vector<Polynomial> pieces;
  pieces.reserve(2 * M);
  const Rational half(1, 2);
  for (std::uint64_t s = 0; s < 2 * M; ++s) {
    if (s % 2 == 0)
      pieces.push_back(f.piece(s / 2).compose_affine(half, 0));
    else
      pieces.push_back(g.piece((s - 1) / 2).compose_affine(half, Rational(-1, 2)));
  }
  return PiecewisePoly(2 * M, std::move(pieces));
}

std::optional<Rational> pw_min(const PiecewisePoly& f) {
  std::optional<Rational> best;
  for (std::uint64_t r = 0; r < f.modulus(); ++r) {
    auto m = min_on_naturals(progression(f.piece(r), r, f.modulus()));
    if (!m) return std::nullopt;
    if (!best || *m < *best) best = *m;
  }
  return best;
}

Normalized pw_normalize(const PiecewisePoly& f) {
  for (std::uint64_t r = 0; r < f.modulus(); ++r) {
    const auto& p = f.piece(r);
    if (p.degree() >= 1 && p.leading() < 0)
      throw DomainError("piece " + std::to_string(r) + " has a negative leading coefficient");
  }
  const Rational m = *pw_min(f);
  Integer offset = m < 0 ? ceil(-m) : Integer(0);
  std::vector<Polynomial> pieces;
  for (const auto& p : f.pieces()) pieces.push_back(p + Polynomial::constant(Rational(offset)));
  return {PiecewisePoly(f.modulus(), std::move(pieces)), offset};
}

std::vector<Rational> pw_values(const PiecewisePoly& f, std::uint64_t count) {
  std::vector<Rational> out;
  out.reserve(count);
  for (std::uint64_t n = 0; n < count; ++n) out.push_back(f.value(n));
  return out;
}

}  // namespace tdeg
