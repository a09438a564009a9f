#include "tdeg/block_op.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "overloaded.hpp"
#include "tdeg/error.hpp"

namespace tdeg {

using detail::overloaded;

// ---------------------------------------------------------------------------
// ResidueSet

ResidueSet::ResidueSet(std::uint64_t modulus, std::vector<std::uint64_t> residues)
    : modulus_(modulus), residues_(std::move(residues)) {
  if (modulus_ == 0) throw DomainError("residue modulus must be positive");
  if (residues_.empty()) throw DomainError("residue set must be nonempty");
  std::sort(residues_.begin(), residues_.end());
  residues_.erase(std::unique(residues_.begin(), residues_.end()), residues_.end());
  if (residues_.back() >= modulus_) throw DomainError("residue out of range");
}

bool ResidueSet::contains(std::uint64_t block) const {
  return std::binary_search(residues_.begin(), residues_.end(), block % modulus_);
}

std::string ResidueSet::to_string() const {
  if (modulus_ == 1) return "*";
  if (residues_.size() == 1) return std::to_string(residues_[0]) + "%" + std::to_string(modulus_);
  std::string out = "{";
  for (std::size_t i = 0; i < residues_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(residues_[i]);
  }
  return out + "}%" + std::to_string(modulus_);
}

// ---------------------------------------------------------------------------
// Literals

std::string to_string(const BlockOp& op) {
  return std::visit(
      overloaded{
          [](const DropBlocks& o) { return "drop " + std::to_string(o.count); },
          [](const PrependBlocks& o) { return "prepend [" + join_sizes(o.sizes) + "]"; },
          [](const AddZeros& o) { return "add " + o.where.to_string() + " " + std::to_string(o.count); },
          [](const SubZeros& o) { return "sub " + o.where.to_string() + " " + std::to_string(o.count); },
          [](const MulBlock& o) { return "mul " + o.where.to_string() + " " + std::to_string(o.factor); },
          [](const DivBlock& o) { return "div " + o.where.to_string() + " " + std::to_string(o.divisor); },
          [](const SelectResidues& o) { return "select " + o.keep.to_string(); },
          [](const MergeWeights& o) { return "merge " + o.weights.to_string(); },
      },
      op);
}

std::string to_string(const Pipeline& pipeline) {
  std::string out;
  for (std::size_t i = 0; i < pipeline.size(); ++i) {
    if (i) out += " | ";
    out += to_string(pipeline[i]);
  }
  return out;
}

namespace {

class OpParser {
 public:
  OpParser(std::string_view text, std::size_t base) : s_(text), base_(base) {}

  BlockOp op() {
    const std::string word = identifier();
    if (word == "drop") return DropBlocks{natural()};
    if (word == "prepend") {
      expect('[');
      std::vector<std::uint64_t> sizes;
      if (!accept(']')) {
        do sizes.push_back(natural());
        while (accept(','));
        expect(']');
      }
      return PrependBlocks{std::move(sizes)};
    }
    if (word == "add") {
      ResidueSet r = residues();
      return AddZeros{r, natural()};
    }
    if (word == "sub") {
      ResidueSet r = residues();
      return SubZeros{r, natural()};
    }
    if (word == "mul") {
      ResidueSet r = residues();
      return MulBlock{r, positive()};
    }
    if (word == "div") {
      ResidueSet r = residues();
      return DivBlock{r, positive()};
    }
    if (word == "select") return SelectResidues{residues()};
    if (word == "merge") {
      skip();
      const std::size_t at = pos_;
      try {
        auto tuple = parse_weight_tuple(s_.substr(pos_));
        pos_ = s_.size();
        return MergeWeights{std::move(tuple)};
      } catch (const ParseError& e) {
        throw ParseError(base_ + at + e.position(), e.what());
      }
    }
    fail("unknown op '" + word + "'");
  }

  void finish() {
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
  }

 private:
  ResidueSet residues() {
    skip();
    if (accept('*')) return ResidueSet::all();
    if (s_.substr(pos_, 3) == "all") {
      pos_ += 3;
      return ResidueSet::all();
    }
    std::vector<std::uint64_t> rs;
    if (accept('{')) {
      do rs.push_back(natural());
      while (accept(','));
      expect('}');
    } else {
      rs.push_back(natural());
    }
    expect('%');
    const std::size_t at = pos_;
    const std::uint64_t modulus = positive();
    try {
      return ResidueSet(modulus, std::move(rs));
    } catch (const DomainError& e) {
      throw ParseError(base_ + at, e.what());
    }
  }

  std::string identifier() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an op name");
    return std::string(s_.substr(start, pos_ - start));
  }

  std::uint64_t natural() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a natural number");
    try {
      return std::stoull(std::string(s_.substr(start, pos_ - start)));
    } catch (const std::exception&) {
      throw ParseError(base_ + start, "number too large");
    }
  }

  std::uint64_t positive() {
    const std::size_t at = pos_;
    const std::uint64_t v = natural();
    if (v == 0) throw ParseError(base_ + at, "expected a positive number");
    return v;
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(base_ + pos_, message); }

  std::string_view s_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

}  // namespace

Pipeline parse_pipeline(std::string_view text) {
  Pipeline out;
  std::size_t start = 0;
  bool all_blank = text.find_first_not_of(" \t\n") == std::string_view::npos;
  if (all_blank) return out;
  while (start <= text.size()) {
    std::size_t end = text.find_first_of("|;", start);
    if (end == std::string_view::npos) end = text.size();
    OpParser p(text.substr(start, end - start), start);
    out.push_back(p.op());
    p.finish();
    start = end + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Compilation

namespace {

BitWord ones_and_zeros(std::uint64_t zeros, bool leading_one) {
  BitWord w;
  if (leading_one) w.push_back(true);
  w.append_zeros(zeros);
  return w;
}

const BitWord kEmpty;
const BitWord kZero = BitWord::from_string("0");
const BitWord kOne = BitWord::from_string("1");

Fst::Row row(Fst::State on0, BitWord out0, Fst::State on1, BitWord out1) {
  return Fst::Row{Fst::Edge{on0, std::move(out0)}, Fst::Edge{on1, std::move(out1)}};
}

Fst::State st(std::uint64_t v) { return static_cast<Fst::State>(v); }

Fst compile_drop(const DropBlocks& o) {
  std::vector<Fst::Row> t;
  const std::uint64_t copy = o.count + 1;
  for (std::uint64_t j = 0; j <= o.count; ++j)
    t.push_back(j < o.count ? row(st(j), kEmpty, st(j + 1), kEmpty) : row(st(j), kEmpty, st(copy), kOne));
  t.push_back(row(st(copy), kZero, st(copy), kOne));
  return Fst(std::move(t));
}

Fst compile_prepend(const PrependBlocks& o) {
  BitWord head;
  for (auto s : o.sizes) head.append(ones_and_zeros(s, true));
  head.push_back(true);
  return Fst({row(0, kEmpty, 1, head), row(1, kZero, 1, kOne)});
}

Fst compile_add(const AddZeros& o) {
  const std::uint64_t N = o.where.modulus();
  auto open = [&](std::uint64_t r) { return ones_and_zeros(o.where.contains(r) ? o.count : 0, true); };
  std::vector<Fst::Row> t{row(0, kEmpty, 1, open(0))};
  for (std::uint64_t r = 0; r < N; ++r) t.push_back(row(st(1 + r), kZero, st(1 + (r + 1) % N), open((r + 1) % N)));
  return Fst(std::move(t));
}

Fst compile_sub(const SubZeros& o) {
  const std::uint64_t N = o.where.modulus();
  const std::uint64_t c = o.count;
  auto id = [&](std::uint64_t r, std::uint64_t j) { return st(1 + r * (c + 1) + j); };
  auto enter = [&](std::uint64_t r) { return id(r, o.where.contains(r) ? 0 : c); };
  std::vector<Fst::Row> t{row(0, kEmpty, enter(0), kOne)};
  for (std::uint64_t r = 0; r < N; ++r) {
    for (std::uint64_t j = 0; j < c; ++j) t.push_back(row(id(r, j + 1), kEmpty, id(r, j + 1), kEmpty));
    t.push_back(row(id(r, c), kZero, enter((r + 1) % N), kOne));
  }
  return Fst(std::move(t));
}

Fst compile_mul(const MulBlock& o) {
  const std::uint64_t N = o.where.modulus();
  std::vector<Fst::Row> t{row(0, kEmpty, 1, kOne)};
  for (std::uint64_t r = 0; r < N; ++r)
    t.push_back(row(st(1 + r), ones_and_zeros(o.where.contains(r) ? o.factor : 1, false), st(1 + (r + 1) % N), kOne));
  return Fst(std::move(t));
}

Fst compile_div(const DivBlock& o) {
  const std::uint64_t N = o.where.modulus();
  const std::uint64_t q = o.divisor;
  auto id = [&](std::uint64_t r, std::uint64_t j) { return st(1 + r * q + j); };
  std::vector<Fst::Row> t{row(0, kEmpty, id(0, 0), kOne)};
  for (std::uint64_t r = 0; r < N; ++r) {
    const Fst::State next = id((r + 1) % N, 0);
    for (std::uint64_t j = 0; j < q; ++j) {
      if (!o.where.contains(r))
        t.push_back(row(id(r, j), kZero, next, kOne));
      else if (j + 1 == q)
        t.push_back(row(id(r, 0), kZero, next, kOne));
      else
        t.push_back(row(id(r, j + 1), kEmpty, next, kOne));
    }
  }
  return Fst(std::move(t));
}

Fst compile_select(const SelectResidues& o) {
  const std::uint64_t N = o.keep.modulus();
  auto open = [&](std::uint64_t r) { return o.keep.contains(r) ? kOne : kEmpty; };
  std::vector<Fst::Row> t{row(0, kEmpty, 1, open(0))};
  for (std::uint64_t r = 0; r < N; ++r)
    t.push_back(row(st(1 + r), o.keep.contains(r) ? kZero : kEmpty, st(1 + (r + 1) % N), open((r + 1) % N)));
  return Fst(std::move(t));
}

std::uint64_t natural_entry(const Rational& v, const char* what) {
  if (!is_integer(v) || v < 0)
    throw DomainError(std::string("merge ") + what + " " + v.get_str() + " is not a natural number");
  return to_u64(v.get_num());
}

Fst compile_merge(const MergeWeights& o) {
  const auto& ws = o.weights.weights();
  std::vector<std::uint64_t> offset(ws.size(), 0);
  for (std::size_t i = 1; i < ws.size(); ++i) offset[i] = offset[i - 1] + ws[i - 1].arity();
  auto id = [&](std::size_t i, std::size_t t) { return st(1 + offset[i] + t); };
  std::vector<Fst::Row> t{row(0, kEmpty, id(0, 0), kOne)};
  for (std::size_t i = 0; i < ws.size(); ++i) {
    const std::uint64_t b = natural_entry(ws[i].constant(), "constant");
    for (std::size_t k = 0; k < ws[i].arity(); ++k) {
      const BitWord zeros = ones_and_zeros(natural_entry(ws[i].coeffs()[k], "coefficient"), false);
      if (k + 1 < ws[i].arity()) {
        t.push_back(row(id(i, k), zeros, id(i, k + 1), kEmpty));
      } else {
        BitWord close = ones_and_zeros(b, false);
        close.push_back(true);
        t.push_back(row(id(i, k), zeros, id((i + 1) % ws.size(), 0), close));
      }
    }
  }
  return Fst(std::move(t));
}

}  // namespace

Fst compile_block_op(const BlockOp& op) {
  return std::visit(overloaded{
                        [](const DropBlocks& o) { return compile_drop(o); },
                        [](const PrependBlocks& o) { return compile_prepend(o); },
                        [](const AddZeros& o) { return compile_add(o); },
                        [](const SubZeros& o) { return compile_sub(o); },
                        [](const MulBlock& o) {
                          if (o.factor == 0) throw DomainError("mul factor must be >= 1");
                          return compile_mul(o);
                        },
                        [](const DivBlock& o) {
                          if (o.divisor == 0) throw DomainError("div divisor must be >= 1");
                          return compile_div(o);
                        },
                        [](const SelectResidues& o) { return compile_select(o); },
                        [](const MergeWeights& o) { return compile_merge(o); },
                    },
                    op);
}

std::size_t state_budget(const BlockOp& op) {
  return std::visit(overloaded{
                        [](const DropBlocks& o) -> std::size_t { return o.count + 2; },
                        [](const PrependBlocks&) -> std::size_t { return 2; },
                        [](const AddZeros& o) -> std::size_t { return o.where.modulus() + 1; },
                        [](const SubZeros& o) -> std::size_t { return o.where.modulus() * (o.count + 1) + 1; },
                        [](const MulBlock& o) -> std::size_t { return o.where.modulus() + 1; },
                        [](const DivBlock& o) -> std::size_t { return o.where.modulus() * o.divisor + 1; },
                        [](const SelectResidues& o) -> std::size_t { return o.keep.modulus() + 1; },
                        [](const MergeWeights& o) -> std::size_t { return tuple_norm(o.weights) + 1; },
                    },
                    op);
}

Fst compile_pipeline(const Pipeline& pipeline) {
  Fst acc = Fst::identity();
  for (std::size_t i = 0; i < pipeline.size(); ++i)
    acc = i == 0 ? compile_block_op(pipeline[i]) : fst_compose(compile_block_op(pipeline[i]), acc);
  return acc;
}

// ---------------------------------------------------------------------------
// Symbolic images

namespace {

template <class Fn>
PiecewisePoly map_classes(const PiecewisePoly& f, const ResidueSet& where, Fn fn) {
  const std::uint64_t M = lcm(f.modulus(), where.modulus());
  auto pieces = f.refined_pieces(M);
  for (std::uint64_t r = 0; r < M; ++r)
    if (where.contains(r)) pieces[r] = fn(pieces[r]);
  return PiecewisePoly(M, std::move(pieces));
}

PiecewisePoly select_symbolic(const SelectResidues& o, const PiecewisePoly& f) {
  const auto& keep = o.keep.residues();
  const std::uint64_t N = o.keep.modulus();
  const std::uint64_t t = keep.size();
  const std::uint64_t M = f.modulus();
  const std::uint64_t period = M / std::gcd(N, M);
  const Rational slope = Rational(Integer(N)) / Integer(t);
  std::vector<Polynomial> pieces;
  for (std::uint64_t rho = 0; rho < t * period; ++rho) {
    const std::uint64_t i = rho % t;
    const std::uint64_t q0 = rho / t;
    const std::uint64_t input_residue = (q0 * N + keep[i]) % M;
    pieces.push_back(f.piece(input_residue).compose_affine(slope, Rational(Integer(keep[i])) - slope * Integer(i)));
  }
  return PiecewisePoly(t * period, std::move(pieces));
}

}  // namespace

PiecewisePoly apply_symbolic(const BlockOp& op, const PiecewisePoly& f) {
  return std::visit(
      overloaded{
          [&](const DropBlocks& o) { return pw_shift(f, static_cast<std::int64_t>(o.count)); },
          [&](const PrependBlocks& o) { return pw_shift(f, -static_cast<std::int64_t>(o.sizes.size())); },
          [&](const AddZeros& o) {
            const Polynomial c = Polynomial::constant(Rational(Integer(o.count)));
            return map_classes(f, o.where, [&](const Polynomial& p) { return p + c; });
          },
          [&](const SubZeros& o) {
            const Polynomial c = Polynomial::constant(Rational(Integer(o.count)));
            return map_classes(f, o.where, [&](const Polynomial& p) { return p - c; });
          },
          [&](const MulBlock& o) {
            return map_classes(f, o.where, [&](const Polynomial& p) { return p * Rational(Integer(o.factor)); });
          },
          [&](const DivBlock& o) {
            return map_classes(f, o.where,
                               [&](const Polynomial& p) { return p * Rational(1, Integer(o.divisor)); });
          },
          [&](const SelectResidues& o) { return select_symbolic(o, f); },
          [&](const MergeWeights& o) { return weight_product_symbolic(o.weights, f); },
      },
      op);
}

std::string Violation::to_string() const {
  std::string out = op_index ? "op " + std::to_string(*op_index) + ": " : std::string("input: ");
  out += reason;
  if (suggestion) out += " (suggestion: " + tdeg::to_string(*suggestion) + ")";
  return out;
}

namespace {

std::string describe_blocks(const std::vector<std::uint64_t>& blocks) {
  bool contiguous = true;
  for (std::size_t i = 1; i < blocks.size(); ++i) contiguous = contiguous && blocks[i] == blocks[i - 1] + 1;
  if (contiguous && blocks.size() > 1)
    return std::to_string(blocks.front()) + ".." + std::to_string(blocks.back());
  return join_sizes(blocks);
}

std::vector<Violation> check_op(std::size_t index, const BlockOp& op, const PiecewisePoly& f) {
  std::vector<Violation> out;
  auto violation = [&](std::string reason, std::optional<BlockOp> suggestion = std::nullopt) {
    out.push_back(Violation{index, std::move(reason), std::move(suggestion)});
  };
  std::visit(
      overloaded{
          [](const DropBlocks&) {},
          [&](const PrependBlocks& o) {
            const PiecewisePoly back = pw_shift(f, -static_cast<std::int64_t>(o.sizes.size()));
            std::vector<std::uint64_t> expected;
            bool natural = true;
            for (std::size_t j = 0; j < o.sizes.size(); ++j) {
              const Rational v = back.value(j);
              natural = natural && is_integer(v) && v >= 0;
              if (natural) expected.push_back(to_u64(v.get_num()));
            }
            if (natural && expected == o.sizes) return;
            std::optional<BlockOp> fix;
            if (natural) fix = PrependBlocks{expected};
            violation("prepended sizes are not the backward extension of the function", fix);
          },
          [](const AddZeros&) {},
          [&](const SubZeros& o) {
            const std::uint64_t M = lcm(f.modulus(), o.where.modulus());
            const auto pieces = f.refined_pieces(M);
            std::vector<std::uint64_t> failing;
            for (std::uint64_t r = 0; r < M; ++r) {
              if (!o.where.contains(r)) continue;
              auto below = naturals_below(progression(pieces[r], r, M), Rational(Integer(o.count)));
              if (!below) {
                violation("class " + std::to_string(r) + "%" + std::to_string(M) + " stays below " +
                          std::to_string(o.count));
                return;
              }
              for (auto t : *below) failing.push_back(r + M * t);
            }
            if (failing.empty()) return;
            std::sort(failing.begin(), failing.end());
            violation("values below " + std::to_string(o.count) + " at blocks " + describe_blocks(failing),
                      DropBlocks{failing.back() + 1});
          },
          [&](const MulBlock& o) {
            if (o.factor == 0) violation("mul factor must be >= 1");
          },
          [&](const DivBlock& o) {
            if (o.divisor == 0) {
              violation("div divisor must be >= 1");
              return;
            }
            const PiecewisePoly image = apply_symbolic(op, f);
            const std::uint64_t M = image.modulus();
            for (std::uint64_t r = 0; r < M; ++r) {
              if (!integer_valued_on_naturals(progression(image.piece(r), r, M))) {
                violation("values on class " + std::to_string(r) + "%" + std::to_string(M) +
                          " are not divisible by " + std::to_string(o.divisor));
                return;
              }
            }
          },
          [](const SelectResidues&) {},
          [&](const MergeWeights& o) {
            bool negative_constant = false;
            for (const auto& w : o.weights.weights()) {
              for (const auto& a : w.coeffs()) {
                if (!is_integer(a)) {
                  violation("merge coefficient " + a.get_str() + " is not an integer; naturalize the tuple first");
                  return;
                }
              }
              if (!is_integer(w.constant())) {
                violation("merge constant " + w.constant().get_str() + " is not an integer; naturalize first");
                return;
              }
              negative_constant = negative_constant || w.constant() < 0;
            }
            if (!negative_constant) return;
            std::vector<Weight> clipped;
            for (const auto& w : o.weights.weights())
              clipped.emplace_back(w.coeffs(), w.constant() < 0 ? Rational(0) : w.constant());
            violation("negative merge constants cannot be emitted; merge with b = 0 and follow with sub",
                      MergeWeights{WeightTuple(std::move(clipped))});
          },
      },
      op);
  return out;
}

std::vector<Violation> check_input(const PiecewisePoly& f) {
  if (!f.is_integer_valued()) return {Violation{std::nullopt, "function is not integer-valued", std::nullopt}};
  auto m = pw_min(f);
  if (!m) return {Violation{std::nullopt, "function is unbounded below", std::nullopt}};
  if (*m < 0) return {Violation{std::nullopt, "function takes the negative value " + m->get_str(), std::nullopt}};
  return {};
}

}  // namespace

std::vector<Violation> pipeline_validate(const Pipeline& pipeline, const PiecewisePoly& f) {
  if (auto v = check_input(f); !v.empty()) return v;
  PiecewisePoly current = f;
  for (std::size_t i = 0; i < pipeline.size(); ++i) {
    if (auto v = check_op(i, pipeline[i], current); !v.empty()) return v;
    current = apply_symbolic(pipeline[i], current);
  }
  return {};
}

PiecewisePoly pipeline_symbolic(const Pipeline& pipeline, const PiecewisePoly& f) {
  if (auto v = check_input(f); !v.empty()) throw PipelineError(v.front());
  PiecewisePoly current = f;
  for (std::size_t i = 0; i < pipeline.size(); ++i) {
    if (auto v = check_op(i, pipeline[i], current); !v.empty()) throw PipelineError(v.front());
    current = apply_symbolic(pipeline[i], current);
  }
  return current;
}

}  // namespace tdeg
