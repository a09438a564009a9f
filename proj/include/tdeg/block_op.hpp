#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tdeg/error.hpp"
#include "tdeg/fst.hpp"
#include "tdeg/piecewise.hpp"
#include "tdeg/weight.hpp"

namespace tdeg {

/// A nonempty set of residues modulo a positive modulus. Block i is selected
/// when i mod modulus is in the set.
class ResidueSet {
 public:
  /// Throws DomainError on an empty set or out-of-range residues.
  ResidueSet(std::uint64_t modulus, std::vector<std::uint64_t> residues);
  static ResidueSet all() { return ResidueSet(1, {0}); }
  static ResidueSet single(std::uint64_t residue, std::uint64_t modulus) { return ResidueSet(modulus, {residue}); }

  std::uint64_t modulus() const { return modulus_; }
  const std::vector<std::uint64_t>& residues() const { return residues_; }
  bool contains(std::uint64_t block) const;

  /// "*", "r%N" or "{r,s}%N".
  std::string to_string() const;

  friend bool operator==(const ResidueSet&, const ResidueSet&) = default;

 private:
  std::uint64_t modulus_;
  std::vector<std::uint64_t> residues_;  // sorted, unique
};

struct DropBlocks {
  std::uint64_t count;
};
struct PrependBlocks {
  std::vector<std::uint64_t> sizes;
};
struct AddZeros {
  ResidueSet where;
  std::uint64_t count;
};
struct SubZeros {
  ResidueSet where;
  std::uint64_t count;
};
struct MulBlock {
  ResidueSet where;
  std::uint64_t factor;  // >= 1
};
struct DivBlock {
  ResidueSet where;
  std::uint64_t divisor;  // >= 1
};
struct SelectResidues {
  ResidueSet keep;
};
/// Weights applied blockwise: each weight reads arity() consecutive blocks and
/// writes one block of size sum a_t * size_t + b. Compilation needs integer
/// coefficients and nonnegative integer constants.
struct MergeWeights {
  WeightTuple weights;
};

using BlockOp = std::variant<DropBlocks, PrependBlocks, AddZeros, SubZeros, MulBlock, DivBlock, SelectResidues,
                             MergeWeights>;
using Pipeline = std::vector<BlockOp>;

std::string to_string(const BlockOp& op);
/// Ops joined by " | ".
std::string to_string(const Pipeline& pipeline);

/// drop k | prepend [a,b,...] | add R c | sub R c | mul R p | div R q |
/// select R | merge [[...],...], where R is "*", "r%N" or "{r,...}%N".
/// Ops are separated by '|' or ';'. Throws ParseError.
Pipeline parse_pipeline(std::string_view text);

/// Block-level transducer for one op. Conventions:
///   - an op acting on block i takes effect between the '1' opening block i
///     and the '1' opening block i + 1;
///   - AddZeros emits its extra zeros right after the opening '1';
///   - SubZeros swallows the first c zeros after the opening '1'; a shorter
///     block also swallows the following '1' (excluded by validation);
///   - MergeWeights emits '1', then a_t zeros per zero of constituent block t,
///     then b zeros when the closing '1' arrives.
/// Leading zeros before the first '1' are ignored.
/// Throws DomainError for parameters that cannot be compiled (e.g. a negative
/// or fractional MergeWeights entry).
Fst compile_block_op(const BlockOp& op);

/// Upper bound on the states of compile_block_op(op).
std::size_t state_budget(const BlockOp& op);

/// Left-to-right composition of the compiled ops; the empty pipeline is the identity.
Fst compile_pipeline(const Pipeline& pipeline);

struct Violation {
  std::optional<std::size_t> op_index;  // nullopt: the input function itself
  std::string reason;
  std::optional<BlockOp> suggestion;

  std::string to_string() const;
};

/// Checks every op against the evolving symbolic function: nonnegative
/// integer input, SubZeros targets >= c everywhere, DivBlock targets
/// divisible, MergeWeights entries natural, PrependBlocks consistent with the
/// backward extension. Returns an empty list when the pipeline is valid.
std::vector<Violation> pipeline_validate(const Pipeline& pipeline, const PiecewisePoly& f);

/// Raised by pipeline_symbolic when validation fails.
class PipelineError : public Error {
 public:
  explicit PipelineError(Violation v) : Error(v.to_string()), violation_(std::move(v)) {}
  const Violation& violation() const { return violation_; }

 private:
  Violation violation_;
};

/// Exact image of f under the pipeline. Throws PipelineError on the first violation.
PiecewisePoly pipeline_symbolic(const Pipeline& pipeline, const PiecewisePoly& f);

/// Image of f under a single op, without validation.
PiecewisePoly apply_symbolic(const BlockOp& op, const PiecewisePoly& f);

}  // namespace tdeg
