#pragma once

// Reference implementations used only by tests: they follow the definitions
// directly, on explicit value lists, without the library's closed forms.

#include <functional>
#include <optional>
#include <vector>

#include "tdeg/block_op.hpp"
#include "tdeg/weight.hpp"

namespace oracle {

using tdeg::Integer;
using tdeg::Rational;

/// (alpha (x) f)(0), ..., (alpha (x) f)(count - 1) by walking the inputs.
inline std::vector<Rational> weight_product(const tdeg::WeightTuple& t, const std::function<Rational(std::uint64_t)>& f,
                                            std::uint64_t count) {
  std::vector<Rational> out;
  std::uint64_t offset = 0;
  for (std::uint64_t n = 0; n < count; ++n) {
    const tdeg::Weight& w = t[n % t.size()];
    Rational v = w.constant();
    for (std::size_t i = 0; i < w.arity(); ++i) v += w.coeffs()[i] * f(offset + i);
    offset += w.arity();
    out.push_back(v);
  }
  return out;
}

/// Applies one op to a finite list of block sizes. Blocks whose value depends
/// on sizes past the end of the list are dropped. nullopt when a size would
/// become negative or fractional.
inline std::optional<std::vector<Integer>> run_op(const tdeg::BlockOp& op, const std::vector<Integer>& in) {
  std::vector<Integer> out;
  if (const auto* o = std::get_if<tdeg::DropBlocks>(&op)) {
    if (o->count < in.size()) out.assign(in.begin() + static_cast<std::ptrdiff_t>(o->count), in.end());
  } else if (const auto* o = std::get_if<tdeg::PrependBlocks>(&op)) {
    for (auto s : o->sizes) out.emplace_back(s);
    out.insert(out.end(), in.begin(), in.end());
  } else if (const auto* o = std::get_if<tdeg::AddZeros>(&op)) {
    for (std::size_t i = 0; i < in.size(); ++i) out.push_back(o->where.contains(i) ? in[i] + o->count : in[i]);
  } else if (const auto* o = std::get_if<tdeg::SubZeros>(&op)) {
    for (std::size_t i = 0; i < in.size(); ++i) {
      out.push_back(o->where.contains(i) ? Integer(in[i] - o->count) : in[i]);
      if (out.back() < 0) return std::nullopt;
    }
  } else if (const auto* o = std::get_if<tdeg::MulBlock>(&op)) {
    for (std::size_t i = 0; i < in.size(); ++i) out.push_back(o->where.contains(i) ? Integer(in[i] * o->factor) : in[i]);
  } else if (const auto* o = std::get_if<tdeg::DivBlock>(&op)) {
    for (std::size_t i = 0; i < in.size(); ++i) {
      if (!o->where.contains(i)) {
        out.push_back(in[i]);
        continue;
      }
      if (in[i] % o->divisor != 0) return std::nullopt;
      out.push_back(in[i] / o->divisor);
    }
  } else if (const auto* o = std::get_if<tdeg::SelectResidues>(&op)) {
    for (std::size_t i = 0; i < in.size(); ++i)
      if (o->keep.contains(i)) out.push_back(in[i]);
  } else if (const auto* o = std::get_if<tdeg::MergeWeights>(&op)) {
    std::size_t offset = 0;
    for (std::size_t n = 0;; ++n) {
      const tdeg::Weight& w = o->weights[n % o->weights.size()];
      if (offset + w.arity() > in.size()) break;
      Rational v = w.constant();
      for (std::size_t i = 0; i < w.arity(); ++i) v += w.coeffs()[i] * in[offset + i];
      offset += w.arity();
      if (v < 0 || !tdeg::is_integer(v)) return std::nullopt;
      out.push_back(v.get_num());
    }
  }
  return out;
}

inline std::optional<std::vector<Integer>> run_ops(const tdeg::Pipeline& p, std::vector<Integer> blocks) {
  for (const auto& op : p) {
    auto next = run_op(op, blocks);
    if (!next) return std::nullopt;
    blocks = std::move(*next);
  }
  return blocks;
}

}  // namespace oracle
