#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tdeg/stream.hpp"

namespace tdeg {

/// Deterministic Mealy transducer <Q, q0, delta, lambda> over {0, 1}.
/// States are 0 .. state_count() - 1 and state 0 is initial. Output is
/// attached to transitions only; there are no final outputs or epsilon moves.
class Fst {
 public:
  using State = std::uint32_t;
  struct Edge {
    State target = 0;
    BitWord output;
  };
  using Row = std::array<Edge, 2>;  // indexed by input bit

  /// Throws DomainError when the table is empty or a target is out of range.
  explicit Fst(std::vector<Row> table);
  static Fst identity();

  std::size_t state_count() const { return table_.size(); }
  const Edge& edge(State q, bool bit) const { return table_[q][bit ? 1 : 0]; }
  const std::vector<Row>& table() const { return table_; }

  /// delta extended to words.
  State delta(State q, const BitWord& word) const;
  /// lambda extended to words, starting in q.
  BitWord run_from(State q, const BitWord& word) const;
  BitWord run(const BitWord& word) const { return run_from(0, word); }

  /// Graphviz rendering with edges labelled "in/out".
  std::string to_dot(const std::string& name = "fst") const;

 private:
  std::vector<Row> table_;
};

BitWord fst_run(const Fst& t, const BitWord& input);

/// Product machine on the pairs reachable from (0, 0):
/// fst_run(result, w) == fst_run(outer, fst_run(inner, w)).
Fst fst_compose(const Fst& outer, const Fst& inner);

}  // namespace tdeg
