#include "tdeg/fst.hpp"

#include <deque>
#include <sstream>
#include <unordered_map>

#include "tdeg/error.hpp"

namespace tdeg {

Fst::Fst(std::vector<Row> table) : table_(std::move(table)) {
  if (table_.empty()) throw DomainError("a transducer needs at least one state");
  for (const auto& row : table_)
    for (const auto& e : row)
      if (e.target >= table_.size()) throw DomainError("transition target out of range");
}

Fst Fst::identity() {
  return Fst({Row{Edge{0, BitWord::from_string("0")}, Edge{0, BitWord::from_string("1")}}});
}

Fst::State Fst::delta(State q, const BitWord& word) const {
  for (std::size_t i = 0; i < word.size(); ++i) q = edge(q, word[i]).target;
  return q;
}

BitWord Fst::run_from(State q, const BitWord& word) const {
  BitWord out;
  out.reserve(word.size());
  for (std::size_t i = 0; i < word.size(); ++i) {
    const Edge& e = edge(q, word[i]);
    out.append(e.output);
    q = e.target;
  }
  return out;
}

std::string Fst::to_dot(const std::string& name) const {
  std::ostringstream out;
  out << "digraph " << name << " {\n  rankdir=LR;\n  start [shape=point];\n  start -> q0;\n";
  for (std::size_t q = 0; q < table_.size(); ++q) {
    for (int bit = 0; bit < 2; ++bit) {
      const Edge& e = table_[q][bit];
      out << "  q" << q << " -> q" << e.target << " [label=\"" << bit << '/'
          << (e.output.empty() ? std::string("ε") : e.output.str()) << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

BitWord fst_run(const Fst& t, const BitWord& input) { return t.run(input); }

Fst fst_compose(const Fst& outer, const Fst& inner) {
  using Pair = std::uint64_t;
  auto key = [](Fst::State p, Fst::State q) { return (static_cast<Pair>(p) << 32) | q; };

  std::unordered_map<Pair, Fst::State> ids;
  std::deque<std::pair<Fst::State, Fst::State>> work;
  std::vector<Fst::Row> table;
  auto intern = [&](Fst::State p, Fst::State q) {
    auto [it, fresh] = ids.emplace(key(p, q), static_cast<Fst::State>(ids.size()));
    if (fresh) {
      work.emplace_back(p, q);
      table.emplace_back();
    }
    return it->second;
  };

  intern(0, 0);
  while (!work.empty()) {
    const auto [p, q] = work.front();
    work.pop_front();
    const Fst::State id = ids.at(key(p, q));
    for (int bit = 0; bit < 2; ++bit) {
      const Fst::Edge& e = inner.edge(p, bit == 1);
      const Fst::State q2 = outer.delta(q, e.output);
      BitWord out = outer.run_from(q, e.output);
      const Fst::State target = intern(e.target, q2);
      table[id][bit] = Fst::Edge{target, std::move(out)};
    }
  }
  return Fst(std::move(table));
}

}  // namespace tdeg
