// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <functional>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "oracle.hpp"
#include "tdeg/block_op.hpp"
#include "tdeg/certificate.hpp"
#include "tdeg/constructions.hpp"
#include "tdeg/error.hpp"
#include "tdeg/literal.hpp"
#include "tdeg/stream.hpp"
#include "tdeg/verify.hpp"

using namespace tdeg;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

Polynomial n_poly() { return Polynomial::variable(); }

std::vector<Integer> blocks_of(const PiecewisePoly& f, std::uint64_t count) {
  std::vector<Integer> out;
  for (std::uint64_t i = 0; i < count; ++i) out.push_back(f.eval(i));
  return out;
}

// alpha (x) S^{m0}(source) against S^{n0}(target) by direct walking, n < count.
bool certificate_holds(const Certificate& c, std::uint64_t count) {
  const auto walked = oracle::weight_product(
      c.weights, [&](std::uint64_t i) { return Rational(c.source(i + c.m0)); }, count);
  for (std::uint64_t n = 0; n < count; ++n)
    if (walked[n] != Rational(c.target(n + c.n0))) return false;
  return true;
}

// --- 1 -------------------------------------------------------------------

Outcome weight_product_fidelity() {
  const WeightTuple t = parse_weight_tuple("[[2,4,6,8],[1,7,4]]");
  // Expected linear forms: {input index: coefficient}, constant.
  const std::vector<std::pair<std::map<std::uint64_t, Rational>, Rational>> forms = {
      {{{0, 2}, {1, 4}, {2, 6}}, 8},
      {{{3, 1}, {4, 7}}, 4},
      {{{5, 2}, {6, 4}, {7, 6}}, 8},
      {{{8, 1}, {9, 7}}, 4},
  };
  bool pass = true;
  for (std::uint64_t n = 0; n < forms.size(); ++n) {
    const Rational constant = weight_product_numeric(t, [](std::uint64_t) { return Rational(0); }, n);
    pass = pass && constant == forms[n].second;
    for (std::uint64_t j = 0; j < 20; ++j) {
      const auto indicator = [j](std::uint64_t i) { return Rational(i == j ? 1 : 0); };
      const Rational coefficient = weight_product_numeric(t, indicator, n) - constant;
      const auto it = forms[n].first.find(j);
      pass = pass && coefficient == (it == forms[n].first.end() ? Rational(0) : it->second);
    }
  }
  std::string values;
  const std::array<int, 4> expected = {24, 35, 84, 75};
  for (std::uint64_t n = 0; n < 4; ++n) {
    const Rational v = weight_product_numeric(t, BlockFunction(n_poly()), n);
    pass = pass && v == expected[n];
    values += (n ? " " : "") + to_string(v);
  }
  pass = pass && tuple_norm(t) == 5;
  return {pass, "values " + values + ", norm " + std::to_string(tuple_norm(t))};
}

// --- 2 -------------------------------------------------------------------

Outcome symbolic_numeric_agreement() {
  Rng rng(2);
  int agreeing = 0;
  for (int c = 0; c < 200; ++c) {
    const WeightTuple t = random_tuple(rng, 4, 4, 5, 5);
    const PiecewisePoly h = random_piecewise(rng, 4, 3);
    const PiecewisePoly closed = weight_product_symbolic(t, h);
    const auto walked = oracle::weight_product(t, [&](std::uint64_t i) { return h.value(i); }, 200);
    bool same = true;
    for (std::uint64_t n = 0; n < 200 && same; ++n)
      same = closed.value(n) == walked[n] && weight_product_numeric(t, h, n) == walked[n];
    agreeing += same;
  }
  return {agreeing == 200, std::to_string(agreeing) + "/200 pairs agree for n < 200"};
}

// --- 3 -------------------------------------------------------------------

// Composed transducer, symbolic image and block-list oracle agree.
bool sound(const Pipeline& p, const PiecewisePoly& f, std::size_t bits) {
  const PiecewisePoly image = pipeline_symbolic(p, f);
  const BitWord out = compile_pipeline(p).run(stream_prefix(f, bits));
  if (out.empty() || out != stream_prefix(image, out.size())) return false;
  const auto blocks = oracle::run_ops(p, blocks_of(f, 60));
  if (!blocks) return false;
  for (std::size_t i = 0; i < blocks->size(); ++i)
    if (Rational((*blocks)[i]) != image.value(i)) return false;
  return true;
}

ResidueSet random_residues(Rng& rng) {
  const std::uint64_t m = uniform(rng, 1, 3);
  std::vector<std::uint64_t> rs;
  for (std::uint64_t r = 0; r < m; ++r)
    if (uniform(rng, 0, 1)) rs.push_back(r);
  if (rs.empty()) rs.push_back(uniform(rng, 0, m - 1));
  return ResidueSet(m, rs);
}

BlockOp random_op(Rng& rng) {
  switch (uniform(rng, 0, 7)) {
    case 0:
      return DropBlocks{uniform(rng, 0, 3)};
    case 1:
      return PrependBlocks{{uniform(rng, 0, 3)}};
    case 2:
      return AddZeros{random_residues(rng), uniform(rng, 0, 4)};
    case 3:
      return SubZeros{random_residues(rng), uniform(rng, 1, 3)};
    case 4:
      return MulBlock{random_residues(rng), uniform(rng, 1, 3)};
    case 5:
      return DivBlock{random_residues(rng), uniform(rng, 2, 3)};
    case 6:
      return SelectResidues{random_residues(rng)};
    default:
      return MergeWeights{random_tuple(rng, 2, 3, 2, 2)};
  }
}

// Appends op, repairing it with the validator's suggestion when there is one.
bool extend(Pipeline& p, const PiecewisePoly& f, BlockOp op) {
  for (int attempt = 0; attempt < 2; ++attempt) {
    Pipeline trial = p;
    trial.push_back(op);
    const auto v = pipeline_validate(trial, f);
    if (v.empty()) {
      p = std::move(trial);
      return true;
    }
    if (!v.front().suggestion) return false;
    if (std::holds_alternative<DropBlocks>(*v.front().suggestion)) {
      p.push_back(*v.front().suggestion);
    } else {
      op = *v.front().suggestion;
    }
  }
  return false;
}

Outcome compiler_soundness() {
  const Polynomial n = n_poly();
  const PiecewisePoly sq(n * n);
  const PiecewisePoly mixed = parse_piecewise("pw mod 2 { 0: 2n + 1; 1: n^2 + 3 }");
  const std::vector<std::pair<Pipeline, PiecewisePoly>> variants = {
      {{DropBlocks{3}}, sq},
      {{PrependBlocks{{1, 0, 1}}}, parse_piecewise("(n + 2)^2")},
      {{AddZeros{ResidueSet::single(1, 2), 4}}, mixed},
      {{SubZeros{ResidueSet::single(0, 2), 1}}, mixed},
      {{MulBlock{ResidueSet(3, {0, 2}), 3}}, sq},
      {{DivBlock{ResidueSet::single(0, 2), 2}}, sq},
      {{SelectResidues{ResidueSet(3, {1, 2})}}, mixed},
      {{MergeWeights{parse_weight_tuple("[[1,2,1],[3,0]]")}}, mixed},
  };
  int variants_ok = 0;
  for (const auto& [p, f] : variants) variants_ok += sound(p, f, 10000);

  Rng rng(3);
  int random_ok = 0;
  int generated = 0;
  std::set<std::size_t> kinds;
  std::size_t ops = 0;
  while (generated < 50) {
    const PiecewisePoly f = random_piecewise(rng, 3, 2);
    Pipeline p;
    const std::uint64_t length = uniform(rng, 1, 4);
    for (int tries = 0; p.size() < length && tries < 20; ++tries) extend(p, f, random_op(rng));
    if (p.empty()) continue;
    ++generated;
    ops += p.size();
    for (const auto& op : p) kinds.insert(op.index());
    random_ok += sound(p, f, 10000);
  }
  return {variants_ok == 8 && random_ok == 50,
          std::to_string(variants_ok) + "/8 op variants, " + std::to_string(random_ok) + "/50 random pipelines (" +
              std::to_string(ops) + " ops, " + std::to_string(kinds.size()) + " kinds)"};
}

// --- 4, 5 ----------------------------------------------------------------

Outcome from_suite(const SuiteResult& r) {
  std::string detail = std::to_string(r.passed) + "/" + std::to_string(r.total) + " cases";
  for (const auto& f : r.failures) detail += "; failed: " + f;
  return {r.ok(), detail};
}

// --- 6 -------------------------------------------------------------------

Outcome gamma_interleaving() {
  Rng rng(6);
  int ok = 0;
  for (int c = 0; c < 100; ++c) {
    const std::uint64_t m = uniform(rng, 1, 5);
    std::vector<Weight> as;
    std::vector<Weight> bs;
    for (std::uint64_t i = 0; i < m; ++i) {
      const std::size_t arity = uniform(rng, 1, 3);
      auto weight = [&] {
        std::vector<Rational> coeffs;
        for (std::size_t k = 0; k < arity; ++k) coeffs.emplace_back(Integer(uniform(rng, 0, 4)));
        return Weight(coeffs, Rational(Integer(uniform(rng, 0, 3))));
      };
      as.push_back(weight());
      bs.push_back(weight());
    }
    // A tuple needs one non-constant weight.
    as[0] = Weight(std::vector<Rational>(as[0].arity(), Rational(1)), as[0].constant());
    bs[0] = Weight(std::vector<Rational>(bs[0].arity(), Rational(2)), bs[0].constant());
    const WeightTuple alphas(as), betas(bs);
    const PiecewisePoly h = random_piecewise(rng, 3, 3);
    auto hv = [&](std::uint64_t i) { return h.value(i); };
    const auto g = oracle::weight_product(gamma_interleave(alphas, betas), hv, 200);
    const auto a = oracle::weight_product(alphas, hv, 200);
    const auto b = oracle::weight_product(betas, hv, 200);
    bool same = true;
    for (std::uint64_t n = 0; n < 200; ++n) same = same && g[n] == (n % 2 == 0 ? a[n] : b[n]);
    ok += same;
  }
  return {ok == 100, std::to_string(ok) + "/100 triples match by parity for n < 200"};
}

// --- 7 -------------------------------------------------------------------

Outcome quadratic_lemmas() {
  const SuiteResult forward = verify_quadweights(20);
  const SuiteResult inverse = verify_quad_inverse(20);
  const SuiteResult printed = verify_printed_constants();
  // Direct evaluation of both identities at n < 10.
  int direct = 0;
  for (int a = 1; a <= 20; ++a) {
    for (int b = 1; b <= 20; ++b) {
      const QuadWeight qw = quad_to_weight({a, b});
      bool same = true;
      for (std::uint64_t n = 0; n < 10; ++n) {
        const Rational x(Integer(2 * n + qw.k));
        const Rational v = qw.weight.coeffs()[0] * x * x + qw.weight.coeffs()[1] * (x + 1) * (x + 1) +
                           qw.weight.constant();
        same = same && v == Rational(a * n * n + b * n);
      }
      direct += same;
    }
    for (int b = 1; b < 2 * a; ++b) {
      const Weight w = quad_inverse_weight({a, b});
      auto f = [&](std::uint64_t m) { return Rational(a * (m + 1) * (m + 1) + b * (m + 1)); };
      bool same = true;
      for (std::uint64_t n = 0; n < 10; ++n)
        same = same && w.coeffs()[0] * f(2 * n) + w.coeffs()[1] * f(2 * n + 1) + w.constant() ==
                           Rational((n + 1) * (n + 1));
      direct += same;
    }
  }
  std::string detail = "forward " + std::to_string(forward.passed) + "/" + std::to_string(forward.total) +
                       ", inverse " + std::to_string(inverse.passed) + "/" + std::to_string(inverse.total) +
                       ", direct " + std::to_string(direct) + "/800";
  for (const auto& note : printed.notes) detail += "\n       " + note;
  return {forward.ok() && inverse.ok() && forward.total >= 400 && inverse.total >= 400 && printed.ok() &&
              direct == 800,
          detail};
}

// --- 8 -------------------------------------------------------------------

Outcome diamond_n2() {
  Rng rng(8);
  int ok = 0;
  std::string failures;
  for (int c = 0; c < 50; ++c) {
    const PiecewisePoly g = random_all_quadratic(rng);
    const DiamondReport r = diamond_n2_weights(g);
    bool pass = r.verified && r.certificate && g.modulus() <= 4;
    pass = pass && certificate_check(*r.certificate, 200).kind == Verdict::Kind::ProvedSymbolic &&
           certificate_holds(*r.certificate, 200);
    ok += pass;
    if (!pass) failures += "; " + g.to_string() + ": " + r.details;
  }
  return {ok == 50, std::to_string(ok) + "/50 all-quadratic functions proved" + failures};
}

// --- 9 -------------------------------------------------------------------

Outcome diamond_n() {
  Rng rng(9);
  const PiecewisePoly target = fzip_n_n2();
  int mixed_ok = 0;
  std::string failures;
  for (int c = 0; c < 20; ++c) {
    const PiecewisePoly g = random_mixed(rng);
    const DiamondReport r = diamond_n_pipeline(g);
    bool pass = r.verified && r.pipeline && pw_equal(pipeline_symbolic(*r.pipeline, g), target);
    if (pass) {
      const auto blocks = oracle::run_ops(*r.pipeline, blocks_of(g, 400));
      pass = blocks && !blocks->empty();
      for (std::size_t i = 0; pass && i < blocks->size(); ++i) pass = Rational((*blocks)[i]) == target.value(i);
    }
    mixed_ok += pass;
    if (!pass) failures += "; " + g.to_string() + ": " + r.details;
  }
  int linear_ok = 0;
  for (int c = 0; c < 20; ++c) {
    const PiecewisePoly g = random_all_linear(rng);
    const DiamondReport r = diamond_linear_weights(g);
    bool pass = r.verified && g.modulus() <= 4;
    if (pass) {
      pass = r.certificate && certificate_holds(*r.certificate, 200);
      const auto back = oracle::run_ops(*r.pipeline, blocks_of(g, 200));
      pass = pass && back && !back->empty();
      for (std::size_t i = 0; pass && i < back->size(); ++i) pass = (*back)[i] == Integer(i);
    }
    linear_ok += pass;
    if (!pass) failures += "; " + g.to_string() + ": " + r.details;
  }
  return {mixed_ok == 20 && linear_ok == 20, std::to_string(mixed_ok) + "/20 mixed round trips, " +
                                                 std::to_string(linear_ok) + "/20 linear both ways" + failures};
}

// --- 10 ------------------------------------------------------------------

struct Run {
  std::string out;
  int code;
};

Run run_binary(const std::string& args) {
  const std::string command = std::string(TDEG_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return {"", -1};
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {out, WIFEXITED(status) ? WEXITSTATUS(status) : -1};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome cli_integration() {
  struct Case {
    std::string args;
    std::string golden;
    int code;
  };
  const std::vector<Case> cases = {
      {"stream 'poly: n' --bits 10", "stream_n.txt", 0},
      {"wp '[[2,4,6,8],[1,7,4]]' 'poly: n' --numeric 4", "wp_numeric.txt", 0},
      {"verify quadweights --grid 20", "verify_quadweights.txt", 0},
  };
  int ok = 0;
  for (const auto& c : cases) {
    const Run r = run_binary(c.args);
    ok += r.code == c.code && r.out == read_file(std::string(GOLDEN_DIR) + "/" + c.golden);
  }
  // Error paths: malformed literal, invalid pipeline.
  const bool invalid = run_binary("stream 'poly: n +' --bits 10").code == 2;
  const bool violation = run_binary("pipeline apply 'sub * 1' 'poly: n'").code == 1;
  return {ok == 3 && invalid && violation,
          std::to_string(ok) + "/3 golden outputs, exit codes " + (invalid && violation ? "ok" : "wrong")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"weight-product fidelity", weight_product_fidelity},
      {"symbolic/numeric agreement", symbolic_numeric_agreement},
      {"compiler soundness", compiler_soundness},
      {"basic block moves", [] { return from_suite(verify_lemma24(10000)); }},
      {"fzip symmetry", [] { return from_suite(verify_symmetry(10000)); }},
      {"gamma interleave", gamma_interleaving},
      {"quadratic weight identities", quadratic_lemmas},
      {"diamond, n^2 side", diamond_n2},
      {"diamond, n side", diamond_n},
      {"cli integration", cli_integration},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << (i + 1) << " " << criteria[i].first << ": " << o.detail << '\n';
  }
  return failed == 0 ? 0 : 1;
}
