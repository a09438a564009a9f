#include "tdeg/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "tdeg/block_op.hpp"
#include "tdeg/certificate.hpp"
#include "tdeg/constructions.hpp"
#include "tdeg/error.hpp"
#include "tdeg/literal.hpp"
#include "tdeg/stream.hpp"
#include "tdeg/verify.hpp"
#include "tdeg/weight.hpp"

namespace tdeg {

namespace {

struct Options {
  std::string function;
  std::string bits_text;
  std::size_t bits = 0;
  std::string tuple;
  bool symbolic = false;
  std::uint64_t numeric = 10;
  std::string pipeline;
  bool dot = false;
  std::optional<std::size_t> check_prefix;
  std::string suite;
  std::uint64_t grid = 20;
  std::optional<std::uint64_t> cases;
  std::uint64_t seed = 1;
  std::size_t prefix_bits = 10000;
  bool inverse = false;
  bool verbose = false;
  std::string file;
  std::optional<std::uint64_t> depth;
};

int cmd_stream(const Options& o, std::ostream& out) {
  out << stream_prefix(parse_function(o.function), o.bits).str() << '\n';
  return kExitOk;
}

int cmd_blocks(const Options& o, std::ostream& out) {
  const BlockSeq seq = parse_blocks(BitWord::from_string(o.bits_text));
  out << join_sizes(seq.sizes) << '\n';
  if (seq.trailing) out << "partial " << *seq.trailing << '\n';
  return kExitOk;
}

int cmd_wp(const Options& o, std::ostream& out) {
  const WeightTuple tuple = parse_weight_tuple(o.tuple);
  const BlockFunction f = parse_function(o.function);
  if (o.symbolic) {
    out << weight_product_symbolic(tuple, f).to_string() << '\n';
    return kExitOk;
  }
  for (std::uint64_t n = 0; n < o.numeric; ++n) out << (n ? " " : "") << to_string(weight_product_numeric(tuple, f, n));
  out << '\n';
  return kExitOk;
}

std::string edge_label(const BitWord& w) { return w.empty() ? "e" : w.str(); }

int cmd_fst_compile(const Options& o, std::ostream& out) {
  const Fst t = compile_pipeline(parse_pipeline(o.pipeline));
  if (o.dot) {
    out << t.to_dot();
    return kExitOk;
  }
  out << "states " << t.state_count() << '\n';
  for (std::size_t q = 0; q < t.state_count(); ++q) {
    const auto s = static_cast<Fst::State>(q);
    out << q << ": 0/" << edge_label(t.edge(s, false).output) << " -> " << t.edge(s, false).target << ", 1/"
        << edge_label(t.edge(s, true).output) << " -> " << t.edge(s, true).target << '\n';
  }
  return kExitOk;
}

int cmd_pipeline_apply(const Options& o, std::ostream& out, std::ostream& err) {
  const Pipeline p = parse_pipeline(o.pipeline);
  const PiecewisePoly f = parse_piecewise(o.function);
  const auto violations = pipeline_validate(p, f);
  if (!violations.empty()) {
    for (const auto& v : violations) err << "violation: " << v.to_string() << '\n';
    return kExitFailed;
  }
  const PiecewisePoly image = pipeline_symbolic(p, f);
  out << image.to_string() << '\n';
  if (o.check_prefix) {
    const BitWord produced = compile_pipeline(p).run(stream_prefix(f, *o.check_prefix));
    const bool same = produced == stream_prefix(image, produced.size());
    out << "prefix " << (same ? "agrees" : "differs") << " on " << produced.size() << " output bits\n";
    if (!same) return kExitFailed;
  }
  return kExitOk;
}

void print_suite(const SuiteResult& r, bool verbose, std::ostream& out) {
  out << r.summary() << " passed\n";
  for (const auto& f : r.failures) out << "FAIL " << f << '\n';
  if (verbose)
    for (const auto& n : r.notes) out << n << '\n';
}

int cmd_verify(const Options& o, std::ostream& out) {
  if (o.suite == "quadweights") {
    const SuiteResult r = o.inverse ? verify_quad_inverse(o.grid) : verify_quadweights(o.grid);
    out << r.passed << "/" << r.total << " identities exact\n";
    for (const auto& f : r.failures) out << "FAIL " << f << '\n';
    if (o.verbose) print_suite(verify_printed_constants(), true, out);
    return r.ok() ? kExitOk : kExitFailed;
  }
  if (o.suite == "diamond" && !o.function.empty()) {
    const PiecewisePoly g = parse_piecewise(o.function);
    std::optional<DiamondReport> report;
    switch (classify_pieces(g)) {
      case CaseTag::Mixed:
        report = diamond_n_pipeline(g, o.prefix_bits);
        break;
      case CaseTag::AllLinear:
        report = diamond_linear_weights(g, o.prefix_bits);
        break;
      case CaseTag::AllQuadratic:
        report = diamond_n2_weights(g);
        break;
    }
    out << report->to_json() << '\n';
    return report->verified ? kExitOk : kExitFailed;
  }
  std::optional<SuiteResult> r;
  if (o.suite == "lemma24") r = verify_lemma24(o.prefix_bits);
  if (o.suite == "symmetry") r = verify_symmetry(o.prefix_bits);
  if (o.suite == "gamma") r = verify_gamma(o.cases.value_or(100), 200, o.seed);
  if (o.suite == "printed") r = verify_printed_constants();
  if (o.suite == "diamond") {
    const std::uint64_t c = o.cases.value_or(20);
    r = verify_diamond(c, c, o.cases ? c : 50, o.seed, o.prefix_bits);
  }
  print_suite(*r, o.verbose || o.suite == "printed", out);
  return r->ok() ? kExitOk : kExitFailed;
}

int cmd_cert_check(const Options& o, std::ostream& out, std::ostream& err) {
  std::ifstream in(o.file);
  if (!in) {
    err << "error: cannot read " << o.file << '\n';
    return kExitInvalid;
  }
  std::stringstream text;
  text << in.rdbuf();
  const Certificate c = certificate_from_json(text.str());
  const Verdict v = certificate_check(c, o.depth.value_or(c.depth));
  out << v.to_string() << '\n';
  return v.ok() ? kExitOk : kExitFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Transducer degrees of block-function streams", "tdeg"};
  app.require_subcommand(1);
  Options o;

  auto* stream = app.add_subcommand("stream", "print a prefix of <f>");
  stream->add_option("f", o.function, "function literal")->required();
  stream->add_option("--bits", o.bits, "prefix length")->required();

  auto* blocks = app.add_subcommand("blocks", "split a bit word into block sizes");
  blocks->add_option("bits", o.bits_text, "word over {0,1}")->required();

  auto* wp = app.add_subcommand("wp", "weight product");
  wp->add_option("tuple", o.tuple, "weight tuple, e.g. [[2,4,6,8],[1,7,4]]")->required();
  wp->add_option("f", o.function, "function literal")->required();
  auto* symbolic = wp->add_flag("--symbolic", o.symbolic, "closed form");
  wp->add_option("--numeric", o.numeric, "number of values")->excludes(symbolic);

  auto* fst = app.add_subcommand("fst", "transducers");
  fst->require_subcommand(1);
  auto* compile = fst->add_subcommand("compile", "compile a pipeline");
  compile->add_option("pipeline", o.pipeline, "pipeline literal")->required();
  compile->add_flag("--dot", o.dot, "Graphviz output");

  auto* pipeline = app.add_subcommand("pipeline", "block pipelines");
  pipeline->require_subcommand(1);
  auto* apply = pipeline->add_subcommand("apply", "symbolic image of f");
  apply->add_option("pipeline", o.pipeline, "pipeline literal")->required();
  apply->add_option("f", o.function, "function literal")->required();
  apply->add_option("--check-prefix", o.check_prefix, "compare the compiled transducer on this many input bits");

  auto* verify = app.add_subcommand("verify", "property suites");
  verify->add_option("suite", o.suite, "suite")
      ->required()
      ->check(CLI::IsMember({"lemma24", "symmetry", "gamma", "quadweights", "diamond", "printed"}));
  verify->add_option("--grid", o.grid, "grid bound for quadweights");
  verify->add_option("--cases", o.cases, "number of random cases");
  verify->add_option("--seed", o.seed, "random seed");
  verify->add_option("--bits", o.prefix_bits, "stream prefix length");
  verify->add_option("--function", o.function, "diamond: report on one function");
  verify->add_flag("--inverse", o.inverse, "quadweights: inverse lemma grid");
  verify->add_flag("--verbose", o.verbose, "print notes");

  auto* cert = app.add_subcommand("cert", "certificates");
  cert->require_subcommand(1);
  auto* check = cert->add_subcommand("check", "check a certificate file");
  check->add_option("file", o.file, "JSON certificate")->required();
  check->add_option("--depth", o.depth, "numeric depth");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*stream) return cmd_stream(o, out);
    if (*blocks) return cmd_blocks(o, out);
    if (*wp) return cmd_wp(o, out);
    if (*compile) return cmd_fst_compile(o, out);
    if (*apply) return cmd_pipeline_apply(o, out, err);
    if (*verify) return cmd_verify(o, out);
    if (*check) return cmd_cert_check(o, out, err);
  } catch (const PipelineError& e) {
    err << "violation: " << e.what() << '\n';
    return kExitFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace tdeg
