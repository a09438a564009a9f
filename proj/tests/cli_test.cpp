#include <gtest/gtest.h>

#include <sstream>

#include "tdeg/cli.hpp"

using namespace tdeg;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, Stream) {
  const Result r = run({"stream", "poly: n", "--bits", "10"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "1101001000\n");
}

TEST(Cli, Blocks) {
  EXPECT_EQ(run({"blocks", "1101001000"}).out, "0,1,2\npartial 3\n");
  EXPECT_EQ(run({"blocks", "0110"}).code, kExitInvalid);
}

TEST(Cli, WeightProduct) {
  EXPECT_EQ(run({"wp", "[[2,4,6,8],[1,7,4]]", "poly: n", "--numeric", "4"}).out, "24 35 84 75\n");
  const Result r = run({"wp", "[[1,1,0]]", "poly: n", "--symbolic"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "poly: 4*n + 1\n");
}

TEST(Cli, FstCompile) {
  const Result r = run({"fst", "compile", "drop 1"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out.rfind("states 3\n", 0), 0u);
  EXPECT_NE(run({"fst", "compile", "drop 1", "--dot"}).out.find("digraph"), std::string::npos);
}

TEST(Cli, PipelineApply) {
  const Result ok = run({"pipeline", "apply", "drop 1 | sub * 1", "poly: n", "--check-prefix", "2000"});
  EXPECT_EQ(ok.code, kExitOk);
  EXPECT_NE(ok.out.find("prefix agrees"), std::string::npos);
  const Result bad = run({"pipeline", "apply", "sub * 1", "poly: n"});
  EXPECT_EQ(bad.code, kExitFailed);
  EXPECT_NE(bad.err.find("drop 1"), std::string::npos);
}

TEST(Cli, Verify) {
  EXPECT_EQ(run({"verify", "quadweights", "--grid", "20"}).out, "400/400 identities exact\n");
  EXPECT_EQ(run({"verify", "quadweights", "--inverse", "--grid", "3"}).code, kExitOk);
  EXPECT_EQ(run({"verify", "gamma", "--cases", "5"}).code, kExitOk);
  const Result d = run({"verify", "diamond", "--function", "pw mod 2 { 0: 2n + 1; 1: 3n }"});
  EXPECT_EQ(d.code, kExitOk);
  EXPECT_NE(d.out.find("AllLinear"), std::string::npos);
  EXPECT_EQ(run({"verify", "nonsense"}).code, kExitInvalid);
}

TEST(Cli, Errors) {
  const Result r = run({"stream", "poly: n +", "--bits", "5"});
  EXPECT_EQ(r.code, kExitInvalid);
  EXPECT_EQ(r.err.rfind("error: ", 0), 0u);
  EXPECT_EQ(run({}).code, kExitInvalid);
  EXPECT_EQ(run({"cert", "check", "/nonexistent.json"}).code, kExitInvalid);
}
