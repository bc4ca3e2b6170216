#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sys/wait.h>

#include "homascend/session.hpp"

using namespace homascend;

namespace {

const char* kEx37 = R"(# the square-zero plane over Q and its Gaussian extension
field q = rationals
field qi = extend q by t^2+1 as i
algebra R = quotient q [X, Y] rels [] trunc 2
map phi = tensor_extension qi R
algebra S = target phi
module N = cyclic S [X + i*Y]
)";

Report run_text(const std::string& text, std::uint64_t seed = 0) {
  RunOptions o;
  o.seed = seed;
  return run(parse_session(text), o);
}

const FactValue& fact(const Report& r, std::size_t cmd, const std::string& key) {
  const FactValue* v = r.commands.at(cmd).facts.get(key);
  if (!v) throw std::runtime_error("missing fact " + key);
  return *v;
}

struct Outcome {
  int code;
  std::string out;
};

Outcome cli(const std::string& args) {
#ifdef HOMASCEND_CLI_PATH
  std::string cmd = std::string(HOMASCEND_CLI_PATH) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
#else
  (void)args;
  return {-1, ""};
#endif
}

std::string write_temp(const std::string& name, const std::string& text) {
  std::string path = testing::TempDir() + name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST(Parse, EmptyDocument) {
  Session s = parse_session("");
  EXPECT_TRUE(s.commands.empty());
  EXPECT_TRUE(s.order.empty());
  Report r = run(s);
  EXPECT_EQ(r.exit_code(), 0);
  EXPECT_FALSE(emit(r, Format::Json).empty());
  EXPECT_FALSE(emit(r, Format::Text).empty());
}

TEST(Parse, GaussianExtensionObjects) {
  Session s = parse_session(kEx37);
  EXPECT_EQ(s.fields.size(), 2u);
  EXPECT_EQ(s.algebras.size(), 2u);
  EXPECT_EQ(s.maps.size(), 1u);
  EXPECT_EQ(s.modules.at("N").dim(), 4u);
  EXPECT_EQ(s.order.front(), "q");
}

TEST(Parse, ErrorsCarryPosition) {
  auto where = [](const std::string& text) -> std::pair<std::size_t, std::size_t> {
    try {
      parse_session(text);
    } catch (const ParseError& e) {
      return {e.line(), e.column()};
    }
    return {0, 0};
  };
  EXPECT_EQ(where("field q = rationals\nfield q = rationals\n"), std::make_pair(2ul, 7ul));
  EXPECT_EQ(where("field q = rationals\nalgebra R = quotient q [X] rels [X^2 + Z] trunc 3\n").first, 2u);
  EXPECT_EQ(where("cmd nothing\n"), std::make_pair(1ul, 5ul));
  EXPECT_EQ(where("config ext_range 13\n").first, 1u);
  EXPECT_EQ(where("field f = prime 9\n").first, 1u);
  EXPECT_EQ(where("module M = free R 1\n").first, 1u);
}

TEST(Parse, UnitLawViolation) {
  const char* text =
      "field q = rationals\n"
      "algebra R = quotient q [x] rels [] trunc 2\n"
      "map bad = matrix R R [[0, 0], [0, 1]]\n";
  try {
    parse_session(text);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("invariant"), std::string::npos);
  }
}

TEST(Run, GalleryResidueLine) {
  Report r = run_text("cmd gallery 2.11 L=5\n");
  ASSERT_EQ(r.commands.size(), 1u);
  EXPECT_EQ(r.commands[0].status, CommandStatus::Ok);
  EXPECT_EQ(std::get<std::vector<std::int64_t>>(fact(r, 0, "ext-dims")), (std::vector<std::int64_t>{1, 0, 0, 0, 0, 0}));
}

TEST(Run, AscendQuarticOntoQuadratic) {
  Report r = run_text(
      "field q = rationals\n"
      "algebra R = quotient q [x] rels [] trunc 4\n"
      "algebra B = quotient q [x] rels [] trunc 2\n"
      "map pi = names R B\n"
      "module M = free R 1\n"
      "cmd ascend pi M\n");
  ASSERT_EQ(r.commands[0].status, CommandStatus::Ok) << r.commands[0].message;
  EXPECT_FALSE(std::get<bool>(fact(r, 0, "compatible-structure")));
  EXPECT_FALSE(std::get<bool>(fact(r, 0, "iota-bijective")));
  EXPECT_FALSE(std::get<bool>(fact(r, 0, "epsilon-bijective")));
}

TEST(Run, ExtendedWithSummandWitness) {
  Report r = run_text(std::string(kEx37) + "cmd extended phi N\n");
  ASSERT_EQ(r.commands[0].status, CommandStatus::Ok) << r.commands[0].message;
  EXPECT_FALSE(std::get<bool>(fact(r, 0, "extended")));
  EXPECT_TRUE(std::get<bool>(fact(r, 0, "summand-of-extended")));
}

TEST(Run, ProvenanceOfAssertedExt) {
  Report r = run_text("pid P = invariants R 1 [2]\ncmd pid_ascent P\n");
  const auto& c = r.commands.at(0);
  EXPECT_NE(std::find(c.asserted.begin(), c.asserted.end(), "ext-vanishing"), c.asserted.end());
  std::string json = emit(r, Format::Json);
  EXPECT_NE(json.find("\"ext-vanishing\": \"asserted-by-theorem\""), std::string::npos);
}

TEST(Run, FailureSkipsRest) {
  Report r = run_text(
      "field q = rationals\nalgebra R = quotient q [x] rels [] trunc 2\nmodule M = free R 1\n"
      "cmd ext M M 1\ncmd hom M Z\ncmd ext M M 1\n");
  EXPECT_EQ(r.commands[0].status, CommandStatus::Ok);
  EXPECT_EQ(r.commands[1].status, CommandStatus::Error);
  EXPECT_EQ(r.commands[2].status, CommandStatus::Skipped);
  EXPECT_EQ(r.exit_code(), 2);
}

TEST(Run, DaggerHypothesisReported) {
  Report r = run_text(std::string(kEx37) + "module K = residue R\ncmd compatible phi K\n");
  EXPECT_EQ(r.commands[0].status, CommandStatus::Error);
  EXPECT_NE(r.commands[0].message.find("dagger"), std::string::npos);
}

TEST(Run, TimeoutMarksIncomplete) {
  RunOptions o;
  o.timeout = std::chrono::milliseconds(1);
  Session s = parse_session(
      "field q = rationals\nalgebra R = quotient q [X, Y, Z] rels [] trunc 4\nmodule T = residue R\n"
      "cmd ext T T 12\n");
  Report r = run(s, o);
  EXPECT_EQ(r.commands[0].status, CommandStatus::ResourceExceeded);
  EXPECT_FALSE(r.complete);
  EXPECT_EQ(r.exit_code(), 3);
}

TEST(Emit, JsonRoundTripAndDeterminism) {
  std::string text = std::string(kEx37) +
                     "module K = residue R\ncmd iso K K\ncmd krs N\ncmd example37 -2\ncmd gallery 2.10\n";
  std::string a = emit(run_text(text, 5), Format::Json);
  std::string b = emit(run_text(text, 5), Format::Json);
  EXPECT_EQ(a, b);
  EXPECT_EQ(emit(report_from_json(a), Format::Json), a);
  EXPECT_NE(a.find("\"schema\": 1"), std::string::npos);

  RunOptions par;
  par.seed = 5;
  par.threads = 3;
  EXPECT_EQ(emit(run(parse_session(text), par), Format::Json), a);
}

TEST(Emit, RejectsForeignSchema) { EXPECT_THROW(report_from_json("{\"schema\": 2}"), std::invalid_argument); }

TEST(Cli, ExitCodes) {
#ifndef HOMASCEND_CLI_PATH
  GTEST_SKIP() << "CLI not built";
#endif
  EXPECT_EQ(cli("gallery 2.11 L=5").code, 0);
  EXPECT_EQ(cli("gallery 2.12").code, 2);
  EXPECT_EQ(cli("").code, 2);

  Outcome bad = cli("run " + write_temp("bad.hs", "field q = rationals\nfield q = prime 2\n"));
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.out.find("bad.hs:2:7: error:"), std::string::npos) << bad.out;

  Outcome ok = cli("run " + write_temp("ok.hs", std::string(kEx37) + "cmd extended phi N\n") + " --format json --seed 3");
  EXPECT_EQ(ok.code, 0);
  EXPECT_NE(ok.out.find("\"seed\": 3"), std::string::npos);

  Outcome slow = cli("run " +
                     write_temp("slow.hs",
                                "field q = rationals\nalgebra R = quotient q [X, Y, Z] rels [] trunc 4\n"
                                "module T = residue R\ncmd ext T T 12\n") +
                     " --timeout 0.05");
  EXPECT_EQ(slow.code, 3);
}
