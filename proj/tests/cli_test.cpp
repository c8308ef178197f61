#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>

#include "kolchin/cli.hpp"
#include "kolchin/expr.hpp"
#include "support/ast_generators.hpp"
#include "support/diff_generators.hpp"
#include "support/json_schema.hpp"

using namespace kolchin;
using kolchin::cli::Json;

namespace {

int syntax_column(const std::string& text) {
  try {
    parse_expr(text);
  } catch (const SyntaxError& e) {
    return e.column();
  }
  return 0;
}

Json run(const std::vector<std::string>& args, int* code = nullptr) {
  cli::Outcome o = cli::run(args);
  if (code) *code = o.exit_code;
  return o.result;
}

schema::Validator validator() {
  std::ifstream f(KOLCHIN_SOURCE_DIR "/tools/schema/result.schema.json");
  return schema::Validator(Json::parse(f));
}

}  // namespace

TEST(Parser, GrammarExample) {
  Ast a = parse_expr("d1^2(x1)*x2 - 4*x1");
  using K = Ast::Kind;
  Ast expected = Ast::binary(K::sub, Ast::binary(K::mul, Ast::unary(K::deriv, Ast::xvar(1), 1, 2), Ast::xvar(2)),
                             Ast::binary(K::mul, Ast::number(4), Ast::xvar(1)));
  EXPECT_EQ(a, expected);
  DiffRing R(2, 1);
  EXPECT_EQ(evaluate_expr(R, a), R.dx(1, 1, 2) * R.x(2) - DiffPoly(4) * R.x(1));
}

TEST(Parser, SigmaMovesCoefficientAndIndeterminate) {
  DiffRing R(1, 1, ScalarField(1, 1, {1}));
  DiffPoly v = evaluate_expr(R, parse_expr("s(t1*x1)"));
  EXPECT_EQ(v, DiffPoly(Scalar::t(1) + Scalar(1)) * DiffPoly::indet(R.indet(1, {}, 1)));
  EXPECT_EQ(evaluate_expr(R, parse_expr("s^-1(s(x1))")), R.x(1));
}

TEST(Parser, SyntaxErrorsCarryColumns) {
  EXPECT_EQ(syntax_column("d1(x1"), 6);
  EXPECT_EQ(syntax_column("x1 +"), 5);
  EXPECT_EQ(syntax_column("2*y1"), 3);       // unknown identifier
  EXPECT_EQ(syntax_column("d1 x1"), 4);      // operator without parentheses
  EXPECT_EQ(syntax_column("d1()"), 4);       // no argument
  EXPECT_EQ(syntax_column("d1(x1, x2)"), 6); // two arguments
  EXPECT_EQ(syntax_column("x0"), 2);
  EXPECT_EQ(syntax_column("d1^0(x1)"), 4);
  EXPECT_EQ(syntax_column("x1)"), 3);
  EXPECT_EQ(syntax_column("d2^3(x1) - s^-1(x2)"), 0);
}

TEST(Parser, EvaluationErrors) {
  DiffRing R(1, 1, ScalarField(1, 1, {0}));
  EXPECT_THROW(evaluate_expr(R, parse_expr("1/x1")), PreconditionError);
  EXPECT_THROW(evaluate_expr(R, parse_expr("x1^-1")), PreconditionError);
  EXPECT_THROW(evaluate_expr(R, parse_expr("1/(t1 - t1)")), DivisionByZero);
  EXPECT_THROW(evaluate_expr(R, parse_expr("x2")), PreconditionError);
  EXPECT_THROW(evaluate_expr(R, parse_expr("d2(x1)")), PreconditionError);
  EXPECT_THROW(evaluate_expr(R, parse_expr("t2")), PreconditionError);
  EXPECT_EQ(evaluate_expr(R, parse_expr("t1^-2*x1")), DiffPoly(Scalar::t(1).pow(-2)) * R.x(1));
}

TEST(Parser, ListsAndUsage) {
  auto xs = parse_expr_list("x1, d2(x3) ,t4");
  ASSERT_EQ(xs.size(), 3u);
  ExprUsage u;
  for (const auto& a : xs) u.merge(expr_usage(a));
  EXPECT_EQ(u.n, 3);
  EXPECT_EQ(u.m, 2);
  EXPECT_EQ(u.k, 4);
  EXPECT_TRUE(parse_expr_list("  ").empty());
}

TEST(ParserProperties, PrintParseRoundTrip) {
  proptest::Gen g(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    Ast a = proptest::random_ast(g, 6);
    ASSERT_LE(proptest::depth(a), 7);
    std::string text = print_expr(a);
    Ast b;
    ASSERT_NO_THROW(b = parse_expr(text)) << text;
    ASSERT_EQ(b, a) << text << " reprinted as " << print_expr(b);
    ASSERT_EQ(print_expr(b), text);
  }
}

TEST(ParserProperties, LibraryPrintsReparse) {
  proptest::Gen g(77);
  for (int trial = 0; trial < 200; ++trial) {
    int m = g.uniform(1, 2);
    DiffRing R(2, m, ScalarField(1, m, {1}));
    DiffPoly f = proptest::random_diffpoly(g, R, 2, 4, 3, 2);
    if (g.coin(0.3)) f = R.apply_sigma(f, g.uniform(-1, 2), true);
    ASSERT_EQ(evaluate_expr(R, parse_expr(f.to_string())), f) << f.to_string();
  }
}

TEST(Cli, SpecExamples) {
  int code = -1;
  Json r = run({"reduce", "d1^2(x1)", "--by", "d1(x1)^2 - 4*x1"}, &code);
  EXPECT_EQ(code, 0);
  EXPECT_EQ(r["remainder"], "4*d1(x1)");
  ASSERT_EQ(r["certificate"].size(), 1u);
  EXPECT_EQ(r["certificate"][0]["sep"], 1);

  r = run({"jet", "--gens", "x2 - x1^2", "--at", "1,1", "--order", "1"}, &code);
  EXPECT_EQ(code, 0);
  EXPECT_EQ(r["dim"], 1);
  EXPECT_EQ(r["basis"], Json::parse(R"([["1","2"]])"));

  r = run({"primechar?", "d1(x1)^2"}, &code);
  EXPECT_EQ(code, 0);
  EXPECT_EQ(r["answer"], false);
  EXPECT_EQ(r["witness"], "saturation is unit ideal");

  r = run({"reduce", "d1(x1", "--by", "x1"}, &code);
  EXPECT_EQ(code, 1);
  EXPECT_EQ(r["error"]["column"], 6);
}

TEST(Cli, ExitCodesFollowTheAnswerTaxonomy) {
  int code = -1;
  run({"prime?", "x1*x2"}, &code);
  EXPECT_EQ(code, 0);  // a definite "no" is still definite
  run({"dsmod-sharp", "--A", "0, 0; 0, 0", "--B", "0, 1; 1, 0"}, &code);
  EXPECT_EQ(code, 2);
  run({"gb", "x1^2 +"}, &code);
  EXPECT_EQ(code, 1);
  run({"no-such-command"}, &code);
  EXPECT_EQ(code, 1);

  setenv("KOLCHIN_BUDGET", "basis=1", 1);
  Json r = run({"gb", "x1^2 - x2, x1*x2 - 1"}, &code);
  unsetenv("KOLCHIN_BUDGET");
  EXPECT_EQ(code, 2);
  EXPECT_EQ(r["status"], "unknown");
  setenv("KOLCHIN_BUDGET", "basis", 1);
  run({"gb", "x1"}, &code);
  unsetenv("KOLCHIN_BUDGET");
  EXPECT_EQ(code, 1);
}

TEST(Cli, ContextFlagsAndInference) {
  int code = -1;
  Json r = run({"charset", "x1", "--n", "1", "--m", "0"}, &code);
  EXPECT_EQ(code, 0);
  r = run({"charset", "x2", "--n=1"}, &code);
  EXPECT_EQ(code, 1);
  r = run({"dsmod-check", "--A", "1", "--B", "1", "--m", "2"}, &code);
  EXPECT_EQ(code, 1);
  r = run({"--json", "vstar?", "--charset", "d1(x1) - 1", "--at", "t1"}, &code);
  EXPECT_EQ(code, 0);
  EXPECT_EQ(r["answer"], true);
}

TEST(Cli, CommandLineSplitting) {
  auto v = cli::split_command_line(R"(reduce "d1(x1) - 1" --by 'x1 + 1' a\b "q\"x")");
  std::vector<std::string> expected{"reduce", "d1(x1) - 1", "--by", "x1 + 1", "a\\b", "q\"x"};
  EXPECT_EQ(v, expected);
  EXPECT_THROW(cli::split_command_line("reduce \"x1"), PreconditionError);
}

TEST(Session, BindingsAreTypeChecked) {
  cli::Session s;
  s.context.n = 1;
  s.context.m = 1;
  s.bind("f", "poly", "d1(x1)^2 - 4*x1");
  s.bind("a", "point", "t1");
  s.bind("M", "matrix", "1, 0; 0, t1");
  EXPECT_THROW(s.bind("g", "poly", "x2"), PreconditionError);
  EXPECT_THROW(s.bind("p", "point", "x1"), PreconditionError);
  EXPECT_THROW(s.bind("M2", "matrix", "1, 0; 1"), PreconditionError);
  EXPECT_THROW(s.bind("h", "vector", "1"), PreconditionError);
  EXPECT_THROW(s.bind("9z", "poly", "1"), PreconditionError);
  EXPECT_EQ(s.expand("$f + $a"), "(d1(x1)^2 - 4*x1) + t1");
  EXPECT_THROW(s.expand("$nope"), PreconditionError);

  cli::Session t = cli::Session::from_json(s.to_json());
  EXPECT_EQ(t.to_json(), s.to_json());
}

TEST(Schema, GoldenTranscriptValidates) {
  schema::Validator v = validator();
  std::ifstream f(KOLCHIN_SOURCE_DIR "/tests/golden/transcript.txt");
  std::string line;
  int checked = 0, exit_line_code = -1;
  std::string status;
  while (std::getline(f, line)) {
    if (line.rfind("{", 0) == 0) {
      Json j = Json::parse(line);
      EXPECT_EQ(v.check(j), "") << line;
      status = j["status"];
      ++checked;
    } else if (line.rfind("exit ", 0) == 0) {
      exit_line_code = std::stoi(line.substr(5));
      EXPECT_EQ(exit_line_code, status == "ok" ? 0 : status == "unknown" ? 2 : 1);
    }
  }
  EXPECT_GE(checked, 50);
}

TEST(Schema, RejectsMalformedResults) {
  schema::Validator v = validator();
  EXPECT_NE(v.check(Json::parse(R"({"command":"jet","status":"ok","dim":"1"})")), "");
  EXPECT_NE(v.check(Json::parse(R"({"command":"reduce","status":"maybe"})")), "");
  EXPECT_NE(v.check(Json::parse(R"({"command":"vstar?","status":"ok","answer":true,"extra":1})")), "");
  EXPECT_EQ(v.check(Json::parse(R"({"command":"vstar?","status":"ok","answer":true})")), "");
  EXPECT_EQ(v.check(run({"coherent?", "d1(x1) - x1, d2(x1) - 1"})), "");
}
