#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "volform/dsl/elaborate.hpp"
#include "volform/dsl/eval.hpp"
#include "volform/dsl/lexer.hpp"
#include "volform/dsl/parser.hpp"
#include "volform/dsl/printer.hpp"
#include "volform/runner.hpp"

using namespace volform;
using namespace volform::dsl;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string doc_path(const char* name) { return std::string(VOLFORM_DOCS) + "/" + name; }

std::string reprint(const std::string& src) { return print(*parse_expression(src)); }

template <class E>
Pos error_pos(const std::string& src) {
  try {
    parse(src);
  } catch (const E& e) {
    return e.pos();
  }
  FAIL("no error raised for: " << src);
  return {};
}

Pos elaboration_error_pos(const std::string& src) {
  try {
    elaborate(parse(src), "doc");
  } catch (const SemanticError& e) {
    return e.pos();
  }
  FAIL("no semantic error raised for: " << src);
  return {};
}

const char* const kPlaneChart = "chart {\n  vars x, y;\n}\n";

}  // namespace

TEST_CASE("lexer tokens and positions") {
  auto toks = lex("field v = x d/dy; # note\n  w^2 // tail");
  REQUIRE(toks.size() == 10);
  CHECK(toks[0].kind == Tok::Ident);
  CHECK(toks[4].kind == Tok::Deriv);
  CHECK(toks[4].text == "y");
  CHECK(toks[5].kind == Tok::Semi);
  CHECK(toks[6].pos.line == 2);
  CHECK(toks[6].pos.column == 3);
  CHECK(toks[7].kind == Tok::Caret);
  CHECK(toks.back().kind == Tok::End);
  CHECK(lex("u -> -u")[1].kind == Tok::Arrow);
  CHECK_THROWS_AS(lex("x $ y"), ParseError);
}

TEST_CASE("expression grammar golden outputs") {
  CHECK(reprint("1 + 2*x") == "1 + 2*x");
  CHECK(reprint("2x y") == "2*x*y");
  CHECK(reprint("(x + y)*(x - y)") == "(x + y)*(x - y)");
  CHECK(reprint("-x^2") == "-x^2");
  CHECK(reprint("x^-1") == "x^-1");
  CHECK(reprint("1/(x*y)") == "1/(x*y)");
  CHECK(reprint("a - (b - c)") == "a - (b - c)");
  CHECK(reprint("x d/dy") == "x*d/dy");
  CHECK(reprint("[xi, eta]") == "[xi, eta]");
  CHECK(reprint("[[1, 0], [0, -1]]") == "[[1, 0], [0, -1]]");
  CHECK(reprint("(xi, eta, 1)") == "(xi, eta, 1)");
  CHECK(reprint("iota(xi, w)") == "iota(xi, w)");
  CHECK(reprint("d(x*y)") == "d(x*y)");
  CHECK(reprint("dx^dy") == "dx^dy");
  CHECK(reprint("lie(xi, w) + div(xi)") == "lie(xi, w) + div(xi)");
}

TEST_CASE("expression parse trees") {
  auto e = parse_expression("1 + 2*x^3");
  REQUIRE(e->kind == Expr::Kind::Binary);
  CHECK(e->op == '+');
  const auto& rhs = *e->children[1];
  CHECK(rhs.op == '*');
  CHECK(rhs.children[1]->op == '^');
  CHECK(parse_expression("d/dx")->kind == Expr::Kind::Deriv);
  CHECK(parse_expression("(x)")->kind == Expr::Kind::Ident);
  CHECK(parse_expression("(x, y)")->kind == Expr::Kind::Tuple);
  CHECK(parse_expression("-x")->kind == Expr::Kind::Neg);
  CHECK(same_expr(*parse_expression("x y"), *parse_expression("x*y")));
  CHECK_FALSE(same_expr(*parse_expression("x + y"), *parse_expression("y + x")));
}

TEST_CASE("statement productions round-trip through the printer") {
  const std::vector<std::string> statements = {
      "chart {\n  vars x*, y*, z;\n  rel x + y + x*y*z - 1 solve z;\n}\n",
      "chart {\n  vars a, b;\n  invert a;\n}\n",
      "let f = x^2 + 1;\n",
      "field v = x*d/dy;\n",
      "form a = x*dy;\n",
      "volume w = 1/(x*y)*dx^dy;\n",
      "action s: x -> -x, y -> y order 2;\n",
      "point p: x = 1, y = 1/2;\n",
      "group G {\n  size 2;\n  basis [[1, 0], [0, -1]];\n  element A = [[0, -1], [1, 0]];\n}\n",
      "check tangent(v);\n",
      "check semicompat(v, v, 2) expect FULL_RING;\n",
      "check character(w, s) expect -1;\n",
  };
  for (const auto& s : statements) {
    auto doc = parse(s);
    CHECK(doc.statements.size() == 1);
    CHECK(print(doc) == s);
    CHECK(same_document(parse(print(doc)), doc));
  }
}

TEST_CASE("parse print parse is stable on the shipped documents") {
  for (const char* name : {"surface_xy.vf", "sl2.vf", "quadric_gamma.vf", "torus2.vf", "xm1_2.vf",
                           "corrupted_potential.vf"}) {
    auto doc = parse(read_file(doc_path(name)));
    auto printed = print(doc);
    CHECK(same_document(parse(printed), doc));
    CHECK(print(parse(printed)) == printed);
  }
}

TEST_CASE("random expressions survive printing") {
  std::mt19937 rng(51);
  const std::vector<std::string> atoms{"x", "y", "2", "1/3", "dx", "d/dy", "xi"};
  auto gen = [&](auto&& self, int depth) -> std::string {
    if (depth == 0 || rng() % 4 == 0) return atoms[rng() % atoms.size()];
    switch (rng() % 6) {
      case 0: return self(self, depth - 1) + " + " + self(self, depth - 1);
      case 1: return self(self, depth - 1) + " - (" + self(self, depth - 1) + ")";
      case 2: return "(" + self(self, depth - 1) + ")*" + self(self, depth - 1);
      case 3: return "-(" + self(self, depth - 1) + ")";
      case 4: return "(" + self(self, depth - 1) + ")^" + std::to_string(rng() % 3);
      default: return "iota(" + self(self, depth - 1) + ", " + self(self, depth - 1) + ")";
    }
  };
  for (int trial = 0; trial < 200; ++trial) {
    auto src = gen(gen, 4);
    auto e = parse_expression(src);
    CHECK_MESSAGE(same_expr(*parse_expression(print(*e)), *e), src);
  }
}

TEST_CASE("parse errors carry positions") {
  auto p = error_pos<ParseError>("");
  CHECK(p.line == 1);
  CHECK(p.column == 1);
  p = error_pos<ParseError>("chart {\n  vars x y;\n}\n");
  CHECK(p.line == 2);
  CHECK(p.column == 10);
  p = error_pos<ParseError>("let f = (x + ;");
  CHECK(p.line == 1);
  CHECK(p.column == 14);
  p = error_pos<ParseError>("check tangent(v) expect;");
  CHECK(p.column == 24);
}

TEST_CASE("semantic errors carry positions") {
  auto p = elaboration_error_pos("chart {\n  vars x, y, z;\n  rel z - x*y;\n}\n");
  CHECK(p.line == 3);
  p = elaboration_error_pos(std::string(kPlaneChart) + "field v = x d/dq;\n");
  CHECK(p.line == 4);
  CHECK(p.column == 13);
  p = elaboration_error_pos(std::string(kPlaneChart) + "let f = x;\nlet f = y;\n");
  CHECK(p.line == 5);
  p = elaboration_error_pos(std::string(kPlaneChart) + "check nosuch(x);\n");
  CHECK(p.line == 4);
  p = elaboration_error_pos(std::string(kPlaneChart) + "check tangent(v);\n");
  CHECK(p.line == 4);
  CHECK(p.column == 15);
  p = elaboration_error_pos("let f = 1;\n");
  CHECK(p.line == 1);
  p = elaboration_error_pos(std::string(kPlaneChart) + "field v = x d/dx;\ncheck tangent(v, v, v);\n");
  CHECK(p.line == 5);
}

TEST_CASE("sorts are resolved during evaluation") {
  auto s = builtin_scenario("surface");
  CHECK(evaluate(*parse_expression("x*y"), s).sort == Value::Sort::Scalar);
  CHECK(evaluate(*parse_expression("delta_z"), s).sort == Value::Sort::Field);
  CHECK(evaluate(*parse_expression("dx^dy"), s).sort == Value::Sort::Form);
  CHECK(evaluate(*parse_expression("(delta_z, delta_y, 1)"), s).sort == Value::Sort::Tuple);
  CHECK(eval_field(*parse_expression("[delta_z, delta_y]"), s) == lie_bracket(s.field("delta_z"), s.field("delta_y")));
  CHECK(eval_form(*parse_expression("iota(delta_z, w)"), s) == theta(s.field("delta_z"), s.volume_form()));
  CHECK(eval_form(*parse_expression("d(z)"), s) == DiffForm::differential(s.chart, "z"));
  CHECK(eval_scalar(*parse_expression("div(delta_z)"), s).is_zero());
  CHECK(eval_constant(*parse_expression("-3/4"), s) == Rational(-3, 4));
  CHECK(eval_matrix(*parse_expression("[[1, 2], [3, 4]]"), s) == Matrix::from_rows({{1, 2}, {3, 4}}));
  CHECK_THROWS_AS(eval_field(*parse_expression("x d/dx"), s), SemanticError);
  CHECK_THROWS_AS(eval_scalar(*parse_expression("1/(x + y)"), s), SemanticError);
  CHECK_THROWS_AS(evaluate(*parse_expression("delta_z + dx"), s), SemanticError);
}

TEST_CASE("the surface document elaborates to the built-in scenario") {
  auto doc = parse(read_file(doc_path("surface_xy.vf")));
  auto s = elaborate(doc, "surface:p=x,q=y");
  CHECK(same_scenario(s, builtin_scenario("surface:p=x,q=y")));
  CHECK_FALSE(same_scenario(s, builtin_scenario("surface:p=x^2,q=y^3")));
}

TEST_CASE("check kinds table") {
  CHECK(find_check_kind("formula4") != nullptr);
  CHECK(find_check_kind("bogus") == nullptr);
  for (const auto& k : check_kinds()) {
    CHECK(k.min_args <= k.max_args);
    CHECK_FALSE(k.summary.empty());
  }
}
