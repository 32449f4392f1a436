#include "support.h"

using namespace rl_test;

namespace {

bool has_two_star_set_pattern(const Expr& e);

bool any_case(const std::vector<Case>& cs) {
  for (const auto& c : cs) {
    if (const auto* s = std::get_if<SetPat>(&c.pattern->node)) {
      int n = 0;
      for (const auto& i : s->items) n += std::holds_alternative<StarVar>(i);
      if (n == 2) return true;
    }
    if (has_two_star_set_pattern(*c.body)) return true;
  }
  return false;
}

bool has_two_star_set_pattern(const Expr& e) {
  if (const auto* s = std::get_if<Switch>(&e.node)) return any_case(s->cases);
  if (const auto* s = std::get_if<Solve>(&e.node)) return has_two_star_set_pattern(*s->body);
  if (const auto* b = std::get_if<Block>(&e.node)) {
    for (const auto& x : b->body) {
      if (has_two_star_set_pattern(x)) return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("simplifier parses to a bottom-up visit with two cases") {
  ModuleDef m = parse_module(read_file(program_path("simplify.rsl")));
  const FunDef* f = m.find_function("simplify");
  REQUIRE(f != nullptr);
  const auto* v = std::get_if<Visit>(&f->body.node);
  REQUIRE(v != nullptr);
  CHECK(v->strategy == Strategy::BottomUp);
  CHECK(v->cases.size() == 2);
}

TEST_CASE("knapsack contains a set pattern with two stars") {
  ModuleDef m = parse_module(read_file(program_path("knapsack.rsl")));
  const FunDef* f = m.find_function("slowknapsack");
  REQUIRE(f != nullptr);
  CHECK(has_two_star_set_pattern(f->body));
}

TEST_CASE("parse errors carry a position") {
  try {
    parse_module("data D = k(;");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.span().line == 1);
    CHECK(e.span().column == 12);
    CHECK(describe(e, "f.rsl").rfind("f.rsl:1:12:", 0) == 0);
  }
  CHECK_THROWS_AS(parse_expr("1 +", ModuleDef{}), ParseError);
  CHECK_THROWS_AS(parse_value("[1,"), ParseError);
  CHECK_THROWS_AS(parse_module("int while() = 1;"), ParseError);
}

TEST_CASE("render and reparse the example programs") {
  for (const char* name : {"simplify.rsl", "fixpoint.rsl", "knapsack.rsl", "prod.rsl",
                           "infincrement.rsl"}) {
    CAPTURE(name);
    ModuleDef m = parse_module(read_file(program_path(name)));
    std::string text = render(m);
    ModuleDef again = parse_module(text);
    CHECK(again == m);
    CHECK(render(again) == text);
  }
}

TEST_CASE("render values") {
  CHECK(render(Value::bottom()) == "<undefined>");
  CHECK(render(V("{2, 1}")) == "{1, 2}");
  CHECK(render(V("(3: \"a\", 1: [])")) == "(1: [], 3: \"a\")");
  CHECK(render(V("\"q\\\"\\n\"")) == "\"q\\\"\\n\"");
  CHECK(render(V("-5")) == "-5");
}

TEST_CASE("operator precedence survives rendering") {
  ModuleDef m;
  for (const char* src : {"1 + 2 * 3", "(1 + 2) * 3", "1 - (2 - 3)", "!(1 < 2) || true()",
                          "-(1 + 2)", "x = y = 1", "1 in [1] && 2 in {2}"}) {
    CAPTURE(src);
    Expr e = parse_expr(src, m);
    CHECK(parse_expr(render(e), m) == e);
  }
  Expr e = parse_expr("1 + 2 * 3", m);
  const auto& b = std::get<Binary>(e.node);
  CHECK(b.op == BinaryOp::Add);
}

TEST_CASE("spans cover the whole node") {
  ModuleDef m;
  Expr e = parse_expr("[1, 22][0]", m);
  const auto& look = std::get<Lookup>(e.node);
  CHECK(e.span.begin == 0);
  CHECK(e.span.end == 10);
  CHECK(look.map->span.begin == 0);
  CHECK(look.map->span.end == 7);
  const auto& list = std::get<ListExpr>(look.map->node);
  CHECK(list.elements[1].span.begin == 4);
  CHECK(list.elements[1].span.end == 6);
  CHECK(look.key->span.begin == 8);

  Expr u = parse_expr("-(1 + 2)", m);
  CHECK(u.span.end == 8);
  Pattern p = parse_pattern("k(x, [*ys])");
  CHECK(p.span.end == 11);

  ModuleDef two = parse_module("int f() = 1;\nint g() =\n  2;");
  const FunDef* g = two.find_function("g");
  REQUIRE(g != nullptr);
  CHECK(g->body.span.line == 3);
  CHECK(g->body.span.column == 3);
}
