#include "support.h"

using namespace rl_test;

namespace {

Value ok(const Result& r) {
  REQUIRE_MESSAGE(r.status == Status::Success, to_string(r.status));
  return r.value;
}

Env env(std::initializer_list<std::pair<const char*, const char*>> xs) {
  Env e;
  for (const auto& [k, v] : xs) e.emplace(k, V(v));
  return e;
}

const Generator& generator_of(const Expr& e) { return std::get<For>(e.node).generator; }

}  // namespace

TEST_CASE("init_module") {
  ModuleDef m = parse_module("global int g = 1 + 2;");
  InitResult r = init_module(m);
  REQUIRE(!r.error);
  CHECK(r.store == env({{"g", "3"}}));

  CHECK(init_module(parse_module("")).store.empty());

  // Globals are initialized in order; a later name is unassigned.
  m = parse_module("global int g = h; global int h = 1;");
  r = init_module(m);
  REQUIRE(r.error);
  CHECK(r.error->global == "g");
  CHECK(r.error->result.status == Status::Error);

  m = parse_module("global int g = \"s\";");
  REQUIRE(init_module(m).error);
}

TEST_CASE("eval_expr examples") {
  CHECK(ok(eval("switch (1) { case 2 => 3 }")).is_bottom());
  Result r = eval("(1: 2)[3]");
  CHECK(r.status == Status::Throw);
  CHECK(r.value == V("nokey(3)"));
  CHECK(ok(eval("while (false()) 1")).is_bottom());
  CHECK(ok(eval("(1: 2)[1]")) == V("2"));
  CHECK(ok(eval("(1: 2)[3 = 4]")) == V("(1: 2, 3: 4)"));
}

TEST_CASE("solve climbs the bounded chain") {
  auto r = run("int lub(int a, int b) = if a < b then b else a;\n"
               "int f(int w) = if w < 3 then w + 1 else 3;\n"
               "global int v = 0;",
               "solve (v) v = lub(v, f(v))");
  CHECK(ok(r.result) == V("3"));
  CHECK(r.store.at("v") == V("3"));
}

TEST_CASE("exceptional results") {
  CHECK(eval("[1, throw 2, 3]") == Result::thrown(V("2")));
  CHECK(eval("{break}").status == Status::Break);
  CHECK(eval("continue + 1").status == Status::Continue);
  CHECK(eval("-(return 3)") == Result::ret(V("3")));
  CHECK(eval("fail").status == Status::Fail);
  CHECK(eval("if 1 then 2 else 3").status == Status::Error);
  CHECK(eval("local int x in x end").status == Status::Error);
  CHECK(eval("local int x in x = \"s\" end").status == Status::Error);
  CHECK(ok(eval("try throw 1 catch e => e + 1")) == V("2"));
  CHECK(eval("try fail finally throw 2") == Result::thrown(V("2")));
  CHECK(eval("try throw 1 finally 0") == Result::thrown(V("1")));
}

TEST_CASE("eval_expr_star") {
  ModuleDef m;
  Interpreter in(m);
  Store s = env({{"x", "0"}});
  std::vector<Expr> es{parse_expr("1", m), parse_expr("2", m), parse_expr("3", m)};
  SeqResult r = in.eval_expr_star(es, s);
  REQUIRE(r.ok());
  CHECK(r.values == std::vector{V("1"), V("2"), V("3")});

  std::vector<Expr> thr{parse_expr("1", m), parse_expr("throw 2", m), parse_expr("x = 5", m)};
  r = in.eval_expr_star(thr, s);
  CHECK(r.exc == Result::thrown(V("2")));
  CHECK(s.at("x") == V("0"));

  r = in.eval_expr_star({}, s);
  REQUIRE(r.ok());
  CHECK(r.values.empty());
}

TEST_CASE("eval_cases restores the store between cases") {
  auto r = run("global int g = 0;",
               "switch (1) { case 1 => local in g = 5; fail end case x => g + x }");
  CHECK(ok(r.result) == V("1"));
  CHECK(r.store.at("g") == V("0"));

  ModuleDef m = parse_module("global int g = 0;");
  Interpreter in(m);
  Store s = env({{"g", "0"}});
  Expr sw = parse_expr("switch (1) { case x => local in g = x; fail end }", m);
  const auto& cases = std::get<Switch>(sw.node).cases;
  CHECK(in.eval_cases(cases, V("1"), s).status == Status::Fail);
  CHECK(s == env({{"g", "0"}}));
  CHECK(in.eval_cases({}, V("1"), s).status == Status::Fail);
}

TEST_CASE("eval_case") {
  ModuleDef m;
  Interpreter in(m);
  Store s;
  std::vector<Env> one{env({{"x", "1"}})};
  CHECK(ok(in.eval_case(one, parse_expr("x", m), s)) == V("1"));
  CHECK(s.empty());

  std::vector<Env> two{env({{"x", "1"}}), env({{"x", "2"}})};
  CHECK(ok(in.eval_case(two, parse_expr("if x == 1 then fail else x", m), s)) == V("2"));
  CHECK(in.eval_case({}, parse_expr("1", m), s).status == Status::Fail);
}

TEST_CASE("eval_each") {
  ModuleDef m = parse_module("global int n = 0;");
  Interpreter in(m);
  Store s = env({{"n", "0"}});
  std::vector<Env> three{env({{"x", "1"}}), env({{"x", "2"}}), env({{"x", "3"}})};
  CHECK(ok(in.eval_each(parse_expr("continue", m), three, s)).is_bottom());
  CHECK(ok(in.eval_each(parse_expr("local in n = n + x; break end", m), three, s)).is_bottom());
  CHECK(s.at("n") == V("1"));
  CHECK(in.eval_each(parse_expr("throw 1", m), three, s) == Result::thrown(V("1")));
}

TEST_CASE("eval_gen") {
  ModuleDef m;
  Interpreter in(m);
  Store s;
  EnvResult r = in.eval_gen(generator_of(parse_expr("for (x <- [1, 2]) x", m)), s);
  REQUIRE(r.ok());
  CHECK(r.envs == std::vector{env({{"x", "1"}}), env({{"x", "2"}})});

  r = in.eval_gen(generator_of(parse_expr("for (x <- (1: 2, 3: 4)) x", m)), s);
  REQUIRE(r.ok());
  CHECK(r.envs == std::vector{env({{"x", "1"}}), env({{"x", "3"}})});

  r = in.eval_gen(generator_of(parse_expr("for (x <- 5) x", m)), s);
  CHECK(r.exc.status == Status::Error);

  r = in.eval_gen(generator_of(parse_expr("for ([*xs, *ys] := [1]) 0", m)), s);
  REQUIRE(r.ok());
  CHECK(r.envs.size() == 2);
}

TEST_CASE("unary and binary operators") {
  CHECK(apply_unary(UnaryOp::Neg, V("3")) == Result::success(V("-3")));
  CHECK(apply_unary(UnaryOp::Neg, V("{}")).status == Status::Error);
  CHECK(apply_unary(UnaryOp::Not, V("true()")) == Result::success(V("false()")));
  CHECK(apply_unary(UnaryOp::Not, V("1")).status == Status::Error);

  auto bin = [](BinaryOp op, const char* a, const char* b) { return apply_binary(op, V(a), V(b)); };
  CHECK(bin(BinaryOp::Add, "[1]", "[2]") == Result::success(V("[1, 2]")));
  CHECK(bin(BinaryOp::Add, "{1, 2}", "{2, 3}") == Result::success(V("{1, 2, 3}")));
  CHECK(bin(BinaryOp::Add, "(1: 2)", "(1: 3, 4: 5)") == Result::success(V("(1: 3, 4: 5)")));
  CHECK(bin(BinaryOp::Add, "\"a\"", "\"b\"") == Result::success(V("\"ab\"")));
  CHECK(bin(BinaryOp::Add, "1", "\"b\"").status == Status::Error);
  CHECK(bin(BinaryOp::Sub, "1", "3") == Result::success(V("-2")));
  CHECK(bin(BinaryOp::Mul, "4", "3") == Result::success(V("12")));
  CHECK(bin(BinaryOp::Div, "7", "2") == Result::success(V("3")));
  CHECK(bin(BinaryOp::Div, "1", "0").status == Status::Error);
  CHECK(bin(BinaryOp::Mod, "1", "0").status == Status::Error);
  CHECK(bin(BinaryOp::Eq, "[1]", "[1]") == Result::success(V("true()")));
  CHECK(bin(BinaryOp::Neq, "1", "\"1\"") == Result::success(V("true()")));
  CHECK(bin(BinaryOp::Lt, "1", "2") == Result::success(V("true()")));
  CHECK(bin(BinaryOp::Ge, "[1]", "{1}") == Result::success(V("false()")));
  CHECK(bin(BinaryOp::And, "true()", "false()") == Result::success(V("false()")));
  CHECK(bin(BinaryOp::Or, "1", "true()").status == Status::Error);
  CHECK(bin(BinaryOp::In, "2", "[1, 2]") == Result::success(V("true()")));
  CHECK(bin(BinaryOp::In, "3", "(3: 4)") == Result::success(V("true()")));
  CHECK(bin(BinaryOp::In, "1", "2").status == Status::Error);

  // Arbitrary precision.
  CHECK(ok(eval("100000000000 * 100000000000")) == V("10000000000000000000000"));
}

TEST_CASE("function calls") {
  auto r = run("int f(int x) = x + 1; int g(int x) { return x * 2; 0 }", "f(1) + g(3)");
  CHECK(ok(r.result) == V("8"));
  CHECK(run("int f(int x) = x;", "f(\"s\")").result.status == Status::Error);
  CHECK(run("int f() = fail;", "f()").result.status == Status::Error);
  CHECK(run("int f() = throw 1;", "f()").result == Result::thrown(V("1")));
  CHECK(run("void f() = 1;", "f()").result.status == Status::Error);
  // Parameters are not visible to the caller afterwards; globals are.
  r = run("global int g = 1; int setg(int x) = g = x;", "setg(2) + g");
  CHECK(ok(r.result) == V("4"));
  CHECK(r.store.at("g") == V("2"));
}

TEST_CASE("host resource guards") {
  ModuleDef m = parse_module("int loop(int n) = loop(n + 1);");
  Expr e = parse_expr("loop(0)", m);
  Store s;
  EvalOptions o;
  o.stack_budget = std::size_t{1} << 20;
  Interpreter in(m, o);
  CHECK_THROWS_AS(in.eval_expr(e, s), ResourceExhausted);

  ModuleDef none;
  EvalOptions sized;
  sized.max_value_size = 100;
  Interpreter small(none, sized);
  Expr grow = parse_expr("local value x in x = 0; while (true()) x = [x, x] end", none);
  CHECK_THROWS_AS(small.eval_expr(grow, s), ResourceExhausted);

  EvalOptions stepped;
  stepped.max_steps = 1000;
  Interpreter bounded(none, stepped);
  Expr spin = parse_expr("while (true()) 1", none);
  CHECK_THROWS_AS(bounded.eval_expr(spin, s), ResourceExhausted);
}
