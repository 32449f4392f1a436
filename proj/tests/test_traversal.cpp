#include "support.h"

using namespace rl_test;

namespace {

const char* kExprData = "data Expr = intlit(int v) | plus(Expr lop, Expr rop);";

struct Visitor {
  ModuleDef m = parse_module(kExprData);
  Expr cases_src;
  Interpreter in{m};
  Store s;

  explicit Visitor(std::string_view cases)
      : cases_src(parse_expr("top-down visit (0) { " + std::string(cases) + " }", m)) {}

  std::span<const Case> cases() const { return std::get<Visit>(cases_src.node).cases; }
};

}  // namespace

TEST_CASE("simplifier bottom-up") {
  auto r = run_file("simplify.rsl", "simplify(plus(intlit(0), plus(intlit(5), intlit(0))))");
  CHECK(r.result == Result::success(V("intlit(5)")));
  r = run_file("simplify.rsl", "simplify(plus(plus(intlit(0), intlit(2)), intlit(0)))");
  CHECK(r.result == Result::success(V("intlit(2)")));
}

TEST_CASE("innermost with no matching case returns the value") {
  CHECK(eval("innermost visit ([1, 2]) { case \"x\" => 1 }") == Result::success(V("[1, 2]")));
  CHECK(eval("outermost visit ([1, 2]) { case \"x\" => 1 }") == Result::success(V("[1, 2]")));
}

TEST_CASE("innermost sorts by repeated swaps") {
  CHECK(eval("innermost visit ([3, 1, 2]) { case [*a, x, y, *b] => "
             "if x > y then a + [y, x] + b else fail }") ==
        Result::success(V("[1, 2, 3]")));
}

TEST_CASE("top-down infinite rewriting times out") {
  auto r = run_file("infincrement.rsl", "infincrement(succ(zero()))", Fuel(10000));
  CHECK(r.result.status == Status::Timeout);
}

TEST_CASE("td_visit") {
  Visitor v("case intlit(0) => intlit(9)");
  CHECK(v.in.td_visit(v.cases(), V("42"), v.s, BreakMode::NoBreak).status == Status::Fail);
  CHECK(v.in.td_visit(v.cases(), V("plus(intlit(0), intlit(1))"), v.s, BreakMode::NoBreak) ==
        Result::success(V("plus(intlit(9), intlit(1))")));

  Visitor thrower("case plus(x, y) => throw 1 case intlit(0) => intlit(9)");
  CHECK(thrower.in.td_visit(thrower.cases(), V("plus(intlit(0), intlit(1))"), thrower.s,
                            BreakMode::NoBreak) == Result::thrown(V("1")));
}

TEST_CASE("td_visit_star") {
  Visitor v("case intlit(0) => intlit(9)");
  CHECK(v.in.td_visit_star(v.cases(), {}, v.s, BreakMode::NoBreak).exc.status == Status::Fail);

  std::vector<Value> kids{V("intlit(0)"), V("intlit(1)")};
  SeqResult r = v.in.td_visit_star(v.cases(), kids, v.s, BreakMode::NoBreak);
  REQUIRE(r.ok());
  CHECK(r.values == std::vector{V("intlit(9)"), V("intlit(1)")});

  std::vector<Value> zeros{V("intlit(0)"), V("intlit(0)")};
  r = v.in.td_visit_star(v.cases(), zeros, v.s, BreakMode::BreakOnFirst);
  REQUIRE(r.ok());
  CHECK(r.values == std::vector{V("intlit(9)"), V("intlit(0)")});
}

TEST_CASE("bu_visit") {
  Visitor v("case intlit(0) => intlit(9)");
  CHECK(v.in.bu_visit(v.cases(), V("intlit(1)"), v.s, BreakMode::NoBreak).status == Status::Fail);

  // With break, the rewritten child stops the parent's own cases.
  Visitor parent("case intlit(0) => intlit(9) case plus(x, y) => intlit(7)");
  CHECK(parent.in.bu_visit(parent.cases(), V("plus(intlit(0), intlit(1))"), parent.s,
                           BreakMode::BreakOnFirst) ==
        Result::success(V("plus(intlit(9), intlit(1))")));
  CHECK(parent.in.bu_visit(parent.cases(), V("plus(intlit(0), intlit(1))"), parent.s,
                           BreakMode::NoBreak) == Result::success(V("intlit(7)")));
}

TEST_CASE("reconstruct type checks") {
  ModuleDef m = parse_module(kExprData);
  DataRegistry data(m);
  CHECK(reconstruct(V("42"), {}, data) == Result::success(V("42")));
  std::vector<Value> bottom{Value::bottom()};
  CHECK(reconstruct(V("intlit(1)"), bottom, data).status == Status::Error);
  std::vector<Value> str{V("\"s\"")};
  CHECK(reconstruct(V("intlit(1)"), str, data).status == Status::Error);
  std::vector<Value> kv{V("3"), V("4")};
  CHECK(reconstruct(V("(1: 2)"), kv, data) == Result::success(V("(3: 4)")));
  std::vector<Value> same{V("1"), V("1")};
  CHECK(reconstruct(V("{1, 2}"), same, data) == Result::success(V("{1}")));
}

TEST_CASE("if_fail and vcombine") {
  CHECK(if_fail(Result::fail(), V("7")) == V("7"));
  CHECK(if_fail(Result::success(V("3")), V("7")) == V("3"));
  CHECK(if_fail(Result::success(Value::bottom()), V("7")).is_bottom());

  std::vector<Value> two_three{V("2"), V("3")};
  SeqResult failed = SeqResult::of(Result::fail());
  CHECK(vcombine(Result::fail(), failed, V("1"), two_three).exc.status == Status::Fail);

  SeqResult r = vcombine(Result::success(V("1")), failed, V("0"), two_three);
  REQUIRE(r.ok());
  CHECK(r.values == std::vector{V("1"), V("2"), V("3")});

  std::vector<Value> two{V("2")};
  r = vcombine(Result::fail(), SeqResult::success({V("9")}), V("1"), two);
  REQUIRE(r.ok());
  CHECK(r.values == std::vector{V("1"), V("9")});
}

TEST_CASE("visit results and store effects") {
  CHECK(eval("bottom-up visit ([1, 2, 3]) { case 2 => throw 2 }") == Result::thrown(V("2")));
  CHECK(eval("bottom-up visit ({1, 2}) { case 1 => 2 }") == Result::success(V("{2}")));
  CHECK(eval("bottom-up visit ((1: 2, 3: 4)) { case 1 => 3 }") == Result::success(V("(3: 4)")));
  CHECK(eval("top-down visit ([1, 2]) { case int x : y => x + 10 }") == Result::success(V("[11, 12]")));
  CHECK(eval("top-down-break visit ([[1], [2]]) { case [x] => [x, x] }") ==
        Result::success(V("[[1, 1], [2]]")));
  auto r = run("global int n = 0;", "bottom-up visit ([1, 2]) { case int x : y => local in n = n + x; fail end }");
  CHECK(r.result == Result::success(V("[1, 2]")));
  CHECK(r.store.at("n") == V("0"));
}
