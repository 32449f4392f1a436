#include <algorithm>

#include "rascal_light/fuel.h"
#include "support.h"

using namespace rl_test;

namespace {

// Height of the derivation tree for literal and list expressions: every
// judgment costs one unit, a sequence judgment has its head and its tail as
// premises, and the empty sequence is itself a judgment.
std::uint64_t derivation_height(const Expr& e);

std::uint64_t sequence_height(std::span<const Expr> es) {
  if (es.empty()) return 1;
  return 1 + std::max(derivation_height(es.front()), sequence_height(es.subspan(1)));
}

std::uint64_t derivation_height(const Expr& e) {
  if (const auto* l = std::get_if<ListExpr>(&e.node)) return 1 + sequence_height(l->elements);
  REQUIRE(std::holds_alternative<Literal>(e.node));
  return 1;
}

std::uint64_t min_fuel(std::string_view src) {
  ModuleDef m;
  Interpreter in(m);
  return min_sufficient_fuel(in, parse_expr(src, m), {});
}

Result fueled(std::string_view src, std::uint64_t n) {
  ModuleDef m;
  Interpreter in(m);
  Store s;
  return eval_expr_fuel(in, parse_expr(src, m), s, n);
}

}  // namespace

TEST_CASE("eval_expr_fuel") {
  for (const char* src : {"1", "1 + 1", "[1, 2]", "fail"}) {
    CHECK(fueled(src, 0).status == Status::Timeout);
  }
  CHECK(fueled("1 + 1", 10) == Result::success(V("2")));
  CHECK(fueled("1 + 1", 10) == eval("1 + 1"));
  CHECK(fueled("while (true()) 1", 1000).status == Status::Timeout);
  CHECK(fueled("local int i in i = 0; solve (i) i = i + 1; i end", 1000).status == Status::Timeout);
}

TEST_CASE("min_sufficient_fuel") {
  CHECK(min_fuel("1") == 1);
  ModuleDef m;
  for (const char* src : {"[1, 2, 3]", "[]", "[[1], [2, [3]]]"}) {
    CAPTURE(src);
    CHECK(min_fuel(src) == derivation_height(parse_expr(src, m)));
  }
  CHECK(min_fuel("[1, 2, 3]") == 5);
  CHECK_THROWS_AS(min_fuel("while (true()) 1"), NotFiniteSubset);
}

TEST_CASE("fuel is monotone around the least sufficient amount") {
  for (const char* src : {"bottom-up visit ([1, [2]]) { case int x : y => x + 1 }",
                          "for (x <- [1, 2, 3]) if x == 2 then break else x",
                          "switch ([1, 2]) { case [*xs, y] => y }"}) {
    CAPTURE(src);
    std::uint64_t n = min_fuel(src);
    CHECK(fueled(src, n - 1).status == Status::Timeout);
    for (std::uint64_t k : {n, n + 1, 2 * n, n + 100}) CHECK(fueled(src, k) == eval(src));
  }
}

TEST_CASE("least_fuel bisects a monotone predicate") {
  CHECK(least_fuel([](std::uint64_t n) { return n >= 37; }) == 37);
  CHECK(least_fuel([](std::uint64_t n) { return n >= 1; }) == 1);
  CHECK(least_fuel([](std::uint64_t n) { return n >= 100000; }) == 100000);
}
