#include "golden.h"
#include "support.h"

using namespace rl_test;

TEST_CASE("oracle answers") {
  using namespace golden;
  Value e = simplifier_input();
  CHECK(expr_nodes(e) == 15);
  auto nf = normal_forms(e);
  REQUIRE(nf.size() == 1);
  CHECK(zero_free(*nf.begin()));
  CHECK(*nf.begin() == plus(lit(3), lit(5)));
  CHECK(chain_fixpoint() == 3);
  CHECK(knapsack_optimum(knapsack_items(), kKnapsackLimit) == V("{item(2, 100), item(3, 120)}"));
  CHECK(product({1, 2, 0, 3}) == 0);
  CHECK(product({1, 2, 3}) == 6);
}

TEST_CASE("example programs match their oracles") {
  for (const auto& c : golden::cases()) {
    CAPTURE(c.name);
    CHECK(run_file(c.file, c.entry).result == Result::success(c.expected));
  }
}

TEST_CASE("prod of the empty list") {
  CHECK(run_file("prod.rsl", "prod([])").result == Result::success(V("1")));
}

TEST_CASE("simplifier on already simplified input") {
  CHECK(run_file("simplify.rsl", "simplify(plus(intlit(1), intlit(2)))").result ==
        Result::success(V("plus(intlit(1), intlit(2))")));
  CHECK(run_file("simplify.rsl", "simplify(intlit(0))").result == Result::success(V("intlit(0)")));
}

TEST_CASE("infincrement diverges under top-down traversal") {
  for (std::uint64_t fuel : {100u, 1000u, 10000u}) {
    auto r = run_file("infincrement.rsl", "infincrement(succ(zero()))", Fuel(fuel));
    CHECK(r.result.status == Status::Timeout);
  }
  // No succ node to rewrite: the traversal finds nothing and returns its input.
  auto r = run_file("infincrement.rsl", "infincrement(zero())", Fuel(10000));
  CHECK(r.result == Result::success(V("zero()")));
}
