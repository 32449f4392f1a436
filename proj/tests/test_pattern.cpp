#include <set>

#include "rascal_light/harness.h"
#include "rascal_light/pattern.h"
#include "rascal_light/typing.h"
#include "support.h"

using namespace rl_test;

namespace {

const DataRegistry kData;

std::vector<Env> m(std::string_view p, std::string_view v, const Store& s = {}) {
  return match(P(p), V(v), s, kData);
}

Env env(std::initializer_list<std::pair<const char*, const char*>> xs) {
  Env e;
  for (const auto& [k, v] : xs) e.emplace(k, V(v));
  return e;
}

std::set<Env> as_set(const std::vector<Env>& es) { return {es.begin(), es.end()}; }

std::vector<Value> values(std::string_view list) {
  Value v = V(list);
  return {v.elements().begin(), v.elements().end()};
}

std::vector<StarPattern> stars(std::string_view list_pattern) {
  return std::get<ListPat>(P(list_pattern).node).items;
}

}  // namespace

TEST_CASE("variables bind or unify") {
  CHECK(m("x", "5", env({{"x", "5"}})) == std::vector{Env{}});
  CHECK(m("x", "5", env({{"x", "6"}})).empty());
  CHECK(m("x", "5") == std::vector{env({{"x", "5"}})});
}

TEST_CASE("deep pattern yields one env per occurrence") {
  CHECK(m("/intlit(0)", "plus(intlit(0), intlit(5))").size() == 1);
  CHECK(m("/intlit(0)", "plus(intlit(0), intlit(0))").size() == 2);
  // Self before children, children left to right.
  CHECK(m("/int x : y", "[1, [2]]") ==
        std::vector{env({{"x", "1"}, {"y", "1"}}), env({{"x", "2"}, {"y", "2"}})});
}

TEST_CASE("negation") {
  CHECK(m("!0", "1") == std::vector{Env{}});
  CHECK(m("!0", "0").empty());
  // Bindings under ! are not exported.
  CHECK(m("!x", "1").empty());
  CHECK(m("!k(x)", "1") == std::vector{Env{}});
}

TEST_CASE("list stars enumerate order-preserving splits") {
  auto es = match_all(stars("[*xs, *ys]"), values("[1, 2]"), {}, kData, CollectionKind::List);
  CHECK(es == std::vector{env({{"xs", "[]"}, {"ys", "[1, 2]"}}),
                          env({{"xs", "[1]"}, {"ys", "[2]"}}),
                          env({{"xs", "[1, 2]"}, {"ys", "[]"}})});
}

TEST_CASE("set stars enumerate every subset split") {
  auto es = match_all(stars("[*xs, *ys]"), values("[1, 2]"), {}, kData, CollectionKind::Set);
  CHECK(as_set(es) == std::set{env({{"xs", "{}"}, {"ys", "{1, 2}"}}),
                               env({{"xs", "{1}"}, {"ys", "{2}"}}),
                               env({{"xs", "{2}"}, {"ys", "{1}"}}),
                               env({{"xs", "{1, 2}"}, {"ys", "{}"}})});
  CHECK(m("{*xs, *ys}", "{1, 2}").size() == 4);
}

TEST_CASE("empty pattern lists") {
  CHECK(match_all({}, {}, {}, kData, CollectionKind::List) == std::vector{Env{}});
  CHECK(match_all({}, values("[1]"), {}, kData, CollectionKind::List).empty());
}

TEST_CASE("bound star variable matches only its value") {
  Store s = env({{"xs", "{1}"}});
  CHECK(m("{*xs, y}", "{1, 2}", s) == std::vector{env({{"y", "2"}})});
  CHECK(m("{*xs}", "{1, 2}", s).empty());
}

TEST_CASE("constructor and typed patterns") {
  CHECK(m("k(x, x)", "k(1, 2)").empty());
  CHECK(m("k(x, x)", "k(1, 1)") == std::vector{env({{"x", "1"}})});
  CHECK(m("int n : 3", "3") == std::vector{env({{"n", "3"}})});
  CHECK(m("str n : x", "3").empty());
  CHECK(m("[x, *_r]", "{1}").empty());
}

TEST_CASE("merge") {
  CHECK(merge({env({{"x", "1"}})}, {env({{"x", "1"}, {"y", "2"}})}) ==
        std::vector{env({{"x", "1"}, {"y", "2"}})});
  CHECK(merge({env({{"x", "1"}})}, {env({{"x", "2"}})}).empty());
  CHECK(merge(std::span<const std::vector<Env>>{}) == std::vector{Env{}});
}

TEST_CASE("oracle examples") {
  using rascal_light::harness::oracle_match;
  CHECK(oracle_match(P("{*xs, *ys}"), V("{1, 2}"), {}, kData).size() == 4);
  CHECK(oracle_match(P("[*xs, *ys]"), V("[1, 2]"), {}, kData).size() == 3);
  CHECK(oracle_match(P("k(x, x)"), V("k(1, 2)"), {}, kData).empty());
}

TEST_CASE("match agrees with the oracle on hand-picked cases") {
  using rascal_light::harness::oracle_match;
  const std::pair<const char*, const char*> cases[] = {
      {"[*xs, x, *ys]", "[1, 1, 2]"},
      {"{*xs, int x : y, *ys}", "{1, \"a\", 2}"},
      {"{x, y}", "{1, 2}"},
      {"[*xs, *xs]", "[1, 2, 1, 2]"},
      {"/[*xs, 2]", "[[2], [1, 2], 2]"},
      {"{*xs, {*ys, 1}}", "{{1, 2}, {1}, 3}"},
  };
  for (const auto& [p, v] : cases) {
    CAPTURE(p);
    CHECK(as_set(m(p, v)) == oracle_match(P(p), V(v), {}, kData));
  }
}
