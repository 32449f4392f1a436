#include <algorithm>

#include "support.h"

using namespace rl_test;

namespace {

std::vector<Value> corpus() {
  std::vector<Value> vs;
  for (const char* s : {"-3", "0", "1", "2", "100000000000000000000", "\"\"", "\"a\"", "\"ab\"",
                        "true()", "false()", "nokey(1)", "k(1, 2)", "[]", "[1]", "[1, 2]",
                        "[[1]]", "{}", "{1}", "{1, 2}", "(1: 2)", "(1: 2, 3: 4)"}) {
    vs.push_back(V(s));
  }
  vs.push_back(Value::bottom());
  return vs;
}

}  // namespace

TEST_CASE("value_order examples") {
  CHECK(value_order(V("1"), V("2")) == std::strong_ordering::less);
  CHECK(value_order(V("true()"), V("true()")) == std::strong_ordering::equal);
  CHECK(value_order(V("[1]"), V("{1}")) == std::strong_ordering::less);
}

TEST_CASE("value_order is a total order on a mixed corpus") {
  auto vs = corpus();
  REQUIRE(vs.size() >= 20);
  for (const auto& a : vs) {
    for (const auto& b : vs) {
      auto ab = value_order(a, b);
      auto ba = value_order(b, a);
      // antisymmetry and agreement with equality
      CHECK((ab == std::strong_ordering::equal) == (a == b));
      CHECK((ab < 0) == (ba > 0));
      for (const auto& c : vs) {
        if (ab <= 0 && value_order(b, c) <= 0) CHECK(value_order(a, c) <= 0);
      }
    }
  }
}

TEST_CASE("canonical_set") {
  CHECK(canonical_set({V("1"), V("2"), V("1")}) == V("{1, 2}"));
  CHECK(canonical_set({}) == V("{}"));
  CHECK(render(canonical_set({V("3"), V("1"), V("2")})) == "{1, 2, 3}");

  // Against a plain sort under value_order.
  auto vs = corpus();
  vs.pop_back();  // ■ is not a set element
  auto dup = vs;
  dup.insert(dup.end(), vs.rbegin(), vs.rend());
  Value s = canonical_set(dup);
  std::sort(vs.begin(), vs.end(), [](const Value& a, const Value& b) { return value_order(a, b) < 0; });
  REQUIRE(s.elements().size() == vs.size());
  CHECK(std::equal(vs.begin(), vs.end(), s.elements().begin()));
}

TEST_CASE("map_update") {
  CHECK(map_update(V("(1: 2)"), V("1"), V("3")) == V("(1: 3)"));
  CHECK(map_update(V("()"), V("1"), V("2")) == V("(1: 2)"));
  CHECK(render(map_update(V("(1: 2, 5: 6)"), V("3"), V("4"))) == "(1: 2, 3: 4, 5: 6)");
}

TEST_CASE("duplicate map keys keep the last value") {
  CHECK(V("(1: 2, 1: 3)") == V("(1: 3)"));
}

TEST_CASE("last") {
  std::vector<Value> xs{V("1"), V("2"), V("3")};
  CHECK(last(xs) == V("3"));
  CHECK(last({}).is_bottom());
  std::vector<Value> b{Value::bottom()};
  CHECK(last(b).is_bottom());
}

TEST_CASE("children") {
  CHECK(children(V("plus(intlit(0), intlit(1))")) ==
        std::vector<Value>{V("intlit(0)"), V("intlit(1)")});
  CHECK(children(V("42")).empty());
  CHECK(children(V("(1: 2, 3: 4)")) == std::vector<Value>{V("1"), V("3"), V("2"), V("4")});
}

TEST_CASE("children and reconstruct round-trip") {
  DataRegistry data(parse_module("data K = k(int a, int b);"));
  for (const auto& v : corpus()) {
    Result r = reconstruct(v, children(v), data);
    REQUIRE(r.status == Status::Success);
    CHECK(r.value == v);
  }
}

TEST_CASE("size counts nodes") {
  CHECK(V("1").size() == 1);
  CHECK(V("[1, [2, 3]]").size() == 5);
  CHECK(V("(1: 2)").size() == 3);
}

TEST_CASE("booleans") {
  CHECK(Value::boolean(true) == V("true()"));
  CHECK(V("false()").as_bool() == false);
  CHECK(!V("1").as_bool().has_value());
}

TEST_CASE("size weighs long integers and strings") {
  CHECK(V("65535").size() == 1);
  CHECK(V("65536").size() == 2);
  CHECK(Value::integer(Integer(1) << 1600).size() == 101);
  CHECK(Value::string(std::string(40, 'a')).size() == 3);
}
