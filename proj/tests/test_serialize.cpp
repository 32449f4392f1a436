#include "rascal_light/serialize.h"
#include "support.h"

using namespace rl_test;
using nlohmann::json;

TEST_CASE("values round-trip through the tree format") {
  for (const char* s : {"1", "-99999999999999999999999", "\"a\\\"b\"", "k(1, [2], {3})",
                        "(1: (2: 3))", "{}", "[]", "()"}) {
    CAPTURE(s);
    Value v = V(s);
    CHECK(value_from_tree(json::parse(to_tree(v).dump())) == v);
  }
  CHECK(value_from_tree(to_tree(Value::bottom())).is_bottom());
}

TEST_CASE("results carry a version and a payload only when they have one") {
  json j = to_tree(Result::thrown(V("nokey(3)")));
  CHECK(j["version"] == kTreeFormatVersion);
  CHECK(j["status"] == "throw");
  CHECK(result_from_tree(j) == Result::thrown(V("nokey(3)")));

  j = to_tree(Result::timeout());
  CHECK_FALSE(j.contains("value"));
  CHECK(result_from_tree(j) == Result::timeout());
}

TEST_CASE("malformed trees are rejected") {
  CHECK_THROWS_AS(value_from_tree(json{{"kind", "nope"}}), TreeFormatError);
  CHECK_THROWS_AS(value_from_tree(json{{"kind", "int"}, {"value", "1x"}}), TreeFormatError);
  CHECK_THROWS_AS(value_from_tree(json{{"kind", "list"}}), TreeFormatError);
  CHECK_THROWS_AS(value_from_tree(json{{"kind", 3}}), TreeFormatError);
  CHECK_THROWS_AS(result_from_tree(json{{"version", 99}, {"status", "success"}}), TreeFormatError);
  CHECK_THROWS_AS(result_from_tree(json{{"version", 1}, {"status", "weird"}}), TreeFormatError);
}

TEST_CASE("stores serialize by name") {
  Store s{{"x", V("1")}, {"y", V("[2]")}};
  json j = to_tree(s);
  CHECK(value_from_tree(j["y"]) == V("[2]"));
  CHECK(j.size() == 2);
}
