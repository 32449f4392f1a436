#include "rascal_light/typing.h"
#include "support.h"

using namespace rl_test;

namespace {

const Type kInt = Type::integer();
const Type kVoid = Type::void_type();

}  // namespace

TEST_CASE("type_of") {
  DataRegistry data;
  CHECK(type_of(Value::bottom(), data) == kVoid);
  CHECK(type_of(V("[]"), data) == Type::list_of(kVoid));
  CHECK(type_of(V("{true(), false()}"), data) == Type::set_of(Type::adt("Bool")));
  CHECK(type_of(V("[1, \"a\"]"), data) == Type::list_of(Type::value_type()));
  CHECK(type_of(V("(1: [])"), data) == Type::map_of(kInt, Type::list_of(kVoid)));
}

TEST_CASE("type_of rejects ill-formed values") {
  DataRegistry data;
  CHECK_THROWS_AS(type_of(V("undeclared(1)"), data), IllFormedValue);
  ModuleDef m = parse_module("data N = n(int x);");
  DataRegistry nd(m);
  CHECK(type_of(V("n(1)"), nd) == Type::adt("N"));
  CHECK_THROWS_AS(type_of(V("n(\"s\")"), nd), IllFormedValue);
  CHECK_THROWS_AS(type_of(V("n(1, 2)"), nd), IllFormedValue);
}

TEST_CASE("subtype") {
  CHECK(subtype(kVoid, Type::list_of(kInt)));
  CHECK(subtype(Type::list_of(kVoid), Type::list_of(kInt)));
  CHECK_FALSE(subtype(Type::set_of(kInt), Type::list_of(kInt)));
  CHECK(subtype(Type::adt("Bool"), Type::value_type()));
  CHECK_FALSE(subtype(Type::value_type(), kInt));
  CHECK(subtype(Type::map_of(kVoid, kInt), Type::map_of(kInt, Type::value_type())));
}

TEST_CASE("lub") {
  CHECK(lub(Type::list_of(kInt), Type::list_of(kVoid)) == Type::list_of(kInt));
  CHECK(lub_seq({}) == kVoid);
  CHECK(lub(kInt, Type::string()) == Type::value_type());
  CHECK(lub(Type::adt("A"), Type::adt("B")) == Type::value_type());
  std::vector<Type> ts{kVoid, kInt, kInt};
  CHECK(lub_seq(ts) == kInt);
}

TEST_CASE("has_type follows subtyping") {
  ModuleDef m = parse_module("data N = n(int x);");
  DataRegistry data(m);
  CHECK(has_type(V("[]"), Type::list_of(kInt), data));
  CHECK(has_type(V("n(1)"), Type::value_type(), data));
  CHECK_FALSE(has_type(V("n(1)"), kInt, data));
  CHECK(has_type(Value::bottom(), kVoid, data));
}
