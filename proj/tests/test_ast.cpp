#include "support.h"

using namespace rl_test;

namespace {

std::vector<WellFormednessError::Kind> kinds(std::string_view src) {
  std::vector<WellFormednessError::Kind> out;
  for (const auto& e : validate_module(parse_module(src))) out.push_back(e.kind);
  return out;
}

bool finite(std::string_view entry, std::string_view module = "") {
  ModuleDef m = parse_module(module);
  return is_finite_subset(parse_expr(entry, m));
}

using K = WellFormednessError::Kind;

}  // namespace

TEST_CASE("validate_module") {
  auto errs = validate_module(parse_module("int f() = 1; int f() = 2;"));
  REQUIRE(errs.size() == 1);
  CHECK(errs[0].kind == K::DuplicateName);
  CHECK(errs[0].name == "f");

  errs = validate_module(parse_module("int f() = g();"));
  REQUIRE(errs.size() == 1);
  CHECK(errs[0].kind == K::UndefinedFunction);
  CHECK(errs[0].name == "g");

  CHECK(validate_module(parse_module(read_file(program_path("simplify.rsl")))).empty());
}

TEST_CASE("validate_module scoping and arity") {
  CHECK(kinds("int f(int x, int x) = x;") == std::vector{K::DuplicateParameter});
  CHECK(kinds("int f() = y;") == std::vector{K::UndefinedVariable});
  CHECK(kinds("int f(int x) = local int x in x end;") == std::vector{K::Shadowing});
  CHECK(kinds("int f() = local int y, int y in 1 end;") == std::vector{K::DuplicateLocal});
  CHECK(kinds("data D = k(int a); value f() = k(1, 2);") == std::vector{K::ArityMismatch});
  CHECK(kinds("int f(int a) = a; int g() = f();") == std::vector{K::ArityMismatch});
  CHECK(kinds("value f() = q(1);") == std::vector{K::UndefinedFunction});
  CHECK(kinds("int f(Foo x) = 1;") == std::vector{K::UndefinedDatatype});
  // A pattern variable already in scope is a reference, not a new binding.
  CHECK(kinds("global int g = 1; int f(int x) = switch (x) { case g => 1 };").empty());
}

TEST_CASE("validate_expr sees the globals") {
  ModuleDef m = parse_module("global int g = 1;");
  CHECK(validate_expr(m, parse_expr("g + 1", m)).empty());
  auto errs = validate_expr(m, parse_expr("h + 1", m));
  REQUIRE(errs.size() == 1);
  CHECK(errs[0].kind == K::UndefinedVariable);
}

TEST_CASE("is_finite_subset") {
  CHECK(finite("1 + 2"));
  CHECK_FALSE(finite("while (true()) 1"));
  CHECK_FALSE(finite("top-down visit (1) { case x => x }"));
  CHECK(finite("bottom-up visit (1) { case x => x }"));
  CHECK(finite("bottom-up-break visit (1) { case x => x }"));
  CHECK_FALSE(finite("innermost visit (1) { case x => x }"));
  CHECK_FALSE(finite("local int v in solve (v) v end"));
  CHECK_FALSE(finite("f()", "int f() = 1;"));
  CHECK(finite("for (x <- [1, 2]) x"));
}
