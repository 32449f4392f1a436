#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rascal_light/ast.h"
#include "rascal_light/value.h"

namespace rascal_light {

struct SourceFile {
  std::string path;
  std::string text;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(Span span, std::string message, std::vector<std::string> expected)
      : std::runtime_error(std::move(message)), span_(span), expected_(std::move(expected)) {}

  const Span& span() const { return span_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  Span span_;
  std::vector<std::string> expected_;
};

ModuleDef parse_module(const SourceFile& src);
ModuleDef parse_module(std::string_view text);

// An expression in the scope of `context`: `k(...)` is a constructor if `k`
// is declared there (or built in), otherwise a call.
Expr parse_expr(std::string_view text, const ModuleDef& context);
Pattern parse_pattern(std::string_view text);

// Value literals: integers, strings, constructors, lists, sets, maps and
// `<undefined>`.
Value parse_value(std::string_view text);

// Renders "path:line:column: message" for diagnostics.
std::string describe(const ParseError& e, std::string_view path);

}  // namespace rascal_light
