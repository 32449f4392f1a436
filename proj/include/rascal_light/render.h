#pragma once

#include <string>

#include "rascal_light/ast.h"
#include "rascal_light/value.h"

namespace rascal_light {

// Source text that the parser reads back to an equal tree. Spans are not
// preserved.
std::string render(const ModuleDef& m);
std::string render(const Expr& e);
std::string render(const Pattern& p);
std::string render(const Value& v);

}  // namespace rascal_light
