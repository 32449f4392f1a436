#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "rascal_light/eval.h"
#include "rascal_light/parser.h"
#include "rascal_light/render.h"

namespace rl_test {

using namespace rascal_light;

inline Value V(std::string_view text) { return parse_value(text); }
inline Pattern P(std::string_view text) { return parse_pattern(text); }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "cannot open " << path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string program_path(const std::string& name) {
  return std::string(RL_SOURCE_DIR) + "/programs/" + name;
}

// Module plus entry, run from the initialized globals.
struct Run {
  ModuleDef module;
  Result result;
  Store store;
};

inline Run run(std::string_view module_src, std::string_view entry,
               Fuel fuel = Fuel::unlimited()) {
  Run r;
  r.module = parse_module(module_src);
  REQUIRE(validate_module(r.module).empty());
  Expr e = parse_expr(entry, r.module);
  REQUIRE(validate_expr(r.module, e).empty());
  InitResult init = init_module(r.module);
  REQUIRE(!init.error);
  r.store = std::move(init.store);
  Interpreter in(r.module);
  r.result = in.eval_expr(e, r.store, fuel);
  return r;
}

inline Result eval(std::string_view entry, Fuel fuel = Fuel::unlimited()) {
  return run("", entry, fuel).result;
}

inline Run run_file(const std::string& name, std::string_view entry,
                    Fuel fuel = Fuel::unlimited()) {
  return run(read_file(program_path(name)), entry, fuel);
}

}  // namespace rl_test
