// rascal-light: load a module, initialize its globals and evaluate a call or
// an expression against them.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "rascal_light/ast.h"
#include "rascal_light/eval.h"
#include "rascal_light/parser.h"
#include "rascal_light/render.h"
#include "rascal_light/serialize.h"

using namespace rascal_light;

namespace {

enum Exit : int {
  kOk = 0,
  kUsage = 1,
  kThrow = 2,
  kError = 3,
  kTimeout = 4,
  kInvalid = 5,
  kResource = 6,
};

constexpr std::size_t kThreadStack = std::size_t{256} << 20;
constexpr std::size_t kStackBudget = std::size_t{240} << 20;

int exit_code(Status s) {
  switch (s) {
    case Status::Success:
    case Status::Return: return kOk;
    case Status::Throw: return kThrow;
    case Status::Timeout: return kTimeout;
    default: return kError;
  }
}

std::string render_result(const Result& r) {
  switch (r.status) {
    case Status::Success: return render(r.value);
    case Status::Return: return "return " + render(r.value);
    case Status::Throw: return "throw " + render(r.value);
    default: return std::string(to_string(r.status));
  }
}

struct Config {
  std::string file;
  std::string call;
  std::string expr;
  std::optional<std::uint64_t> fuel;
  bool trace = false;
  std::string format = "text";
  bool print_globals = false;
};

void report_wf(const std::vector<WellFormednessError>& errs, const std::string& path) {
  for (const auto& e : errs) {
    std::cerr << path << ":" << e.span.line << ":" << e.span.column << ": " << e.message << "\n";
  }
}

int run(const Config& cfg) {
  ModuleDef module;
  const std::string path = cfg.file.empty() ? "<none>" : cfg.file;
  if (!cfg.file.empty()) {
    std::ifstream in(cfg.file);
    if (!in) {
      std::cerr << "cannot read " << cfg.file << "\n";
      return kUsage;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      module = parse_module(SourceFile{cfg.file, buf.str()});
    } catch (const ParseError& e) {
      std::cerr << describe(e, cfg.file) << "\n";
      return kInvalid;
    }
    if (auto errs = validate_module(module); !errs.empty()) {
      report_wf(errs, path);
      return kInvalid;
    }
  }

  const bool is_call = !cfg.call.empty();
  const std::string& text = is_call ? cfg.call : cfg.expr;
  Expr entry;
  try {
    entry = parse_expr(text, module);
  } catch (const ParseError& e) {
    std::cerr << describe(e, "<" + std::string(is_call ? "call" : "eval") + ">") << "\n";
    return kInvalid;
  }
  if (is_call && !std::holds_alternative<Call>(entry.node)) {
    std::cerr << "--call expects a function call, got: " << text << "\n";
    return kUsage;
  }
  if (auto errs = validate_expr(module, entry); !errs.empty()) {
    report_wf(errs, "<" + std::string(is_call ? "call" : "eval") + ">");
    return kInvalid;
  }

  EvalOptions options;
  options.stack_budget = kStackBudget;
  if (cfg.trace) {
    options.trace = [](const TraceEntry& t) {
      std::cerr << t.rule << " " << t.span.line << ":" << t.span.column << " [" << t.span.begin
                << "," << t.span.end << ") " << to_string(t.status) << "\n";
    };
  }
  const Fuel fuel = cfg.fuel ? Fuel(*cfg.fuel) : Fuel::unlimited();

  Result result;
  Store store;
  std::optional<std::string> failed_global;
  run_with_stack(kThreadStack, [&] {
    InitResult init = init_module(module, options, fuel);
    if (init.error) {
      failed_global = init.error->global;
      result = init.error->result;
      store = std::move(init.store);
      return;
    }
    store = std::move(init.store);
    Interpreter in(module, options);
    result = in.eval_expr(entry, store, fuel);
  });

  if (failed_global) {
    std::cerr << "initialization of global '" << *failed_global << "' did not succeed\n";
  }
  if (cfg.format == "tree") {
    nlohmann::json out = to_tree(result);
    if (cfg.print_globals) {
      Store globals;
      for (const auto& g : module.globals) {
        if (auto it = store.find(g.name); it != store.end()) globals.insert(*it);
      }
      out["globals"] = to_tree(globals);
    }
    std::cout << out.dump() << "\n";
  } else {
    std::cout << render_result(result) << "\n";
    if (cfg.print_globals) {
      for (const auto& g : module.globals) {
        auto it = store.find(g.name);
        std::cout << "global " << g.name << " = "
                  << (it == store.end() ? std::string("<unset>") : render(it->second)) << "\n";
      }
    }
  }
  return exit_code(result.status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rascal Light interpreter"};
  app.require_subcommand(0, 1);
  Config cfg;
  app.add_option("--call", cfg.call, "Function call to evaluate, e.g. \"f(1, [2])\"");
  app.add_option("--eval", cfg.expr, "Expression to evaluate against the module's globals");
  app.add_option("--fuel", cfg.fuel, "Recursion budget; unlimited when absent")
      ->envname("RASCAL_LIGHT_FUEL");
  app.add_flag("--trace", cfg.trace, "Print one line per rule firing to stderr");
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"text", "tree"}));
  app.add_flag("--print-globals", cfg.print_globals, "Also print the final global store");
  CLI::App* run_cmd = app.add_subcommand("run", "Run a module");
  run_cmd->add_option("file", cfg.file, "Module source")->required();
  run_cmd->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  if (cfg.call.empty() == cfg.expr.empty()) {
    std::cerr << "exactly one of --call and --eval is required\n" << app.help();
    return kUsage;
  }
  if (!cfg.call.empty() && cfg.file.empty()) {
    std::cerr << "--call needs a module: rascal-light run <file> --call ...\n";
    return kUsage;
  }
  try {
    return run(cfg);
  } catch (const ResourceExhausted& e) {
    std::cerr << "resource exhausted: " << e.what() << "\n";
    return kResource;
  }
}
