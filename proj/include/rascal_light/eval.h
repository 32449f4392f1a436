#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rascal_light/ast.h"
#include "rascal_light/result.h"
#include "rascal_light/typing.h"
#include "rascal_light/value.h"

namespace rascal_light {

enum class BreakMode : std::uint8_t { BreakOnFirst, NoBreak };

struct TraceEntry {
  std::string_view rule;
  Span span;
  Status status;
};

using TraceSink = std::function<void(const TraceEntry&)>;

struct EvalOptions {
  TraceSink trace;
  // Host stack the evaluator may use before giving up with ResourceExhausted.
  std::size_t stack_budget = std::size_t{6} << 20;
  // Largest value (in tree nodes) an expression may produce; 0 means no limit.
  std::size_t max_value_size = 0;
  // Judgments (expressions, case lists, visits) one interpreter may run
  // before giving up; 0 means no limit. Fuel bounds derivation depth only,
  // so this is what bounds total work.
  std::uint64_t max_steps = 0;
};

// A host resource guard (stack or value size) tripped. Distinct from Timeout, which is a semantic
// outcome of the fueled judgments.
class ResourceExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Evaluates expressions of one module. Every judgment takes the store by
// reference and leaves the output store in it.
class Interpreter {
 public:
  explicit Interpreter(const ModuleDef& m, EvalOptions options = {});

  Result eval_expr(const Expr& e, Store& store, Fuel fuel = Fuel::unlimited());
  SeqResult eval_expr_star(std::span<const Expr> es, Store& store,
                           Fuel fuel = Fuel::unlimited());
  Result eval_cases(std::span<const Case> cases, const Value& v, Store& store,
                    Fuel fuel = Fuel::unlimited());
  Result eval_case(std::span<const Env> envs, const Expr& body, Store& store,
                   Fuel fuel = Fuel::unlimited());
  Result eval_each(const Expr& body, std::span<const Env> envs, Store& store,
                   Fuel fuel = Fuel::unlimited());
  EnvResult eval_gen(const Generator& g, Store& store, Fuel fuel = Fuel::unlimited());

  Result eval_visit(Strategy st, std::span<const Case> cases, const Value& v, Store& store,
                    Fuel fuel = Fuel::unlimited());
  Result td_visit(std::span<const Case> cases, const Value& v, Store& store, BreakMode br,
                  Fuel fuel = Fuel::unlimited());
  SeqResult td_visit_star(std::span<const Case> cases, std::span<const Value> vs, Store& store,
                          BreakMode br, Fuel fuel = Fuel::unlimited());
  Result bu_visit(std::span<const Case> cases, const Value& v, Store& store, BreakMode br,
                  Fuel fuel = Fuel::unlimited());
  SeqResult bu_visit_star(std::span<const Case> cases, std::span<const Value> vs, Store& store,
                          BreakMode br, Fuel fuel = Fuel::unlimited());

  // Calls function `name` on already evaluated arguments, as E-Call does
  // after its argument premise.
  Result call(std::string_view name, std::span<const Value> args, Store& store,
              Fuel fuel = Fuel::unlimited());

  const ModuleDef& module() const { return module_; }
  const DataRegistry& data() const { return data_; }

 private:
  friend class StackGuard;
  friend class DeclScope;

  Result eval_node(const Expr& e, Store& store, Fuel fuel);
  Result eval_call(const Expr& e, const Call& c, Store& store, Fuel fuel);
  Result invoke(const FunDef& f, std::vector<Value> args, Store& store, Fuel fuel);
  Result eval_while(const Expr& e, const While& w, Store& store, Fuel fuel);
  Result eval_solve(const Expr& e, const Solve& s, Store& store, Fuel fuel);
  Result eval_fixpoint(Strategy st, std::span<const Case> cases, const Value& v, Store& store,
                       Fuel fuel);
  Result trace(std::string_view rule, Span span, Result r);
  const Type* declared_type(std::string_view name) const;

  const ModuleDef& module_;
  DataRegistry data_;
  EvalOptions options_;
  // Declared types of the variables currently in scope, innermost last.
  std::vector<std::pair<std::string, Type>> decls_;
  std::size_t depth_ = 0;
  std::uint64_t steps_ = 0;
  const char* stack_base_ = nullptr;
};

std::optional<bool> as_bool(const Value& v);

Result apply_unary(UnaryOp op, const Value& v);
Result apply_binary(BinaryOp op, const Value& a, const Value& b);

// Neither vfres is an exceptional result other than Fail.
Value if_fail(const Result& r, const Value& v);
SeqResult vcombine(const Result& r, const SeqResult& rs, const Value& v,
                   std::span<const Value> vs);
// Success carries the rebuilt value; anything else is Error.
Result reconstruct(const Value& v, std::span<const Value> replacement, const DataRegistry& data);

struct InitError {
  std::string global;
  Result result;
};

struct InitResult {
  Store store;
  std::optional<InitError> error;
};

// Evaluates the globals in declaration order.
InitResult init_module(const ModuleDef& m, EvalOptions options = {},
                       Fuel fuel = Fuel::unlimited());

// Runs `fn` on a thread with a `bytes`-sized stack and waits for it.
void run_with_stack(std::size_t bytes, const std::function<void()>& fn);

}  // namespace rascal_light
