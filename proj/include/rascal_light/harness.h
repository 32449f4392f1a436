#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "rascal_light/ast.h"
#include "rascal_light/eval.h"
#include "rascal_light/typing.h"
#include "rascal_light/value.h"

namespace rascal_light::harness {

enum class Subset : std::uint8_t { All, Finite };

// Datatypes every generated module declares.
std::vector<DataDef> default_datatypes();

struct GenBudget {
  int max_depth = 4;
  std::size_t max_collection = 3;
  std::vector<DataDef> datatypes = default_datatypes();
  std::uint64_t seed = 0;
};

// A module and an expression evaluated against its initialized globals.
struct Program {
  ModuleDef module;
  Expr entry;
  bool operator==(const Program&) const = default;
};

// Fresh seed for the i-th case of a run started with `seed`.
std::uint64_t case_seed(std::uint64_t seed, std::uint64_t i);

// Random, always well-formed programs. Loop, function and visit-case bodies
// are generated so that values cannot grow faster than linearly in the
// number of iterations, and recursion is at most linear, keeping every run
// within a small work budget.
class ProgramGen {
 public:
  explicit ProgramGen(GenBudget budget);

  // Globals and functions; in Finite mode every body is in e_fin.
  ModuleDef module(Subset subset);
  Program program(Subset subset);
  // Entry is `switch (v) { cases }` over constant v, for the purity suite.
  Program cases_program();

  // Any well-formed value built from the datatype pool.
  Value value(int depth = 3);
  Value value_of(const Type& t, int depth = 3);
  // A pattern over the pool; names bound in `store` are references. At most
  // one star per collection pattern unless `many_stars`.
  Pattern pattern(const Store& store, int depth = 3, bool many_stars = false);
  // A pattern that matches `v`.
  Pattern pattern_for(const Value& v, int depth = 3, bool many_stars = false);
  Store store(std::size_t vars, int depth = 2);

  std::mt19937_64& rng() { return rng_; }
  const GenBudget& budget() const { return budget_; }

 private:
  struct Impl;
  GenBudget budget_;
  std::mt19937_64 rng_;
};

ModuleDef gen_program(const GenBudget& b, Subset subset);

// Expression whose value is `v` (■ becomes an empty block).
Expr value_expr(const Value& v);

// ---- Matching oracle ----

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Every environment derivable by trying all partitions and bindings, as a
// set. Throws BudgetExceeded after `budget` candidate partitions.
std::set<Env> oracle_match(const Pattern& p, const Value& v, const Store& store,
                           const DataRegistry& data, std::size_t budget = 1u << 20);

// ---- Shrinking ----

// Greedy structural shrinking: repeatedly replaces a subexpression by one of
// its children or a literal, or drops a definition, keeping any change after
// which the program is still well formed and `fails` still holds.
Program shrink(Program p, const std::function<bool(const Program&)>& fails,
               std::size_t max_attempts = 5000);

// Rendered program with the entry as a trailing comment.
std::string render_program(const Program& p);
std::size_t program_size(const Program& p);

// ---- Adversarial corpus ----

struct CorpusProgram {
  Program program;
  // Values grow exponentially per iteration, so a large fuel outruns any
  // host's memory before it runs out; the value-size guard stops these.
  bool outgrows_memory = false;
};

// Hand-written programs aimed at edge cases of the rules: divergence, deep
// recursion, stuck premises, exceptional results in every position.
std::vector<CorpusProgram> adversarial_corpus();

// ---- Suites ----

struct SuiteConfig {
  std::size_t cases = 1000;
  std::uint64_t seed = 1;
  // Where minimized failing programs are written; empty disables.
  std::string artifact_dir;
  GenBudget budget;
};

struct SuiteReport {
  std::string name;
  std::size_t requested = 0;
  // Cases the property was checked on.
  std::size_t checked = 0;
  std::size_t failures = 0;
  // Generated cases outside the property's domain (for example
  // non-terminating programs for the typing suite).
  std::size_t skipped = 0;
  std::vector<std::string> messages;
  std::optional<std::string> artifact;
  double seconds = 0;

  bool passed() const { return failures == 0 && checked >= requested; }
};

// Limits every suite evaluates under.
EvalOptions suite_options();

SuiteReport run_purity(const SuiteConfig& cfg);
SuiteReport run_typing(const SuiteConfig& cfg);
SuiteReport run_progress(const SuiteConfig& cfg);
SuiteReport run_termination(const SuiteConfig& cfg);
SuiteReport run_match(const SuiteConfig& cfg);
SuiteReport run_fuel(const SuiteConfig& cfg);
SuiteReport run_module_roundtrip(const SuiteConfig& cfg);
SuiteReport run_value_roundtrip(const SuiteConfig& cfg);

// Runs `fn` on a thread whose stack fits suite_options().stack_budget.
void with_suite_stack(const std::function<void()>& fn);

}  // namespace rascal_light::harness
