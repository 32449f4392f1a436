#include "rascal_light/harness.h"
#include "rascal_light/pattern.h"
#include "support.h"

using namespace rl_test;
using namespace rascal_light::harness;

namespace {

GenBudget seeded(std::uint64_t s) {
  GenBudget b;
  b.seed = s;
  return b;
}

Result outcome(const Program& p) {
  InitResult init = init_module(p.module, suite_options(), Fuel(10000));
  if (init.error) return init.error->result;
  Interpreter in(p.module, suite_options());
  return in.eval_expr(p.entry, init.store, Fuel(10000));
}

}  // namespace

TEST_CASE("generated modules are well formed") {
  for (std::uint64_t s = 0; s < 300; ++s) {
    ModuleDef m = gen_program(seeded(s), Subset::All);
    CAPTURE(s);
    CHECK(validate_module(m).empty());
  }
}

TEST_CASE("finite mode stays in the terminating fragment") {
  for (std::uint64_t s = 0; s < 300; ++s) {
    CAPTURE(s);
    Program p = ProgramGen(seeded(s)).program(Subset::Finite);
    CHECK(validate_module(p.module).empty());
    CHECK(validate_expr(p.module, p.entry).empty());
    CHECK(is_finite_subset(p.entry));
    for (const auto& f : p.module.functions) CHECK(is_finite_subset(f.body));
  }
}

TEST_CASE("generation is deterministic per seed") {
  CHECK(ProgramGen(seeded(42)).program(Subset::All) == ProgramGen(seeded(42)).program(Subset::All));
  CHECK(case_seed(1, 5) == case_seed(1, 5));
  CHECK(case_seed(1, 5) != case_seed(1, 6));
}

TEST_CASE("pattern_for builds patterns that match") {
  ProgramGen g(seeded(7));
  DataRegistry data{ModuleDef{default_datatypes(), {}, {}}};
  for (int i = 0; i < 200; ++i) {
    Value v = g.value(3);
    Pattern p = g.pattern_for(v, 3);
    CAPTURE(render(v));
    CAPTURE(render(p));
    CHECK(!match(p, v, {}, data).empty());
  }
}

TEST_CASE("shrinking keeps the failure and never grows the program") {
  // Stand-in property: "the program evaluates to an error".
  auto fails = [](const Program& p) { return outcome(p).status == Status::Error; };
  int shrunk = 0;
  for (std::uint64_t s = 0; s < 400 && shrunk < 10; ++s) {
    Program p = ProgramGen(seeded(s)).program(Subset::All);
    if (!fails(p)) continue;
    Program q = shrink(p, fails, 500);
    CAPTURE(render_program(q));
    CHECK(fails(q));
    CHECK(program_size(q) <= program_size(p));
    CHECK(validate_module(q.module).empty());
    CHECK(validate_expr(q.module, q.entry).empty());
    ++shrunk;
  }
  CHECK(shrunk == 10);
}

TEST_CASE("adversarial corpus parses and validates") {
  auto corpus = adversarial_corpus();
  CHECK(corpus.size() > 50);
  std::size_t outgrow = 0;
  for (const auto& c : corpus) {
    CAPTURE(render_program(c.program));
    CHECK(validate_module(c.program.module).empty());
    CHECK(validate_expr(c.program.module, c.program.entry).empty());
    outgrow += c.outgrows_memory;
  }
  CHECK(outgrow == 3);
}

TEST_CASE("small suite runs pass") {
  SuiteConfig cfg;
  cfg.cases = 50;
  with_suite_stack([&] {
    for (auto* suite : {run_purity, run_typing, run_progress, run_termination, run_match,
                        run_fuel, run_module_roundtrip, run_value_roundtrip}) {
      SuiteReport r = suite(cfg);
      CAPTURE(r.name);
      CHECK(r.passed());
    }
  });
}

TEST_CASE("memory-outgrowing corpus programs stop on the guard, not the host") {
  for (const auto& c : adversarial_corpus()) {
    if (!c.outgrows_memory) continue;
    CAPTURE(render(c.program.entry));
    Interpreter in(c.program.module, suite_options());
    Store s;
    CHECK(in.eval_expr(c.program.entry, s, Fuel(7)).status == Status::Timeout);
    CHECK_THROWS_AS(in.eval_expr(c.program.entry, s, Fuel(1000)), ResourceExhausted);
  }
}
