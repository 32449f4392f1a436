#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>

#include "rascal_light/fuel.h"
#include "rascal_light/harness.h"
#include "rascal_light/parser.h"
#include "rascal_light/pattern.h"
#include "rascal_light/render.h"
#include "rascal_light/serialize.h"

namespace rascal_light::harness {

namespace {

constexpr std::uint64_t kTypingFuel = 10'000;
constexpr std::uint64_t kProgressFuels[] = {0, 1, 7, 1000};
constexpr std::size_t kMaxMessages = 5;

struct Outcome {
  Result result;
  Store store;
  bool init_failed = false;

  bool operator==(const Outcome&) const = default;
};

Outcome run_program(const Program& p, Fuel fuel, const EvalOptions& opts = suite_options()) {
  InitResult init = init_module(p.module, opts, fuel);
  if (init.error) return {init.error->result, std::move(init.store), true};
  Interpreter in(p.module, opts);
  Outcome out{{}, std::move(init.store), false};
  out.result = in.eval_expr(p.entry, out.store, fuel);
  return out;
}

std::string describe(const Outcome& o) {
  std::string s = std::string(to_string(o.result.status));
  if (o.result.status == Status::Success || o.result.status == Status::Return ||
      o.result.status == Status::Throw) {
    s += " " + render(o.result.value);
  }
  return s;
}

class Runner {
 public:
  Runner(std::string name, const SuiteConfig& cfg) : cfg_(cfg), start_(Clock::now()) {
    report_.name = std::move(name);
    report_.requested = cfg.cases;
  }

  GenBudget budget(std::uint64_t i) const {
    GenBudget b = cfg_.budget;
    b.seed = case_seed(cfg_.seed, i);
    return b;
  }

  void note(std::string msg) {
    if (report_.messages.size() < kMaxMessages) report_.messages.push_back(std::move(msg));
  }

  void fail(std::uint64_t i, const std::string& msg) {
    ++report_.failures;
    note("case " + std::to_string(i) + ": " + msg);
  }

  // Shrinks `p` against `fails` and writes it out, once per suite.
  void artifact(std::uint64_t i, const Program& p,
                const std::function<bool(const Program&)>& fails) {
    if (cfg_.artifact_dir.empty() || report_.artifact) return;
    Program small = shrink(p, [&](const Program& c) {
      try {
        return fails(c);
      } catch (const std::exception&) {
        return true;
      }
    });
    std::filesystem::create_directories(cfg_.artifact_dir);
    auto path = std::filesystem::path(cfg_.artifact_dir) /
                (report_.name + "-seed" + std::to_string(cfg_.seed) + "-case" +
                 std::to_string(i) + ".rsl");
    std::ofstream(path) << "// " << report_.name << " failure, seed " << cfg_.seed << " case "
                        << i << "\n"
                        << render_program(small);
    report_.artifact = path.string();
  }

  SuiteReport& report() { return report_; }

  SuiteReport finish() {
    report_.seconds = std::chrono::duration<double>(Clock::now() - start_).count();
    return std::move(report_);
  }

 private:
  using Clock = std::chrono::steady_clock;
  const SuiteConfig& cfg_;
  SuiteReport report_;
  Clock::time_point start_;
};

bool well_typed(const Value& v, const DataRegistry& data) {
  try {
    type_of(v, data);
    return true;
  } catch (const IllFormedValue&) {
    return false;
  }
}

// Strong typing on one run: payloads and store values are well formed, and the
// globals keep their declared types.
std::optional<std::string> typing_violation(const Program& p, const Outcome& o) {
  DataRegistry data(p.module);
  if (!well_typed(o.result.value, data)) return "ill-formed payload " + describe(o);
  for (const auto& [x, v] : o.store) {
    if (!well_typed(v, data)) return "ill-formed store value for " + x;
  }
  for (const auto& g : p.module.globals) {
    auto it = o.store.find(g.name);
    if (it != o.store.end() && !has_type(it->second, g.type, data)) {
      return "global " + g.name + " holds " + render(it->second) + ", not a " +
             render_type(g.type);
    }
  }
  return std::nullopt;
}

}  // namespace

EvalOptions suite_options() {
  EvalOptions o;
  o.stack_budget = std::size_t{200} << 20;
  o.max_value_size = std::size_t{1} << 16;
  o.max_steps = 2'000'000;
  return o;
}

void with_suite_stack(const std::function<void()>& fn) { run_with_stack(std::size_t{256} << 20, fn); }

SuiteReport run_purity(const SuiteConfig& cfg) {
  Runner run("purity", cfg);
  auto& rep = run.report();
  std::size_t bodies_ran = 0;
  std::size_t limited = 0;
  const Fuel fuel(kTypingFuel);
  // Store after eval_cases, or nullopt when the result is not Fail.
  auto check = [&](const Program& p, bool* ran) -> std::optional<std::pair<Store, Store>> {
    InitResult init = init_module(p.module, suite_options(), fuel);
    if (init.error) return std::nullopt;
    const auto& sw = std::get<Switch>(p.entry.node);
    Interpreter in(p.module, suite_options());
    Store scratch;
    Result v = in.eval_expr(*sw.scrutinee, scratch, Fuel::unlimited());
    if (!v.ok()) return std::nullopt;
    if (ran != nullptr) {
      DataRegistry data(p.module);
      *ran = std::any_of(sw.cases.begin(), sw.cases.end(), [&](const Case& c) {
        return !match(*c.pattern, v.value, init.store, data).empty();
      });
    }
    Store s = init.store;
    Result r = in.eval_cases(sw.cases, v.value, s, fuel);
    if (r.status != Status::Fail) return std::nullopt;
    return std::pair{std::move(init.store), std::move(s)};
  };
  for (std::uint64_t i = 0; rep.checked < cfg.cases && i < cfg.cases * 20; ++i) {
    Program p = ProgramGen(run.budget(i)).cases_program();
    try {
      bool ran = false;
      auto stores = check(p, &ran);
      if (!stores) {
        ++rep.skipped;
        continue;
      }
      ++rep.checked;
      if (ran) ++bodies_ran;
      if (stores->first != stores->second) {
        run.fail(i, "store changed by a failing case list");
        run.artifact(i, p, [&](const Program& c) {
          if (!std::holds_alternative<Switch>(c.entry.node)) return false;
          auto st = check(c, nullptr);
          return st && st->first != st->second;
        });
      }
    } catch (const ResourceExhausted&) {
      ++limited;
      ++rep.skipped;
    }
  }
  run.note(std::to_string(bodies_ran) + " of the failing case lists ran at least one body");
  if (limited > 0) run.note(std::to_string(limited) + " cases hit a resource limit");
  return run.finish();
}

SuiteReport run_typing(const SuiteConfig& cfg) {
  Runner run("typing", cfg);
  auto& rep = run.report();
  std::size_t limited = 0;
  for (std::uint64_t i = 0; rep.checked < cfg.cases && i < cfg.cases * 3; ++i) {
    Program p = ProgramGen(run.budget(i)).program(Subset::All);
    try {
      Outcome o = run_program(p, Fuel(kTypingFuel));
      if (auto bad = typing_violation(p, o)) {
        run.fail(i, *bad);
        run.artifact(i, p, [](const Program& c) {
          return typing_violation(c, run_program(c, Fuel(kTypingFuel))).has_value();
        });
      }
      if (o.result.status == Status::Timeout) {
        ++rep.skipped;
      } else {
        ++rep.checked;
      }
    } catch (const ResourceExhausted&) {
      ++limited;
      ++rep.skipped;
    }
  }
  if (limited > 0) run.note(std::to_string(limited) + " programs hit the work budget (not terminating within it)");
  return run.finish();
}

SuiteReport run_progress(const SuiteConfig& cfg) {
  Runner run("progress", cfg);
  auto& rep = run.report();
  std::size_t outgrown = 0;
  // Any exception is a failure, except that programs known to outgrow memory
  // may stop on the value-size guard.
  auto total = [&](std::uint64_t i, const Program& p, bool may_outgrow) {
    for (std::uint64_t n : kProgressFuels) {
      try {
        run_program(p, Fuel(n));
      } catch (const ResourceExhausted& e) {
        if (may_outgrow) {
          ++outgrown;
          continue;
        }
        run.fail(i, "fuel " + std::to_string(n) + ": " + e.what());
        return;
      } catch (const std::exception& e) {
        run.fail(i, "fuel " + std::to_string(n) + ": " + e.what());
        run.artifact(i, p, [n](const Program& c) {
          try {
            run_program(c, Fuel(n));
            return false;
          } catch (const std::exception&) {
            return true;
          }
        });
        return;
      }
    }
  };
  for (std::uint64_t i = 0; i < cfg.cases; ++i) {
    total(i, ProgramGen(run.budget(i)).program(Subset::All), false);
    ++rep.checked;
  }
  auto corpus = adversarial_corpus();
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    total(cfg.cases + k, corpus[k].program, corpus[k].outgrows_memory);
  }
  run.note(std::to_string(corpus.size()) + " adversarial programs");
  if (outgrown > 0) {
    run.note(std::to_string(outgrown) + " runs of memory-outgrowing corpus programs stopped by the value-size guard");
  }
  return run.finish();
}

// Termination on one e_fin program; nullopt when it holds or `skipped` is set.
std::optional<std::string> termination_violation(const Program& p, bool& skipped) {
  if (!is_finite_subset(p.entry)) return "entry is outside e_fin";
  InitResult init = init_module(p.module, suite_options());
  if (init.error) {
    skipped = true;
    return std::nullopt;
  }
  Interpreter in(p.module, suite_options());
  std::uint64_t n = min_sufficient_fuel(in, p.entry, init.store, std::uint64_t{1} << 30);
  auto at = [&](Fuel f) {
    Store s = init.store;
    Result r = in.eval_expr(p.entry, s, f);
    return Outcome{r, s, false};
  };
  Outcome unlimited = at(Fuel::unlimited());
  if (at(Fuel(n)).result.status == Status::Timeout) return "timeout at the found fuel";
  if (at(Fuel(n - 1)).result.status != Status::Timeout) return "found fuel is not least";
  for (std::uint64_t k : {n, n + 1, n + 7, 2 * n}) {
    if (!(at(Fuel(k)) == unlimited)) {
      return "fuel " + std::to_string(k) + " disagrees with the unfueled result";
    }
  }
  return std::nullopt;
}

SuiteReport run_termination(const SuiteConfig& cfg) {
  Runner run("termination", cfg);
  auto& rep = run.report();
  for (std::uint64_t i = 0; rep.checked < cfg.cases && i < cfg.cases * 3; ++i) {
    Program p = ProgramGen(run.budget(i)).program(Subset::Finite);
    try {
      bool skipped = false;
      auto bad = termination_violation(p, skipped);
      if (skipped) {
        ++rep.skipped;
        continue;
      }
      ++rep.checked;
      if (bad) {
        run.fail(i, *bad);
        run.artifact(i, p, [](const Program& c) {
          bool s = false;
          return termination_violation(c, s).has_value();
        });
      }
    } catch (const std::exception& e) {
      run.fail(i, e.what());
    }
  }
  return run.finish();
}

SuiteReport run_match(const SuiteConfig& cfg) {
  Runner run("match", cfg);
  auto& rep = run.report();
  std::size_t nonempty = 0;
  for (std::uint64_t i = 0; i < cfg.cases; ++i) {
    GenBudget b = run.budget(i);
    b.max_collection = std::min<std::size_t>(b.max_collection, 4);
    ProgramGen gen(b);
    Store store = gen.store(gen.rng()() % 3, 1);
    Value v = gen.value(3);
    Pattern p = gen.rng()() % 2 == 0 ? gen.pattern_for(v, 3, true) : gen.pattern(store, 3, true);
    DataRegistry data{ModuleDef{b.datatypes, {}, {}}};
    try {
      auto expected = oracle_match(p, v, store, data);
      auto got = match(p, v, store, data);
      std::set<Env> got_set(got.begin(), got.end());
      if (got_set != expected) {
        run.fail(i, render(p) + " against " + render(v) + ": " + std::to_string(got_set.size()) +
                        " envs, oracle " + std::to_string(expected.size()));
      }
      if (!expected.empty()) ++nonempty;
      ++rep.checked;
    } catch (const BudgetExceeded&) {
      ++rep.skipped;
    }
  }
  run.note(std::to_string(nonempty) + " pairs matched at least once");
  return run.finish();
}

// Fuel conservativity and monotonicity on one program; `skipped` is set
// when it does not terminate within the typing fuel.
std::optional<std::string> fuel_violation(const Program& p, bool& skipped) {
  Outcome bounded = run_program(p, Fuel(kTypingFuel));
  if (bounded.result.status == Status::Timeout) {
    skipped = true;
    return std::nullopt;
  }
  Outcome unlimited = run_program(p, Fuel::unlimited());
  if (!(bounded == unlimited)) {
    return "fuel 10000 gives " + describe(bounded) + ", unfueled " + describe(unlimited);
  }
  auto enough = [&](std::uint64_t n) {
    return run_program(p, Fuel(n)).result.status != Status::Timeout;
  };
  std::uint64_t n = least_fuel(enough, kTypingFuel);
  for (std::uint64_t k : {n, n + 1, n + 13, 2 * n, kTypingFuel}) {
    if (!(run_program(p, Fuel(k)) == unlimited)) {
      return "fuel " + std::to_string(k) + " disagrees with the unfueled result";
    }
  }
  for (std::uint64_t k : {n - 1, (n - 1) / 2, std::uint64_t{0}}) {
    if (run_program(p, Fuel(k)).result.status != Status::Timeout) {
      return "no timeout at fuel " + std::to_string(k) + " below the least fuel " +
             std::to_string(n);
    }
  }
  return std::nullopt;
}

SuiteReport run_fuel(const SuiteConfig& cfg) {
  Runner run("fuel", cfg);
  auto& rep = run.report();
  std::size_t limited = 0;
  for (std::uint64_t i = 0; rep.checked < cfg.cases && i < cfg.cases * 4; ++i) {
    Program p = ProgramGen(run.budget(i)).program(Subset::All);
    try {
      bool skipped = false;
      auto bad = fuel_violation(p, skipped);
      if (skipped) {
        ++rep.skipped;
        continue;
      }
      ++rep.checked;
      if (bad) {
        run.fail(i, *bad);
        run.artifact(i, p, [](const Program& c) {
          bool s = false;
          return fuel_violation(c, s).has_value();
        });
      }
    } catch (const ResourceExhausted&) {
      ++limited;
      ++rep.skipped;
    }
  }
  if (limited > 0) run.note(std::to_string(limited) + " programs hit the work budget");
  return run.finish();
}

SuiteReport run_module_roundtrip(const SuiteConfig& cfg) {
  Runner run("roundtrip", cfg);
  auto& rep = run.report();
  for (std::uint64_t i = 0; i < cfg.cases; ++i) {
    Subset subset = i % 2 == 0 ? Subset::All : Subset::Finite;
    Program p = ProgramGen(run.budget(i)).program(subset);
    ++rep.checked;
    if (auto errs = validate_module(p.module); !errs.empty()) {
      run.fail(i, "generated module is not well formed: " + errs.front().message);
      continue;
    }
    if (!validate_expr(p.module, p.entry).empty()) {
      run.fail(i, "generated entry is not well formed");
      continue;
    }
    if (subset == Subset::Finite) {
      for (const auto& f : p.module.functions) {
        if (!is_finite_subset(f.body)) run.fail(i, "finite mode produced a non-e_fin body");
      }
    }
    try {
      std::string text = render(p.module);
      ModuleDef back = parse_module(text);
      if (!(back == p.module)) {
        run.fail(i, "module changed by render then parse");
        continue;
      }
      Expr entry = parse_expr(render(p.entry), back);
      if (!(entry == p.entry)) run.fail(i, "entry changed by render then parse: " + render(p.entry));
    } catch (const ParseError& e) {
      run.fail(i, std::string("rendered program does not parse: ") + e.what());
    }
  }
  return run.finish();
}

SuiteReport run_value_roundtrip(const SuiteConfig& cfg) {
  Runner run("values", cfg);
  auto& rep = run.report();
  DataRegistry data{ModuleDef{cfg.budget.datatypes, {}, {}}};
  for (std::uint64_t i = 0; i < cfg.cases; ++i) {
    Value v = ProgramGen(run.budget(i)).value(4);
    ++rep.checked;
    Result r = reconstruct(v, children(v), data);
    if (!r.ok() || !(r.value == v)) {
      run.fail(i, "reconstruct(children) changed " + render(v));
      continue;
    }
    for (const auto& c : children(v)) {
      if (!(value_order(c, v) != 0 && c.size() < v.size())) {
        run.fail(i, "child not strictly contained in " + render(v));
        break;
      }
    }
    try {
      if (!(parse_value(render(v)) == v)) run.fail(i, "parse(render) changed " + render(v));
      if (!(value_from_tree(to_tree(v)) == v)) run.fail(i, "tree serialization changed " + render(v));
    } catch (const std::exception& e) {
      run.fail(i, e.what());
    }
  }
  return run.finish();
}

}  // namespace rascal_light::harness
