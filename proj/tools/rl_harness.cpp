// rl-harness: runs one property suite and reports failures.

#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "rascal_light/harness.h"

using namespace rascal_light::harness;

int main(int argc, char** argv) {
  CLI::App app{"Property suites for the Rascal Light interpreter"};
  std::string suite;
  SuiteConfig cfg;
  cfg.artifact_dir = "rl-failures";
  const std::map<std::string, SuiteReport (*)(const SuiteConfig&)> suites{
      {"purity", run_purity},        {"typing", run_typing},
      {"progress", run_progress},    {"termination", run_termination},
      {"match", run_match},          {"fuel", run_fuel},
      {"roundtrip", run_module_roundtrip}, {"values", run_value_roundtrip},
  };
  std::vector<std::string> names;
  for (const auto& [k, _] : suites) names.push_back(k);
  app.add_option("--suite", suite, "Suite to run")->required()->check(CLI::IsMember(names));
  app.add_option("--cases", cfg.cases, "Number of generated cases");
  app.add_option("--seed", cfg.seed, "Seed of the run");
  app.add_option("--artifacts", cfg.artifact_dir, "Directory for minimized failing programs");
  app.add_option("--depth", cfg.budget.max_depth, "Maximum expression depth");
  app.add_option("--collection", cfg.budget.max_collection, "Maximum collection size");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  SuiteReport rep;
  with_suite_stack([&] { rep = suites.at(suite)(cfg); });
  std::cout << rep.name << ": " << (rep.passed() ? "PASS" : "FAIL") << " checked=" << rep.checked
            << "/" << rep.requested << " failures=" << rep.failures << " skipped=" << rep.skipped
            << " seconds=" << rep.seconds << "\n";
  for (const auto& m : rep.messages) std::cout << "  " << m << "\n";
  if (rep.artifact) std::cout << "  minimized failure: " << *rep.artifact << "\n";
  return rep.passed() ? 0 : 1;
}
