#pragma once

#include <cstdint>
#include <string>

#include "rascal_light/eval.h"

namespace rascal_light {

// Trips ResourceExhausted once the evaluator has used more host stack than
// its budget, measured from the outermost judgment.
class StackGuard {
 public:
  explicit StackGuard(Interpreter& in) : in_(in) {
    char marker = 0;
    auto here = reinterpret_cast<std::uintptr_t>(&marker);
    if (in_.depth_ == 0) {
      in_.stack_base_ = reinterpret_cast<const char*>(here);
      in_.steps_ = 0;
    } else {
      auto base = reinterpret_cast<std::uintptr_t>(in_.stack_base_);
      std::uintptr_t used = base > here ? base - here : here - base;
      if (used > in_.options_.stack_budget) {
        throw ResourceExhausted("evaluation exceeded the host stack budget of " +
                                std::to_string(in_.options_.stack_budget) + " bytes");
      }
    }
    if (in_.options_.max_steps != 0 && ++in_.steps_ > in_.options_.max_steps) {
      throw ResourceExhausted("evaluation exceeded " + std::to_string(in_.options_.max_steps) +
                              " steps");
    }
    ++in_.depth_;
  }
  ~StackGuard() { --in_.depth_; }
  StackGuard(const StackGuard&) = delete;
  StackGuard& operator=(const StackGuard&) = delete;

 private:
  Interpreter& in_;
};

// Declared types added for the extent of a scope.
class DeclScope {
 public:
  explicit DeclScope(Interpreter& in) : in_(in), mark_(in.decls_.size()) {}
  ~DeclScope() { in_.decls_.erase(in_.decls_.begin() + static_cast<std::ptrdiff_t>(mark_), in_.decls_.end()); }
  DeclScope(const DeclScope&) = delete;
  DeclScope& operator=(const DeclScope&) = delete;

  void add(const std::string& name, Type t) { in_.decls_.emplace_back(name, std::move(t)); }
  void add_env(const Env& env) {
    for (const auto& [x, _] : env) add(x, Type::value_type());
  }

 private:
  Interpreter& in_;
  std::size_t mark_;
};

}  // namespace rascal_light
