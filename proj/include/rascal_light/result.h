#pragma once

#include <cstdint>
#include <limits>
#include <string_view>
#include <vector>

#include "rascal_light/value.h"

namespace rascal_light {

// Success, the six exceptional results, and Timeout from the fueled judgments.
enum class Status : std::uint8_t { Success, Return, Throw, Break, Continue, Fail, Error, Timeout };

std::string_view to_string(Status s);

// Result of an expression-like judgment. `value` carries the payload of
// Success, Return and Throw and is ■ otherwise.
struct Result {
  Status status = Status::Success;
  Value value;

  static Result success(Value v) { return {Status::Success, std::move(v)}; }
  static Result ret(Value v) { return {Status::Return, std::move(v)}; }
  static Result thrown(Value v) { return {Status::Throw, std::move(v)}; }
  static Result brk() { return {Status::Break, {}}; }
  static Result cont() { return {Status::Continue, {}}; }
  static Result fail() { return {Status::Fail, {}}; }
  static Result error() { return {Status::Error, {}}; }
  static Result timeout() { return {Status::Timeout, {}}; }

  bool ok() const { return status == Status::Success; }
  bool operator==(const Result&) const = default;
};

// Judgments producing a sequence of values (expression sequences, traversal
// of children). When `status` is not Success, `exc` holds the result.
struct SeqResult {
  Result exc;
  std::vector<Value> values;

  bool ok() const { return exc.status == Status::Success; }
  static SeqResult success(std::vector<Value> vs) { return {Result{}, std::move(vs)}; }
  static SeqResult of(Result r) { return {std::move(r), {}}; }
};

struct EnvResult {
  Result exc;
  std::vector<Env> envs;

  bool ok() const { return exc.status == Status::Success; }
  static EnvResult success(std::vector<Env> es) { return {Result{}, std::move(es)}; }
  static EnvResult of(Result r) { return {std::move(r), {}}; }
};

// Recursion budget. Every judgment invoked with zero fuel times out, and each
// premise receives one unit less than its conclusion.
class Fuel {
 public:
  static constexpr std::uint64_t kUnlimited = std::numeric_limits<std::uint64_t>::max();

  constexpr Fuel() = default;
  constexpr explicit Fuel(std::uint64_t n) : n_(n) {}
  static constexpr Fuel unlimited() { return Fuel(kUnlimited); }

  constexpr bool exhausted() const { return n_ == 0; }
  constexpr Fuel next() const { return Fuel(n_ == kUnlimited ? n_ : n_ - 1); }
  constexpr std::uint64_t remaining() const { return n_; }

 private:
  std::uint64_t n_ = kUnlimited;
};

}  // namespace rascal_light
