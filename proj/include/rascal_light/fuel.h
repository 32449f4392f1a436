#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>

#include "rascal_light/eval.h"

namespace rascal_light {

// `e` evaluated with at most `n` nested judgments.
Result eval_expr_fuel(Interpreter& in, const Expr& e, Store& store, std::uint64_t n);

class NotFiniteSubset : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Smallest n >= 1 with enough(n), assuming enough is upward closed: doubles,
// then bisects. Throws std::runtime_error once n would pass `cap`.
std::uint64_t least_fuel(const std::function<bool(std::uint64_t)>& enough,
                         std::uint64_t cap = std::uint64_t{1} << 40);

// Smallest n for which eval_expr_fuel(e, store, n) does not time out. Throws
// NotFiniteSubset unless is_finite_subset(e). Doubling stops at `cap`, after
// which the search gives up with std::runtime_error.
std::uint64_t min_sufficient_fuel(Interpreter& in, const Expr& e, const Store& store,
                                  std::uint64_t cap = std::uint64_t{1} << 40);

}  // namespace rascal_light
