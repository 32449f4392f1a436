#include "rascal_light/fuel.h"

namespace rascal_light {

Result eval_expr_fuel(Interpreter& in, const Expr& e, Store& store, std::uint64_t n) {
  return in.eval_expr(e, store, Fuel(n));
}

std::uint64_t least_fuel(const std::function<bool(std::uint64_t)>& enough, std::uint64_t cap) {
  std::uint64_t hi = 1;
  while (!enough(hi)) {
    if (hi >= cap) throw std::runtime_error("no sufficient fuel below the search cap");
    hi *= 2;
  }
  // Non-timeout is upward closed, so the boundary lies in (hi/2, hi].
  std::uint64_t lo = hi / 2;
  while (hi - lo > 1) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    if (enough(mid)) hi = mid; else lo = mid;
  }
  return hi;
}

std::uint64_t min_sufficient_fuel(Interpreter& in, const Expr& e, const Store& store,
                                  std::uint64_t cap) {
  if (!is_finite_subset(e)) throw NotFiniteSubset("expression is outside the terminating subset");
  return least_fuel(
      [&](std::uint64_t n) {
        Store s = store;
        return eval_expr_fuel(in, e, s, n).status != Status::Timeout;
      },
      cap);
}

}  // namespace rascal_light
