#pragma once

// Independent answers for the example programs: exhaustive rewriting for the
// simplifier, Kleene iteration in C++ for the chain, subset enumeration for
// knapsack and a plain loop for prod.

#include <algorithm>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "rascal_light/render.h"
#include "rascal_light/value.h"

namespace golden {

using rascal_light::Value;

inline Value lit(long long n) { return Value::constructor("intlit", {Value::integer(n)}); }
inline Value plus(Value a, Value b) {
  return Value::constructor("plus", {std::move(a), std::move(b)});
}

inline bool is_zero(const Value& v) { return v == lit(0); }

// All single-step rewrites of `v` under the two zero rules, at any position.
inline std::vector<Value> steps(const Value& v) {
  std::vector<Value> out;
  if (v.constructor_name() != "plus") return out;
  const Value& l = v.elements()[0];
  const Value& r = v.elements()[1];
  if (is_zero(l)) out.push_back(r);
  if (is_zero(r)) out.push_back(l);
  for (const auto& l2 : steps(l)) out.push_back(plus(l2, r));
  for (const auto& r2 : steps(r)) out.push_back(plus(l, r2));
  return out;
}

// Every normal form reachable by any rewriting order.
inline std::set<Value> normal_forms(const Value& v) {
  std::set<Value> seen, out;
  std::function<void(const Value&)> go = [&](const Value& x) {
    if (!seen.insert(x).second) return;
    auto next = steps(x);
    if (next.empty()) out.insert(x);
    for (const auto& y : next) go(y);
  };
  go(v);
  return out;
}

inline std::size_t expr_nodes(const Value& v) {
  if (v.constructor_name() == "intlit") return 1;
  return 1 + expr_nodes(v.elements()[0]) + expr_nodes(v.elements()[1]);
}

inline bool zero_free(const Value& v) {
  if (v.constructor_name() == "intlit") return true;
  return !is_zero(v.elements()[0]) && !is_zero(v.elements()[1]) && zero_free(v.elements()[0]) &&
         zero_free(v.elements()[1]);
}

// 15 nodes: seven additions over eight literals, five of them zero.
inline Value simplifier_input() {
  return plus(plus(plus(lit(0), lit(3)), plus(lit(0), lit(0))),
              plus(plus(lit(5), lit(0)), plus(lit(0), lit(0))));
}

struct Item {
  int weight, worth;
};

inline Value item(const Item& i) {
  return Value::constructor("item", {Value::integer(i.weight), Value::integer(i.worth)});
}

inline std::vector<Item> knapsack_items() { return {{1, 60}, {2, 100}, {3, 120}}; }
constexpr int kKnapsackLimit = 5;

// Best subset under the weight limit, by trying every subset.
inline Value knapsack_optimum(const std::vector<Item>& items, int limit) {
  int best = -1;
  std::vector<Value> best_set;
  for (unsigned mask = 0; mask < (1u << items.size()); ++mask) {
    int w = 0, v = 0;
    std::vector<Value> chosen;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if ((mask & (1u << i)) == 0) continue;
      w += items[i].weight;
      v += items[i].worth;
      chosen.push_back(item(items[i]));
    }
    if (w <= limit && v > best) {
      best = v;
      best_set = chosen;
    }
  }
  return Value::set(best_set);
}

// v := lub(v, step(v)) from bottom until it stops changing.
inline long long chain_fixpoint() {
  long long v = 0;
  while (true) {
    long long next = std::max(v, v < 3 ? v + 1 : 3);
    if (next == v) return v;
    v = next;
  }
}

inline long long product(const std::vector<long long>& xs) {
  long long r = 1;
  for (long long x : xs) {
    if (x == 0) return 0;
    r *= x;
  }
  return r;
}

struct Case {
  std::string name;
  std::string file;
  std::string entry;
  Value expected;
};

inline std::string items_text() {
  std::vector<Value> xs;
  for (const auto& i : knapsack_items()) xs.push_back(item(i));
  return rascal_light::render(Value::set(xs));
}

inline std::vector<Case> cases() {
  auto nf = normal_forms(simplifier_input());
  return {
      {"simplify", "simplify.rsl", "simplify(" + rascal_light::render(simplifier_input()) + ")",
       nf.size() == 1 ? *nf.begin() : Value::bottom()},
      {"fixpoint", "fixpoint.rsl", "fix()", Value::integer(chain_fixpoint())},
      {"knapsack", "knapsack.rsl",
       "slowknapsack(" + items_text() + ", " + std::to_string(kKnapsackLimit) + ")",
       knapsack_optimum(knapsack_items(), kKnapsackLimit)},
      {"prod-zero", "prod.rsl", "prod([1, 2, 0, 3])", Value::integer(product({1, 2, 0, 3}))},
      {"prod", "prod.rsl", "prod([1, 2, 3])", Value::integer(product({1, 2, 3}))},
  };
}

}  // namespace golden
