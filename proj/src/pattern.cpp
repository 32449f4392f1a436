#include "rascal_light/pattern.h"

#include <algorithm>

#include "overloaded.h"

namespace rascal_light {

using detail::Overloaded;

std::optional<Env> merge_pair(const Env& a, const Env& b) {
  Env out = a;
  for (const auto& [x, v] : b) {
    auto [it, inserted] = out.emplace(x, v);
    if (!inserted && !(it->second == v)) return std::nullopt;
  }
  return out;
}

std::vector<Env> merge(const std::vector<Env>& a, const std::vector<Env>& b) {
  std::vector<Env> out;
  for (const auto& ra : a) {
    for (const auto& rb : b) {
      if (auto r = merge_pair(ra, rb)) out.push_back(std::move(*r));
    }
  }
  return out;
}

std::vector<Env> merge(std::span<const std::vector<Env>> envs) {
  // merge(ε) = [{}]; otherwise fold from the right.
  std::vector<Env> acc{Env{}};
  for (auto it = envs.rbegin(); it != envs.rend(); ++it) {
    acc = merge(*it, acc);
    if (acc.empty()) break;
  }
  return acc;
}

namespace {

Value construct(CollectionKind kind, std::vector<Value> vs) {
  return kind == CollectionKind::List ? Value::list(std::move(vs)) : Value::set(std::move(vs));
}

// Calls f(chosen, rest) for every split of `values` into a single element and
// the remaining sequence. Lists only split off the head.
template <class F>
void single_splits(std::span<const Value> values, CollectionKind kind, F&& f) {
  if (values.empty()) return;
  if (kind == CollectionKind::List) {
    f(values.front(), std::vector<Value>(values.begin() + 1, values.end()));
    return;
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::vector<Value> rest;
    rest.reserve(values.size() - 1);
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (j != i) rest.push_back(values[j]);
    }
    if (!f(values[i], std::move(rest))) return;
  }
}

// Calls f(part, rest) for every split of `values` into a subsequence and the
// remainder: prefixes by increasing length for lists, subsets by size and
// then lexicographic index order for sets. Stops when f returns false.
// Parts outside [lo, hi] elements are skipped.
template <class F>
void sub_splits(std::span<const Value> values, CollectionKind kind, std::size_t lo,
                std::size_t hi, F&& f) {
  const std::size_t n = values.size();
  hi = std::min(hi, n);
  if (kind == CollectionKind::List) {
    for (std::size_t k = lo; k <= hi; ++k) {
      if (!f(std::vector<Value>(values.begin(), values.begin() + k),
             std::vector<Value>(values.begin() + k, values.end()))) {
        return;
      }
    }
    return;
  }
  std::vector<std::size_t> idx;
  for (std::size_t k = lo; k <= hi; ++k) {
    idx.resize(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      std::vector<Value> part;
      std::vector<Value> rest;
      std::size_t p = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (p < k && idx[p] == j) {
          part.push_back(values[j]);
          ++p;
        } else {
          rest.push_back(values[j]);
        }
      }
      if (!f(std::move(part), std::move(rest))) return;
      // Next combination.
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
}

// Remainder of `values` after removing the elements of `part`, or nullopt when
// `part` is not a prefix (lists) or sub-multiset (sets).
std::optional<std::vector<Value>> remove_part(std::span<const Value> values,
                                              std::span<const Value> part, CollectionKind kind) {
  if (part.size() > values.size()) return std::nullopt;
  if (kind == CollectionKind::List) {
    for (std::size_t i = 0; i < part.size(); ++i) {
      if (!(values[i] == part[i])) return std::nullopt;
    }
    return std::vector<Value>(values.begin() + part.size(), values.end());
  }
  std::vector<bool> used(values.size(), false);
  for (const auto& x : part) {
    bool found = false;
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (!used[j] && values[j] == x) {
        used[j] = true;
        found = true;
        break;
      }
    }
    if (!found) return std::nullopt;
  }
  std::vector<Value> rest;
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (!used[j]) rest.push_back(values[j]);
  }
  return rest;
}

// Every non-star pattern consumes exactly one element and every star any
// number, so a split leaving fewer elements than that (or, without stars,
// a different number) cannot match.
struct RestDemand {
  std::size_t min = 0;
  bool exact = true;
};

RestDemand demand(std::span<const StarPattern> patterns) {
  RestDemand d;
  for (const auto& p : patterns) {
    if (std::holds_alternative<StarVar>(p)) {
      d.exact = false;
    } else {
      ++d.min;
    }
  }
  return d;
}

}  // namespace

std::vector<Env> match_all(std::span<const StarPattern> patterns, std::span<const Value> values,
                           const Store& store, const DataRegistry& data, CollectionKind kind,
                           VisitedSet visited) {
  if (patterns.empty()) {
    // PL-Emp-Both / PL-Emp-Pat
    return values.empty() ? std::vector<Env>{Env{}} : std::vector<Env>{};
  }
  const StarPattern& head = patterns.front();
  auto rest_patterns = patterns.subspan(1);
  std::vector<Env> out;

  if (const auto* star = std::get_if<StarVar>(&head)) {
    if (auto bound = store.find(star->name); bound != store.end()) {
      // PL-More-Star-Uni / -Pat-Fail / -Val-Fail
      const Value& sv = bound->second;
      Value::Kind want = kind == CollectionKind::List ? Value::Kind::List : Value::Kind::Set;
      if (sv.kind() != want) return {};
      auto rest = remove_part(values, sv.elements(), kind);
      if (!rest) return {};
      return match_all(rest_patterns, *rest, store, data, kind);
    }
    // PL-More-Star-Re, iterated until PL-More-Star-Exh. Splits that leave
    // the remaining patterns an impossible number of elements yield no
    // environments and are skipped.
    const RestDemand need = demand(rest_patterns);
    if (need.min > values.size()) return out;
    const std::size_t hi = values.size() - need.min;
    const std::size_t lo = need.exact ? hi : 0;
    sub_splits(values, kind, lo, hi, [&](std::vector<Value> part, std::vector<Value> rest) {
      if (!visited.insert(part).second) return true;
      auto rho = match_all(rest_patterns, rest, store, data, kind);
      if (!rho.empty()) {
        Env binding{{star->name, construct(kind, std::move(part))}};
        for (auto& r : merge(std::vector<Env>{binding}, rho)) out.push_back(std::move(r));
      }
      return true;
    });
    return out;
  }

  // PL-More-Pat-Re, iterated until PL-More-Pat-Exh.
  const Pattern& p = *std::get<Box<Pattern>>(head);
  if (demand(rest_patterns).min >= values.size()) return out;
  single_splits(values, kind, [&](const Value& chosen, std::vector<Value> rest) {
    if (!visited.insert(std::vector<Value>{chosen}).second) return true;
    auto rho = match(p, chosen, store, data);
    if (!rho.empty()) {
      auto rho2 = match_all(rest_patterns, rest, store, data, kind);
      for (auto& r : merge(rho, rho2)) out.push_back(std::move(r));
    }
    return true;
  });
  return out;
}

std::vector<Env> match(const Pattern& p, const Value& v, const Store& store,
                       const DataRegistry& data) {
  return std::visit(
      Overloaded{
          [&](const LiteralPat& l) -> std::vector<Env> {
            // P-Val-Sucs / P-Val-Fail
            if (v == l.value) return {Env{}};
            return {};
          },
          [&](const VarPat& x) -> std::vector<Env> {
            if (auto it = store.find(x.name); it != store.end()) {
              // P-Var-Uni / P-Var-Fail
              if (it->second == v) return {Env{}};
              return {};
            }
            return {Env{{x.name, v}}};  // P-Var-Bind
          },
          [&](const ConsPat& c) -> std::vector<Env> {
            if (v.kind() != Value::Kind::Cons || v.constructor_name() != c.name ||
                v.elements().size() != c.args.size()) {
              return {};  // P-Cons-Fail
            }
            std::vector<std::vector<Env>> parts;
            parts.reserve(c.args.size());
            for (std::size_t i = 0; i < c.args.size(); ++i) {
              parts.push_back(match(c.args[i], v.elements()[i], store, data));
              if (parts.back().empty()) return {};
            }
            return merge(parts);  // P-Cons-Sucs
          },
          [&](const TypedPat& t) -> std::vector<Env> {
            if (!has_type(v, t.type, data)) return {};  // P-Type-Fail
            auto inner = match(*t.inner, v, store, data);
            return merge(std::vector<Env>{Env{{t.name, v}}}, inner);  // P-Type-Sucs
          },
          [&](const ListPat& l) -> std::vector<Env> {
            if (v.kind() != Value::Kind::List) return {};  // P-List-Fail
            return match_all(l.items, v.elements(), store, data, CollectionKind::List);
          },
          [&](const SetPat& s) -> std::vector<Env> {
            if (v.kind() != Value::Kind::Set) return {};  // P-Set-Fail
            return match_all(s.items, v.elements(), store, data, CollectionKind::Set);
          },
          [&](const NegPat& n) -> std::vector<Env> {
            // P-Neg-Sucs / P-Neg-Fail
            if (match(*n.inner, v, store, data).empty()) return {Env{}};
            return {};
          },
          [&](const DeepPat& d) -> std::vector<Env> {
            // P-Deep: own matches first, then each child in children() order.
            auto out = match(*d.inner, v, store, data);
            for (const auto& child : children(v)) {
              for (auto& r : match(p, child, store, data)) out.push_back(std::move(r));
            }
            return out;
          },
      },
      p.node);
}

}  // namespace rascal_light
