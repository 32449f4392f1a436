// Brute-force matcher: lists are cut into one segment per pattern item, sets
// are matched through every function from elements to items. Results are
// collected as sets, so order and multiplicity do not matter.

#include "overloaded.h"
#include "rascal_light/harness.h"

namespace rascal_light::harness {

using detail::Overloaded;

namespace {

using Envs = std::set<Env>;

Envs combine(const Envs& a, const Envs& b) {
  Envs out;
  for (const auto& x : a) {
    for (const auto& y : b) {
      Env m = x;
      bool ok = true;
      for (const auto& [k, v] : y) {
        auto [it, fresh] = m.emplace(k, v);
        if (!fresh && !(it->second == v)) {
          ok = false;
          break;
        }
      }
      if (ok) out.insert(std::move(m));
    }
  }
  return out;
}

void subterms(const Value& v, std::vector<Value>& out) {
  out.push_back(v);
  for (const auto& e : v.elements()) subterms(e, out);
  for (const auto& [k, x] : v.entries()) {
    subterms(k, out);
    subterms(x, out);
  }
}

class Oracle {
 public:
  Oracle(const Store& store, const DataRegistry& data, std::size_t budget)
      : store_(store), data_(data), budget_(budget) {}

  Envs match(const Pattern& p, const Value& v) {
    tick();
    return std::visit(
        Overloaded{
            [&](const LiteralPat& l) { return v == l.value ? unit() : Envs{}; },
            [&](const VarPat& x) { return bind(x.name, v); },
            [&](const ConsPat& c) {
              if (v.kind() != Value::Kind::Cons || v.constructor_name() != c.name ||
                  v.elements().size() != c.args.size()) {
                return Envs{};
              }
              Envs acc = unit();
              for (std::size_t i = 0; i < c.args.size() && !acc.empty(); ++i) {
                acc = combine(acc, match(c.args[i], v.elements()[i]));
              }
              return acc;
            },
            [&](const TypedPat& t) {
              if (!has_type(v, t.type, data_)) return Envs{};
              return combine(Envs{Env{{t.name, v}}}, match(*t.inner, v));
            },
            [&](const ListPat& l) {
              if (v.kind() != Value::Kind::List) return Envs{};
              return list(l.items, v);
            },
            [&](const SetPat& s) {
              if (v.kind() != Value::Kind::Set) return Envs{};
              return set(s.items, v);
            },
            [&](const NegPat& n) { return match(*n.inner, v).empty() ? unit() : Envs{}; },
            [&](const DeepPat& d) {
              std::vector<Value> subs;
              subterms(v, subs);
              Envs out;
              for (const auto& s : subs) {
                for (auto& e : match(*d.inner, s)) out.insert(e);
              }
              return out;
            },
        },
        p.node);
  }

 private:
  static Envs unit() { return Envs{Env{}}; }

  void tick() {
    if (++work_ > budget_) throw BudgetExceeded("oracle budget exceeded");
  }

  Envs bind(const std::string& x, const Value& v) {
    if (auto it = store_.find(x); it != store_.end()) {
      return it->second == v ? unit() : Envs{};
    }
    return Envs{Env{{x, v}}};
  }

  Envs item(const StarPattern& sp, const std::vector<Value>& part, bool is_list) {
    if (const auto* s = std::get_if<StarVar>(&sp)) {
      return bind(s->name, is_list ? Value::list(part) : Value::set(part));
    }
    if (part.size() != 1) return {};
    return match(*std::get<Box<Pattern>>(sp), part.front());
  }

  // Segment lengths for each item, star items taking any length.
  Envs list(const std::vector<StarPattern>& items, const Value& v) {
    std::vector<Value> es(v.elements().begin(), v.elements().end());
    Envs out;
    std::vector<std::size_t> lengths;
    std::function<void(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t pos) {
      tick();
      if (i == items.size()) {
        if (pos != es.size()) return;
        Envs acc = unit();
        std::size_t at = 0;
        for (std::size_t k = 0; k < items.size() && !acc.empty(); ++k) {
          std::vector<Value> part(es.begin() + static_cast<std::ptrdiff_t>(at),
                                  es.begin() + static_cast<std::ptrdiff_t>(at + lengths[k]));
          at += lengths[k];
          acc = combine(acc, item(items[k], part, true));
        }
        out.insert(acc.begin(), acc.end());
        return;
      }
      const bool star = std::holds_alternative<StarVar>(items[i]);
      for (std::size_t len = 0; pos + len <= es.size(); ++len) {
        if (!star && len != 1) continue;
        lengths.push_back(len);
        go(i + 1, pos + len);
        lengths.pop_back();
      }
    };
    go(0, 0);
    return out;
  }

  // Every assignment of elements to items; non-star items take exactly one.
  Envs set(const std::vector<StarPattern>& items, const Value& v) {
    std::vector<Value> es(v.elements().begin(), v.elements().end());
    Envs out;
    if (items.empty()) return es.empty() ? unit() : Envs{};
    std::vector<std::size_t> owner(es.size(), 0);
    while (true) {
      tick();
      std::vector<std::vector<Value>> parts(items.size());
      for (std::size_t j = 0; j < es.size(); ++j) parts[owner[j]].push_back(es[j]);
      Envs acc = unit();
      for (std::size_t k = 0; k < items.size() && !acc.empty(); ++k) {
        acc = combine(acc, item(items[k], parts[k], false));
      }
      out.insert(acc.begin(), acc.end());
      // Next assignment, odometer style.
      std::size_t j = 0;
      while (j < es.size() && ++owner[j] == items.size()) owner[j++] = 0;
      if (j == es.size()) break;
    }
    return out;
  }

  const Store& store_;
  const DataRegistry& data_;
  std::size_t budget_;
  std::size_t work_ = 0;
};

}  // namespace

std::set<Env> oracle_match(const Pattern& p, const Value& v, const Store& store,
                           const DataRegistry& data, std::size_t budget) {
  return Oracle(store, data, budget).match(p, v);
}

}  // namespace rascal_light::harness
