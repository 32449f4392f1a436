#include "rascal_light/eval.h"

#include <algorithm>

#include "guards.h"
#include "overloaded.h"
#include "rascal_light/pattern.h"

namespace rascal_light {

using detail::Overloaded;

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Success: return "success";
    case Status::Return: return "return";
    case Status::Throw: return "throw";
    case Status::Break: return "break";
    case Status::Continue: return "continue";
    case Status::Fail: return "fail";
    case Status::Error: return "error";
    case Status::Timeout: return "timeout";
  }
  return "?";
}

namespace {

void strip(Store& store, const Env& env) {
  for (const auto& [x, _] : env) store.erase(x);
}

void extend(Store& store, const Env& env) {
  for (const auto& [x, v] : env) store.insert_or_assign(x, v);
}

bool any_bottom(std::span<const Value> vs) {
  return std::any_of(vs.begin(), vs.end(), [](const Value& v) { return v.is_bottom(); });
}

}  // namespace

Interpreter::Interpreter(const ModuleDef& m, EvalOptions options)
    : module_(m), data_(m), options_(std::move(options)) {
  for (const auto& g : m.globals) decls_.emplace_back(g.name, g.type);
}

Result Interpreter::trace(std::string_view rule, Span span, Result r) {
  if (options_.trace) options_.trace(TraceEntry{rule, span, r.status});
  return r;
}

const Type* Interpreter::declared_type(std::string_view name) const {
  for (auto it = decls_.rbegin(); it != decls_.rend(); ++it) {
    if (it->first == name) return &it->second;
  }
  return nullptr;
}

Result Interpreter::eval_expr(const Expr& e, Store& store, Fuel fuel) {
  StackGuard guard(*this);
  if (fuel.exhausted()) return trace("Timeout", e.span, Result::timeout());
  Result r = eval_node(e, store, fuel);
  if (options_.max_value_size != 0 && r.value.size() > options_.max_value_size) {
    throw ResourceExhausted("value of " + std::to_string(r.value.size()) +
                            " nodes exceeds the limit of " +
                            std::to_string(options_.max_value_size));
  }
  return r;
}

namespace {

// Shared body of the expression-sequence judgment: ES-More at fuel n runs
// its element and the remaining sequence at n-1.
template <class Get>
SeqResult eval_seq(Interpreter& in, std::size_t n, Get get, Store& store, Fuel fuel) {
  std::vector<Value> out;
  out.reserve(n);
  Fuel cur = fuel;
  for (std::size_t i = 0; i < n; ++i) {
    if (cur.exhausted()) return SeqResult::of(Result::timeout());
    Fuel sub = cur.next();
    Result r = in.eval_expr(get(i), store, sub);
    if (!r.ok()) return SeqResult::of(std::move(r));  // ES-Exc1 / ES-Exc2
    out.push_back(std::move(r.value));
    cur = sub;
  }
  if (cur.exhausted()) return SeqResult::of(Result::timeout());
  return SeqResult::success(std::move(out));  // ES-Emp, ES-More
}

}  // namespace

SeqResult Interpreter::eval_expr_star(std::span<const Expr> es, Store& store, Fuel fuel) {
  return eval_seq(*this, es.size(), [&](std::size_t i) -> const Expr& { return es[i]; }, store,
                  fuel);
}

Result Interpreter::eval_node(const Expr& e, Store& store, Fuel fuel) {
  const Fuel sub = fuel.next();
  const Span span = e.span;
  return std::visit(
      Overloaded{
          [&](const Literal& l) { return trace("E-Val", span, Result::success(l.value)); },
          [&](const Var& x) {
            auto it = store.find(x.name);
            if (it == store.end()) return trace("E-Var-Err", span, Result::error());
            return trace("E-Var-Sucs", span, Result::success(it->second));
          },
          [&](const Unary& u) {
            Result r = eval_expr(*u.operand, store, sub);
            if (!r.ok()) return trace("E-Un-Exc", span, std::move(r));
            return trace("E-Un-Sucs", span, apply_unary(u.op, r.value));
          },
          [&](const Binary& b) {
            Result r1 = eval_expr(*b.lhs, store, sub);
            if (!r1.ok()) return trace("E-Bin-Exc1", span, std::move(r1));
            Result r2 = eval_expr(*b.rhs, store, sub);
            if (!r2.ok()) return trace("E-Bin-Exc2", span, std::move(r2));
            // Products grow as the sum of their operands; refuse before paying for one.
            if (b.op == BinaryOp::Mul && options_.max_value_size != 0 &&
                r1.value.size() + r2.value.size() > options_.max_value_size) {
              throw ResourceExhausted("product operands exceed the value size limit");
            }
            return trace("E-Bin-Sucs", span, apply_binary(b.op, r1.value, r2.value));
          },
          [&](const ConsExpr& c) {
            SeqResult args = eval_expr_star(c.args, store, sub);
            if (!args.ok()) return trace("E-Cons-Exc", span, std::move(args.exc));
            const ConstructorSig* sig = data_.find(c.name);
            if (sig == nullptr || sig->fields.size() != args.values.size()) {
              return trace("E-Cons-Err", span, Result::error());
            }
            for (std::size_t i = 0; i < args.values.size(); ++i) {
              const Value& v = args.values[i];
              if (v.is_bottom() || !has_type(v, sig->fields[i].type, data_)) {
                return trace("E-Cons-Err", span, Result::error());
              }
            }
            return trace("E-Cons-Sucs", span,
                         Result::success(Value::constructor(c.name, std::move(args.values))));
          },
          [&](const Call& c) { return eval_call(e, c, store, fuel); },
          [&](const ListExpr& l) {
            SeqResult vs = eval_expr_star(l.elements, store, sub);
            if (!vs.ok()) return trace("E-List-Exc", span, std::move(vs.exc));
            if (any_bottom(vs.values)) return trace("E-List-Err", span, Result::error());
            return trace("E-List-Sucs", span, Result::success(Value::list(std::move(vs.values))));
          },
          [&](const SetExpr& s) {
            SeqResult vs = eval_expr_star(s.elements, store, sub);
            if (!vs.ok()) return trace("E-Set-Exc", span, std::move(vs.exc));
            if (any_bottom(vs.values)) return trace("E-Set-Err", span, Result::error());
            return trace("E-Set-Sucs", span, Result::success(Value::set(std::move(vs.values))));
          },
          [&](const MapExpr& m) {
            // Keys and values in declaration order: k1, v1, k2, v2, ...
            SeqResult vs = eval_seq(
                *this, m.keys.size() * 2,
                [&](std::size_t i) -> const Expr& {
                  return i % 2 == 0 ? m.keys[i / 2] : m.values[i / 2];
                },
                store, sub);
            if (!vs.ok()) return trace("E-Map-Exc", span, std::move(vs.exc));
            if (any_bottom(vs.values)) return trace("E-Map-Err", span, Result::error());
            std::vector<Value::Entry> entries;
            entries.reserve(m.keys.size());
            for (std::size_t i = 0; i < vs.values.size(); i += 2) {
              entries.emplace_back(vs.values[i], vs.values[i + 1]);
            }
            return trace("E-Map-Sucs", span, Result::success(Value::map(std::move(entries))));
          },
          [&](const Lookup& l) {
            Result m = eval_expr(*l.map, store, sub);
            if (!m.ok()) return trace("E-Lookup-Exc1", span, std::move(m));
            if (m.value.kind() != Value::Kind::Map) {
              return trace("E-Lookup-Err", span, Result::error());
            }
            Result k = eval_expr(*l.key, store, sub);
            if (!k.ok()) return trace("E-Lookup-Exc2", span, std::move(k));
            auto entries = m.value.entries();
            auto it = std::lower_bound(
                entries.begin(), entries.end(), k.value,
                [](const Value::Entry& a, const Value& key) { return value_order(a.first, key) < 0; });
            if (it != entries.end() && it->first == k.value) {
              return trace("E-Lookup-Sucs", span, Result::success(it->second));
            }
            return trace("E-Lookup-NoKey", span,
                         Result::thrown(Value::constructor("nokey", {k.value})));
          },
          [&](const Update& u) {
            Result m = eval_expr(*u.map, store, sub);
            if (!m.ok()) return trace("E-Update-Exc1", span, std::move(m));
            if (m.value.kind() != Value::Kind::Map) {
              return trace("E-Update-Err1", span, Result::error());
            }
            Result k = eval_expr(*u.key, store, sub);
            if (!k.ok()) return trace("E-Update-Exc2", span, std::move(k));
            Result v = eval_expr(*u.value, store, sub);
            if (!v.ok()) return trace("E-Update-Exc3", span, std::move(v));
            if (k.value.is_bottom() || v.value.is_bottom()) {
              return trace("E-Update-Err2", span, Result::error());
            }
            return trace("E-Update-Sucs", span,
                         Result::success(map_update(m.value, k.value, v.value)));
          },
          [&](const Return& r) {
            Result v = eval_expr(*r.value, store, sub);
            if (!v.ok()) return trace("E-Ret-Exc", span, std::move(v));
            return trace("E-Ret-Sucs", span, Result::ret(std::move(v.value)));
          },
          [&](const Assign& a) {
            Result v = eval_expr(*a.value, store, sub);
            if (!v.ok()) return trace("E-Asgn-Exc", span, std::move(v));
            const Type* t = declared_type(a.name);
            if (t == nullptr || !has_type(v.value, *t, data_)) {
              return trace("E-Asgn-Err", span, Result::error());
            }
            store.insert_or_assign(a.name, v.value);
            return trace("E-Asgn-Sucs", span, std::move(v));
          },
          [&](const If& i) {
            Result c = eval_expr(*i.cond, store, sub);
            if (!c.ok()) return trace("E-If-Exc", span, std::move(c));
            auto b = c.value.as_bool();
            if (!b) return trace("E-If-Err", span, Result::error());
            if (*b) return trace("E-If-True", span, eval_expr(*i.then_branch, store, sub));
            return trace("E-If-False", span, eval_expr(*i.else_branch, store, sub));
          },
          [&](const Switch& s) {
            Result v = eval_expr(*s.scrutinee, store, sub);
            if (!v.ok()) return trace("E-Switch-Exc1", span, std::move(v));
            Result r = eval_cases(s.cases, v.value, store, sub);
            if (r.ok()) return trace("E-Switch-Sucs", span, std::move(r));
            if (r.status == Status::Fail) {
              return trace("E-Switch-Fail", span, Result::success(Value::bottom()));
            }
            return trace("E-Switch-Exc2", span, std::move(r));
          },
          [&](const Visit& vis) {
            Result v = eval_expr(*vis.scrutinee, store, sub);
            if (!v.ok()) return trace("E-Visit-Exc1", span, std::move(v));
            Result r = eval_visit(vis.strategy, vis.cases, v.value, store, sub);
            if (r.ok()) return trace("E-Visit-Sucs", span, std::move(r));
            if (r.status == Status::Fail) return trace("E-Visit-Fail", span, std::move(v));
            return trace("E-Visit-Exc2", span, std::move(r));
          },
          [&](const BreakExpr&) { return trace("E-Break", span, Result::brk()); },
          [&](const ContinueExpr&) { return trace("E-Continue", span, Result::cont()); },
          [&](const FailExpr&) { return trace("E-Fail", span, Result::fail()); },
          [&](const Block& b) {
            SeqResult vs;
            {
              DeclScope scope(*this);
              for (const auto& l : b.locals) scope.add(l.name, l.type);
              vs = eval_expr_star(b.body, store, sub);
            }
            for (const auto& l : b.locals) store.erase(l.name);
            if (!vs.ok()) return trace("E-Block-Exc", span, std::move(vs.exc));
            return trace("E-Block-Sucs", span, Result::success(last(vs.values)));
          },
          [&](const For& f) {
            EnvResult g = eval_gen(f.generator, store, sub);
            if (!g.ok()) return trace("E-For-Exc", span, std::move(g.exc));
            return trace("E-For-Sucs", span, eval_each(*f.body, g.envs, store, sub));
          },
          [&](const While& w) { return eval_while(e, w, store, fuel); },
          [&](const Solve& s) { return eval_solve(e, s, store, fuel); },
          [&](const Throw& t) {
            Result v = eval_expr(*t.value, store, sub);
            if (!v.ok()) return trace("E-Thr-Exc", span, std::move(v));
            return trace("E-Thr-Sucs", span, Result::thrown(std::move(v.value)));
          },
          [&](const TryCatch& t) {
            Result r = eval_expr(*t.body, store, sub);
            if (r.status != Status::Throw) return trace("E-Try-Ord", span, std::move(r));
            Result h;
            {
              DeclScope scope(*this);
              scope.add(t.var, Type::value_type());
              store.insert_or_assign(t.var, r.value);
              h = eval_expr(*t.handler, store, sub);
            }
            store.erase(t.var);
            return trace("E-Try-Catch", span, std::move(h));
          },
          [&](const TryFinally& t) {
            Result r1 = eval_expr(*t.body, store, sub);
            if (r1.status == Status::Timeout) return trace("Timeout", span, std::move(r1));
            Result r2 = eval_expr(*t.finalizer, store, sub);
            if (r2.ok()) return trace("E-Fin-Sucs", span, std::move(r1));
            return trace("E-Fin-Exc", span, std::move(r2));
          },
      },
      e.node);
}

Result Interpreter::eval_call(const Expr& e, const Call& c, Store& store, Fuel fuel) {
  const Fuel sub = fuel.next();
  SeqResult args = eval_expr_star(c.args, store, sub);
  if (!args.ok()) return trace("E-Call-Arg-Exc", e.span, std::move(args.exc));
  const FunDef* f = module_.find_function(c.name);
  if (f == nullptr || f->params.size() != args.values.size()) {
    return trace("E-Call-Arg-Err", e.span, Result::error());
  }
  return invoke(*f, std::move(args.values), store, sub);
}

Result Interpreter::call(std::string_view name, std::span<const Value> args, Store& store,
                         Fuel fuel) {
  const FunDef* f = module_.find_function(name);
  if (f == nullptr || f->params.size() != args.size()) return Result::error();
  return invoke(*f, std::vector<Value>(args.begin(), args.end()), store, fuel);
}

// E-Call-* after the arguments are values; `fuel` is the body premise's.
Result Interpreter::invoke(const FunDef& f, std::vector<Value> args, Store& store, Fuel fuel) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (!has_type(args[i], f.params[i].type, data_)) {
      return trace("E-Call-Arg-Err", f.span, Result::error());
    }
  }
  Store local;
  for (const auto& g : module_.globals) {
    if (auto it = store.find(g.name); it != store.end()) local.emplace(g.name, it->second);
  }
  for (std::size_t i = 0; i < args.size(); ++i) local.insert_or_assign(f.params[i].name, args[i]);

  std::vector<std::pair<std::string, Type>> frame;
  frame.reserve(module_.globals.size() + f.params.size());
  for (const auto& g : module_.globals) frame.emplace_back(g.name, g.type);
  for (const auto& p : f.params) frame.emplace_back(p.name, p.type);
  std::swap(frame, decls_);
  Result r;
  try {
    r = eval_expr(f.body, local, fuel);
  } catch (...) {
    std::swap(frame, decls_);
    throw;
  }
  std::swap(frame, decls_);

  for (const auto& g : module_.globals) {
    if (auto it = local.find(g.name); it != local.end()) store.insert_or_assign(g.name, it->second);
  }
  switch (r.status) {
    case Status::Success:
    case Status::Return:
      if (has_type(r.value, f.return_type, data_)) {
        return trace("E-Call-Sucs", f.span, Result::success(std::move(r.value)));
      }
      return trace("E-Call-Res-Err1", f.span, Result::error());
    case Status::Throw:
      return trace("E-Call-Res-Exc", f.span, std::move(r));
    case Status::Timeout:
      return trace("Timeout", f.span, std::move(r));
    default:
      return trace("E-Call-Res-Err2", f.span, Result::error());
  }
}

// The recursive premise of E-While-True-Sucs is unrolled; the k-th unrolled
// judgment runs with k units less fuel, as in the recursive derivation.
Result Interpreter::eval_while(const Expr& e, const While& w, Store& store, Fuel fuel) {
  Fuel cur = fuel;
  while (true) {
    if (cur.exhausted()) return trace("Timeout", e.span, Result::timeout());
    const Fuel sub = cur.next();
    Result c = eval_expr(*w.cond, store, sub);
    if (!c.ok()) return trace("E-While-Exc1", e.span, std::move(c));
    auto b = c.value.as_bool();
    if (!b) return trace("E-While-Err", e.span, Result::error());
    if (!*b) return trace("E-While-False", e.span, Result::success(Value::bottom()));
    Result r = eval_expr(*w.body, store, sub);
    if (r.status == Status::Break) {
      return trace("E-While-True-Break", e.span, Result::success(Value::bottom()));
    }
    if (r.status != Status::Success && r.status != Status::Continue) {
      return trace("E-While-Exc2", e.span, std::move(r));
    }
    trace("E-While-True-Sucs", e.span, Result::success(Value::bottom()));
    cur = sub;
  }
}

Result Interpreter::eval_solve(const Expr& e, const Solve& s, Store& store, Fuel fuel) {
  Fuel cur = fuel;
  while (true) {
    if (cur.exhausted()) return trace("Timeout", e.span, Result::timeout());
    const Fuel sub = cur.next();
    std::vector<std::optional<Value>> before;
    before.reserve(s.vars.size());
    for (const auto& x : s.vars) {
      auto it = store.find(x);
      before.push_back(it == store.end() ? std::nullopt : std::optional<Value>(it->second));
    }
    Result r = eval_expr(*s.body, store, sub);
    if (!r.ok()) return trace("E-Solve-Exc", e.span, std::move(r));
    bool changed = false;
    for (std::size_t i = 0; i < s.vars.size(); ++i) {
      auto it = store.find(s.vars[i]);
      if (!before[i] || it == store.end()) return trace("E-Solve-Err", e.span, Result::error());
      if (!(*before[i] == it->second)) changed = true;
    }
    if (!changed) return trace("E-Solve-Eq", e.span, std::move(r));
    trace("E-Solve-Neq", e.span, r);
    cur = sub;
  }
}

Result Interpreter::eval_cases(std::span<const Case> cases, const Value& v, Store& store,
                               Fuel fuel) {
  StackGuard guard(*this);
  Fuel cur = fuel;
  for (const auto& c : cases) {
    if (cur.exhausted()) return Result::timeout();
    const Fuel sub = cur.next();
    std::vector<Env> envs = match(*c.pattern, v, store, data_);
    Store saved = store;
    Result r = eval_case(envs, *c.body, store, sub);
    if (r.status != Status::Fail) return trace("ECS-More-Ord", c.body->span, std::move(r));
    trace("ECS-More-Fail", c.body->span, r);
    store = std::move(saved);
    cur = sub;
  }
  if (cur.exhausted()) return Result::timeout();
  return Result::fail();  // ECS-Emp
}

Result Interpreter::eval_case(std::span<const Env> envs, const Expr& body, Store& store,
                              Fuel fuel) {
  Fuel cur = fuel;
  for (const auto& rho : envs) {
    if (cur.exhausted()) return Result::timeout();
    const Fuel sub = cur.next();
    Store saved = store;
    extend(store, rho);
    Result r;
    {
      DeclScope scope(*this);
      scope.add_env(rho);
      r = eval_expr(body, store, sub);
    }
    if (r.status != Status::Fail) {
      strip(store, rho);
      return trace("EC-More-Ord", body.span, std::move(r));
    }
    trace("EC-More-Fail", body.span, r);
    store = std::move(saved);
    cur = sub;
  }
  if (cur.exhausted()) return Result::timeout();
  return Result::fail();  // EC-Emp
}

Result Interpreter::eval_each(const Expr& body, std::span<const Env> envs, Store& store,
                              Fuel fuel) {
  Fuel cur = fuel;
  for (const auto& rho : envs) {
    if (cur.exhausted()) return Result::timeout();
    const Fuel sub = cur.next();
    extend(store, rho);
    Result r;
    {
      DeclScope scope(*this);
      scope.add_env(rho);
      r = eval_expr(body, store, sub);
    }
    strip(store, rho);
    if (r.status == Status::Break) {
      return trace("EE-More-Break", body.span, Result::success(Value::bottom()));
    }
    if (r.status != Status::Success && r.status != Status::Continue) {
      return trace("EE-More-Exc", body.span, std::move(r));
    }
    cur = sub;
  }
  if (cur.exhausted()) return Result::timeout();
  return Result::success(Value::bottom());  // EE-Emp
}

EnvResult Interpreter::eval_gen(const Generator& g, Store& store, Fuel fuel) {
  if (fuel.exhausted()) return EnvResult::of(Result::timeout());
  const Fuel sub = fuel.next();
  return std::visit(
      Overloaded{
          [&](const MatchGen& m) {
            Result v = eval_expr(*m.source, store, sub);
            if (!v.ok()) {
              trace("G-Pat-Exc", m.source->span, v);
              return EnvResult::of(std::move(v));
            }
            trace("G-Pat-Sucs", m.source->span, v);
            return EnvResult::success(match(*m.pattern, v.value, store, data_));
          },
          [&](const EnumGen& en) {
            Result v = eval_expr(*en.source, store, sub);
            if (!v.ok()) {
              trace("G-Enum-Exc", en.source->span, v);
              return EnvResult::of(std::move(v));
            }
            std::vector<Env> envs;
            switch (v.value.kind()) {
              case Value::Kind::List:
              case Value::Kind::Set:
                for (const auto& x : v.value.elements()) envs.push_back(Env{{en.var, x}});
                break;
              case Value::Kind::Map:
                for (const auto& [k, _] : v.value.entries()) envs.push_back(Env{{en.var, k}});
                break;
              default:
                trace("G-Enum-Err", en.source->span, Result::error());
                return EnvResult::of(Result::error());
            }
            return EnvResult::success(std::move(envs));
          },
      },
      g);
}

std::optional<bool> as_bool(const Value& v) { return v.as_bool(); }

InitResult init_module(const ModuleDef& m, EvalOptions options, Fuel fuel) {
  InitResult out;
  Interpreter in(m, std::move(options));
  for (const auto& g : m.globals) {
    Result r = in.eval_expr(g.init, out.store, fuel);
    if (r.ok() && !has_type(r.value, g.type, in.data())) r = Result::error();
    if (!r.ok()) {
      out.error = InitError{g.name, std::move(r)};
      return out;
    }
    out.store.insert_or_assign(g.name, std::move(r.value));
  }
  return out;
}

}  // namespace rascal_light
