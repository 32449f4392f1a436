#include <pthread.h>

#include <algorithm>
#include <exception>
#include <stdexcept>

#include "guards.h"
#include "rascal_light/eval.h"

namespace rascal_light {

Value if_fail(const Result& r, const Value& v) {
  return r.status == Status::Fail ? v : r.value;
}

SeqResult vcombine(const Result& r, const SeqResult& rs, const Value& v,
                   std::span<const Value> vs) {
  if (r.status == Status::Fail && rs.exc.status == Status::Fail) {
    return SeqResult::of(Result::fail());
  }
  std::vector<Value> out;
  out.reserve(vs.size() + 1);
  out.push_back(if_fail(r, v));
  if (rs.exc.status == Status::Fail) {
    out.insert(out.end(), vs.begin(), vs.end());
  } else {
    out.insert(out.end(), rs.values.begin(), rs.values.end());
  }
  return SeqResult::success(std::move(out));
}

Result reconstruct(const Value& v, std::span<const Value> replacement, const DataRegistry& data) {
  auto defined = [&] {
    return std::none_of(replacement.begin(), replacement.end(),
                        [](const Value& x) { return x.is_bottom(); });
  };
  switch (v.kind()) {
    case Value::Kind::Int:
    case Value::Kind::Str:
    case Value::Kind::Bottom:
      // RC-Val-*, RC-Bot-*
      if (replacement.empty()) return Result::success(v);
      return Result::error();
    case Value::Kind::Cons: {
      const ConstructorSig* sig = data.find(v.constructor_name());
      if (sig == nullptr || sig->fields.size() != replacement.size()) return Result::error();
      for (std::size_t i = 0; i < replacement.size(); ++i) {
        if (replacement[i].is_bottom() || !has_type(replacement[i], sig->fields[i].type, data)) {
          return Result::error();
        }
      }
      return Result::success(Value::constructor(
          v.constructor_name(), std::vector<Value>(replacement.begin(), replacement.end())));
    }
    case Value::Kind::List:
      if (!defined()) return Result::error();
      return Result::success(Value::list(std::vector<Value>(replacement.begin(), replacement.end())));
    case Value::Kind::Set:
      if (!defined()) return Result::error();
      return Result::success(Value::set(std::vector<Value>(replacement.begin(), replacement.end())));
    case Value::Kind::Map: {
      const std::size_t n = v.entries().size();
      if (replacement.size() != 2 * n || !defined()) return Result::error();
      std::vector<Value::Entry> entries;
      entries.reserve(n);
      for (std::size_t i = 0; i < n; ++i) entries.emplace_back(replacement[i], replacement[n + i]);
      return Result::success(Value::map(std::move(entries)));
    }
  }
  return Result::error();
}

Result Interpreter::eval_visit(Strategy st, std::span<const Case> cases, const Value& v,
                               Store& store, Fuel fuel) {
  if (fuel.exhausted()) return Result::timeout();
  const Fuel sub = fuel.next();
  switch (st) {
    case Strategy::TopDown:
      return trace("EV-TD", {}, td_visit(cases, v, store, BreakMode::NoBreak, sub));
    case Strategy::TopDownBreak:
      return trace("EV-TDB", {}, td_visit(cases, v, store, BreakMode::BreakOnFirst, sub));
    case Strategy::BottomUp:
      return trace("EV-BU", {}, bu_visit(cases, v, store, BreakMode::NoBreak, sub));
    case Strategy::BottomUpBreak:
      return trace("EV-BUB", {}, bu_visit(cases, v, store, BreakMode::BreakOnFirst, sub));
    case Strategy::Innermost:
    case Strategy::Outermost:
      return eval_fixpoint(st, cases, v, store, fuel);
  }
  return Result::error();
}

// EV-IM-* / EV-OM-*. A traversal that matches nothing after the first pass
// leaves the current iterate as the fixed point.
Result Interpreter::eval_fixpoint(Strategy st, std::span<const Case> cases, const Value& v,
                                  Store& store, Fuel fuel) {
  const bool inner = st == Strategy::Innermost;
  Value current = v;
  bool first = true;
  Fuel cur = fuel;
  while (true) {
    if (cur.exhausted()) return Result::timeout();
    const Fuel sub = cur.next();
    Result r = inner ? bu_visit(cases, current, store, BreakMode::NoBreak, sub)
                     : td_visit(cases, current, store, BreakMode::NoBreak, sub);
    if (r.status == Status::Fail) {
      if (first) return trace(inner ? "EV-IM-Exc" : "EV-OM-Exc", {}, std::move(r));
      return trace(inner ? "EV-IM-Eq" : "EV-OM-Eq", {}, Result::success(std::move(current)));
    }
    if (!r.ok()) return trace(inner ? "EV-IM-Exc" : "EV-OM-Exc", {}, std::move(r));
    if (r.value == current) return trace(inner ? "EV-IM-Eq" : "EV-OM-Eq", {}, std::move(r));
    trace(inner ? "EV-IM-Neq" : "EV-OM-Neq", {}, r);
    current = std::move(r.value);
    first = false;
    cur = sub;
  }
}

Result Interpreter::td_visit(std::span<const Case> cases, const Value& v, Store& store,
                             BreakMode br, Fuel fuel) {
  StackGuard guard(*this);
  if (fuel.exhausted()) return Result::timeout();
  const Fuel sub = fuel.next();
  Result r = eval_cases(cases, v, store, sub);
  if (!r.ok() && r.status != Status::Fail) return trace("ETV-Exc1", {}, std::move(r));
  if (br == BreakMode::BreakOnFirst && r.ok()) return trace("ETV-Break-Sucs", {}, std::move(r));
  Value v2 = if_fail(r, v);
  std::vector<Value> kids = children(v2);
  SeqResult rs = td_visit_star(cases, kids, store, br, sub);
  if (rs.exc.status == Status::Fail) return trace("ETV-Ord-Sucs1", {}, std::move(r));
  if (!rs.ok()) return trace("ETV-Exc2", {}, std::move(rs.exc));
  return trace("ETV-Ord-Sucs2", {}, reconstruct(v2, rs.values, data_));
}

Result Interpreter::bu_visit(std::span<const Case> cases, const Value& v, Store& store,
                             BreakMode br, Fuel fuel) {
  StackGuard guard(*this);
  if (fuel.exhausted()) return Result::timeout();
  const Fuel sub = fuel.next();
  std::vector<Value> kids = children(v);
  SeqResult rs = bu_visit_star(cases, kids, store, br, sub);
  if (rs.exc.status == Status::Fail) {
    return trace("EBU-Fail-Sucs", {}, eval_cases(cases, v, store, sub));
  }
  if (!rs.ok()) return trace("EBU-Exc", {}, std::move(rs.exc));
  Result rc = reconstruct(v, rs.values, data_);
  if (br == BreakMode::BreakOnFirst) return trace("EBU-Break-Sucs", {}, std::move(rc));
  if (!rc.ok()) return trace("EBU-No-Break-Err", {}, std::move(rc));
  Result r = eval_cases(cases, rc.value, store, sub);
  if (r.ok() || r.status == Status::Fail) {
    return trace("EBU-No-Break-Sucs", {}, Result::success(if_fail(r, rc.value)));
  }
  return trace("EBU-No-Break-Exc", {}, std::move(r));
}

namespace {

// Shared body of ETVS-* and EBUS-*: per-element results folded from the right
// with vcombine; the k-th element's judgment runs with k units less fuel.
template <class Visit>
SeqResult visit_star(std::span<const Value> vs, BreakMode br, Fuel fuel, Visit&& visit) {
  std::vector<Result> results;
  results.reserve(vs.size());
  SeqResult tail = SeqResult::of(Result::fail());
  Fuel cur = fuel;
  bool stopped = false;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (cur.exhausted()) return SeqResult::of(Result::timeout());
    const Fuel sub = cur.next();
    Result r = visit(vs[i], sub);
    if (!r.ok() && r.status != Status::Fail) return SeqResult::of(std::move(r));
    if (br == BreakMode::BreakOnFirst && r.ok()) {
      std::vector<Value> rest{r.value};
      rest.insert(rest.end(), vs.begin() + static_cast<std::ptrdiff_t>(i) + 1, vs.end());
      tail = SeqResult::success(std::move(rest));
      stopped = true;
      break;
    }
    results.push_back(std::move(r));
    cur = sub;
  }
  if (!stopped && cur.exhausted()) return SeqResult::of(Result::timeout());
  for (std::size_t j = results.size(); j-- > 0;) {
    tail = vcombine(results[j], tail, vs[j], vs.subspan(j + 1));
  }
  return tail;
}

}  // namespace

SeqResult Interpreter::td_visit_star(std::span<const Case> cases, std::span<const Value> vs,
                                     Store& store, BreakMode br, Fuel fuel) {
  return visit_star(vs, br, fuel, [&](const Value& v, Fuel f) {
    return td_visit(cases, v, store, br, f);
  });
}

SeqResult Interpreter::bu_visit_star(std::span<const Case> cases, std::span<const Value> vs,
                                     Store& store, BreakMode br, Fuel fuel) {
  return visit_star(vs, br, fuel, [&](const Value& v, Fuel f) {
    return bu_visit(cases, v, store, br, f);
  });
}

namespace {

struct ThreadTask {
  const std::function<void()>* fn;
  std::exception_ptr error;
};

void* run_task(void* arg) {
  auto* task = static_cast<ThreadTask*>(arg);
  try {
    (*task->fn)();
  } catch (...) {
    task->error = std::current_exception();
  }
  return nullptr;
}

}  // namespace

void run_with_stack(std::size_t bytes, const std::function<void()>& fn) {
  pthread_attr_t attr;
  pthread_attr_init(&attr);
  pthread_attr_setstacksize(&attr, bytes);
  ThreadTask task{&fn, nullptr};
  pthread_t thread;
  int rc = pthread_create(&thread, &attr, run_task, &task);
  pthread_attr_destroy(&attr);
  if (rc != 0) throw std::runtime_error("could not start evaluation thread");
  pthread_join(thread, nullptr);
  if (task.error) std::rethrow_exception(task.error);
}

}  // namespace rascal_light
