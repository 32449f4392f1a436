#include <algorithm>

#include "rascal_light/eval.h"

namespace rascal_light {

namespace {

bool both(const Value& a, const Value& b, Value::Kind k) { return a.kind() == k && b.kind() == k; }

std::optional<std::pair<bool, bool>> bools(const Value& a, const Value& b) {
  auto x = a.as_bool();
  auto y = b.as_bool();
  if (!x || !y) return std::nullopt;
  return std::pair{*x, *y};
}

Result integer_op(BinaryOp op, const Integer& x, const Integer& y) {
  switch (op) {
    case BinaryOp::Add: return Result::success(Value::integer(x + y));
    case BinaryOp::Sub: return Result::success(Value::integer(x - y));
    case BinaryOp::Mul: return Result::success(Value::integer(x * y));
    case BinaryOp::Div:
      if (y == 0) return Result::error();
      return Result::success(Value::integer(x / y));
    case BinaryOp::Mod:
      if (y == 0) return Result::error();
      return Result::success(Value::integer(x % y));
    default: return Result::error();
  }
}

Result add(const Value& a, const Value& b) {
  if (both(a, b, Value::Kind::Int)) return integer_op(BinaryOp::Add, a.as_int(), b.as_int());
  if (both(a, b, Value::Kind::Str)) return Result::success(Value::string(a.as_string() + b.as_string()));
  if (both(a, b, Value::Kind::List) || both(a, b, Value::Kind::Set)) {
    std::vector<Value> out(a.elements().begin(), a.elements().end());
    out.insert(out.end(), b.elements().begin(), b.elements().end());
    return Result::success(a.kind() == Value::Kind::List ? Value::list(std::move(out))
                                                         : Value::set(std::move(out)));
  }
  if (both(a, b, Value::Kind::Map)) {
    // Right-biased: entries of b override those of a.
    std::vector<Value::Entry> out(a.entries().begin(), a.entries().end());
    out.insert(out.end(), b.entries().begin(), b.entries().end());
    return Result::success(Value::map(std::move(out)));
  }
  return Result::error();
}

Result member(const Value& x, const Value& c) {
  switch (c.kind()) {
    case Value::Kind::List:
    case Value::Kind::Set: {
      auto es = c.elements();
      return Result::success(Value::boolean(std::find(es.begin(), es.end(), x) != es.end()));
    }
    case Value::Kind::Map: {
      auto es = c.entries();
      bool found = std::any_of(es.begin(), es.end(), [&](const Value::Entry& e) { return e.first == x; });
      return Result::success(Value::boolean(found));
    }
    default: return Result::error();
  }
}

}  // namespace

Result apply_unary(UnaryOp op, const Value& v) {
  switch (op) {
    case UnaryOp::Neg:
      if (v.kind() != Value::Kind::Int) return Result::error();
      return Result::success(Value::integer(-v.as_int()));
    case UnaryOp::Not: {
      auto b = v.as_bool();
      if (!b) return Result::error();
      return Result::success(Value::boolean(!*b));
    }
  }
  return Result::error();
}

Result apply_binary(BinaryOp op, const Value& a, const Value& b) {
  switch (op) {
    case BinaryOp::Add: return add(a, b);
    case BinaryOp::Sub:
    case BinaryOp::Mul:
    case BinaryOp::Div:
    case BinaryOp::Mod:
      if (!both(a, b, Value::Kind::Int)) return Result::error();
      return integer_op(op, a.as_int(), b.as_int());
    case BinaryOp::Eq: return Result::success(Value::boolean(a == b));
    case BinaryOp::Neq: return Result::success(Value::boolean(!(a == b)));
    case BinaryOp::Lt: return Result::success(Value::boolean(value_order(a, b) < 0));
    case BinaryOp::Le: return Result::success(Value::boolean(value_order(a, b) <= 0));
    case BinaryOp::Gt: return Result::success(Value::boolean(value_order(a, b) > 0));
    case BinaryOp::Ge: return Result::success(Value::boolean(value_order(a, b) >= 0));
    case BinaryOp::And:
    case BinaryOp::Or: {
      auto xy = bools(a, b);
      if (!xy) return Result::error();
      bool r = op == BinaryOp::And ? (xy->first && xy->second) : (xy->first || xy->second);
      return Result::success(Value::boolean(r));
    }
    case BinaryOp::In: return member(a, b);
  }
  return Result::error();
}

}  // namespace rascal_light
