#include "rascal_light/value.h"

#include <algorithm>
#include <cassert>
#include <cstdint>

namespace rascal_light {

struct Value::Rep {
  Kind kind = Kind::Bottom;
  Integer integer;
  std::string text;  // string contents or constructor name
  std::vector<Value> elements;
  std::vector<Entry> entries;
  std::size_t nodes = 1;  // saturating weight, kept so size() is O(1)
};

namespace {

template <class It, class Cmp>
std::strong_ordering lexicographic(It a_begin, It a_end, It b_begin, It b_end, Cmp cmp) {
  for (; a_begin != a_end && b_begin != b_end; ++a_begin, ++b_begin) {
    if (auto c = cmp(*a_begin, *b_begin); c != 0) return c;
  }
  if (a_begin == a_end && b_begin == b_end) return std::strong_ordering::equal;
  return a_begin == a_end ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::strong_ordering compare_entries(const Value::Entry& a, const Value::Entry& b) {
  if (auto c = value_order(a.first, b.first); c != 0) return c;
  return value_order(a.second, b.second);
}

std::size_t saturating_add(std::size_t a, std::size_t b) {
  return a > SIZE_MAX - b ? SIZE_MAX : a + b;
}

void count_nodes(std::size_t& nodes, const std::vector<Value>& elements,
                 const std::vector<Value::Entry>& entries) {
  std::size_t n = 1;
  for (const auto& e : elements) n = saturating_add(n, e.size());
  for (const auto& [k, v] : entries) n = saturating_add(saturating_add(n, k.size()), v.size());
  nodes = n;
}

}  // namespace

Value::Value() {
  static const auto bottom = std::make_shared<const Rep>();
  rep_ = bottom;
}

Value Value::integer(Integer i) {
  auto rep = std::make_shared<Rep>();
  rep->kind = Kind::Int;
  rep->integer = std::move(i);
  // Large integers weigh one node per 16 bits, so size() tracks memory.
  if (rep->integer != 0) rep->nodes = 1 + boost::multiprecision::msb(abs(rep->integer)) / 16;
  return Value(std::move(rep));
}

Value Value::integer(long long i) { return integer(Integer(i)); }

Value Value::string(std::string s) {
  auto rep = std::make_shared<Rep>();
  rep->kind = Kind::Str;
  rep->text = std::move(s);
  rep->nodes = 1 + rep->text.size() / 16;
  return Value(std::move(rep));
}

Value Value::constructor(std::string name, std::vector<Value> args) {
  auto rep = std::make_shared<Rep>();
  rep->kind = Kind::Cons;
  rep->text = std::move(name);
  rep->elements = std::move(args);
  count_nodes(rep->nodes, rep->elements, rep->entries);
  return Value(std::move(rep));
}

Value Value::list(std::vector<Value> elements) {
  auto rep = std::make_shared<Rep>();
  rep->kind = Kind::List;
  rep->elements = std::move(elements);
  count_nodes(rep->nodes, rep->elements, rep->entries);
  return Value(std::move(rep));
}

Value Value::set(std::vector<Value> elements) {
  std::sort(elements.begin(), elements.end(),
            [](const Value& a, const Value& b) { return value_order(a, b) < 0; });
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  auto rep = std::make_shared<Rep>();
  rep->kind = Kind::Set;
  rep->elements = std::move(elements);
  count_nodes(rep->nodes, rep->elements, rep->entries);
  return Value(std::move(rep));
}

Value Value::map(std::vector<Entry> entries) {
  // Stable sort keeps insertion order among equal keys; keep the last one.
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return value_order(a.first, b.first) < 0;
  });
  std::vector<Entry> unique;
  unique.reserve(entries.size());
  for (auto& e : entries) {
    if (!unique.empty() && unique.back().first == e.first) {
      unique.back().second = std::move(e.second);
    } else {
      unique.push_back(std::move(e));
    }
  }
  auto rep = std::make_shared<Rep>();
  rep->kind = Kind::Map;
  rep->entries = std::move(unique);
  count_nodes(rep->nodes, rep->elements, rep->entries);
  return Value(std::move(rep));
}

Value Value::boolean(bool b) { return constructor(b ? "true" : "false", {}); }

Value::Kind Value::kind() const { return rep_->kind; }

const Integer& Value::as_int() const {
  assert(kind() == Kind::Int);
  return rep_->integer;
}

const std::string& Value::as_string() const {
  assert(kind() == Kind::Str);
  return rep_->text;
}

const std::string& Value::constructor_name() const {
  assert(kind() == Kind::Cons);
  return rep_->text;
}

std::span<const Value> Value::elements() const { return rep_->elements; }

std::span<const Value::Entry> Value::entries() const { return rep_->entries; }

std::optional<bool> Value::as_bool() const {
  if (kind() != Kind::Cons || !rep_->elements.empty()) return std::nullopt;
  if (rep_->text == "true") return true;
  if (rep_->text == "false") return false;
  return std::nullopt;
}

std::size_t Value::size() const { return rep_->nodes; }

bool operator==(const Value& a, const Value& b) {
  return a.rep_ == b.rep_ || value_order(a, b) == 0;
}

std::strong_ordering operator<=>(const Value& a, const Value& b) { return value_order(a, b); }

std::strong_ordering value_order(const Value& a, const Value& b) {
  if (a.rep_ == b.rep_) return std::strong_ordering::equal;
  if (a.kind() != b.kind()) return a.kind() <=> b.kind();
  switch (a.kind()) {
    case Value::Kind::Int: {
      int c = a.as_int().compare(b.as_int());
      return c < 0 ? std::strong_ordering::less
                   : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    case Value::Kind::Str:
      return a.as_string().compare(b.as_string()) <=> 0;
    case Value::Kind::Cons:
      if (auto c = a.constructor_name().compare(b.constructor_name()) <=> 0; c != 0) return c;
      [[fallthrough]];
    case Value::Kind::List:
    case Value::Kind::Set: {
      auto ea = a.elements();
      auto eb = b.elements();
      return lexicographic(ea.begin(), ea.end(), eb.begin(), eb.end(), value_order);
    }
    case Value::Kind::Map: {
      auto ea = a.entries();
      auto eb = b.entries();
      return lexicographic(ea.begin(), ea.end(), eb.begin(), eb.end(), compare_entries);
    }
    case Value::Kind::Bottom:
      return std::strong_ordering::equal;
  }
  return std::strong_ordering::equal;
}

Value canonical_set(std::vector<Value> elements) { return Value::set(std::move(elements)); }

Value map_update(const Value& map, const Value& key, const Value& value) {
  assert(map.kind() == Value::Kind::Map);
  std::vector<Value::Entry> entries(map.entries().begin(), map.entries().end());
  entries.emplace_back(key, value);
  return Value::map(std::move(entries));
}

Value last(std::span<const Value> values) {
  return values.empty() ? Value::bottom() : values.back();
}

std::vector<Value> children(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Cons:
    case Value::Kind::List:
    case Value::Kind::Set:
      return {v.elements().begin(), v.elements().end()};
    case Value::Kind::Map: {
      std::vector<Value> out;
      out.reserve(v.entries().size() * 2);
      for (const auto& [k, _] : v.entries()) out.push_back(k);
      for (const auto& [_, val] : v.entries()) out.push_back(val);
      return out;
    }
    default:
      return {};
  }
}

std::string_view to_string(Value::Kind kind) {
  switch (kind) {
    case Value::Kind::Int: return "int";
    case Value::Kind::Str: return "str";
    case Value::Kind::Cons: return "constructor";
    case Value::Kind::List: return "list";
    case Value::Kind::Set: return "set";
    case Value::Kind::Map: return "map";
    case Value::Kind::Bottom: return "undefined";
  }
  return "?";
}

}  // namespace rascal_light
