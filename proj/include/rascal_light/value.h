#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace rascal_light {

using Integer = boost::multiprecision::cpp_int;

// Immutable runtime value. Copies share the underlying representation.
//
// Sets and maps are kept in canonical form (sorted by value_order, no
// duplicate elements or keys), so structural equality is semantic equality.
class Value {
 public:
  // Declaration order is the kind-tag order used by value_order:
  // basic values < constructors < lists < sets < maps < undefined.
  enum class Kind : std::uint8_t { Int, Str, Cons, List, Set, Map, Bottom };

  using Entry = std::pair<Value, Value>;

  // The undefined value ■.
  Value();

  static Value integer(Integer i);
  static Value integer(long long i);
  static Value string(std::string s);
  static Value constructor(std::string name, std::vector<Value> args);
  static Value list(std::vector<Value> elements);
  // Sorts and deduplicates.
  static Value set(std::vector<Value> elements);
  // Sorts by key; for duplicate keys the later entry wins.
  static Value map(std::vector<Entry> entries);
  static Value bottom() { return Value(); }
  static Value boolean(bool b);

  Kind kind() const;
  bool is_bottom() const { return kind() == Kind::Bottom; }
  bool is_basic() const { return kind() == Kind::Int || kind() == Kind::Str; }

  const Integer& as_int() const;
  const std::string& as_string() const;
  const std::string& constructor_name() const;
  // Constructor arguments, list elements or set elements.
  std::span<const Value> elements() const;
  std::span<const Entry> entries() const;
  // true()/false() as a bool; nullopt for anything else.
  std::optional<bool> as_bool() const;

  // Number of nodes in the value tree; integers and strings add one per
  // 16 bits or 16 characters beyond the first. Saturates at SIZE_MAX.
  std::size_t size() const;

  friend bool operator==(const Value& a, const Value& b);
  friend std::strong_ordering operator<=>(const Value& a, const Value& b);
  friend std::strong_ordering value_order(const Value& a, const Value& b);

 private:
  struct Rep;
  explicit Value(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}

  std::shared_ptr<const Rep> rep_;
};

// Total order: kind tag first, then contents lexicographically.
std::strong_ordering value_order(const Value& a, const Value& b);

Value canonical_set(std::vector<Value> elements);
Value map_update(const Value& map, const Value& key, const Value& value);
Value last(std::span<const Value> values);

// Directly contained values. For maps: all keys followed by all values.
std::vector<Value> children(const Value& v);

// Variable -> value mappings. The store is the evaluation state, an
// environment is a candidate binding produced by pattern matching.
using Store = std::map<std::string, Value, std::less<>>;
using Env = Store;

std::string_view to_string(Value::Kind kind);

}  // namespace rascal_light
