#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rascal_light {

class Type {
 public:
  enum class Kind : std::uint8_t { Int, Str, Adt, Set, List, Map, Void, Value };

  Type() : kind_(Kind::Value) {}

  static Type integer() { return Type(Kind::Int); }
  static Type string() { return Type(Kind::Str); }
  static Type adt(std::string name) {
    Type t(Kind::Adt);
    t.name_ = std::move(name);
    return t;
  }
  static Type set_of(Type element) { return Type(Kind::Set, {std::move(element)}); }
  static Type list_of(Type element) { return Type(Kind::List, {std::move(element)}); }
  static Type map_of(Type key, Type value) {
    return Type(Kind::Map, {std::move(key), std::move(value)});
  }
  static Type void_type() { return Type(Kind::Void); }
  static Type value_type() { return Type(Kind::Value); }

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  // Element type of list/set, key type of map.
  const Type& element() const { return params_.at(0); }
  const Type& key() const { return params_.at(0); }
  const Type& mapped() const { return params_.at(1); }

  bool operator==(const Type&) const = default;

 private:
  explicit Type(Kind kind, std::vector<Type> params = {})
      : kind_(kind), params_(std::move(params)) {}

  Kind kind_;
  std::string name_;
  std::vector<Type> params_;
};

// Source syntax, e.g. `map<int, str>`.
std::string render_type(const Type& t);

}  // namespace rascal_light
