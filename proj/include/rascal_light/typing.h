#pragma once

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rascal_light/ast.h"
#include "rascal_light/type.h"
#include "rascal_light/value.h"

namespace rascal_light {

struct ConstructorSig {
  std::string datatype;
  std::string name;
  std::vector<Param> fields;
};

// Constructor lookup for a module, including the built-in Bool and NoKey.
class DataRegistry {
 public:
  DataRegistry();
  explicit DataRegistry(const ModuleDef& m);

  const ConstructorSig* find(std::string_view constructor) const;
  bool has_datatype(std::string_view name) const;

 private:
  void add(const DataDef& d);

  std::map<std::string, ConstructorSig, std::less<>> constructors_;
  std::map<std::string, std::vector<std::string>, std::less<>> datatypes_;
};

// Raised by type_of when a constructor value does not fit its declaration.
// That can only come from an interpreter bug, never from user programs.
class IllFormedValue : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Type type_of(const Value& v, const DataRegistry& data);
bool subtype(const Type& t1, const Type& t2);
Type lub(const Type& t1, const Type& t2);
Type lub_seq(std::span<const Type> ts);

// type_of(v) <: t, without throwing.
bool has_type(const Value& v, const Type& t, const DataRegistry& data);

}  // namespace rascal_light
