#include "rascal_light/typing.h"

#include <algorithm>

namespace rascal_light {

namespace {

DataDef builtin_bool() {
  return DataDef{"Bool",
                 {ConstructorDef{"true", {}, {}}, ConstructorDef{"false", {}, {}}},
                 {}};
}

DataDef builtin_nokey() {
  return DataDef{"NoKey", {ConstructorDef{"nokey", {Param{Type::value_type(), "key"}}, {}}}, {}};
}

}  // namespace

DataRegistry::DataRegistry() {
  add(builtin_bool());
  add(builtin_nokey());
}

DataRegistry::DataRegistry(const ModuleDef& m) : DataRegistry() {
  for (const auto& d : m.datatypes) add(d);
}

void DataRegistry::add(const DataDef& d) {
  auto& names = datatypes_[d.name];
  for (const auto& k : d.constructors) {
    names.push_back(k.name);
    constructors_.emplace(k.name, ConstructorSig{d.name, k.name, k.fields});
  }
}

const ConstructorSig* DataRegistry::find(std::string_view constructor) const {
  auto it = constructors_.find(constructor);
  return it == constructors_.end() ? nullptr : &it->second;
}

bool DataRegistry::has_datatype(std::string_view name) const {
  return datatypes_.find(name) != datatypes_.end();
}

Type type_of(const Value& v, const DataRegistry& data) {
  switch (v.kind()) {
    case Value::Kind::Int:
      return Type::integer();
    case Value::Kind::Str:
      return Type::string();
    case Value::Kind::Bottom:
      return Type::void_type();
    case Value::Kind::Cons: {
      const auto* sig = data.find(v.constructor_name());
      if (sig == nullptr) {
        throw IllFormedValue("unknown constructor " + v.constructor_name());
      }
      auto args = v.elements();
      if (args.size() != sig->fields.size()) {
        throw IllFormedValue("arity mismatch for " + v.constructor_name());
      }
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (!subtype(type_of(args[i], data), sig->fields[i].type)) {
          throw IllFormedValue("field " + sig->fields[i].name + " of " + v.constructor_name() +
                               " has the wrong type");
        }
      }
      return Type::adt(sig->datatype);
    }
    case Value::Kind::List:
    case Value::Kind::Set: {
      Type t = Type::void_type();
      auto elems = v.elements();
      // Right fold, as lub_seq.
      for (auto it = elems.rbegin(); it != elems.rend(); ++it) t = lub(type_of(*it, data), t);
      return v.kind() == Value::Kind::List ? Type::list_of(std::move(t))
                                           : Type::set_of(std::move(t));
    }
    case Value::Kind::Map: {
      Type k = Type::void_type();
      Type m = Type::void_type();
      auto entries = v.entries();
      for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
        k = lub(type_of(it->first, data), k);
        m = lub(type_of(it->second, data), m);
      }
      return Type::map_of(std::move(k), std::move(m));
    }
  }
  return Type::value_type();
}

bool subtype(const Type& t1, const Type& t2) {
  if (t1 == t2) return true;
  if (t1.kind() == Type::Kind::Void) return true;
  if (t2.kind() == Type::Kind::Value) return true;
  if (t1.kind() != t2.kind()) return false;
  switch (t1.kind()) {
    case Type::Kind::List:
    case Type::Kind::Set:
      return subtype(t1.element(), t2.element());
    case Type::Kind::Map:
      return subtype(t1.key(), t2.key()) && subtype(t1.mapped(), t2.mapped());
    default:
      return false;
  }
}

Type lub(const Type& t1, const Type& t2) {
  if (t2.kind() == Type::Kind::Void || t1 == t2) return t1;
  if (t1.kind() == Type::Kind::Void) return t2;
  if (t1.kind() == t2.kind()) {
    switch (t1.kind()) {
      case Type::Kind::List:
        return Type::list_of(lub(t1.element(), t2.element()));
      case Type::Kind::Set:
        return Type::set_of(lub(t1.element(), t2.element()));
      case Type::Kind::Map:
        return Type::map_of(lub(t1.key(), t2.key()), lub(t1.mapped(), t2.mapped()));
      default:
        break;
    }
  }
  return Type::value_type();
}

Type lub_seq(std::span<const Type> ts) {
  Type t = Type::void_type();
  for (auto it = ts.rbegin(); it != ts.rend(); ++it) t = lub(*it, t);
  return t;
}

bool has_type(const Value& v, const Type& t, const DataRegistry& data) {
  if (t.kind() == Type::Kind::Value) return true;
  try {
    return subtype(type_of(v, data), t);
  } catch (const IllFormedValue&) {
    return false;
  }
}

std::string render_type(const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Int: return "int";
    case Type::Kind::Str: return "str";
    case Type::Kind::Adt: return t.name();
    case Type::Kind::Void: return "void";
    case Type::Kind::Value: return "value";
    case Type::Kind::List: return "list<" + render_type(t.element()) + ">";
    case Type::Kind::Set: return "set<" + render_type(t.element()) + ">";
    case Type::Kind::Map:
      return "map<" + render_type(t.key()) + ", " + render_type(t.mapped()) + ">";
  }
  return "?";
}

}  // namespace rascal_light
