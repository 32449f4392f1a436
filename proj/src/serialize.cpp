#include "rascal_light/serialize.h"

#include <array>

namespace rascal_light {

using nlohmann::json;

json to_tree(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Int: return {{"kind", "int"}, {"value", v.as_int().str()}};
    case Value::Kind::Str: return {{"kind", "str"}, {"value", v.as_string()}};
    case Value::Kind::Cons: {
      json args = json::array();
      for (const auto& a : v.elements()) args.push_back(to_tree(a));
      return {{"kind", "cons"}, {"name", v.constructor_name()}, {"args", std::move(args)}};
    }
    case Value::Kind::List:
    case Value::Kind::Set: {
      json xs = json::array();
      for (const auto& a : v.elements()) xs.push_back(to_tree(a));
      return {{"kind", v.kind() == Value::Kind::List ? "list" : "set"}, {"elements", std::move(xs)}};
    }
    case Value::Kind::Map: {
      json es = json::array();
      for (const auto& [k, x] : v.entries()) es.push_back({{"key", to_tree(k)}, {"value", to_tree(x)}});
      return {{"kind", "map"}, {"entries", std::move(es)}};
    }
    case Value::Kind::Bottom: return {{"kind", "undefined"}};
  }
  return {};
}

json to_tree(const Result& r) {
  json out{{"version", kTreeFormatVersion}, {"status", std::string(to_string(r.status))}};
  if (r.status == Status::Success || r.status == Status::Return || r.status == Status::Throw) {
    out["value"] = to_tree(r.value);
  }
  return out;
}

json to_tree(const Store& store) {
  json out = json::object();
  for (const auto& [x, v] : store) out[x] = to_tree(v);
  return out;
}

namespace {

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw TreeFormatError(std::string("missing field '") + name + "'");
  }
  return j.at(name);
}

std::vector<Value> values_of(const json& arr) {
  if (!arr.is_array()) throw TreeFormatError("expected an array");
  std::vector<Value> out;
  out.reserve(arr.size());
  for (const auto& x : arr) out.push_back(value_from_tree(x));
  return out;
}

}  // namespace

Value value_from_tree(const json& j) try {
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "int") {
    try {
      return Value::integer(Integer(field(j, "value").get<std::string>()));
    } catch (const std::runtime_error&) {
      throw TreeFormatError("malformed integer");
    }
  }
  if (kind == "str") return Value::string(field(j, "value").get<std::string>());
  if (kind == "cons") {
    return Value::constructor(field(j, "name").get<std::string>(), values_of(field(j, "args")));
  }
  if (kind == "list") return Value::list(values_of(field(j, "elements")));
  if (kind == "set") return Value::set(values_of(field(j, "elements")));
  if (kind == "map") {
    std::vector<Value::Entry> es;
    for (const auto& e : field(j, "entries")) {
      es.emplace_back(value_from_tree(field(e, "key")), value_from_tree(field(e, "value")));
    }
    return Value::map(std::move(es));
  }
  if (kind == "undefined") return Value::bottom();
  throw TreeFormatError("unknown value kind '" + kind + "'");
} catch (const json::exception& e) {
  throw TreeFormatError(e.what());
}

Result result_from_tree(const json& j) try {
  if (field(j, "version").get<int>() != kTreeFormatVersion) {
    throw TreeFormatError("unsupported tree format version");
  }
  const std::string status = field(j, "status").get<std::string>();
  static constexpr std::array kAll{Status::Success, Status::Return, Status::Throw,
                                   Status::Break,   Status::Continue, Status::Fail,
                                   Status::Error,   Status::Timeout};
  for (Status s : kAll) {
    if (to_string(s) == status) {
      Result r{s, {}};
      if (j.contains("value")) r.value = value_from_tree(j.at("value"));
      return r;
    }
  }
  throw TreeFormatError("unknown status '" + status + "'");
} catch (const json::exception& e) {
  throw TreeFormatError(e.what());
}

}  // namespace rascal_light
