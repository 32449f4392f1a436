#pragma once

#include <stdexcept>

#include "json.hpp"

#include "rascal_light/result.h"
#include "rascal_light/value.h"

namespace rascal_light {

// Version of the tree format below; bumped on incompatible changes.
inline constexpr int kTreeFormatVersion = 1;

// {"kind":"int","value":"<decimal>"}, {"kind":"str","value":...},
// {"kind":"cons","name":...,"args":[...]}, {"kind":"list"|"set","elements":[...]},
// {"kind":"map","entries":[{"key":...,"value":...}]}, {"kind":"undefined"}.
nlohmann::json to_tree(const Value& v);
// {"version":1,"status":"success",...,"value":<tree>}
nlohmann::json to_tree(const Result& r);
nlohmann::json to_tree(const Store& store);

class TreeFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Value value_from_tree(const nlohmann::json& j);
Result result_from_tree(const nlohmann::json& j);

}  // namespace rascal_light
