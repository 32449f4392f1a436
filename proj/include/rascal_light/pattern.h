#pragma once

#include <set>
#include <span>
#include <vector>

#include "rascal_light/ast.h"
#include "rascal_light/typing.h"
#include "rascal_light/value.h"

namespace rascal_light {

// Which collection a star-pattern sequence is matched against. Lists are
// partitioned into a prefix and the rest; sets into a subset and its
// complement.
enum class CollectionKind : std::uint8_t { List, Set };

// Element sequences already tried for the leading pattern (𝕍).
using VisitedSet = std::set<std::vector<Value>>;

// Candidate environments for `p` against `v`. Empty means no match.
std::vector<Env> match(const Pattern& p, const Value& v, const Store& store,
                       const DataRegistry& data);

std::vector<Env> match_all(std::span<const StarPattern> patterns, std::span<const Value> values,
                           const Store& store, const DataRegistry& data, CollectionKind kind,
                           VisitedSet visited = {});

// Consistent unions of one environment from each sequence, in product order.
std::vector<Env> merge(std::span<const std::vector<Env>> envs);
std::vector<Env> merge(const std::vector<Env>& a, const std::vector<Env>& b);
std::optional<Env> merge_pair(const Env& a, const Env& b);

}  // namespace rascal_light
