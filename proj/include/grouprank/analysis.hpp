#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "grouprank/group.hpp"

namespace grouprank::detail {

/// Memoized derived data hanging off a FiniteGroup.  Everything in here
/// is a pure function of the group, so caching preserves value semantics;
/// the Lazy wrappers make initialization single-writer.
struct Analysis {
  Lazy<bool> abelian;
  Lazy<bool> nilpotent;
  Lazy<std::map<int, int>> order_hist;
  Lazy<std::vector<int32_t>> center_set;
  Lazy<std::vector<int32_t>> derived_closure;
  LazyMap<int, std::vector<int32_t>> sylow_sets;
  Lazy<std::vector<std::vector<int32_t>>> subgroup_sets;
  Lazy<std::vector<int32_t>> frattini_set;
  Lazy<int> min_gen;
  Lazy<int> rank_value;
  LazyMap<int, int> p_ranks;
  Lazy<std::vector<int>> abelianization_type;
};

}  // namespace grouprank::detail
