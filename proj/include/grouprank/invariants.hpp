#pragma once

#include <map>
#include <set>
#include <vector>

#include "grouprank/group.hpp"

namespace grouprank {

/// rk(G) together with the per-prime ranks and their maximum.
struct RankProfile {
  int rank = 0;
  std::map<int, int> p_ranks;
  int mlr = 0;

  bool operator==(const RankProfile&) const = default;
};

/// Descending iterated Frattini series of a base group.  terms[0] is the
/// whole group; the chain stops early at a fixpoint.
struct FrattiniChain {
  GroupPtr base;
  std::vector<Subgroup> terms;
  bool reached_fixpoint = false;

  /// Term j, clamped to the fixpoint when the series stabilized early.
  const Subgroup& term(int j) const;
  int length() const { return int(terms.size()) - 1; }
};

enum class FrattiniMethod { MaximalIntersection, PGroupFormula, NilpotentFormula };

/// Minimal number of generators.  Burnside basis for p-groups; generic
/// increasing tuple-size search elsewhere, candidates ordered by
/// decreasing element order.
int min_generators(const GroupPtr& G, const Config& cfg = default_config());

/// Intersection of all maximal subgroups.  Within the subgroup cap this
/// is computed literally; beyond it, p-groups and nilpotent groups fall
/// back to the [G,G]G^p closure formula (reported via `method`).
Subgroup frattini(const GroupPtr& G, const Config& cfg = default_config(),
                  FrattiniMethod* method = nullptr);

/// p-Frattini subgroup [G,G]G^p of an arbitrary finite group.
Subgroup p_frattini(const GroupPtr& G, int p);

FrattiniChain frattini_series(const GroupPtr& G, int depth,
                              const Config& cfg = default_config());

/// Prufer rank: max of d(H) over all subgroups.  Abelian and nilpotent
/// groups take theorem-backed fast paths (cross-checked against the
/// generic scan in the tests); everything else scans the subgroup list.
int rank(const GroupPtr& G, const Config& cfg = default_config());

/// Generic subgroup-scan rank, exposed for cross-checking the fast paths.
int rank_by_scan(const GroupPtr& G, const Config& cfg = default_config());

Subgroup sylow(const GroupPtr& G, int p, const Config& cfg = default_config());

RankProfile rank_profile(const GroupPtr& G, const std::set<int>& primes,
                         const Config& cfg = default_config());

/// Elements with g^p = 1 (includes the identity).
std::vector<int32_t> omega1(const FiniteGroup& G, int p);

/// Powerful p-group test: [G,G] <= G^p for odd p, [G,G] <= G^4 for p = 2.
bool is_powerful(const GroupPtr& G, int p);

/// Every commutator value is a (2q)-th power as an element.  Set-level,
/// unlike is_powerful which compares subgroups.
bool is_semi_powerful(const FiniteGroup& G, int q);

/// Exact value set { [x1,y1]...[xr,yr] z^q } computed by iterated set
/// products; r >= 0 (r = 0 gives the q-th-power set).
std::vector<int32_t> verbal_set(const FiniteGroup& G, int r, int q);

/// Set of q-th power values { z^q }.
std::vector<int32_t> power_value_set(const FiniteGroup& G, long long q);

/// d(H) for a subgroup inside its parent (no materialization for the
/// p-group Burnside path).
int subgroup_min_generators(const Subgroup& H, const Config& cfg = default_config());

bool is_p_group(const FiniteGroup& G, int p);

/// Invariant factors of an abelian group's p-part, as exponent partition
/// lambda_1 >= lambda_2 >= ...; derived from the counts |{x : x^{p^i}=1}|.
std::vector<int> abelian_p_type(const FiniteGroup& G, int p);

}  // namespace grouprank
