#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "grouprank/config.hpp"
#include "grouprank/errors.hpp"

namespace grouprank {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Memoization slot.  Computation runs at most once per group instance;
/// an exception (e.g. Undecided) leaves the slot empty so a later call
/// with a larger budget can retry.
template <typename T>
class Lazy {
 public:
  template <typename F>
  const T& get(F&& compute) const {
    std::call_once(flag_, [&] { value_ = std::make_unique<T>(compute()); });
    return *value_;
  }

 private:
  mutable std::once_flag flag_;
  mutable std::unique_ptr<T> value_;
};

/// Keyed memoization.  Values are computed outside the lock; a duplicate
/// computation under contention is benign because everything here is pure.
/// References stay valid: std::map nodes are stable under insertion.
template <typename K, typename V>
class LazyMap {
 public:
  template <typename F>
  const V& get(const K& key, F&& compute) const {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = map_.find(key);
      if (it != map_.end()) return it->second;
    }
    V value = compute();
    std::lock_guard<std::mutex> lock(mutex_);
    return map_.emplace(key, std::move(value)).first->second;
  }

 private:
  mutable std::mutex mutex_;
  mutable std::map<K, V> map_;
};

/// Element-index subset of a parent group, closed under the parent's
/// operation.  Always sorted and always contains the identity.
struct Subgroup {
  GroupPtr parent;
  std::vector<int32_t> elements;

  int order() const { return static_cast<int>(elements.size()); }
  bool contains(int32_t g) const;
  bool is_trivial() const { return elements.size() == 1; }
  bool is_whole_group() const;
  bool is_normal_in_parent() const;
  /// Normality of `inner` inside this subgroup; inner must be a subset.
  bool normalizes(const Subgroup& inner) const;
};

struct Homomorphism {
  GroupPtr source;
  GroupPtr target;
  std::vector<int32_t> map;

  int32_t operator()(int32_t g) const { return map[g]; }
  void verify() const;  // throws InvalidInput unless multiplicative
  bool is_surjective() const;
  Subgroup kernel() const;
};

struct MaterializedSubgroup {
  GroupPtr group;                  // the subgroup as a group in its own right
  std::vector<int32_t> to_parent;  // element i of `group` = to_parent[i] in the parent
  int32_t from_parent(int32_t parent_index) const;
};

namespace detail {
struct Analysis;  // lazily computed derived data, see group.cpp
}

/// Exact finite group as a dense Cayley table over element indices.
/// Immutable after construction; identity pinned at index 0.
class FiniteGroup : public std::enable_shared_from_this<FiniteGroup> {
 public:
  static constexpr int32_t identity = 0;

  /// Validates identity/inverses always, associativity exhaustively for
  /// orders <= 256 and by deterministic sampling above that.
  static GroupPtr make(int order, std::vector<int32_t> table, std::string label,
                       const Config& cfg = default_config());

  int order() const { return order_; }
  int32_t mul(int32_t a, int32_t b) const { return table_[size_t(a) * order_ + b]; }
  int32_t inv(int32_t a) const { return inverse_[a]; }
  int32_t conj(int32_t g, int32_t h) const;   // h^-1 g h
  int32_t comm(int32_t g, int32_t h) const;   // g^-1 h^-1 g h
  int32_t power(int32_t g, long long e) const;
  int element_order(int32_t g) const;
  const std::string& label() const { return label_; }

  /// Full associativity sweep; O(order^3).
  void validate_exhaustive() const;

  detail::Analysis& analysis() const { return *analysis_; }

  FiniteGroup(const FiniteGroup&) = delete;
  FiniteGroup& operator=(const FiniteGroup&) = delete;
  ~FiniteGroup();

 private:
  FiniteGroup(int order, std::vector<int32_t> table, std::string label);

  int order_;
  std::vector<int32_t> table_;
  std::vector<int32_t> inverse_;
  std::string label_;
  std::unique_ptr<detail::Analysis> analysis_;
};

// ---- construction-free core operations ----

/// Smallest subset closed under the group operation containing the seed
/// and the identity; sorted.
std::vector<int32_t> closed_set(const FiniteGroup& G, std::span<const int32_t> seed);

Subgroup subgroup_generated(const GroupPtr& G, std::span<const int32_t> seed);

/// Wraps an element list as a Subgroup after checking the invariants
/// (identity, closure, Lagrange).
Subgroup make_subgroup(GroupPtr G, std::vector<int32_t> elements);

Subgroup trivial_subgroup(const GroupPtr& G);
Subgroup whole_group(const GroupPtr& G);

GroupPtr direct_product(const GroupPtr& G, const GroupPtr& H,
                        const Config& cfg = default_config());

struct QuotientResult {
  GroupPtr group;
  Homomorphism projection;
};

/// Coset group of a verified-normal subgroup; coset representatives are
/// minimal element indices, so the identity coset lands at index 0.
QuotientResult quotient(const GroupPtr& G, const Subgroup& N);

Subgroup centralizer(const GroupPtr& G, std::span<const int32_t> S);
Subgroup center(const GroupPtr& G);

std::vector<int32_t> derived_set(const FiniteGroup& G);  // commutator values only
Subgroup derived_subgroup(const GroupPtr& G);

bool is_abelian(const FiniteGroup& G);
bool is_nilpotent(const FiniteGroup& G);

/// Invariant fingerprint comparison followed by a capped backtracking
/// search mapping a generating set of G into H.
bool is_isomorphic(const GroupPtr& G, const GroupPtr& H,
                   const Config& cfg = default_config());

/// Complete duplicate-free subgroup list, found by layered closure:
/// seed with cyclic subgroups, adjoin single coset representatives to
/// known subgroups, dedupe by canonical element set.  Sorted by
/// (order, elements).
std::vector<Subgroup> all_subgroups(const GroupPtr& G,
                                    const Config& cfg = default_config());

MaterializedSubgroup materialize(const Subgroup& H);

/// Image of a subgroup of the source under a homomorphism.
Subgroup push_forward(const Homomorphism& f, const Subgroup& H);

/// Histogram element order -> count.
const std::map<int, int>& order_histogram(const FiniteGroup& G);

}  // namespace grouprank
