#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "grouprank/group.hpp"
#include "grouprank/group_spec.hpp"

namespace grouprank {

struct ProPFamily;

/// Z_p^d as a pro-p group; level k is (C_{p^k})^d.
struct UniformAbelianFamily {
  int p = 2;
  int d = 1;
};

/// Z_p^d x T with T a fixed powerful finite p-group (verified on
/// construction); level k is (C_{p^k})^d x T.
struct AbelianTimesTorsionFamily {
  int p = 2;
  int d = 1;
  GroupSpec torsion;
};

/// C ⋉ A with C procyclic acting on A = Z_p^n by the unipotent map
/// a_i -> a_i a_{i+1} (a_n fixed); requires p > n >= 2.  Level k is
/// C_{p^{m(k)}} ⋉ (C_{p^k})^n where m(k) is the exact multiplicative
/// order exponent of the action matrix mod p^k (computed at
/// elaboration, never estimated).
struct JordanMetabelianFamily {
  int p = 5;
  int n = 2;
};

/// Product over distinct primes.
struct FamilyProduct {
  std::vector<ProPFamily> factors;
};

struct ProPFamily {
  std::variant<UniformAbelianFamily, AbelianTimesTorsionFamily, JordanMetabelianFamily,
               FamilyProduct>
      node;
  std::string label;
};

ProPFamily uniform_abelian(int p, int d);
ProPFamily abelian_times_torsion(int p, int d, GroupSpec torsion);
ProPFamily jordan_metabelian(int p, int n);
ProPFamily family_product(std::vector<ProPFamily> factors);

/// Prime(s) of the family; singleton except for products.
std::vector<int> family_primes(const ProPFamily& fam);

struct TowerLevel {
  int depth = 1;
  GroupPtr group;
  std::optional<Homomorphism> to_previous;  // absent at depth 1
  /// Elements of the designated powerful subgroup F (the whole group for
  /// abelian-type families, <c^p> ⋉ A for the metabelian one).
  std::vector<int32_t> powerful_part;
};

/// Exact finite quotient at the given depth, with the verified surjection
/// onto the previous level.
TowerLevel finite_quotient(const ProPFamily& fam, int depth,
                           const Config& cfg = default_config());

/// Closed-form dimension of the family (single-prime families).
int dim_analytic(const ProPFamily& fam);
/// Per-prime dimensions (products included).
std::map<int, int> dim_analytic_map(const ProPFamily& fam);

/// Dimension read off stabilized Frattini layer sizes of the designated
/// powerful subgroup of a deep enough finite quotient: the constant value
/// of log_p |Phi^k F / Phi^{k+1} F| over `window` consecutive interior k.
/// Interior skips ceil(log_p |torsion|) + 1 head layers and
/// cfg.layer_tail_trim tail layers.
int dim_estimate(const ProPFamily& fam, int window, const Config& cfg = default_config());

/// log_p of the stabilized count of order-<=-p elements of the projective
/// limit: images of omega1 at deepening levels K intersected down at level
/// k, stable across consecutive K and then across k.
int omega1_stable(const ProPFamily& fam, int p, const Config& cfg = default_config());

/// d(T) of the family's explicit torsion part (0 for torsion-free).
int torsion_rank(const ProPFamily& fam, const Config& cfg = default_config());

/// Verified rank of the family: d for abelian-type (plus the torsion
/// contribution), n + 1 for the metabelian family, max over factors.
int family_rank(const ProPFamily& fam, const Config& cfg = default_config());

/// d(G_k) of the finite quotients, computed componentwise (d is additive
/// over the coprime/product decomposition of these nilpotent levels),
/// with stabilization across two consecutive depths asserted.
int stable_generator_count(const ProPFamily& fam, const Config& cfg = default_config());

}  // namespace grouprank
