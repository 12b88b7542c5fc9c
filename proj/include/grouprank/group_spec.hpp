#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "grouprank/group.hpp"

namespace grouprank {

struct GroupSpec;

/// Literal Cayley table, row-major, 0-based, identity at index 0.
struct CayleySpec {
  int order = 0;
  std::vector<int32_t> table;
};

struct CyclicSpec {
  int n = 1;
};

/// Generators as images of 0..degree-1; the group is their closure.
struct PermutationSpec {
  int degree = 0;
  std::vector<std::vector<int32_t>> generators;
};

struct ProductSpec {
  std::vector<GroupSpec> factors;
};

/// C_k acting on an abelian base given by invariant factors.  The action
/// is an integer matrix in row convention: generator a_i maps to
/// prod_j a_j^(action[i][j]).  Elaboration verifies the matrix is an
/// automorphism of the base whose order divides the actor order.
struct SemidirectSpec {
  int actor_order = 1;
  std::vector<int> base_orders;
  std::vector<std::vector<long long>> action;
};

struct GroupSpec {
  std::string label;
  std::variant<CayleySpec, CyclicSpec, PermutationSpec, ProductSpec, SemidirectSpec> node;
};

GroupPtr elaborate(const GroupSpec& spec, const Config& cfg = default_config());

// spec builders
GroupSpec cyclic_spec(int n);
GroupSpec cayley_spec(int order, std::vector<int32_t> table, std::string label);
GroupSpec permutation_spec(int degree, std::vector<std::vector<int32_t>> gens, std::string label);
GroupSpec product_spec(std::vector<GroupSpec> factors);
GroupSpec semidirect_spec(int actor_order, std::vector<int> base_orders,
                          std::vector<std::vector<long long>> action, std::string label);

/// Multiplicative order of the action matrix on the given abelian base;
/// throws InvalidInput if the matrix is not an automorphism.
int action_order(const std::vector<int>& base_orders,
                 const std::vector<std::vector<long long>>& action);

// ---- stock groups used throughout (all routed through elaborate) ----

GroupPtr trivial_group();
GroupPtr cyclic_group(int n, const Config& cfg = default_config());
GroupPtr elementary_abelian(int p, int rank, const Config& cfg = default_config());
/// Dihedral group of order 2m (m >= 1).
GroupPtr dihedral_group(int m, const Config& cfg = default_config());
/// Generalized quaternion group of order 2^k, k >= 3.
GroupPtr quaternion_group(int order, const Config& cfg = default_config());
/// Semidihedral group of order 2^k, k >= 4.
GroupPtr semidihedral_group(int order, const Config& cfg = default_config());
/// Modular maximal-cyclic group of order p^k (k >= 3): C_{p^{k-1}} : C_p
/// with a acting as a -> a^{1+p^{k-2}}.
GroupPtr modular_group(int p, int k, const Config& cfg = default_config());
/// Upper unitriangular 3x3 matrices over Z/p^k.
GroupPtr heisenberg_group(int p, int k, const Config& cfg = default_config());
/// Extraspecial group of order p^3, p odd; exponent p or p^2.
GroupPtr extraspecial_group(int p, bool exponent_p, const Config& cfg = default_config());
/// C_q acting on C_p^r by the scalar of multiplicative order q (q | p-1).
GroupPtr power_action_group(int q, int p, int r, const Config& cfg = default_config());

}  // namespace grouprank
