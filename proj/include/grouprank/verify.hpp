#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "grouprank/eval.hpp"
#include "grouprank/group.hpp"
#include "grouprank/invariants.hpp"
#include "grouprank/towers.hpp"

namespace grouprank {

enum class Verdict { Pass, Fail, Undecided, PreconditionFail };

std::string to_string(Verdict v);

/// Structured outcome of one check.  Fail verdicts always carry a witness
/// or the violated equality; Undecided always carries the cap that fired.
struct VerifyReport {
  std::string check;
  std::string input;
  std::vector<std::pair<std::string, std::string>> quantities;  // insertion order
  Verdict verdict = Verdict::Undecided;
  std::string witness;
  std::string cap;
  long long millis = -1;  // untimed unless explicitly requested

  void add(const std::string& key, long long value);
  void add(const std::string& key, const std::string& value);
  std::string to_text() const;
  std::string to_json() const;  // stable key order, no volatile fields
};

/// Witness pair for the rank = mlr + 1 boundary: N normal of prime index
/// q | p-1 in H, H/Phi_p(N) = C_q ⋉ C_p^rank_witness with the cyclic top
/// acting faithfully by power automorphisms.
struct RunawayCouple {
  Subgroup H;
  Subgroup N;
  int p = 0;
  int q = 0;
  int rank_witness = 0;
};

struct CorpusSpec {
  int max_order = 64;
  std::set<int> primes = {2, 3};
};

/// Deterministic generated corpus: all abelian types over the primes,
/// the classical 2-group families, odd extraspecials, Heisenberg groups,
/// scalar-action q:p^r groups, cross-prime products, and unipotent
/// metabelian truncations.  Labels carry provenance.
std::vector<GroupPtr> standard_corpus(const CorpusSpec& spec,
                                      const Config& cfg = default_config());

/// rk_p and rk agree between G and G/Phi^{2R+1}(F) for a designated
/// normal F with powerful Sylow subgroups, given rk(G) <= R.
VerifyReport verify_thm_2_1(const GroupPtr& G, const Subgroup& F, int R,
                            const std::set<int>& primes, const Config& cfg = default_config());

/// Same with F merely nilpotent; the index becomes 2R + ceil(log2 R) + 2
/// and the powerful-ization of Phi^{ceil(log2 R)+1}(F) is asserted.
VerifyReport verify_cor_2_2(const GroupPtr& G, const Subgroup& F, int R,
                            const std::set<int>& primes, const Config& cfg = default_config());

/// rk(G) = rk(G / Phi^{j(r)}(G)) with j(r) = 2r + ceil(log2 r) + 2 for a
/// finite nilpotent G of rank r.
VerifyReport verify_thm_1_3(const GroupPtr& G, const Config& cfg = default_config());

/// |Omega_1(G)| = p^{d(G)} for a powerful p-group.
VerifyReport verify_hl(const GroupPtr& G, int p, const Config& cfg = default_config());

/// dim = d(G) - log_p|Omega_1| = d(G) - d(T) across a powerful family,
/// all three quantities computed through the tower pipeline.
VerifyReport verify_thm_1_4(const ProPFamily& fam, const Config& cfg = default_config());

/// Semantic decision pipeline for the rank axiom: layer bounds up to
/// m(r) = ceil(log2 r) + 1, the semi-powerful certificate on F =
/// Phi^{m}(G), then the rank profile of G / Phi^{2R+1}(F) with
/// R = (m+1) r compared against (r, rvec).
bool decide_rank_axiom(const GroupPtr& G, const std::set<int>& primes, int r,
                       const std::map<int, int>& rvec, const Config& cfg = default_config());

/// Materialized variant of the final isomorphism-type disjunction: the
/// caller supplies candidate quotient groups and the check becomes an
/// evaluated disjunction of quotient-iso sentences whose defining formula
/// grounds the subgroup membership extensionally.
bool decide_rank_axiom_materialized(const GroupPtr& G, const std::set<int>& primes, int r,
                                    const std::vector<GroupPtr>& candidates,
                                    const Config& cfg = default_config());

/// Per-prime dimension decision through the tower pipeline: for each
/// p, d_p = d(G_p) - omega1_stable compared against dvec.
bool decide_dim_axiom(const ProPFamily& fam, const std::set<int>& primes, int r,
                      const std::map<int, int>& dvec, const Config& cfg = default_config());

/// Exhaustive (H, N) scan; among all couples returns one maximizing the
/// rank witness (deterministic tie-break), or nothing.
std::optional<RunawayCouple> find_runaway_couple(const GroupPtr& G, int p,
                                                 const Config& cfg = default_config());

int rank_stabilization_index(int r);  // j(r) = 2r + ceil(log2 r) + 2
int powerful_floor_index(int r);      // m(r) = ceil(log2 r) + 1, m(0) = 1

}  // namespace grouprank
