#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "grouprank/group_spec.hpp"
#include "grouprank/invariants.hpp"
#include "grouprank/numeric.hpp"
#include "grouprank/verify.hpp"
#include "oracles.hpp"

using namespace grouprank;

namespace {
GroupPtr S3() { return elaborate(permutation_spec(3, {{1, 0, 2}, {1, 2, 0}}, "S3")); }
}  // namespace

TEST_CASE("minimal generator counts") {
  CHECK(min_generators(trivial_group()) == 0);
  CHECK(min_generators(elementary_abelian(2, 2)) == 2);
  CHECK(min_generators(quaternion_group(8)) == 2);
  CHECK(min_generators(cyclic_group(12)) == 1);
  CHECK(min_generators(S3()) == 2);
  CHECK(min_generators(heisenberg_group(3, 1)) == 2);
}

TEST_CASE("Burnside basis path agrees with exhaustive search") {
  std::vector<GroupPtr> pgroups = {
      cyclic_group(8),          elementary_abelian(2, 3), quaternion_group(8),
      dihedral_group(4),        modular_group(2, 4),      heisenberg_group(3, 1),
      direct_product(cyclic_group(4), cyclic_group(2)),   cyclic_group(27),
      extraspecial_group(3, false),
  };
  for (auto& g : pgroups) CHECK(min_generators(g) == oracles::min_generators_bruteforce(*g));
}

TEST_CASE("Frattini subgroups") {
  CHECK(frattini(elementary_abelian(3, 2)).order() == 1);
  CHECK(frattini(cyclic_group(4)).order() == 2);
  auto Q8 = quaternion_group(8);
  auto phi = frattini(Q8);
  CHECK(phi.order() == 2);
  CHECK(phi.elements == center(Q8).elements);

  // maximal-intersection equals the [G,G]G^p formula on p-groups
  for (auto& g : {dihedral_group(8), modular_group(2, 5), heisenberg_group(3, 1)}) {
    FrattiniMethod method;
    auto a = frattini(g, default_config(), &method);
    CHECK(method == FrattiniMethod::MaximalIntersection);
    auto b = p_frattini(g, prime_divisors(g->order())[0]);
    CHECK(a.elements == b.elements);
  }

  // beyond the lattice cap the formula path is flagged
  Config small;
  small.subgroup_cap = 4;
  FrattiniMethod method;
  auto f = frattini(cyclic_group(16), small, &method);
  CHECK(method == FrattiniMethod::PGroupFormula);
  CHECK(f.order() == 8);
}

TEST_CASE("p-Frattini subgroups") {
  auto C6 = cyclic_group(6);
  CHECK(p_frattini(C6, 2).order() == 3);
  CHECK(p_frattini(elementary_abelian(5, 2), 5).order() == 1);
  auto s3 = S3();
  CHECK(p_frattini(s3, 3).order() == 6);  // [G,G] G^3 is everything
  // quotient by the p-Frattini is elementary abelian
  auto q = quotient(C6, p_frattini(C6, 2));
  CHECK(q.group->order() == 2);
}

TEST_CASE("Frattini series") {
  auto chain = frattini_series(cyclic_group(8), 3);
  REQUIRE(chain.terms.size() == 4);
  CHECK(chain.terms[0].order() == 8);
  CHECK(chain.terms[1].order() == 4);
  CHECK(chain.terms[2].order() == 2);
  CHECK(chain.terms[3].order() == 1);
  CHECK(chain.reached_fixpoint);

  auto c2 = frattini_series(elementary_abelian(5, 3), 1);
  CHECK(c2.terms[1].order() == 1);

  auto q8 = frattini_series(quaternion_group(8), 2);
  CHECK(q8.terms[1].order() == 2);
  CHECK(q8.terms[2].order() == 1);

  // each term is normal in the base and the chain descends
  auto g = dihedral_group(8);
  auto ch = frattini_series(g, 5);
  for (size_t i = 0; i < ch.terms.size(); ++i) {
    CHECK(ch.terms[i].is_normal_in_parent());
    if (i) CHECK(ch.terms[i].order() < ch.terms[i - 1].order());
  }
}

TEST_CASE("rank computations") {
  CHECK(rank(elementary_abelian(7, 1)) == 1);
  CHECK(rank(elementary_abelian(2, 4)) == 4);
  CHECK(rank(dihedral_group(4)) == 2);
  CHECK(rank(quaternion_group(8)) == 2);
  CHECK(rank(S3()) == 2);
  CHECK(rank(trivial_group()) == 0);
}

TEST_CASE("fast rank paths agree with the generic subgroup scan") {
  std::vector<GroupPtr> groups = {
      cyclic_group(36),
      elementary_abelian(2, 4),
      direct_product(cyclic_group(4), cyclic_group(2)),
      direct_product(elementary_abelian(2, 2), cyclic_group(9)),
      direct_product(cyclic_group(8), cyclic_group(3)),
      quaternion_group(16),
      dihedral_group(8),
      modular_group(2, 5),
      heisenberg_group(3, 1),
      direct_product(quaternion_group(8), cyclic_group(3)),
      power_action_group(2, 3, 2),
  };
  for (auto& g : groups) CHECK(rank(g) == rank_by_scan(g));
}

TEST_CASE("rank of quotients never exceeds the rank") {
  std::vector<GroupPtr> groups = {quaternion_group(8), dihedral_group(8),
                                  direct_product(cyclic_group(4), cyclic_group(2)), S3(),
                                  power_action_group(2, 3, 2)};
  for (auto& g : groups) {
    int r = rank(g);
    for (auto& n : all_subgroups(g)) {
      if (!n.is_normal_in_parent()) continue;
      auto q = quotient(g, n);
      CHECK(rank(q.group) <= r);
    }
  }
}

TEST_CASE("Sylow subgroups") {
  auto s3 = S3();
  CHECK(sylow(s3, 5).order() == 1);
  auto a3 = sylow(s3, 3);
  CHECK(a3.order() == 3);
  CHECK(sylow(s3, 2).order() == 2);
  CHECK(sylow(cyclic_group(12), 2).order() == 4);
  auto sd = power_action_group(2, 3, 2);  // order 18
  CHECK(sylow(sd, 3).order() == 9);
  CHECK(sylow(sd, 2).order() == 2);
  auto syl = materialize(sylow(sd, 3));
  CHECK(is_abelian(*syl.group));
}

TEST_CASE("rank profiles") {
  auto g = direct_product(elementary_abelian(2, 2), cyclic_group(3));
  auto prof = rank_profile(g, {2, 3});
  CHECK(prof.rank == 2);
  CHECK(prof.p_ranks.at(2) == 2);
  CHECK(prof.p_ranks.at(3) == 1);
  CHECK(prof.mlr == 2);

  auto pt = rank_profile(trivial_group(), {2, 3});
  CHECK(pt.rank == 0);
  CHECK(pt.mlr == 0);

  auto ps = rank_profile(S3(), {2, 3});
  CHECK(ps.rank == 2);
  CHECK(ps.p_ranks.at(2) == 1);
  CHECK(ps.p_ranks.at(3) == 1);
  CHECK(ps.mlr == 1);  // the rank = mlr + 1 boundary case
}

TEST_CASE("omega1") {
  CHECK(omega1(*cyclic_group(4), 2).size() == 2);
  CHECK(omega1(*elementary_abelian(3, 2), 3).size() == 9);
  CHECK(omega1(*quaternion_group(8), 2).size() == 2);
}

TEST_CASE("powerful groups") {
  CHECK(is_powerful(cyclic_group(16), 2));
  CHECK(is_powerful(elementary_abelian(3, 3), 3));
  CHECK(!is_powerful(quaternion_group(8), 2));
  CHECK(is_powerful(modular_group(2, 4), 2));
  CHECK(!is_powerful(dihedral_group(8), 2));
  CHECK(!is_powerful(heisenberg_group(3, 1), 3));
  CHECK(is_powerful(modular_group(3, 3), 3));  // extraspecial 27 of exponent 9
  CHECK_THROWS_AS(is_powerful(cyclic_group(6), 2), InvalidInput);
}

TEST_CASE("semi-powerful is a set-level test") {
  CHECK(is_semi_powerful(*cyclic_group(12), 5));
  CHECK(!is_semi_powerful(*quaternion_group(8), 2));
  auto neg = elaborate(semidirect_spec(2, {3, 3}, {{-1, 0}, {0, -1}}, "C2:C3^2"));
  CHECK(!is_semi_powerful(*neg, 6));
  CHECK(is_semi_powerful(*S3(), 3) == false);
}

TEST_CASE("verbal sets") {
  // abelian: just the q-th powers
  auto C4 = cyclic_group(4);
  auto v = verbal_set(*C4, 1, 2);
  CHECK(v == std::vector<int32_t>{0, 2});
  auto s3 = S3();
  auto a3 = verbal_set(*s3, 1, 6);
  CHECK(a3.size() == 3);  // the commutator values form A3; 6th powers vanish
  CHECK(a3 == sylow(s3, 3).elements);

  // monotone in r
  for (auto& g : {quaternion_group(8), dihedral_group(8)}) {
    auto v1 = verbal_set(*g, 1, 2);
    auto v2 = verbal_set(*g, 2, 2);
    CHECK(std::includes(v2.begin(), v2.end(), v1.begin(), v1.end()));
  }
}

TEST_CASE("verbal set equals the Frattini subgroup on nilpotent groups with d <= r") {
  struct Case {
    GroupPtr g;
    std::set<int> pi;
    int r;
  };
  std::vector<Case> cases = {
      {cyclic_group(4), {2}, 1},
      {quaternion_group(8), {2}, 2},
      {heisenberg_group(3, 1), {3}, 2},
      {direct_product(cyclic_group(4), cyclic_group(9)), {2, 3}, 2},
      {modular_group(2, 4), {2}, 2},
  };
  for (auto& c : cases) {
    REQUIRE(min_generators(c.g) <= c.r);
    int q = 1;
    for (int p : c.pi) q *= p;
    auto b = verbal_set(*c.g, c.r, q);
    auto phi = frattini(c.g);
    CHECK(b == phi.elements);
  }
}

TEST_CASE("abelian p-types") {
  auto t = abelian_p_type(*direct_product(cyclic_group(4), cyclic_group(2)), 2);
  CHECK(t == std::vector<int>{2, 1});
  auto t2 = abelian_p_type(*elementary_abelian(3, 3), 3);
  CHECK(t2 == std::vector<int>{1, 1, 1});
  auto t3 = abelian_p_type(*cyclic_group(8), 2);
  CHECK(t3 == std::vector<int>{3});
}

TEST_CASE("omega1 counts powerful corpus via Hethelyi-Levai") {
  Config cfg;
  auto corpus2 = standard_corpus({128, {2}}, cfg);
  auto corpus3 = standard_corpus({243, {3}}, cfg);
  std::vector<GroupPtr> all = corpus2;
  all.insert(all.end(), corpus3.begin(), corpus3.end());
  int checked = 0;
  for (auto& g : all) {
    if (g->order() == 1) continue;
    auto ps = prime_divisors(g->order());
    if (ps.size() != 1) continue;
    int p = ps[0];
    if (!is_powerful(g, p)) continue;
    auto om = omega1(*g, p);
    CHECK(static_cast<long long>(om.size()) == ipow(p, min_generators(g)));
    ++checked;
  }
  CHECK(checked > 30);
}
