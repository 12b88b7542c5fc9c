#include "grouprank/invariants.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "grouprank/analysis.hpp"
#include "grouprank/numeric.hpp"

namespace grouprank {

namespace {

bool is_p_group_order(int n, int p) {
  while (n % p == 0) n /= p;
  return n == 1;
}

std::vector<int32_t> set_product(const FiniteGroup& G, const std::vector<int32_t>& A,
                                 const std::vector<int32_t>& B) {
  std::vector<char> seen(G.order(), 0);
  std::vector<int32_t> out;
  for (int32_t a : A)
    for (int32_t b : B) {
      int32_t c = G.mul(a, b);
      if (!seen[c]) {
        seen[c] = 1;
        out.push_back(c);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

// [H,H]H^p closure inside the parent, over an element list.
std::vector<int32_t> p_frattini_set(const FiniteGroup& G, const std::vector<int32_t>& H, int p) {
  std::vector<char> seen(G.order(), 0);
  std::vector<int32_t> gens;
  auto push = [&](int32_t v) {
    if (!seen[v]) {
      seen[v] = 1;
      gens.push_back(v);
    }
  };
  for (int32_t a : H)
    for (int32_t b : H) push(G.comm(a, b));
  for (int32_t a : H) push(G.power(a, p));
  return closed_set(G, gens);
}

}  // namespace

const Subgroup& FrattiniChain::term(int j) const {
  if (j < 0) throw InvalidInput("negative Frattini index");
  if (j >= int(terms.size())) {
    if (!reached_fixpoint)
      throw InvalidInput("Frattini chain too short and no fixpoint reached");
    return terms.back();
  }
  return terms[size_t(j)];
}

bool is_p_group(const FiniteGroup& G, int p) {
  int n = G.order();
  if (n == 1) return true;
  while (n % p == 0) n /= p;
  return n == 1;
}

std::vector<int32_t> omega1(const FiniteGroup& G, int p) {
  std::vector<int32_t> out;
  for (int32_t g = 0; g < G.order(); ++g)
    if (G.power(g, p) == FiniteGroup::identity) out.push_back(g);
  return out;
}

std::vector<int32_t> power_value_set(const FiniteGroup& G, long long q) {
  std::vector<char> seen(G.order(), 0);
  std::vector<int32_t> out;
  for (int32_t g = 0; g < G.order(); ++g) {
    int32_t v = G.power(g, q);
    if (!seen[v]) {
      seen[v] = 1;
      out.push_back(v);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_semi_powerful(const FiniteGroup& G, int q) {
  auto powers = power_value_set(G, 2LL * q);
  for (int32_t a = 0; a < G.order(); ++a)
    for (int32_t b = 0; b < G.order(); ++b)
      if (!std::binary_search(powers.begin(), powers.end(), G.comm(a, b))) return false;
  return true;
}

std::vector<int32_t> verbal_set(const FiniteGroup& G, int r, int q) {
  if (r < 0) throw InvalidInput("verbal_set: r must be >= 0");
  auto acc = power_value_set(G, q);  // { z^q }
  if (r > 0) {
    auto comm = derived_set(G);
    for (int i = 0; i < r; ++i) acc = set_product(G, comm, acc);
  }
  return acc;
}

bool is_powerful(const GroupPtr& G, int p) {
  if (!is_p_group(*G, p)) throw InvalidInput("is_powerful expects a p-group for the given p");
  auto derived = derived_subgroup(G);
  long long e = (p == 2) ? 4 : p;
  auto powers = power_value_set(*G, e);
  auto target = closed_set(*G, powers);
  for (int32_t d : derived.elements)
    if (!std::binary_search(target.begin(), target.end(), d)) return false;
  return true;
}

std::vector<int> abelian_p_type(const FiniteGroup& G, int p) {
  if (!is_abelian(G)) throw InvalidInput("abelian_p_type expects an abelian group");
  int np = p_part(G.order(), p);
  if (np == 1) return {};
  // N_i = |{x : x^{p^i} = 1}|; number of parts >= i is log_p(N_i / N_{i-1})
  std::vector<int> parts_ge;
  long long prev = 1, pe = 1;
  while (true) {
    pe *= p;
    long long count = 0;
    for (int32_t g = 0; g < G.order(); ++g)
      if (G.power(g, pe) == FiniteGroup::identity) ++count;
    int delta = ilog_exact(count / prev, p);
    if (delta == 0) break;
    parts_ge.push_back(delta);
    prev = count;
    if (count == np) break;
  }
  std::vector<int> lambda;
  for (size_t i = 0; i < parts_ge.size(); ++i)
    for (int j = 0; j < parts_ge[i] - (i + 1 < parts_ge.size() ? parts_ge[i + 1] : 0); ++j)
      lambda.push_back(int(i) + 1);
  std::sort(lambda.begin(), lambda.end(), std::greater<>());
  return lambda;
}

// -------------------------------------------------------------- generators

namespace {

int abelian_d(const FiniteGroup& G) {
  int d = 0;
  for (int p : prime_divisors(G.order())) d = std::max(d, int(abelian_p_type(G, p).size()));
  return d;
}

// lower bound: d of the abelianization
int abelianization_lower_bound(const GroupPtr& G) {
  auto der = derived_subgroup(G);
  if (der.is_whole_group()) return 1;  // perfect and nontrivial
  auto q = quotient(G, der);
  return std::max(1, abelian_d(*q.group));
}

struct TupleSearch {
  const FiniteGroup& G;
  const std::vector<int32_t>& pool;  // candidates ordered by decreasing element order
  std::int64_t budget;

  bool found(int k) {
    std::vector<int32_t> start{FiniteGroup::identity};
    return dfs(start, 0, k);
  }

  // cl: closure of the tuple chosen so far.  Each new element must lie
  // outside cl, otherwise the tuple is redundant.
  bool dfs(const std::vector<int32_t>& cl, size_t from, int remaining) {
    if (int(cl.size()) == G.order()) return true;
    if (remaining == 0) return false;
    for (size_t i = from; i < pool.size(); ++i) {
      if (--budget < 0) throw Undecided("search-node-cap", "generator search budget exhausted");
      int32_t g = pool[i];
      if (std::binary_search(cl.begin(), cl.end(), g)) continue;
      std::vector<int32_t> seed = cl;
      seed.push_back(g);
      auto cl2 = closed_set(G, seed);
      if (dfs(cl2, i + 1, remaining - 1)) return true;
    }
    return false;
  }
};

}  // namespace

int subgroup_min_generators(const Subgroup& H, const Config& cfg) {
  const FiniteGroup& G = *H.parent;
  if (H.order() == 1) return 0;
  auto factors = factorize(H.order());
  if (factors.size() == 1) {
    // Burnside basis: d = log_p |H / Phi(H)| with Phi(H) = [H,H]H^p
    int p = factors[0].first;
    auto phi = p_frattini_set(G, H.elements, p);
    return ilog_exact(H.order() / int(phi.size()), p);
  }
  auto mat = materialize(H);
  return min_generators(mat.group, cfg);
}

int min_generators(const GroupPtr& G, const Config& cfg) {
  return G->analysis().min_gen.get([&] {
    int n = G->order();
    if (n == 1) return 0;
    auto factors = factorize(n);
    if (factors.size() == 1) {
      Subgroup whole = whole_group(G);
      return subgroup_min_generators(whole, cfg);
    }
    int lb = abelianization_lower_bound(G);
    std::vector<int32_t> pool(n - 1);
    std::iota(pool.begin(), pool.end(), 1);
    std::stable_sort(pool.begin(), pool.end(), [&](int32_t a, int32_t b) {
      return G->element_order(a) > G->element_order(b);
    });
    for (int k = lb; k <= n; ++k) {
      TupleSearch search{*G, pool, cfg.search_node_cap};
      if (search.found(k)) return k;
    }
    throw InvalidInput("unreachable: the whole element list generates");
  });
}

// ---------------------------------------------------------------- Frattini

namespace {

// Maximal subgroups: S < G is maximal iff it is not contained in a larger
// proper subgroup.  The subgroup list is sorted by order, so scanning
// containers from the largest proper order down with early exit is cheap.
std::vector<const Subgroup*> maximal_subgroups(const std::vector<Subgroup>& list, int group_order) {
  std::vector<const Subgroup*> proper;
  for (auto& s : list)
    if (s.order() < group_order) proper.push_back(&s);
  std::vector<const Subgroup*> maximal;
  for (auto* s : proper) {
    bool contained = false;
    for (auto it = proper.rbegin(); it != proper.rend() && !contained; ++it) {
      const Subgroup* t = *it;
      if (t->order() <= s->order()) break;
      if (t->order() % s->order() != 0) continue;
      contained = std::includes(t->elements.begin(), t->elements.end(), s->elements.begin(),
                                s->elements.end());
    }
    if (!contained) maximal.push_back(s);
  }
  return maximal;
}

std::vector<int32_t> intersect_sorted(const std::vector<int32_t>& a, const std::vector<int32_t>& b) {
  std::vector<int32_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<int32_t> frattini_set_of(const GroupPtr& G, const Config& cfg, FrattiniMethod* method) {
  int n = G->order();
  if (n == 1) {
    if (method) *method = FrattiniMethod::MaximalIntersection;
    return {FiniteGroup::identity};
  }
  auto factors = factorize(n);
  if (n <= cfg.subgroup_cap) {
    auto list = all_subgroups(G, cfg);
    auto maximal = maximal_subgroups(list, n);
    std::vector<int32_t> inter(n);
    std::iota(inter.begin(), inter.end(), 0);
    for (auto* m : maximal) inter = intersect_sorted(inter, m->elements);
    if (factors.size() == 1) {
      // p-group cross-check against [G,G]G^p
      auto whole = whole_group(G);
      auto formula = p_frattini_set(*G, whole.elements, factors[0].first);
      if (formula != inter)
        throw Error("internal: Frattini maximal-intersection disagrees with [G,G]G^p");
    }
    if (method) *method = FrattiniMethod::MaximalIntersection;
    return inter;
  }
  if (factors.size() == 1) {
    auto whole = whole_group(G);
    if (method) *method = FrattiniMethod::PGroupFormula;
    return p_frattini_set(*G, whole.elements, factors[0].first);
  }
  if (is_nilpotent(*G)) {
    // product of the Sylow Frattinis
    std::vector<int32_t> gens;
    for (auto& [p, e] : factors) {
      auto syl = sylow(G, p, cfg);
      auto phi = p_frattini_set(*G, syl.elements, p);
      gens.insert(gens.end(), phi.begin(), phi.end());
    }
    if (method) *method = FrattiniMethod::NilpotentFormula;
    return closed_set(*G, gens);
  }
  throw CapExceeded("subgroup-cap",
                    "Frattini subgroup needs the subgroup lattice for non-nilpotent order " +
                        std::to_string(n));
}

}  // namespace

Subgroup frattini(const GroupPtr& G, const Config& cfg, FrattiniMethod* method) {
  if (method == nullptr) {
    auto& set = G->analysis().frattini_set.get([&] { return frattini_set_of(G, cfg, nullptr); });
    return Subgroup{G, set};
  }
  return Subgroup{G, frattini_set_of(G, cfg, method)};
}

Subgroup p_frattini(const GroupPtr& G, int p) {
  if (!is_prime(p)) throw InvalidInput("p_frattini needs a prime");
  auto whole = whole_group(G);
  auto set = p_frattini_set(*G, whole.elements, p);
  Subgroup H{G, std::move(set)};
  if (!H.is_normal_in_parent()) throw Error("internal: p-Frattini subgroup not normal");
  return H;
}

FrattiniChain frattini_series(const GroupPtr& G, int depth, const Config& cfg) {
  FrattiniChain chain;
  chain.base = G;
  chain.terms.push_back(whole_group(G));
  while (int(chain.terms.size()) <= depth) {
    const Subgroup& cur = chain.terms.back();
    if (cur.order() == 1) break;  // fixpoint
    auto mat = materialize(cur);
    auto phi = frattini(mat.group, cfg);
    std::vector<int32_t> elems;
    for (int32_t i : phi.elements) elems.push_back(mat.to_parent[i]);
    std::sort(elems.begin(), elems.end());
    chain.terms.push_back(Subgroup{G, std::move(elems)});
  }
  chain.reached_fixpoint = chain.terms.back().is_trivial();
  return chain;
}

// -------------------------------------------------------------------- Sylow

Subgroup sylow(const GroupPtr& G, int p, const Config& cfg) {
  if (!is_prime(p)) throw InvalidInput("sylow needs a prime");
  auto& set = G->analysis().sylow_sets.get(p, [&]() -> std::vector<int32_t> {
    int n = G->order();
    int target = p_part(n, p);
    if (target == 1) return {FiniteGroup::identity};

    // normal-Sylow path: closure of all p-power-order elements
    std::vector<int32_t> pelems;
    for (int32_t g = 0; g < n; ++g) {
      int o = G->element_order(g);
      if (p_part(o, p) == o) pelems.push_back(g);
    }
    if (int(pelems.size()) == target) {
      auto cl = closed_set(*G, pelems);
      if (int(cl.size()) == target) return cl;
    }

    // greedy growth: a proper p-subgroup has a p-element outside it in its
    // normalizer, so <P, g> stays a p-group and strictly grows
    std::vector<int32_t> P{FiniteGroup::identity};
    if (!pelems.empty()) P = closed_set(*G, std::span<const int32_t>(&pelems[0], 1));
    while (int(P.size()) < target) {
      bool grew = false;
      for (int32_t g : pelems) {
        if (std::binary_search(P.begin(), P.end(), g)) continue;
        bool normalizes = true;
        for (int32_t x : P)
          if (!std::binary_search(P.begin(), P.end(), G->conj(x, g))) {
            normalizes = false;
            break;
          }
        if (!normalizes) continue;
        std::vector<int32_t> seed = P;
        seed.push_back(g);
        auto Q = closed_set(*G, seed);
        if (int(Q.size()) <= target && is_p_group_order(int(Q.size()), p)) {
          P = std::move(Q);
          grew = true;
          break;
        }
      }
      if (!grew) {
        // desk-scale fallback: scan the subgroup lattice
        if (n > cfg.subgroup_cap)
          throw Undecided("subgroup-cap", "Sylow search failed and lattice scan is capped");
        for (auto& H : all_subgroups(G, cfg))
          if (H.order() == target) return H.elements;
        throw Error("internal: no Sylow subgroup found");
      }
    }
    return P;
  });
  return Subgroup{G, set};
}

// --------------------------------------------------------------------- rank

namespace {

int rank_of_materialized(const GroupPtr& G, const Config& cfg);

int scan_rank(const GroupPtr& G, const Config& cfg) {
  int best = 0;
  for (auto& H : all_subgroups(G, cfg)) best = std::max(best, subgroup_min_generators(H, cfg));
  return best;
}

int abelian_rank(const FiniteGroup& G) {
  int best = 0;
  for (int p : prime_divisors(G.order())) {
    long long count = 0;
    for (int32_t g = 0; g < G.order(); ++g)
      if (G.power(g, p) == FiniteGroup::identity) ++count;
    best = std::max(best, ilog_exact(count, p));
  }
  return best;
}

int rank_of_materialized(const GroupPtr& G, const Config& cfg) {
  if (G->order() == 1) return 0;
  if (is_abelian(*G)) return abelian_rank(*G);
  auto factors = factorize(G->order());
  if (factors.size() > 1 && is_nilpotent(*G)) {
    int best = 0;
    for (auto& [p, e] : factors) {
      auto syl = materialize(sylow(G, p, cfg));
      best = std::max(best, rank(syl.group, cfg));
    }
    return best;
  }
  return scan_rank(G, cfg);
}

}  // namespace

int rank(const GroupPtr& G, const Config& cfg) {
  return G->analysis().rank_value.get([&] { return rank_of_materialized(G, cfg); });
}

int rank_by_scan(const GroupPtr& G, const Config& cfg) { return scan_rank(G, cfg); }

RankProfile rank_profile(const GroupPtr& G, const std::set<int>& primes, const Config& cfg) {
  for (int p : prime_divisors(G->order()))
    if (!primes.count(p))
      throw InvalidInput("rank_profile: group has a prime divisor outside the given set");
  RankProfile prof;
  prof.rank = rank(G, cfg);
  for (int p : primes) {
    int rp = G->analysis().p_ranks.get(p, [&] {
      if (G->order() % p != 0) return 0;
      auto syl = materialize(sylow(G, p, cfg));
      return rank(syl.group, cfg);
    });
    prof.p_ranks[p] = rp;
    prof.mlr = std::max(prof.mlr, rp);
    if (rp > prof.rank) throw Error("internal: p-rank exceeds rank");
  }
  return prof;
}

}  // namespace grouprank
