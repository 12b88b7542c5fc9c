// Test-side oracles, written independently of the library's computation
// paths so they can referee them.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "grouprank/group.hpp"

namespace oracles {

using grouprank::FiniteGroup;
using grouprank::GroupPtr;

// Subgroup count by filtered powerset enumeration: subsets of size d | n
// containing the identity, checked for closure under products.  Exponential;
// keep n <= 24.
inline int subgroup_count_bruteforce(const FiniteGroup& G) {
  int n = G.order();
  int count = 0;
  std::vector<int32_t> chosen;
  std::vector<int32_t> pool;
  for (int32_t g = 1; g < n; ++g) pool.push_back(g);

  auto closed = [&](const std::vector<int32_t>& sub) {
    for (int32_t a : sub)
      for (int32_t b : sub)
        if (!std::binary_search(sub.begin(), sub.end(), G.mul(a, b))) return false;
    return true;
  };

  std::vector<int32_t> subset;
  // enumerate d-subsets of pool for each divisor d-1
  std::vector<int> divisors;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0) divisors.push_back(d);

  for (int d : divisors) {
    int k = d - 1;  // elements besides the identity
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    if (k > int(pool.size())) continue;
    while (true) {
      subset.clear();
      subset.push_back(0);
      for (int i : idx) subset.push_back(pool[i]);
      std::sort(subset.begin(), subset.end());
      if (closed(subset)) ++count;
      // next combination
      int i = k - 1;
      while (i >= 0 && idx[i] == int(pool.size()) - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      if (k == 0) break;
    }
    if (k == 0) continue;
  }
  return count;
}

// Independent permutation closure: plain worklist over composition,
// different containers and composition convention than the library.
inline int permutation_closure_order(int degree, std::vector<std::vector<int32_t>> gens) {
  std::set<std::vector<int32_t>> seen;
  std::vector<int32_t> id(degree);
  for (int i = 0; i < degree; ++i) id[i] = i;
  seen.insert(id);
  std::vector<std::vector<int32_t>> todo{id};
  for (auto& g : gens)
    if (seen.insert(g).second) todo.push_back(g);
  for (size_t w = 0; w < todo.size(); ++w) {
    auto cur = todo[w];
    for (auto& g : gens) {
      std::vector<int32_t> ab(degree), ba(degree);
      for (int i = 0; i < degree; ++i) {
        ab[i] = g[cur[i]];
        ba[i] = cur[g[i]];
      }
      if (seen.insert(ab).second) todo.push_back(ab);
      if (seen.insert(ba).second) todo.push_back(ba);
    }
  }
  return int(seen.size());
}

// Exhaustive minimal-generator search: all k-subsets in plain order, no
// heuristics.  Keep |G| small.
inline int min_generators_bruteforce(const FiniteGroup& G) {
  int n = G.order();
  if (n == 1) return 0;
  auto generates = [&](const std::vector<int32_t>& gens) {
    std::vector<char> in(n, 0);
    std::vector<int32_t> members{0};
    in[0] = 1;
    for (int32_t g : gens)
      if (!in[g]) {
        in[g] = 1;
        members.push_back(g);
      }
    for (size_t i = 0; i < members.size(); ++i)
      for (size_t j = 0; j < members.size(); ++j) {
        int32_t c = G.mul(members[i], members[j]);
        if (!in[c]) {
          in[c] = 1;
          members.push_back(c);
        }
        c = G.mul(members[j], members[i]);
        if (!in[c]) {
          in[c] = 1;
          members.push_back(c);
        }
      }
    return int(members.size()) == n;
  };
  for (int k = 1; k <= n; ++k) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i + 1;
    while (true) {
      std::vector<int32_t> gens(idx.begin(), idx.end());
      if (generates(gens)) return k;
      int i = k - 1;
      while (i >= 0 && idx[i] == G.order() - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return n;
}

// Deterministic xorshift for fuzz corpora.
struct Rng {
  uint64_t s;
  explicit Rng(uint64_t seed) : s(seed ? seed : 1) {}
  uint64_t next() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  }
  int below(int n) { return int(next() % uint64_t(n)); }
};

}  // namespace oracles
