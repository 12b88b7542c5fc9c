#include "grouprank/verify.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "grouprank/numeric.hpp"

namespace grouprank {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::Undecided:
      return "undecided";
    case Verdict::PreconditionFail:
      return "precondition-fail";
  }
  return "?";
}

void VerifyReport::add(const std::string& key, long long value) {
  quantities.emplace_back(key, std::to_string(value));
}

void VerifyReport::add(const std::string& key, const std::string& value) {
  quantities.emplace_back(key, value);
}

std::string VerifyReport::to_text() const {
  std::ostringstream os;
  os << "[" << to_string(verdict) << "] " << check << " on " << input;
  for (auto& [k, v] : quantities) os << "  " << k << "=" << v;
  if (!witness.empty()) os << "  witness: " << witness;
  if (!cap.empty()) os << "  cap: " << cap;
  if (millis >= 0) os << "  (" << millis << " ms)";
  return os.str();
}

namespace {
std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out;
}
}  // namespace

std::string VerifyReport::to_json() const {
  std::ostringstream os;
  os << "{\"check\":\"" << json_escape(check) << "\",\"input\":\"" << json_escape(input)
     << "\",\"quantities\":{";
  for (size_t i = 0; i < quantities.size(); ++i) {
    if (i) os << ",";
    os << "\"" << json_escape(quantities[i].first) << "\":\"" << json_escape(quantities[i].second)
       << "\"";
  }
  os << "},\"verdict\":\"" << to_string(verdict) << "\"";
  if (!witness.empty()) os << ",\"witness\":\"" << json_escape(witness) << "\"";
  if (!cap.empty()) os << ",\"cap\":\"" << json_escape(cap) << "\"";
  if (millis >= 0) os << ",\"millis\":" << millis;
  os << "}";
  return os.str();
}

int rank_stabilization_index(int r) {
  if (r < 1) throw InvalidInput("stabilization index needs r >= 1");
  return 2 * r + ceil_log2(r) + 2;
}

int powerful_floor_index(int r) { return r <= 1 ? 1 : ceil_log2(r) + 1; }

// ------------------------------------------------------------------ corpus

namespace {

void partitions_of(int n, int maxpart, std::vector<int>& cur,
                   std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int k = std::min(n, maxpart); k >= 1; --k) {
    cur.push_back(k);
    partitions_of(n - k, k, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  partitions_of(n, n, cur, out);
  return out;
}

// all abelian groups with order m over the given primes, as specs
std::vector<GroupSpec> abelian_specs(int m, const std::set<int>& primes) {
  std::vector<GroupSpec> result;
  auto factors = factorize(m);
  for (auto& [p, e] : factors)
    if (!primes.count(p)) return {};
  // per prime: one partition of the exponent; combine across primes
  std::vector<std::vector<std::vector<int>>> charts;
  for (auto& [p, e] : factors) charts.push_back(partitions(e));
  std::vector<size_t> idx(factors.size(), 0);
  while (true) {
    std::vector<GroupSpec> cyclics;
    std::string label;
    for (size_t i = 0; i < factors.size(); ++i) {
      int p = factors[i].first;
      for (int part : charts[i][idx[i]]) {
        int q = int(ipow(p, part));
        cyclics.push_back(cyclic_spec(q));
        label += (label.empty() ? "C" : "xC") + std::to_string(q);
      }
    }
    GroupSpec spec = cyclics.size() == 1 ? cyclics[0] : product_spec(cyclics);
    spec.label = label;
    result.push_back(std::move(spec));
    size_t i = 0;
    while (i < idx.size() && idx[i] + 1 == charts[i].size()) idx[i++] = 0;
    if (i == idx.size()) break;
    ++idx[i];
  }
  return result;
}

}  // namespace

std::vector<GroupPtr> standard_corpus(const CorpusSpec& spec, const Config& cfg) {
  std::vector<GroupPtr> corpus;
  auto add = [&](GroupPtr g) { corpus.push_back(std::move(g)); };

  add(trivial_group());

  for (int m = 2; m <= spec.max_order; ++m)
    for (auto& s : abelian_specs(m, spec.primes)) add(elaborate(s, cfg));

  if (spec.primes.count(2)) {
    for (int o = 8; o <= spec.max_order; o *= 2) add(dihedral_group(o / 2, cfg));
    for (int o = 8; o <= spec.max_order; o *= 2) add(quaternion_group(o, cfg));
    for (int o = 16; o <= spec.max_order; o *= 2) add(semidihedral_group(o, cfg));
    for (int o = 16; o <= spec.max_order; o *= 2)
      add(modular_group(2, ilog_exact(o, 2), cfg));
  }

  for (int p : spec.primes) {
    if (p == 2) continue;
    long long p3 = ipow(p, 3);
    if (p3 <= spec.max_order) {
      add(extraspecial_group(p, true, cfg));
      add(extraspecial_group(p, false, cfg));
    }
  }

  for (int p : spec.primes)
    for (int k = 1; ipow(p, 3LL * k) <= spec.max_order; ++k) add(heisenberg_group(p, k, cfg));

  // scalar-action groups C_q : C_p^r for q | p - 1
  for (int q : spec.primes)
    for (int p : spec.primes)
      if (q != p && (p - 1) % q == 0)
        for (int r = 1; q * ipow(p, r) <= spec.max_order; ++r)
          add(power_action_group(q, p, r, cfg));

  // unipotent metabelian truncations
  for (int p : spec.primes)
    for (int n = 2; n < p; ++n) {
      auto fam = jordan_metabelian(p, n);
      for (int depth = 1; depth <= cfg.tower_depth_cap; ++depth) {
        long long order = ipow(p, static_cast<long long>(depth) * (n + 1));
        if (order > spec.max_order) break;
        add(finite_quotient(fam, depth, cfg).group);
      }
    }

  // cross-prime products: nonabelian members times abelian types of the
  // other primes
  size_t base_count = corpus.size();
  std::vector<GroupPtr> crosses;
  for (size_t i = 0; i < base_count; ++i) {
    const GroupPtr& g = corpus[i];
    if (is_abelian(*g)) continue;
    for (int m = 2; m * g->order() <= spec.max_order; ++m) {
      if (std::gcd(m, g->order()) != 1) continue;
      for (auto& s : abelian_specs(m, spec.primes)) {
        auto h = elaborate(s, cfg);
        crosses.push_back(direct_product(g, h, cfg));
      }
    }
  }
  for (auto& c : crosses) add(std::move(c));

  std::stable_sort(corpus.begin(), corpus.end(),
                   [](const GroupPtr& a, const GroupPtr& b) { return a->order() < b->order(); });
  return corpus;
}

// ------------------------------------------------------------ rank theorems

namespace {

// Frattini series of a designated subgroup, returned as subgroups of the
// ambient group.
std::vector<Subgroup> series_in_parent(const GroupPtr& G, const Subgroup& F, int depth,
                                       const Config& cfg) {
  auto mat = materialize(F);
  auto chain = frattini_series(mat.group, depth, cfg);
  std::vector<Subgroup> out;
  for (auto& term : chain.terms) {
    std::vector<int32_t> elems;
    for (int32_t i : term.elements) elems.push_back(mat.to_parent[i]);
    std::sort(elems.begin(), elems.end());
    out.push_back(Subgroup{G, std::move(elems)});
  }
  while (int(out.size()) <= depth && out.back().is_trivial()) out.push_back(out.back());
  if (int(out.size()) <= depth)
    throw Error("internal: Frattini series of a finite group did not reach its fixpoint");
  return out;
}

std::string profile_string(const RankProfile& prof) {
  std::ostringstream os;
  os << "rk=" << prof.rank;
  for (auto& [p, r] : prof.p_ranks) os << " rk_" << p << "=" << r;
  return os.str();
}

bool sylows_powerful(const Subgroup& F, const Config& cfg, std::string* why) {
  auto mat = materialize(F);
  if (!is_nilpotent(*mat.group)) {
    if (why) *why = "designated subgroup is not nilpotent";
    return false;
  }
  for (int p : prime_divisors(mat.group->order())) {
    auto syl = materialize(sylow(mat.group, p, cfg));
    if (!is_powerful(syl.group, p)) {
      if (why) *why = "Sylow " + std::to_string(p) + "-subgroup of F is not powerful";
      return false;
    }
  }
  return true;
}

}  // namespace

VerifyReport verify_thm_2_1(const GroupPtr& G, const Subgroup& F, int R,
                            const std::set<int>& primes, const Config& cfg) {
  VerifyReport rep;
  rep.check = "thm-2-1";
  rep.input = G->label() + " (order " + std::to_string(G->order()) + "), |F|=" +
              std::to_string(F.order()) + ", R=" + std::to_string(R);
  try {
    if (!F.is_normal_in_parent()) {
      rep.verdict = Verdict::PreconditionFail;
      rep.witness = "F is not normal";
      return rep;
    }
    std::string why;
    if (!sylows_powerful(F, cfg, &why)) {
      rep.verdict = Verdict::PreconditionFail;
      rep.witness = why;
      return rep;
    }
    auto prof = rank_profile(G, primes, cfg);
    rep.add("rank", prof.rank);
    if (prof.rank > R) {
      rep.verdict = Verdict::PreconditionFail;
      rep.witness = "rank " + std::to_string(prof.rank) + " exceeds R";
      return rep;
    }
    int index = 2 * R + 1;
    auto chain = series_in_parent(G, F, index, cfg);
    auto q = quotient(G, chain[size_t(index)]);
    rep.add("quotient_order", q.group->order());
    rep.add("proper", q.group->order() < G->order() ? 1 : 0);
    auto qprof = rank_profile(q.group, primes, cfg);
    rep.add("quotient_profile", profile_string(qprof));
    rep.add("group_profile", profile_string(prof));
    if (qprof == prof) {
      rep.verdict = Verdict::Pass;
    } else {
      rep.verdict = Verdict::Fail;
      rep.witness = "profiles differ: " + profile_string(prof) + " vs " + profile_string(qprof);
    }
  } catch (const Undecided& u) {
    rep.verdict = Verdict::Undecided;
    rep.cap = u.cap();
    rep.witness = u.what();
  } catch (const CapExceeded& c) {
    rep.verdict = Verdict::Undecided;
    rep.cap = c.cap();
    rep.witness = c.what();
  }
  return rep;
}

VerifyReport verify_cor_2_2(const GroupPtr& G, const Subgroup& F, int R,
                            const std::set<int>& primes, const Config& cfg) {
  VerifyReport rep;
  rep.check = "cor-2-2";
  rep.input = G->label() + " (order " + std::to_string(G->order()) + "), |F|=" +
              std::to_string(F.order()) + ", R=" + std::to_string(R);
  try {
    if (!F.is_normal_in_parent()) {
      rep.verdict = Verdict::PreconditionFail;
      rep.witness = "F is not normal";
      return rep;
    }
    {
      auto mat = materialize(F);
      if (!is_nilpotent(*mat.group)) {
        rep.verdict = Verdict::PreconditionFail;
        rep.witness = "F is not nilpotent";
        return rep;
      }
    }
    auto prof = rank_profile(G, primes, cfg);
    rep.add("rank", prof.rank);
    if (prof.rank > R) {
      rep.verdict = Verdict::PreconditionFail;
      rep.witness = "rank " + std::to_string(prof.rank) + " exceeds R";
      return rep;
    }
    int lg = R <= 1 ? 0 : ceil_log2(R);
    int index = 2 * R + lg + 2;
    rep.add("index", index);
    auto chain = series_in_parent(G, F, index, cfg);
    // the proof route: Phi^{ceil(log2 R)+1}(F) has powerful Sylows
    std::string why;
    if (!sylows_powerful(chain[size_t(lg + 1)], cfg, &why)) {
      rep.verdict = Verdict::Fail;
      rep.witness = "powerful-ization failed: " + why;
      return rep;
    }
    auto q = quotient(G, chain[size_t(index)]);
    auto qprof = rank_profile(q.group, primes, cfg);
    rep.add("quotient_order", q.group->order());
    rep.add("quotient_profile", profile_string(qprof));
    rep.add("group_profile", profile_string(prof));
    if (qprof == prof) {
      rep.verdict = Verdict::Pass;
    } else {
      rep.verdict = Verdict::Fail;
      rep.witness = "profiles differ";
    }
  } catch (const Undecided& u) {
    rep.verdict = Verdict::Undecided;
    rep.cap = u.cap();
    rep.witness = u.what();
  } catch (const CapExceeded& c) {
    rep.verdict = Verdict::Undecided;
    rep.cap = c.cap();
    rep.witness = c.what();
  }
  return rep;
}

VerifyReport verify_thm_1_3(const GroupPtr& G, const Config& cfg) {
  VerifyReport rep;
  rep.check = "thm-1-3";
  rep.input = G->label() + " (order " + std::to_string(G->order()) + ")";
  try {
    if (!is_nilpotent(*G)) {
      rep.verdict = Verdict::PreconditionFail;
      rep.witness = "group is not nilpotent";
      return rep;
    }
    int r = rank(G, cfg);
    rep.add("rank", r);
    if (r == 0) {
      rep.verdict = Verdict::Pass;  // trivial group
      rep.add("j", 0);
      return rep;
    }
    int j = rank_stabilization_index(r);
    rep.add("j", j);
    auto chain = frattini_series(G, j, cfg);
    const Subgroup& N = chain.term(j);
    auto q = quotient(G, N);
    rep.add("quotient_order", q.group->order());
    rep.add("proper", q.group->order() < G->order() ? 1 : 0);
    int rq = rank(q.group, cfg);
    rep.add("quotient_rank", rq);
    if (rq == r) {
      rep.verdict = Verdict::Pass;
    } else {
      rep.verdict = Verdict::Fail;
      rep.witness = "rank " + std::to_string(r) + " vs quotient rank " + std::to_string(rq);
    }
  } catch (const Undecided& u) {
    rep.verdict = Verdict::Undecided;
    rep.cap = u.cap();
    rep.witness = u.what();
  } catch (const CapExceeded& c) {
    rep.verdict = Verdict::Undecided;
    rep.cap = c.cap();
    rep.witness = c.what();
  }
  return rep;
}

VerifyReport verify_hl(const GroupPtr& G, int p, const Config& cfg) {
  VerifyReport rep;
  rep.check = "hethelyi-levai";
  rep.input = G->label() + " (order " + std::to_string(G->order()) + "), p=" + std::to_string(p);
  try {
    if (!is_p_group(*G, p)) {
      rep.verdict = Verdict::PreconditionFail;
      rep.witness = "not a p-group";
      return rep;
    }
    if (G->order() > 1 && !is_powerful(G, p)) {
      rep.verdict = Verdict::PreconditionFail;
      rep.witness = "not powerful";
      return rep;
    }
    auto om = omega1(*G, p);
    int d = min_generators(G, cfg);
    rep.add("omega1", static_cast<long long>(om.size()));
    rep.add("d", d);
    if (static_cast<long long>(om.size()) == ipow(p, d)) {
      rep.verdict = Verdict::Pass;
    } else {
      rep.verdict = Verdict::Fail;
      rep.witness = "|Omega_1| = " + std::to_string(om.size()) + " != p^d";
    }
  } catch (const Undecided& u) {
    rep.verdict = Verdict::Undecided;
    rep.cap = u.cap();
    rep.witness = u.what();
  }
  return rep;
}

VerifyReport verify_thm_1_4(const ProPFamily& fam, const Config& cfg) {
  VerifyReport rep;
  rep.check = "thm-1-4";
  rep.input = fam.label;
  try {
    auto primes = family_primes(fam);
    if (primes.size() != 1) {
      rep.verdict = Verdict::PreconditionFail;
      rep.witness = "single-prime families only";
      return rep;
    }
    int p = primes[0];
    // the family's finite quotients must be powerful at a tested depth
    {
      auto lvl = finite_quotient(fam, 1, cfg);
      if (lvl.group->order() > 1 && !is_powerful(lvl.group, p)) {
        rep.verdict = Verdict::PreconditionFail;
        rep.witness = "finite quotients are not powerful";
        return rep;
      }
    }
    int dim = dim_analytic(fam);
    int d = stable_generator_count(fam, cfg);
    int s = omega1_stable(fam, p, cfg);
    int t = torsion_rank(fam, cfg);
    rep.add("dim_analytic", dim);
    rep.add("d", d);
    rep.add("omega1_stable", s);
    rep.add("torsion_rank", t);
    if (dim == d - s && dim == d - t) {
      rep.verdict = Verdict::Pass;
    } else {
      rep.verdict = Verdict::Fail;
      rep.witness = "dim != d - log_p|Omega_1| or != d - d(T)";
    }
  } catch (const Undecided& u) {
    rep.verdict = Verdict::Undecided;
    rep.cap = u.cap();
    rep.witness = u.what();
  } catch (const CapExceeded& c) {
    rep.verdict = Verdict::Undecided;
    rep.cap = c.cap();
    rep.witness = c.what();
  }
  return rep;
}

// ------------------------------------------------------------ rank axiom

bool decide_rank_axiom(const GroupPtr& G, const std::set<int>& primes, int r,
                       const std::map<int, int>& rvec, const Config& cfg) {
  if (!is_nilpotent(*G)) throw InvalidInput("rank axiom pipeline expects a nilpotent group");
  for (int p : prime_divisors(G->order()))
    if (!primes.count(p)) throw InvalidInput("group has a prime divisor outside the prime set");
  for (auto& [p, v] : rvec)
    if (!primes.count(p)) throw InvalidInput("rvec mentions a prime outside the prime set");

  auto matches_zero = [&] {
    for (int p : primes) {
      auto it = rvec.find(p);
      if (it != rvec.end() && it->second != 0) return false;
    }
    return true;
  };
  if (r == 0) return G->order() == 1 && matches_zero();

  int q = q_of(primes);
  int m = powerful_floor_index(r);

  // layer bounds rk(Phi^j / Phi^{j+1}) <= r for 0 <= j <= m
  auto chain = frattini_series(G, m + 1, cfg);
  for (int j = 0; j <= m; ++j) {
    auto mat = materialize(chain.term(j));
    auto inner = chain.term(j + 1);
    std::vector<int32_t> inner_local;
    for (int32_t e : inner.elements) inner_local.push_back(mat.from_parent(e));
    std::sort(inner_local.begin(), inner_local.end());
    auto qq = quotient(mat.group, Subgroup{mat.group, std::move(inner_local)});
    if (rank(qq.group, cfg) > r) return false;
  }

  // gamma: F = Phi^m(G) is semi-powerful
  const Subgroup& F = chain.term(m);
  auto matF = materialize(F);
  if (!is_semi_powerful(*matF.group, q)) return false;

  // theta, evaluated semantically: rank profile of G / Phi^{2R+1}(F)
  int R = (m + 1) * r;
  auto fchain = frattini_series(matF.group, 2 * R + 1, cfg);
  const Subgroup& deep_local = fchain.term(2 * R + 1);
  std::vector<int32_t> deep;
  for (int32_t i : deep_local.elements) deep.push_back(matF.to_parent[i]);
  std::sort(deep.begin(), deep.end());
  auto qres = quotient(G, Subgroup{G, std::move(deep)});
  auto prof = rank_profile(qres.group, primes, cfg);
  if (prof.rank != r) return false;
  for (int p : primes) {
    auto it = rvec.find(p);
    int want = it == rvec.end() ? 0 : it->second;
    if (prof.p_ranks.at(p) != want) return false;
  }
  return true;
}

bool decide_rank_axiom_materialized(const GroupPtr& G, const std::set<int>& primes, int r,
                                    const std::vector<GroupPtr>& candidates, const Config& cfg) {
  if (!is_nilpotent(*G)) throw InvalidInput("rank axiom pipeline expects a nilpotent group");
  if (r < 1) throw InvalidInput("materialized pipeline needs r >= 1");
  int q = q_of(primes);
  int m = powerful_floor_index(r);
  auto chain = frattini_series(G, m + 1, cfg);
  for (int j = 0; j <= m; ++j) {
    auto mat = materialize(chain.term(j));
    auto inner = chain.term(j + 1);
    std::vector<int32_t> inner_local;
    for (int32_t e : inner.elements) inner_local.push_back(mat.from_parent(e));
    std::sort(inner_local.begin(), inner_local.end());
    auto qq = quotient(mat.group, Subgroup{mat.group, std::move(inner_local)});
    if (rank(qq.group, cfg) > r) return false;
  }
  const Subgroup& F = chain.term(m);
  auto matF = materialize(F);
  if (!is_semi_powerful(*matF.group, q)) return false;

  int R = (m + 1) * r;
  auto fchain = frattini_series(matF.group, 2 * R + 1, cfg);
  std::vector<int32_t> deep;
  for (int32_t i : fchain.term(2 * R + 1).elements) deep.push_back(matF.to_parent[i]);
  std::sort(deep.begin(), deep.end());
  auto qres = quotient(G, Subgroup{G, std::move(deep)});

  // materialized isomorphism-type disjunction over the caller's candidate
  // list: one quotient-iso sentence per candidate with the trivial
  // definable subgroup, evaluated on the (interpretable) quotient
  auto phi = Formula::eq(Term::var("u"), Term::one());
  for (const auto& B : candidates) {
    if (B->order() != qres.group->order()) continue;
    auto sentence = build_quotient_iso_sentence(B, phi);
    if (eval_fast(qres.group, sentence, cfg)) return true;
  }
  return false;
}

// -------------------------------------------------------------- dim axiom

bool decide_dim_axiom(const ProPFamily& fam, const std::set<int>& primes, int r,
                      const std::map<int, int>& dvec, const Config& cfg) {
  for (int p : family_primes(fam))
    if (!primes.count(p)) throw InvalidInput("family prime outside the prime set");
  // rank precondition, checked through the rank pipeline on a deep
  // materialized quotient when one fits the caps
  if (family_rank(fam, cfg) != r)
    throw InvalidInput("family rank does not match the declared r");

  std::map<int, const ProPFamily*> parts;
  if (auto* prod = std::get_if<FamilyProduct>(&fam.node)) {
    for (const auto& f : prod->factors) parts[family_primes(f)[0]] = &f;
  } else {
    parts[family_primes(fam)[0]] = &fam;
  }
  for (int p : primes) {
    int want = 0;
    if (auto it = dvec.find(p); it != dvec.end()) want = it->second;
    auto it = parts.find(p);
    if (it == parts.end()) {
      if (want != 0) return false;
      continue;
    }
    int d = stable_generator_count(*it->second, cfg);
    int s = omega1_stable(*it->second, p, cfg);
    if (d - s != want) return false;
  }
  return true;
}

// --------------------------------------------------------- runaway couples

namespace {
bool is_prime_power_of(int n, int p) {
  while (n % p == 0) n /= p;
  return n == 1;
}
}  // namespace

std::optional<RunawayCouple> find_runaway_couple(const GroupPtr& G, int p, const Config& cfg) {
  if (p == 2 || !is_prime(p)) throw InvalidInput("runaway couples live at odd primes");
  if (G->order() % p != 0) return std::nullopt;

  auto subgroups = all_subgroups(G, cfg);
  std::optional<RunawayCouple> best;

  for (auto it = subgroups.rbegin(); it != subgroups.rend(); ++it) {
    const Subgroup& H = *it;
    for (const Subgroup& N : subgroups) {
      if (N.order() >= H.order()) break;  // sorted by order
      if (H.order() % N.order() != 0) continue;
      int q = H.order() / N.order();
      if (!is_prime(q) || (p - 1) % q != 0) continue;
      if (!std::includes(H.elements.begin(), H.elements.end(), N.elements.begin(),
                         N.elements.end()))
        continue;
      if (!H.normalizes(N)) continue;

      // Phi_p(N) inside the parent
      auto matN = materialize(N);
      auto phiN_local = p_frattini(matN.group, p);
      std::vector<int32_t> phiN;
      for (int32_t i : phiN_local.elements) phiN.push_back(matN.to_parent[i]);
      std::sort(phiN.begin(), phiN.end());

      // quotient H / Phi_p(N)
      auto matH = materialize(H);
      std::vector<int32_t> phiN_in_H;
      for (int32_t e : phiN) phiN_in_H.push_back(matH.from_parent(e));
      std::sort(phiN_in_H.begin(), phiN_in_H.end());
      Subgroup phiN_H{matH.group, phiN_in_H};
      if (!phiN_H.is_normal_in_parent()) continue;
      auto qres = quotient(matH.group, phiN_H);
      const GroupPtr& Q = qres.group;

      // image of N must be elementary abelian of rank >= 1
      std::vector<int32_t> nbar;
      for (int32_t e : N.elements) nbar.push_back(qres.projection(matH.from_parent(e)));
      std::sort(nbar.begin(), nbar.end());
      nbar.erase(std::unique(nbar.begin(), nbar.end()), nbar.end());
      if (static_cast<long long>(nbar.size()) * q != Q->order()) continue;
      if (!is_prime_power_of(int(nbar.size()), p) || nbar.size() < 2) continue;
      bool elem_ab = true;
      for (int32_t a : nbar) {
        if (Q->power(a, p) != FiniteGroup::identity) elem_ab = false;
        for (int32_t b : nbar)
          if (Q->mul(a, b) != Q->mul(b, a)) elem_ab = false;
      }
      if (!elem_ab) continue;
      int s = ilog_exact(static_cast<long long>(nbar.size()), p);

      // a generator of the cyclic top must act as a common scalar != 1
      int32_t t = -1;
      for (int32_t g = 0; g < Q->order(); ++g)
        if (!std::binary_search(nbar.begin(), nbar.end(), g)) {
          t = g;
          break;
        }
      if (t < 0) continue;
      int lambda = -1;
      bool scalar = true;
      for (int32_t v : nbar) {
        if (v == FiniteGroup::identity) continue;
        int32_t conj = Q->conj(v, t);
        // conj must be v^lambda with one lambda for everyone
        int l = -1;
        int32_t w = v;
        for (int e = 1; e < p; ++e) {
          if (w == conj) {
            l = e;
            break;
          }
          w = Q->mul(w, v);
        }
        if (l < 0) {
          scalar = false;
          break;
        }
        if (lambda < 0)
          lambda = l;
        else if (lambda != l) {
          scalar = false;
          break;
        }
      }
      if (!scalar || lambda <= 1) continue;  // lambda = 1 is not faithful

      if (!best || s > best->rank_witness) best = RunawayCouple{H, N, p, q, s};
    }
  }
  return best;
}

}  // namespace grouprank
