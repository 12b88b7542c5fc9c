// Acceptance suite: one numbered check per release criterion, each printing
// a pass/fail line.  Checks are exact (tolerance zero); every threshold is
// pinned here.  The process exits nonzero if any criterion fails.
#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "grouprank/eval.hpp"
#include "grouprank/io.hpp"
#include "grouprank/numeric.hpp"
#include "grouprank/parser.hpp"
#include "grouprank/verify.hpp"

using namespace grouprank;

namespace {

Config suite_config() {
  Config cfg;
  cfg.order_cap = Config::hard_order_limit;  // 4096: deep homocyclic quotients
  cfg.subgroup_cap = Config::hard_order_limit;
  return cfg;
}

struct SuiteResult {
  std::string name;
  bool pass = true;
  int items = 0;
  int failed = 0;
  int blocked = 0;
  int skipped = 0;
  std::string note;
};

struct Runner {
  std::ostringstream json;

  void record(const VerifyReport& r, SuiteResult& s, bool blocking_counts_as_fail = true) {
    json << r.to_json() << "\n";
    ++s.items;
    switch (r.verdict) {
      case Verdict::Pass:
        break;
      case Verdict::Undecided:
        ++s.blocked;
        if (blocking_counts_as_fail) s.pass = false;
        break;
      default:
        ++s.failed;
        s.pass = false;
        break;
    }
  }

  void record_bool(const std::string& check, const std::string& input, bool ok, SuiteResult& s) {
    VerifyReport r;
    r.check = check;
    r.input = input;
    r.verdict = ok ? Verdict::Pass : Verdict::Fail;
    if (!ok) r.witness = "expected equivalence failed";
    record(r, s);
  }
};

// ---------------------------------------------------------------- suite 1

SuiteResult suite1(Runner& run, const Config& cfg, const std::vector<GroupPtr>& corpus128) {
  SuiteResult s{"1 rank stabilization rk(G) = rk(G/Phi^{j(r)}(G)) on nilpotent groups"};
  if (!(rank_stabilization_index(1) == 4 && rank_stabilization_index(2) == 7 &&
        rank_stabilization_index(4) == 12)) {
    s.pass = false;
    s.note = "index instantiation mismatch";
    return s;
  }
  for (auto& g : corpus128) {
    if (!is_nilpotent(*g)) continue;
    run.record(verify_thm_1_3(g, cfg), s);
  }
  // metabelian truncations at depths 2..8: orders 5^(3k) put every one of
  // them beyond both the dense-table limit and the subgroup-scan cap, so
  // each item reports the cap honestly instead of a result
  auto fam = jordan_metabelian(5, 2);
  for (int depth = 2; depth <= 8; ++depth) {
    VerifyReport rep;
    rep.check = "thm-1-3";
    rep.input = fam.label + " truncation at depth " + std::to_string(depth);
    try {
      auto lvl = finite_quotient(fam, depth, cfg);
      rep = verify_thm_1_3(lvl.group, cfg);
    } catch (const CapExceeded& c) {
      rep.verdict = Verdict::Undecided;
      rep.cap = c.cap();
      rep.add("order", "5^" + std::to_string(3 * depth));
      rep.witness = c.what();
    }
    run.record(rep, s);
  }
  if (s.blocked > 0)
    s.note = "metabelian truncations at depths 2-8 have orders 5^6..5^24; dense Cayley "
             "tables and exhaustive subgroup scans cannot represent them";
  // the mod-Phi(F) truncation of the same family is desk-scale and carries
  // the same stabilization content (supplementary, recorded under suite 8)
  return s;
}

// ---------------------------------------------------------------- suite 2

SuiteResult suite2(Runner& run, const Config& cfg) {
  SuiteResult s{"2 bounded-quotient rank detection rk(G) = rk(G/Phi^{2R+1}(F))"};
  // homocyclic abelian towers, F = G
  for (auto [p, d, K] : std::vector<std::array<int, 3>>{
           {2, 1, 6}, {2, 2, 6}, {3, 1, 6}, {3, 2, 3}, {5, 1, 4}}) {
    auto lvl = finite_quotient(uniform_abelian(p, d), K, cfg);
    run.record(verify_thm_2_1(lvl.group, whole_group(lvl.group), d, {p}, cfg), s);
  }
  // abelian-times-torsion towers, F = G
  for (auto& [fam, R] : std::vector<std::pair<ProPFamily, int>>{
           {abelian_times_torsion(2, 1, cyclic_spec(4)), 2},
           {abelian_times_torsion(2, 1, cyclic_spec(2)), 2},
           {abelian_times_torsion(3, 1, cyclic_spec(3)), 2},
           {abelian_times_torsion(2, 2, cyclic_spec(2)), 3}}) {
    int depth = 1;
    TowerLevel lvl = finite_quotient(fam, 1, cfg);
    for (int k = 2; k <= 6; ++k) {
      try {
        lvl = finite_quotient(fam, k, cfg);
        depth = k;
      } catch (const CapExceeded&) {
        break;
      }
    }
    (void)depth;
    run.record(verify_thm_2_1(lvl.group, whole_group(lvl.group), R, family_primes(fam)[0] == 2
                                                                        ? std::set<int>{2}
                                                                        : std::set<int>{3},
                              cfg),
               s);
  }
  // the metabelian tower at depth 6 has order 5^18: report the cap
  {
    VerifyReport rep;
    rep.check = "thm-2-1";
    rep.input = "J(5,2) at depth 6 with F = <c^5> x A";
    try {
      auto lvl = finite_quotient(jordan_metabelian(5, 2), 6, cfg);
      auto F = make_subgroup(lvl.group, lvl.powerful_part);
      rep = verify_thm_2_1(lvl.group, F, 3, {5}, cfg);
    } catch (const CapExceeded& c) {
      rep.verdict = Verdict::Undecided;
      rep.cap = c.cap();
      rep.add("order", "5^18");
      rep.witness = c.what();
    }
    run.record(rep, s);
  }
  // feasible metabelian instance: depth 1 with the designated powerful part
  {
    auto lvl = finite_quotient(jordan_metabelian(5, 2), 1, cfg);
    auto F = make_subgroup(lvl.group, lvl.powerful_part);
    run.record(verify_thm_2_1(lvl.group, F, 3, {5}, cfg), s);
  }
  if (s.blocked > 0)
    s.note = "the depth-6 metabelian tower (order 5^18) exceeds every representable size; "
             "the theorem is exercised on the feasible instances above instead";
  return s;
}

// ---------------------------------------------------------------- suite 3

SuiteResult suite3(Runner& run, const Config& cfg) {
  SuiteResult s{"3 |Omega_1(G)| = p^{d(G)} on the powerful corpus up to 2^7 and 3^5"};
  auto corpus2 = standard_corpus({128, {2}}, cfg);
  auto corpus3 = standard_corpus({243, {3}}, cfg);
  std::vector<GroupPtr> all = corpus2;
  all.insert(all.end(), corpus3.begin(), corpus3.end());
  for (auto& g : all) {
    if (g->order() == 1) continue;
    auto ps = prime_divisors(g->order());
    if (ps.size() != 1) continue;
    if (!is_powerful(g, ps[0])) continue;
    run.record(verify_hl(g, ps[0], cfg), s);
  }
  return s;
}

// ---------------------------------------------------------------- suite 4

SuiteResult suite4(Runner& run, const Config& cfg) {
  SuiteResult s{"4 dim = d(G) - log_p|Omega_1(G)| = d(G) - d(T) across the family matrix"};
  for (int p : {2, 3, 5})
    for (int d = 1; d <= 3; ++d)
      run.record(verify_thm_1_4(uniform_abelian(p, d), cfg), s);

  std::vector<std::pair<int, GroupSpec>> torsions = {
      {2, cyclic_spec(2)},
      {2, cyclic_spec(4)},
      {2, cyclic_spec(8)},
      {2, cyclic_spec(16)},
      {2, product_spec({cyclic_spec(4), cyclic_spec(2)})},
      {2, product_spec({cyclic_spec(2), cyclic_spec(2)})},
      {2, product_spec({cyclic_spec(4), cyclic_spec(4)})},
      {3, cyclic_spec(3)},
      {3, cyclic_spec(9)},
      {3, product_spec({cyclic_spec(3), cyclic_spec(3)})},
      {5, cyclic_spec(5)},
  };
  for (auto& [p, t] : torsions)
    for (int d = 1; d <= 3; ++d) {
      Config local = cfg;
      // for p = 5 the interior window only fits with the shorter tail trim:
      // the last cyclic layers are undistorted and C_{5^6} components
      // cannot be materialized
      if (p == 5) local.layer_tail_trim = 1;
      run.record(verify_thm_1_4(abelian_times_torsion(p, d, t), local), s);
    }
  return s;
}

// ---------------------------------------------------------------- suite 5

SuiteResult suite5(Runner& run, const Config& cfg, const std::vector<GroupPtr>& corpus64) {
  SuiteResult s{"5 rank-axiom decision pipeline is equivalent to the brute-force profile"};
  std::vector<std::set<int>> prime_sets = {{2}, {3}, {2, 3}};
  for (auto& pi : prime_sets) {
    for (auto& g : corpus64) {
      if (g->order() > 64 || !is_nilpotent(*g)) continue;
      bool in_pi = true;
      for (int p : prime_divisors(g->order()))
        if (!pi.count(p)) in_pi = false;
      if (!in_pi) continue;

      auto prof = rank_profile(g, pi, cfg);
      for (int r = 0; r <= 3; ++r) {
        // every rvec with entries in {0..r}
        std::vector<int> primes(pi.begin(), pi.end());
        std::vector<int> e(primes.size(), 0);
        while (true) {
          std::map<int, int> rvec;
          for (size_t i = 0; i < primes.size(); ++i) rvec[primes[i]] = e[i];
          bool expect = prof.rank == r;
          for (size_t i = 0; i < primes.size(); ++i)
            if (prof.p_ranks.at(primes[i]) != e[i]) expect = false;
          bool got = decide_rank_axiom(g, pi, r, rvec, cfg);
          if (got != expect) {
            std::ostringstream in;
            in << g->label() << " pi={";
            for (int p : primes) in << p << ",";
            in << "} r=" << r;
            run.record_bool("rank-axiom-equiv", in.str(), false, s);
          } else {
            ++s.items;  // count quietly; per-item records would flood the log
          }
          size_t i = 0;
          while (i < e.size() && e[i] == r) e[i++] = 0;
          if (i == e.size()) break;
          ++e[i];
        }
      }
    }
  }
  {
    VerifyReport summary;
    summary.check = "rank-axiom-equiv";
    summary.input = "nilpotent corpus <= 64 over {2},{3},{2,3}, all (r, rvec) with r <= 3";
    summary.add("decisions", s.items);
    summary.verdict = s.failed == 0 ? Verdict::Pass : Verdict::Fail;
    run.json << summary.to_json() << "\n";
  }
  return s;
}

// ---------------------------------------------------------------- suite 6

SuiteResult suite6(Runner& run, const Config& cfg, const std::vector<GroupPtr>& corpus24) {
  SuiteResult s{"6 quotient-isomorphism certificates agree with the semantic oracle"};
  struct Phi {
    std::string text;
    FormulaPtr formula;
  };
  std::vector<Phi> phis;
  for (const char* t : {"E y . x = y*y", "E y . x = y*y*y", "E u . E v . x = [u,v]",
                        "x = 1", "E y . x = y^4", "E y . x = y^6"})
    phis.push_back({t, parse_formula(t)});

  std::vector<GroupPtr> quotient_types = {
      trivial_group(),       cyclic_group(2), cyclic_group(3),
      elementary_abelian(2, 2), cyclic_group(4),
      elaborate(permutation_spec(3, {{1, 0, 2}, {1, 2, 0}}, "S3")),
  };

  int cases = 0;
  for (auto& g : corpus24) {
    if (g->order() > 24 || cases >= 30) continue;
    for (auto& phi : phis) {
      if (cases >= 30) break;
      for (auto& B : quotient_types) {
        if (cases >= 30) break;
        if (B->order() > g->order()) continue;
        auto sentence = build_quotient_iso_sentence(B, phi.formula);
        bool claimed = eval_fast(g, sentence, cfg);
        // independent oracle: materialize the definable set, test
        // subgroup-ness, normality, and quotient isomorphism
        std::vector<int32_t> set;
        for (int32_t e = 0; e < g->order(); ++e) {
          Environment env{{*free_variables(phi.formula).begin(), e}};
          if (eval_naive(*g, phi.formula, env, cfg).value) set.push_back(e);
        }
        bool oracle = false;
        try {
          auto N = make_subgroup(g, set);
          if (N.is_normal_in_parent()) {
            auto q = quotient(g, N);
            oracle = is_isomorphic(q.group, B, cfg);
          }
        } catch (const InvalidInput&) {
          oracle = false;  // not a subgroup
        }
        std::ostringstream in;
        in << g->label() << " phi=\"" << phi.text << "\" B=" << B->label();
        run.record_bool("quotient-iso-certificate", in.str(), claimed == oracle, s);
        ++cases;
      }
    }
  }
  if (cases < 30) {
    s.pass = false;
    s.note = "matrix underfilled";
  }
  return s;
}

// ---------------------------------------------------------------- suite 7

SuiteResult suite7(Runner& run, const Config& cfg, const std::vector<GroupPtr>& corpus16) {
  SuiteResult s{"7 set-based evaluation equals reference evaluation wherever both terminate"};
  std::vector<Sentence> sentences;
  for (int r = 1; r <= 2; ++r)
    for (auto pi : std::vector<std::set<int>>{{2}, {3}, {2, 3}})
      sentences.push_back(build_beta1(pi, r));
  for (int q : {2, 3, 6}) sentences.push_back(build_gamma(q));
  sentences.push_back(
      build_quotient_iso_sentence(cyclic_group(2), parse_formula("E y . x = y*y")));
  sentences.push_back(
      build_quotient_iso_sentence(cyclic_group(3), parse_formula("E y . x = y*y*y")));
  sentences.push_back(
      build_quotient_iso_sentence(trivial_group(), parse_formula("x = x")));

  int compared = 0;
  for (auto& g : corpus16) {
    if (g->order() > 16) continue;
    for (auto& sentence : sentences) {
      bool fast = eval_fast(g, sentence, cfg);
      try {
        bool naive = eval_naive(*g, sentence.formula, {}, cfg).value;
        if (fast != naive) {
          run.record_bool("evaluator-agreement", g->label(), false, s);
        } else {
          ++compared;
          ++s.items;
        }
      } catch (const Undecided&) {
        ++s.skipped;  // naive cost above the default step budget
      }
    }
  }
  VerifyReport summary;
  summary.check = "evaluator-agreement";
  summary.input = "schema sentences on corpus groups of order <= 16";
  summary.add("compared", compared);
  summary.add("skipped_by_step_cap", s.skipped);
  summary.verdict = s.failed == 0 ? Verdict::Pass : Verdict::Fail;
  run.json << summary.to_json() << "\n";
  if (compared < 150) s.pass = false;
  return s;
}

// ---------------------------------------------------------------- suite 8

SuiteResult suite8(Runner& run, const Config& cfg) {
  SuiteResult s{"8 metabelian family: d(G) = 2, rank = n+1, K needs n+1 generators mod Phi(F)"};
  for (int n : {2, 3}) {
    const int p = 5;
    auto fam = jordan_metabelian(p, n);

    // depth-1 truncation is 2-generated
    auto l1 = finite_quotient(fam, 1, cfg);
    run.record_bool("metabelian-d", fam.label + " depth 1: d = 2",
                    min_generators(l1.group, cfg) == 2, s);

    // the mod-Phi(F) truncation: C_{p^2} acting on (C_p)^n by the unipotent map
    std::vector<std::vector<long long>> J(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i) {
      J[i][i] = 1;
      if (i + 1 < n) J[i][i + 1] = 1;
    }
    auto Q = elaborate(semidirect_spec(p * p, std::vector<int>(n, p), J,
                                       fam.label + " mod Phi(F)"),
                       cfg);
    run.record_bool("metabelian-d", fam.label + " mod Phi(F): d = 2",
                    min_generators(Q, cfg) == 2, s);

    // K = <c^p, a_1, ..., a_n> needs n+1 generators even in this quotient
    long long base = ipow(p, n);
    std::vector<int32_t> kgens{int32_t(p * base)};  // c^p
    for (int i = 0; i < n; ++i) kgens.push_back(int32_t(ipow(p, i)));
    auto K = subgroup_generated(Q, kgens);
    run.record_bool("metabelian-K",
                    fam.label + ": K = <c^p, a_1..a_n> needs n+1 generators mod Phi(F)",
                    subgroup_min_generators(K, cfg) == n + 1, s);

    // the first-level quotient already witnesses the full rank n+1
    int rQ = rank(Q, cfg);
    run.record_bool("metabelian-rank", fam.label + ": rank(G/Phi(F)) = n+1 = family rank",
                    rQ == n + 1 && rQ == family_rank(fam, cfg), s);
  }
  return s;
}

// ---------------------------------------------------------------- suite 9

SuiteResult suite9(Runner& run, const Config& cfg, const std::vector<GroupPtr>& corpus128) {
  SuiteResult s{"9 rk <= mlr + 1 with equality exactly at a runaway couple"};
  for (auto& g : corpus128) {
    VerifyReport rep;
    rep.check = "lucchini-consistency";
    rep.input = g->label() + " (order " + std::to_string(g->order()) + ")";
    try {
      auto prof = rank_profile(g, {2, 3}, cfg);
      rep.add("rank", prof.rank);
      rep.add("mlr", prof.mlr);
      if (prof.rank > prof.mlr + 1) {
        rep.verdict = Verdict::Fail;
        rep.witness = "rank exceeds mlr + 1";
      } else {
        bool couple = false;
        for (int p : prime_divisors(g->order())) {
          if (p == 2) continue;
          auto c = find_runaway_couple(g, p, cfg);
          if (c && c->rank_witness == prof.mlr) {
            couple = true;
            rep.add("couple_p", p);
            rep.add("couple_witness", c->rank_witness);
            break;
          }
        }
        bool equality = prof.rank == prof.mlr + 1;
        rep.add("equality", equality ? 1 : 0);
        rep.verdict = equality == couple ? Verdict::Pass : Verdict::Fail;
        if (rep.verdict == Verdict::Fail) rep.witness = "equality and couple disagree";
      }
    } catch (const Undecided& u) {
      rep.verdict = Verdict::Undecided;
      rep.cap = u.cap();
    }
    run.record(rep, s);
  }
  return s;
}

std::string run_all(std::vector<SuiteResult>& results) {
  Config cfg = suite_config();
  Runner run;
  auto corpus128 = standard_corpus({128, {2, 3}}, cfg);
  auto corpus64 = standard_corpus({64, {2, 3}}, cfg);
  auto corpus24 = standard_corpus({24, {2, 3}}, cfg);
  auto corpus16 = standard_corpus({16, {2, 3}}, cfg);

  results.push_back(suite1(run, cfg, corpus128));
  results.push_back(suite2(run, cfg));
  results.push_back(suite3(run, cfg));
  results.push_back(suite4(run, cfg));
  results.push_back(suite5(run, cfg, corpus64));
  results.push_back(suite6(run, cfg, corpus24));
  results.push_back(suite7(run, cfg, corpus16));
  results.push_back(suite8(run, cfg));
  results.push_back(suite9(run, cfg, corpus128));
  return run.json.str();
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  auto t0 = clock::now();

  std::vector<SuiteResult> results;
  std::string report1 = run_all(results);

  bool all_pass = true;
  for (auto& s : results) {
    double secs = 0;  // per-suite timing is not tracked; the total is below
    (void)secs;
    std::printf("[%s] %s: %d checks, %d failed, %d blocked, %d skipped%s%s\n",
                s.pass ? "PASS" : "FAIL", s.name.c_str(), s.items, s.failed, s.blocked,
                s.skipped, s.note.empty() ? "" : " -- ", s.note.c_str());
    all_pass = all_pass && s.pass;
  }

  // determinism: a second full run must produce a byte-identical report
  std::vector<SuiteResult> results2;
  std::string report2 = run_all(results2);
  bool deterministic = report1 == report2;
  std::printf("[%s] 10 determinism: two consecutive batch runs byte-identical (%zu bytes)\n",
              deterministic ? "PASS" : "FAIL", report1.size());
  all_pass = all_pass && deterministic;

  auto secs =
      std::chrono::duration_cast<std::chrono::seconds>(clock::now() - t0).count();
  std::printf("acceptance total: %lld s\n", static_cast<long long>(secs));
  return all_pass ? 0 : 1;
}
