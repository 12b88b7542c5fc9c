#include <CLI11.hpp>

#include <array>
#include <atomic>
#include <future>
#include <iostream>
#include <sstream>

#include "grouprank/eval.hpp"
#include "grouprank/io.hpp"
#include "grouprank/numeric.hpp"
#include "grouprank/parser.hpp"
#include "grouprank/verify.hpp"

using namespace grouprank;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUndecided = 2;

std::set<int> parse_primes(const std::string& s) {
  std::set<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.insert(std::stoi(tok));
  return out;
}

// "2:2,3:1" -> {2:2, 3:1}
std::map<int, int> parse_vec(const std::string& s) {
  std::map<int, int> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto colon = tok.find(':');
    if (colon == std::string::npos) throw InvalidInput("expected p:value entries");
    out[std::stoi(tok.substr(0, colon))] = std::stoi(tok.substr(colon + 1));
  }
  return out;
}

struct ReportSink {
  std::string format = "text";
  std::vector<VerifyReport> reports;

  void emit(const VerifyReport& r) {
    reports.push_back(r);
    std::cout << (format == "json" ? r.to_json() : r.to_text()) << "\n";
  }

  int exit_code() const {
    bool any_fail = false, any_undecided = false;
    for (const auto& r : reports) {
      if (r.verdict == Verdict::Fail || r.verdict == Verdict::PreconditionFail) any_fail = true;
      if (r.verdict == Verdict::Undecided) any_undecided = true;
    }
    if (any_fail) return kExitFail;
    if (any_undecided) return kExitUndecided;
    return kExitPass;
  }

  void summary() const {
    int pass = 0, fail = 0, undec = 0, precond = 0;
    for (const auto& r : reports) {
      switch (r.verdict) {
        case Verdict::Pass:
          ++pass;
          break;
        case Verdict::Fail:
          ++fail;
          break;
        case Verdict::Undecided:
          ++undec;
          break;
        case Verdict::PreconditionFail:
          ++precond;
          break;
      }
    }
    std::cout << "summary: " << pass << " pass, " << fail << " fail, " << undec << " undecided, "
              << precond << " precondition-fail\n";
  }
};

// deterministic parallel map: results land in input order
template <typename Item, typename Fn>
std::vector<VerifyReport> run_batch(const std::vector<Item>& items, int jobs, Fn&& fn) {
  std::vector<VerifyReport> out(items.size());
  if (jobs <= 1) {
    for (size_t i = 0; i < items.size(); ++i) out[i] = fn(items[i]);
    return out;
  }
  std::atomic<size_t> next{0};
  auto worker = [&] {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= items.size()) break;
      out[i] = fn(items[i]);
    }
  };
  std::vector<std::future<void>> fs;
  for (int t = 0; t < jobs; ++t) fs.push_back(std::async(std::launch::async, worker));
  for (auto& f : fs) f.get();
  return out;
}

GroupPtr load_group(const std::string& path, const Config& cfg) {
  return elaborate(load_group_file(path), cfg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-group invariants, first-order evaluation and verification batches"};
  app.require_subcommand(1);

  Config cfg;
  app.add_option("--cap-order", cfg.order_cap, "largest constructible group order")
      ->envname("GROUPRANK_CAP_ORDER");
  app.add_option("--cap-subgroups", cfg.subgroup_cap, "largest order for subgroup enumeration")
      ->envname("GROUPRANK_CAP_SUBGROUPS");
  app.add_option("--cap-steps", cfg.eval_step_cap, "naive evaluator step budget")
      ->envname("GROUPRANK_CAP_STEPS");
  app.add_option("--depth", cfg.tower_depth_cap, "deepest tower level")
      ->envname("GROUPRANK_DEPTH");
  app.add_option("--jobs", cfg.jobs, "parallelism across batch items")
      ->envname("GROUPRANK_JOBS");

  // ------------------------------------------------------------ invariant
  auto* inv = app.add_subcommand("invariant", "print invariants of a group file");
  std::string inv_file, inv_which = "order", inv_pi = "2,3";
  int inv_p = 2;
  inv->add_option("group-file", inv_file)->required();
  inv->add_option("--which", inv_which,
                  "order | d | rank | profile | frattini-series | omega1 | powerful");
  inv->add_option("--pi", inv_pi, "prime set for profile");
  inv->add_option("--p", inv_p, "prime for omega1/powerful");

  // ----------------------------------------------------------------- eval
  auto* ev = app.add_subcommand("eval", "evaluate a sentence on a group");
  std::string ev_formula, ev_group, ev_mode = "naive";
  bool ev_witness = false;
  ev->add_option("--formula", ev_formula)->required();
  ev->add_option("--group", ev_group)->required();
  ev->add_option("--mode", ev_mode, "naive | fast");
  ev->add_flag("--witness", ev_witness, "print the outermost witness assignment");

  // ------------------------------------------------------- build-sentence
  auto* bs = app.add_subcommand("build-sentence", "emit a schema sentence to a file");
  std::string bs_schema, bs_pi = "2", bs_phi, bs_bfile, bs_out;
  int bs_r = 1, bs_q = 1;
  bs->add_option("--schema", bs_schema, "beta1 | gamma | quotient-iso")->required();
  bs->add_option("--pi", bs_pi);
  bs->add_option("--r", bs_r);
  bs->add_option("--q", bs_q);
  bs->add_option("--phi", bs_phi, "defining formula with one free variable");
  bs->add_option("--b-file", bs_bfile, "group file for the target quotient");
  bs->add_option("--out", bs_out, "output file")->required();

  // --------------------------------------------------------------- verify
  auto* vf = app.add_subcommand("verify", "run a verification batch");
  std::string vf_check, vf_group, vf_family, vf_pi = "2,3", vf_rvec, vf_dvec, vf_format = "text";
  int vf_corpus_max = 0, vf_r = -1, vf_R = -1;
  bool vf_towers = false;
  vf->add_option("--check", vf_check,
                 "thm-2-1 | cor-2-2 | thm-1-3 | thm-1-4 | hl | rank-axiom | dim-axiom | lucchini")
      ->required();
  vf->add_option("--corpus-max", vf_corpus_max, "run over the generated corpus up to this order");
  vf->add_option("--group-file", vf_group);
  vf->add_option("--family-file", vf_family);
  vf->add_option("--pi", vf_pi);
  vf->add_option("--r", vf_r);
  vf->add_option("--R", vf_R, "rank bound for thm-2-1 / cor-2-2");
  vf->add_option("--rvec", vf_rvec, "p:rank entries, e.g. 2:2,3:1");
  vf->add_option("--dvec", vf_dvec, "p:dim entries");
  vf->add_option("--format", vf_format, "text | json");
  vf->add_flag("--towers", vf_towers, "use the built-in tower matrix as the target");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*inv) {
      auto G = load_group(inv_file, cfg);
      if (inv_which == "order") {
        std::cout << G->order() << "\n";
      } else if (inv_which == "d") {
        std::cout << min_generators(G, cfg) << "\n";
      } else if (inv_which == "rank") {
        std::cout << rank(G, cfg) << "\n";
      } else if (inv_which == "profile") {
        auto prof = rank_profile(G, parse_primes(inv_pi), cfg);
        std::cout << "rank " << prof.rank;
        for (auto& [p, r] : prof.p_ranks) std::cout << ", r" << p << "=" << r;
        std::cout << ", mlr " << prof.mlr << "\n";
      } else if (inv_which == "frattini-series") {
        auto chain = frattini_series(G, 64, cfg);
        for (size_t i = 0; i < chain.terms.size(); ++i)
          std::cout << (i ? " " : "") << chain.terms[i].order();
        std::cout << "\n";
      } else if (inv_which == "omega1") {
        std::cout << omega1(*G, inv_p).size() << "\n";
      } else if (inv_which == "powerful") {
        std::cout << (is_powerful(G, inv_p) ? "true" : "false") << "\n";
      } else {
        throw InvalidInput("unknown invariant '" + inv_which + "'");
      }
      return kExitPass;
    }

    if (*ev) {
      auto G = load_group(ev_group, cfg);
      auto sentence = load_formula_file(ev_formula);
      if (ev_mode == "fast") {
        bool v = eval_fast(G, sentence, cfg);
        std::cout << (v ? "true" : "false") << "\n";
      } else {
        auto res = eval_naive(*G, sentence.formula, {}, cfg);
        std::cout << (res.value ? "true" : "false") << "\n";
        if (ev_witness && !res.witness.empty()) {
          std::cout << "witness:";
          for (auto& [k, v] : res.witness) std::cout << " " << k << "=" << v;
          std::cout << "\n";
        }
      }
      return kExitPass;
    }

    if (*bs) {
      Sentence s;
      if (bs_schema == "beta1") {
        s = build_beta1(parse_primes(bs_pi), bs_r);
      } else if (bs_schema == "gamma") {
        s = build_gamma(bs_q);
      } else if (bs_schema == "quotient-iso") {
        if (bs_bfile.empty() || bs_phi.empty())
          throw InvalidInput("quotient-iso needs --b-file and --phi");
        auto B = load_group(bs_bfile, cfg);
        s = build_quotient_iso_sentence(B, parse_formula(bs_phi));
      } else {
        throw InvalidInput("unknown schema '" + bs_schema + "'");
      }
      save_formula_file(bs_out, s);
      std::cout << "prefix " << prefix_class(s.formula).pretty() << ", size "
                << node_count(s.formula) << "\n";
      return kExitPass;
    }

    if (*vf) {
      ReportSink sink;
      sink.format = vf_format;
      auto primes = parse_primes(vf_pi);

      auto corpus = [&]() {
        if (vf_corpus_max <= 0) throw InvalidInput("--corpus-max required for corpus batches");
        return standard_corpus({vf_corpus_max, primes}, cfg);
      };

      if (vf_check == "thm-1-3") {
        std::vector<GroupPtr> targets;
        if (!vf_group.empty())
          targets.push_back(load_group(vf_group, cfg));
        else
          for (auto& g : corpus())
            if (is_nilpotent(*g)) targets.push_back(g);
        for (auto& r : run_batch(targets, cfg.jobs,
                                 [&](const GroupPtr& g) { return verify_thm_1_3(g, cfg); }))
          sink.emit(r);
      } else if (vf_check == "hl") {
        std::vector<GroupPtr> targets;
        if (!vf_group.empty()) {
          targets.push_back(load_group(vf_group, cfg));
        } else {
          for (auto& g : corpus()) {
            auto ps = prime_divisors(g->order());
            if (ps.size() == 1 && is_powerful(g, ps[0])) targets.push_back(g);
          }
        }
        for (auto& r : run_batch(targets, cfg.jobs, [&](const GroupPtr& g) {
               return verify_hl(g, prime_divisors(g->order()).empty()
                                       ? 2
                                       : prime_divisors(g->order())[0],
                                cfg);
             }))
          sink.emit(r);
      } else if (vf_check == "thm-2-1" || vf_check == "cor-2-2") {
        bool cor = vf_check == "cor-2-2";
        auto run_one = [&](const GroupPtr& g, const Subgroup& F, int R) {
          return cor ? verify_cor_2_2(g, F, R, primes, cfg)
                     : verify_thm_2_1(g, F, R, primes, cfg);
        };
        if (!vf_group.empty()) {
          auto g = load_group(vf_group, cfg);
          int R = vf_R > 0 ? vf_R : rank(g, cfg);
          sink.emit(run_one(g, whole_group(g), R));
        } else if (vf_towers) {
          struct Item {
            GroupPtr g;
            int R;
          };
          std::vector<Item> items;
          for (auto [p, d, K] : std::vector<std::array<int, 3>>{
                   {2, 1, 6}, {2, 2, 6}, {3, 1, 6}, {3, 2, 3}, {5, 1, 4}}) {
            Config big = cfg;
            big.order_cap = Config::hard_order_limit;
            auto lvl = finite_quotient(uniform_abelian(p, d), K, big);
            items.push_back({lvl.group, d});
          }
          for (auto& it : items) sink.emit(run_one(it.g, whole_group(it.g), it.R));
        } else {
          // corpus mode: every nilpotent member with F = G
          for (auto& g : corpus()) {
            if (!is_nilpotent(*g)) continue;
            int R = rank(g, cfg);
            sink.emit(run_one(g, whole_group(g), R));
          }
        }
      } else if (vf_check == "thm-1-4") {
        if (vf_family.empty()) throw InvalidInput("thm-1-4 needs --family-file");
        sink.emit(verify_thm_1_4(load_family_file(vf_family), cfg));
      } else if (vf_check == "rank-axiom") {
        if (vf_group.empty() || vf_r < 0)
          throw InvalidInput("rank-axiom needs --group-file and --r");
        auto g = load_group(vf_group, cfg);
        auto rvec = parse_vec(vf_rvec);
        VerifyReport rep;
        rep.check = "rank-axiom";
        rep.input = g->label() + " (order " + std::to_string(g->order()) + "), r=" +
                    std::to_string(vf_r);
        bool decided = decide_rank_axiom(g, primes, vf_r, rvec, cfg);
        auto prof = rank_profile(g, primes, cfg);
        rep.add("decision", decided ? "true" : "false");
        rep.add("rank", prof.rank);
        for (auto& [p, r] : prof.p_ranks) rep.add("r" + std::to_string(p), r);
        bool matches = prof.rank == vf_r;
        for (int p : primes) {
          auto it = rvec.find(p);
          int want = it == rvec.end() ? 0 : it->second;
          if (prof.p_ranks.at(p) != want) matches = false;
        }
        rep.verdict = (decided == matches) ? (decided ? Verdict::Pass : Verdict::Fail)
                                           : Verdict::Fail;
        if (!decided)
          rep.witness = "profile is " + std::to_string(prof.rank) + " with p-ranks " + [&] {
            std::string s;
            for (auto& [p, r] : prof.p_ranks) s += "r" + std::to_string(p) + "=" +
                                                   std::to_string(r) + " ";
            return s;
          }();
        sink.emit(rep);
      } else if (vf_check == "dim-axiom") {
        if (vf_family.empty() || vf_r < 0)
          throw InvalidInput("dim-axiom needs --family-file and --r");
        auto fam = load_family_file(vf_family);
        auto dvec = parse_vec(vf_dvec);
        VerifyReport rep;
        rep.check = "dim-axiom";
        rep.input = fam.label + ", r=" + std::to_string(vf_r);
        bool decided = decide_dim_axiom(fam, primes, vf_r, dvec, cfg);
        auto dims = dim_analytic_map(fam);
        rep.add("decision", decided ? "true" : "false");
        bool matches = true;
        for (int p : primes) {
          int want = dvec.count(p) ? dvec.at(p) : 0;
          int have = dims.count(p) ? dims.at(p) : 0;
          rep.add("dim" + std::to_string(p), have);
          if (want != have) matches = false;
        }
        rep.verdict = (decided == matches) ? (decided ? Verdict::Pass : Verdict::Fail)
                                           : Verdict::Fail;
        sink.emit(rep);
      } else if (vf_check == "lucchini") {
        auto targets = corpus();
        for (auto& r : run_batch(targets, cfg.jobs, [&](const GroupPtr& g) {
               VerifyReport rep;
               rep.check = "lucchini";
               rep.input = g->label() + " (order " + std::to_string(g->order()) + ")";
               try {
                 std::set<int> ps(primes);
                 for (int p : prime_divisors(g->order())) ps.insert(p);
                 auto prof = rank_profile(g, ps, cfg);
                 rep.add("rank", prof.rank);
                 rep.add("mlr", prof.mlr);
                 if (prof.rank > prof.mlr + 1) {
                   rep.verdict = Verdict::Fail;
                   rep.witness = "rank exceeds mlr + 1";
                   return rep;
                 }
                 bool couple = false;
                 for (int p : prime_divisors(g->order())) {
                   if (p == 2) continue;
                   auto c = find_runaway_couple(g, p, cfg);
                   if (c && c->rank_witness == prof.mlr) {
                     couple = true;
                     rep.add("couple_p", p);
                     rep.add("couple_q", c->q);
                     rep.add("witness_rank", c->rank_witness);
                     break;
                   }
                 }
                 bool equality = prof.rank == prof.mlr + 1;
                 rep.add("equality", equality ? 1 : 0);
                 rep.add("couple", couple ? 1 : 0);
                 rep.verdict = (equality == couple) ? Verdict::Pass : Verdict::Fail;
                 if (rep.verdict == Verdict::Fail)
                   rep.witness = "equality and couple existence disagree";
               } catch (const Undecided& u) {
                 rep.verdict = Verdict::Undecided;
                 rep.cap = u.cap();
               }
               return rep;
             }))
          sink.emit(r);
      } else {
        throw InvalidInput("unknown check '" + vf_check + "'");
      }
      sink.summary();
      return sink.exit_code();
    }
  } catch (const Undecided& u) {
    std::cerr << "undecided (" << u.cap() << "): " << u.what() << "\n";
    return kExitUndecided;
  } catch (const CapExceeded& c) {
    std::cerr << "cap exceeded (" << c.cap() << "): " << c.what() << "\n";
    return kExitUndecided;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitPass;
}
