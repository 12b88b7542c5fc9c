#include "grouprank/eval.hpp"

#include <algorithm>

#include "grouprank/invariants.hpp"
#include "grouprank/numeric.hpp"

namespace grouprank {

// ------------------------------------------------------------------- naive

namespace {

struct NaiveEval {
  const FiniteGroup& G;
  std::int64_t budget;
  Environment env;

  void spend() {
    if (--budget < 0)
      throw Undecided("eval-step-cap", "naive evaluation exceeded the step budget");
  }

  int32_t term(const TermPtr& t) {
    spend();
    switch (t->kind) {
      case Term::Kind::Var: {
        auto it = env.find(t->name);
        if (it == env.end()) throw InvalidInput("unbound variable '" + t->name + "'");
        return it->second;
      }
      case Term::Kind::One:
        return FiniteGroup::identity;
      case Term::Kind::Mul:
        return G.mul(term(t->a), term(t->b));
      case Term::Kind::Inv:
        return G.inv(term(t->a));
    }
    return 0;
  }

  // record: when non-null, loops of the outermost quantifier block of the
  // given kind store their satisfying/falsifying values here
  bool eval(const FormulaPtr& f, Environment* record, Formula::Kind record_kind) {
    spend();
    switch (f->kind) {
      case Formula::Kind::Eq:
        return term(f->t1) == term(f->t2);
      case Formula::Kind::Not:
        return !eval(f->f1, nullptr, record_kind);
      case Formula::Kind::And:
        return eval(f->f1, nullptr, record_kind) && eval(f->f2, nullptr, record_kind);
      case Formula::Kind::Or:
        return eval(f->f1, nullptr, record_kind) || eval(f->f2, nullptr, record_kind);
      case Formula::Kind::Implies:
        return !eval(f->f1, nullptr, record_kind) || eval(f->f2, nullptr, record_kind);
      case Formula::Kind::Exists:
      case Formula::Kind::Forall: {
        bool is_exists = f->kind == Formula::Kind::Exists;
        Environment* pass =
            (record && ((is_exists && record_kind == Formula::Kind::Exists) ||
                        (!is_exists && record_kind == Formula::Kind::Forall)))
                ? record
                : nullptr;
        auto saved = env.find(f->var) != env.end() ? std::optional<int32_t>(env[f->var])
                                                   : std::nullopt;
        for (int32_t g = 0; g < G.order(); ++g) {
          env[f->var] = g;
          bool v = eval(f->f1, pass, record_kind);
          if (v == is_exists) {
            // witness for E (true) / counterexample for A (false)
            if (pass) (*pass)[f->var] = g;
            if (saved)
              env[f->var] = *saved;
            else
              env.erase(f->var);
            return is_exists;
          }
        }
        if (saved)
          env[f->var] = *saved;
        else
          env.erase(f->var);
        return !is_exists;
      }
    }
    return false;
  }
};

}  // namespace

EvalResult eval_naive(const FiniteGroup& G, const FormulaPtr& f, const Environment& env,
                      const Config& cfg) {
  for (const auto& v : free_variables(f))
    if (!env.count(v)) throw InvalidInput("free variable '" + v + "' missing from environment");

  // nesting-based pre-estimate so hopeless instances refuse immediately
  int depth = quantifier_nesting(f);
  double est = 1.0;
  for (int i = 0; i < depth; ++i) est *= G.order();
  if (est > 4.0 * double(cfg.eval_step_cap))
    throw Undecided("eval-step-cap",
                    "estimated cost |G|^" + std::to_string(depth) + " exceeds the step budget");

  NaiveEval ev{G, cfg.eval_step_cap, env};
  EvalResult out;
  Environment record;
  Formula::Kind outer = f->kind == Formula::Kind::Forall ? Formula::Kind::Forall
                                                         : Formula::Kind::Exists;
  out.value = ev.eval(f, &record, outer);
  // a witness is meaningful when the outer block "won"
  if ((out.value && outer == Formula::Kind::Exists) ||
      (!out.value && outer == Formula::Kind::Forall))
    out.witness = std::move(record);
  return out;
}

// -------------------------------------------------------------------- fast

namespace {

bool fast_gamma(const GroupPtr& G, const GammaSchema& s) {
  return is_semi_powerful(*G, s.q);
}

bool fast_beta1(const GroupPtr& G, const Beta1Schema& s) {
  int q = q_of(s.pi);
  int r = s.r;
  int n = G->order();
  auto B = verbal_set(*G, r, q);
  std::vector<char> inB(n, 0);
  for (int32_t b : B) inB[b] = 1;

  // tuple (a_1..a_r) scanned in index order, mirroring the sentence's
  // existential block
  std::vector<int32_t> a(r, 0);
  while (true) {
    // the union of a^e B covers G iff for every h some prefix-product
    // u_e satisfies u_e^-1 h in B
    std::vector<int32_t> prefix;
    {
      std::vector<int> e(r, 0);
      while (true) {
        int32_t u = FiniteGroup::identity;
        for (int j = 0; j < r; ++j)
          if (e[j] != 0) u = G->mul(u, G->power(a[j], e[j]));
        prefix.push_back(G->inv(u));
        int j = r - 1;
        while (j >= 0 && e[j] == q - 1) e[j--] = 0;
        if (j < 0) break;
        ++e[j];
      }
    }
    bool covers = true;
    for (int32_t h = 0; h < n && covers; ++h) {
      bool hit = false;
      for (int32_t uinv : prefix)
        if (inB[G->mul(uinv, h)]) {
          hit = true;
          break;
        }
      covers = hit;
    }
    if (covers) return true;

    int j = r - 1;
    while (j >= 0 && a[j] == n - 1) a[j--] = 0;
    if (j < 0) break;
    ++a[j];
  }
  return false;
}

// truth of phi(g) for each element, via the reference evaluator on the
// (small) defining formula
std::vector<char> definable_set(const GroupPtr& G, const FormulaPtr& phi, const std::string& var,
                                const Config& cfg) {
  std::vector<char> in(G->order(), 0);
  for (int32_t g = 0; g < G->order(); ++g) {
    Environment env{{var, g}};
    in[g] = eval_naive(*G, phi, env, cfg).value ? 1 : 0;
  }
  return in;
}

bool fast_quotient_iso(const GroupPtr& G, const QuotientIsoSchema& s, const Config& cfg) {
  auto in = definable_set(G, s.phi, s.phi_var, cfg);
  int n = G->order();
  if (!in[FiniteGroup::identity]) return false;
  // closure under x^-1 y and conjugation — exactly the sentence's
  // universal conjuncts
  std::vector<int32_t> N;
  for (int32_t g = 0; g < n; ++g)
    if (in[g]) N.push_back(g);
  for (int32_t x : N)
    for (int32_t y : N)
      if (!in[G->mul(G->inv(x), y)]) return false;
  for (int32_t x : N)
    for (int32_t y = 0; y < n; ++y)
      if (!in[G->conj(x, y)]) return false;

  int nb = s.B->order();
  if (int64_t(N.size()) * nb != n) return false;  // distinct + covering force index |B|

  // coset labels
  std::vector<int32_t> coset_of(n, -1);
  std::vector<int32_t> reps;
  for (int32_t g = 0; g < n; ++g) {
    if (coset_of[g] >= 0) continue;
    int32_t c = int32_t(reps.size());
    reps.push_back(g);
    for (int32_t h : N) coset_of[G->mul(g, h)] = c;
  }
  int m = int(reps.size());
  if (m != nb) return false;

  // assignment search: b_i -> coset(a_i) conforming to B's table; this is
  // the sentence's existential block resolved coset-wise
  std::vector<int32_t> img(nb, -1);
  std::vector<char> used(m, 0);
  std::function<bool(int)> assign = [&](int i) -> bool {
    if (i == nb) return true;
    for (int32_t c = 0; c < m; ++c) {
      if (used[c]) continue;
      img[i] = c;
      used[c] = 1;
      bool ok = true;
      for (int j = 0; j <= i && ok; ++j) {
        if (img[j] < 0) continue;
        int32_t prod_ij = coset_of[G->mul(reps[img[i]], reps[img[j]])];
        int32_t prod_ji = coset_of[G->mul(reps[img[j]], reps[img[i]])];
        int want_ij = s.B->mul(i, j), want_ji = s.B->mul(j, i);
        if (img[want_ij] >= 0 && img[want_ij] != prod_ij) ok = false;
        if (ok && img[want_ji] >= 0 && img[want_ji] != prod_ji) ok = false;
      }
      if (ok && assign(i + 1)) return true;
      used[c] = 0;
      img[i] = -1;
    }
    return false;
  };
  return assign(0);
}

bool fast_schema(const GroupPtr& G, const Schema& s, const Config& cfg) {
  if (auto* g = std::get_if<GammaSchema>(&s.node)) return fast_gamma(G, *g);
  if (auto* b = std::get_if<Beta1Schema>(&s.node)) return fast_beta1(G, *b);
  if (auto* q = std::get_if<QuotientIsoSchema>(&s.node)) return fast_quotient_iso(G, *q, cfg);
  auto& c = std::get<ConjSchema>(s.node);
  for (auto& part : c.parts)
    if (!fast_schema(G, part, cfg)) return false;
  return true;
}

FormulaPtr rebuild_from_schema(const Schema& s) {
  if (auto* g = std::get_if<GammaSchema>(&s.node)) return build_gamma(g->q).formula;
  if (auto* b = std::get_if<Beta1Schema>(&s.node)) return build_beta1(b->pi, b->r).formula;
  if (auto* q = std::get_if<QuotientIsoSchema>(&s.node))
    return build_quotient_iso_sentence(q->B, q->phi).formula;
  auto& c = std::get<ConjSchema>(s.node);
  std::vector<FormulaPtr> fs;
  for (auto& part : c.parts) fs.push_back(rebuild_from_schema(part));
  return Formula::conj_all(std::move(fs));
}

}  // namespace

bool eval_fast(const GroupPtr& G, const Sentence& s, const Config& cfg) {
  if (!s.schema)
    throw UnsupportedSchema(
        "the set-based evaluator only supports sentences produced by the schema builders");
  // guard against tampering: the formula must be exactly what its tag builds
  if (!alpha_equal(s.formula, rebuild_from_schema(*s.schema)))
    throw UnsupportedSchema("sentence does not structurally match its schema tag");
  return fast_schema(G, *s.schema, cfg);
}

}  // namespace grouprank
