#include "grouprank/formula.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <tuple>

namespace grouprank {

// ---------------------------------------------------------------- builders

TermPtr Term::var(std::string name) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Var;
  t->name = std::move(name);
  return t;
}

TermPtr Term::one() {
  static TermPtr o = [] {
    auto t = std::make_shared<Term>();
    t->kind = Kind::One;
    return t;
  }();
  return o;
}

TermPtr Term::mul(TermPtr x, TermPtr y) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Mul;
  t->a = std::move(x);
  t->b = std::move(y);
  return t;
}

TermPtr Term::inv(TermPtr x) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Inv;
  t->a = std::move(x);
  return t;
}

TermPtr Term::power(TermPtr x, long long k) {
  if (k == 0) return one();
  if (k < 0) return inv(power(x, -k));
  if (k == 1) return x;
  TermPtr half = power(x, k / 2);
  TermPtr sq = mul(half, half);
  return (k % 2 == 0) ? sq : mul(sq, x);
}

TermPtr Term::commutator(TermPtr x, TermPtr y) {
  return mul(mul(inv(x), inv(y)), mul(x, y));
}

TermPtr Term::product(const std::vector<TermPtr>& factors) {
  if (factors.empty()) return one();
  TermPtr acc = factors[0];
  for (size_t i = 1; i < factors.size(); ++i) acc = mul(acc, factors[i]);
  return acc;
}

namespace {
std::shared_ptr<Formula> node(Formula::Kind k) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  return f;
}
}  // namespace

FormulaPtr Formula::eq(TermPtr a, TermPtr b) {
  auto f = node(Kind::Eq);
  f->t1 = std::move(a);
  f->t2 = std::move(b);
  return f;
}

FormulaPtr Formula::negation(FormulaPtr x) {
  auto f = node(Kind::Not);
  f->f1 = std::move(x);
  return f;
}

FormulaPtr Formula::conj(FormulaPtr a, FormulaPtr b) {
  auto f = node(Kind::And);
  f->f1 = std::move(a);
  f->f2 = std::move(b);
  return f;
}

FormulaPtr Formula::disj(FormulaPtr a, FormulaPtr b) {
  auto f = node(Kind::Or);
  f->f1 = std::move(a);
  f->f2 = std::move(b);
  return f;
}

FormulaPtr Formula::implies(FormulaPtr a, FormulaPtr b) {
  auto f = node(Kind::Implies);
  f->f1 = std::move(a);
  f->f2 = std::move(b);
  return f;
}

FormulaPtr Formula::exists(std::string var, FormulaPtr body) {
  auto f = node(Kind::Exists);
  f->var = std::move(var);
  f->f1 = std::move(body);
  return f;
}

FormulaPtr Formula::forall(std::string var, FormulaPtr body) {
  auto f = node(Kind::Forall);
  f->var = std::move(var);
  f->f1 = std::move(body);
  return f;
}

namespace {
FormulaPtr fold_balanced(std::vector<FormulaPtr> fs,
                         FormulaPtr (*op)(FormulaPtr, FormulaPtr)) {
  while (fs.size() > 1) {
    std::vector<FormulaPtr> next;
    for (size_t i = 0; i + 1 < fs.size(); i += 2) next.push_back(op(fs[i], fs[i + 1]));
    if (fs.size() % 2) next.push_back(fs.back());
    fs = std::move(next);
  }
  return fs[0];
}
}  // namespace

FormulaPtr Formula::conj_all(std::vector<FormulaPtr> fs) {
  if (fs.empty()) return eq(Term::one(), Term::one());
  return fold_balanced(std::move(fs), &Formula::conj);
}

FormulaPtr Formula::disj_all(std::vector<FormulaPtr> fs) {
  if (fs.empty()) return negation(eq(Term::one(), Term::one()));
  return fold_balanced(std::move(fs), &Formula::disj);
}

// ------------------------------------------------------------ free variables

namespace {
void collect_term_vars(const TermPtr& t, std::set<std::string>& out) {
  if (!t) return;
  if (t->kind == Term::Kind::Var) out.insert(t->name);
  collect_term_vars(t->a, out);
  collect_term_vars(t->b, out);
}

void collect_free(const FormulaPtr& f, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (f->kind) {
    case Formula::Kind::Eq: {
      std::set<std::string> vars;
      collect_term_vars(f->t1, vars);
      collect_term_vars(f->t2, vars);
      for (auto& v : vars)
        if (!bound.count(v)) out.insert(v);
      break;
    }
    case Formula::Kind::Not:
      collect_free(f->f1, bound, out);
      break;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      collect_free(f->f1, bound, out);
      collect_free(f->f2, bound, out);
      break;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      bool fresh = bound.insert(f->var).second;
      collect_free(f->f1, bound, out);
      if (fresh) bound.erase(f->var);
      break;
    }
  }
}
}  // namespace

std::set<std::string> free_variables(const TermPtr& t) {
  std::set<std::string> out;
  collect_term_vars(t, out);
  return out;
}

std::set<std::string> free_variables(const FormulaPtr& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

namespace {
std::int64_t term_nodes(const TermPtr& t) {
  if (!t) return 0;
  return 1 + term_nodes(t->a) + term_nodes(t->b);
}
}  // namespace

std::int64_t node_count(const FormulaPtr& f) {
  if (!f) return 0;
  return 1 + term_nodes(f->t1) + term_nodes(f->t2) + node_count(f->f1) + node_count(f->f2);
}

int quantifier_nesting(const FormulaPtr& f) {
  if (!f) return 0;
  int sub = std::max(quantifier_nesting(f->f1), quantifier_nesting(f->f2));
  bool q = f->kind == Formula::Kind::Exists || f->kind == Formula::Kind::Forall;
  return sub + (q ? 1 : 0);
}

// ------------------------------------------------------------- alpha equality

namespace {

bool term_alpha(const TermPtr& s, const TermPtr& t, std::map<std::string, std::string>& l2r,
                std::map<std::string, std::string>& r2l) {
  if (!s || !t) return !s && !t;
  if (s->kind != t->kind) return false;
  if (s->kind == Term::Kind::Var) {
    auto itl = l2r.find(s->name);
    auto itr = r2l.find(t->name);
    if (itl == l2r.end() && itr == r2l.end()) return s->name == t->name;  // both free
    if (itl == l2r.end() || itr == r2l.end()) return false;
    return itl->second == t->name && itr->second == s->name;
  }
  return term_alpha(s->a, t->a, l2r, r2l) && term_alpha(s->b, t->b, l2r, r2l);
}

bool formula_alpha(const FormulaPtr& f, const FormulaPtr& g,
                   std::map<std::string, std::string>& l2r,
                   std::map<std::string, std::string>& r2l) {
  if (!f || !g) return !f && !g;
  if (f->kind != g->kind) return false;
  switch (f->kind) {
    case Formula::Kind::Eq:
      return term_alpha(f->t1, g->t1, l2r, r2l) && term_alpha(f->t2, g->t2, l2r, r2l);
    case Formula::Kind::Not:
      return formula_alpha(f->f1, g->f1, l2r, r2l);
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      return formula_alpha(f->f1, g->f1, l2r, r2l) && formula_alpha(f->f2, g->f2, l2r, r2l);
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      auto savedL = l2r;
      auto savedR = r2l;
      l2r[f->var] = g->var;
      r2l[g->var] = f->var;
      bool ok = formula_alpha(f->f1, g->f1, l2r, r2l);
      l2r = std::move(savedL);
      r2l = std::move(savedR);
      return ok;
    }
  }
  return false;
}

}  // namespace

bool alpha_equal(const FormulaPtr& f, const FormulaPtr& g) {
  std::map<std::string, std::string> l2r, r2l;
  return formula_alpha(f, g, l2r, r2l);
}

// ---------------------------------------------------------------- substitute

namespace {

TermPtr term_subst(const TermPtr& t, const std::map<std::string, TermPtr>& env) {
  if (!t) return t;
  switch (t->kind) {
    case Term::Kind::Var: {
      auto it = env.find(t->name);
      return it == env.end() ? t : it->second;
    }
    case Term::Kind::One:
      return t;
    case Term::Kind::Mul:
      return Term::mul(term_subst(t->a, env), term_subst(t->b, env));
    case Term::Kind::Inv:
      return Term::inv(term_subst(t->a, env));
  }
  return t;
}

FormulaPtr subst_rec(const FormulaPtr& f, std::map<std::string, TermPtr>& env,
                     const std::set<std::string>& value_vars, int& fresh) {
  switch (f->kind) {
    case Formula::Kind::Eq:
      return Formula::eq(term_subst(f->t1, env), term_subst(f->t2, env));
    case Formula::Kind::Not:
      return Formula::negation(subst_rec(f->f1, env, value_vars, fresh));
    case Formula::Kind::And:
      return Formula::conj(subst_rec(f->f1, env, value_vars, fresh),
                           subst_rec(f->f2, env, value_vars, fresh));
    case Formula::Kind::Or:
      return Formula::disj(subst_rec(f->f1, env, value_vars, fresh),
                           subst_rec(f->f2, env, value_vars, fresh));
    case Formula::Kind::Implies:
      return Formula::implies(subst_rec(f->f1, env, value_vars, fresh),
                              subst_rec(f->f2, env, value_vars, fresh));
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      std::string v = f->var;
      std::optional<TermPtr> saved;
      if (auto it = env.find(v); it != env.end()) saved = it->second;
      std::string use = v;
      if (value_vars.count(v)) {  // bound name collides with the value: rename
        use = v + "_" + std::to_string(fresh++);
        env[v] = Term::var(use);
      } else {
        env.erase(v);  // shadowed inside
      }
      auto body = subst_rec(f->f1, env, value_vars, fresh);
      if (saved)
        env[v] = *saved;
      else
        env.erase(v);
      return f->kind == Formula::Kind::Exists ? Formula::exists(use, body)
                                              : Formula::forall(use, body);
    }
  }
  return f;
}

}  // namespace

FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const TermPtr& value,
                      int& fresh_counter) {
  std::map<std::string, TermPtr> env{{var, value}};
  auto value_vars = free_variables(value);
  return subst_rec(f, env, value_vars, fresh_counter);
}

// ------------------------------------------------------------------ printing

namespace {

// precedence: inv/pow tightest, then *, atoms at equations
void print_term(const TermPtr& t, std::ostringstream& os) {
  switch (t->kind) {
    case Term::Kind::Var:
      os << t->name;
      break;
    case Term::Kind::One:
      os << "1";
      break;
    case Term::Kind::Mul:
      print_term(t->a, os);  // left factor: chains stay flat, Inv self-parenthesizes
      os << "*";
      if (t->b->kind == Term::Kind::Mul) {
        os << "(";
        print_term(t->b, os);
        os << ")";
      } else {
        print_term(t->b, os);
      }
      break;
    case Term::Kind::Inv:
      if (t->a->kind == Term::Kind::Var || t->a->kind == Term::Kind::One) {
        print_term(t->a, os);
      } else {
        os << "(";
        print_term(t->a, os);
        os << ")";
      }
      os << "^-1";
      break;
  }
}

int formula_prec(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Eq:
    case Formula::Kind::Not:
      return 4;
    case Formula::Kind::And:
      return 3;
    case Formula::Kind::Or:
      return 2;
    case Formula::Kind::Implies:
      return 1;
    default:
      return 0;  // quantifiers
  }
}

void print_formula(const FormulaPtr& f, std::ostringstream& os, int parent_prec) {
  int prec = formula_prec(f->kind);
  bool parens = prec < parent_prec || (f->kind == Formula::Kind::Exists && parent_prec > 0) ||
                (f->kind == Formula::Kind::Forall && parent_prec > 0);
  if (parens) os << "(";
  switch (f->kind) {
    case Formula::Kind::Eq:
      print_term(f->t1, os);
      os << " = ";
      print_term(f->t2, os);
      break;
    case Formula::Kind::Not:
      os << "!";
      if (f->f1->kind == Formula::Kind::Eq) {
        os << "(";
        print_formula(f->f1, os, 0);
        os << ")";
      } else {
        print_formula(f->f1, os, 5);
      }
      break;
    case Formula::Kind::And:
      print_formula(f->f1, os, 3);
      os << " & ";
      print_formula(f->f2, os, 4);  // left-assoc
      break;
    case Formula::Kind::Or:
      print_formula(f->f1, os, 2);
      os << " | ";
      print_formula(f->f2, os, 3);
      break;
    case Formula::Kind::Implies:
      print_formula(f->f1, os, 2);
      os << " -> ";
      print_formula(f->f2, os, 1);  // right-assoc
      break;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      os << (f->kind == Formula::Kind::Exists ? "E " : "A ") << f->var << " . ";
      print_formula(f->f1, os, 0);
      break;
  }
  if (parens) os << ")";
}

}  // namespace

std::string to_string(const TermPtr& t) {
  std::ostringstream os;
  print_term(t, os);
  return os.str();
}

std::string to_string(const FormulaPtr& f) {
  std::ostringstream os;
  print_formula(f, os, 0);
  return os.str();
}

// -------------------------------------------------------------- prefix class

namespace {

FormulaPtr to_nnf(const FormulaPtr& f, bool negate) {
  switch (f->kind) {
    case Formula::Kind::Eq:
      return negate ? Formula::negation(f) : f;
    case Formula::Kind::Not:
      return to_nnf(f->f1, !negate);
    case Formula::Kind::And: {
      auto a = to_nnf(f->f1, negate), b = to_nnf(f->f2, negate);
      return negate ? Formula::disj(a, b) : Formula::conj(a, b);
    }
    case Formula::Kind::Or: {
      auto a = to_nnf(f->f1, negate), b = to_nnf(f->f2, negate);
      return negate ? Formula::conj(a, b) : Formula::disj(a, b);
    }
    case Formula::Kind::Implies:
      return negate ? Formula::conj(to_nnf(f->f1, false), to_nnf(f->f2, true))
                    : Formula::disj(to_nnf(f->f1, true), to_nnf(f->f2, false));
    case Formula::Kind::Exists:
      return negate ? Formula::forall(f->var, to_nnf(f->f1, true))
                    : Formula::exists(f->var, to_nnf(f->f1, false));
    case Formula::Kind::Forall:
      return negate ? Formula::exists(f->var, to_nnf(f->f1, true))
                    : Formula::forall(f->var, to_nnf(f->f1, false));
  }
  return f;
}

// Achievable prenex prefixes form an upward-closed family under the
// supersequence order (extra quantifier blocks can always be inserted with
// dummy variables), so each subformula is summarized by the antichain of
// its minimal achievable block strings.  Conjunction/disjunction merge by
// interleaving; quantifiers prepend, fusing with an equal leading block.

using PrefixSet = std::set<std::string>;

bool subsequence(const std::string& s, const std::string& t) {
  size_t i = 0;
  for (char c : t)
    if (i < s.size() && s[i] == c) ++i;
  return i == s.size();
}

PrefixSet antichain(PrefixSet in) {
  PrefixSet out;
  for (const auto& s : in) {
    bool dominated = false;
    for (const auto& t : in)
      if (t != s && subsequence(t, s)) {
        dominated = true;
        break;
      }
    if (!dominated) out.insert(s);
  }
  return out;
}

// All minimal-length alternating supersequences of a and b.
std::set<std::string> minimal_merges(const std::string& a, const std::string& b) {
  size_t n = a.size(), m = b.size();
  struct Key {
    size_t i, j;
    char last;
    bool operator<(const Key& o) const {
      return std::tie(i, j, last) < std::tie(o.i, o.j, o.last);
    }
  };
  std::map<Key, std::set<std::string>> memo;
  std::function<std::set<std::string>(size_t, size_t, char)> go =
      [&](size_t i, size_t j, char last) -> std::set<std::string> {
    if (i == n && j == m) return {""};
    Key k{i, j, last};
    if (auto it = memo.find(k); it != memo.end()) return it->second;
    std::set<std::string> result;
    size_t best = SIZE_MAX;
    for (char c : {'A', 'E'}) {
      if (c == last) continue;
      size_t i2 = i, j2 = j;
      while (i2 < n && a[i2] == c) ++i2;
      while (j2 < m && b[j2] == c) ++j2;
      if (i2 == i && j2 == j) continue;
      for (const auto& rest : go(i2, j2, c)) {
        std::string cand = std::string(1, c) + rest;
        if (cand.size() < best) {
          best = cand.size();
          result.clear();
          result.insert(cand);
        } else if (cand.size() == best) {
          result.insert(cand);
        }
      }
    }
    memo[k] = result;
    return result;
  };
  return go(0, 0, '\0');
}

PrefixSet merge_sets(const PrefixSet& A, const PrefixSet& B) {
  PrefixSet out;
  for (const auto& a : A)
    for (const auto& b : B)
      for (const auto& m : minimal_merges(a, b)) out.insert(m);
  return antichain(std::move(out));
}

PrefixSet prepend(char q, const PrefixSet& S) {
  PrefixSet out;
  for (const auto& s : S) out.insert((!s.empty() && s[0] == q) ? s : std::string(1, q) + s);
  return antichain(std::move(out));
}

PrefixSet prefixes_of_nnf(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::Eq:
    case Formula::Kind::Not:  // NNF: negation only on atoms
      return {""};
    case Formula::Kind::And:
    case Formula::Kind::Or:
      return merge_sets(prefixes_of_nnf(f->f1), prefixes_of_nnf(f->f2));
    case Formula::Kind::Exists:
      return prepend('E', prefixes_of_nnf(f->f1));
    case Formula::Kind::Forall:
      return prepend('A', prefixes_of_nnf(f->f1));
    default:
      return {""};
  }
}

}  // namespace

PrefixClass prefix_class(const FormulaPtr& f) {
  auto set = prefixes_of_nnf(to_nnf(f, false));
  // shortest achievable classification; alphabetical tie-break
  std::string best;
  bool have = false;
  for (const auto& s : set) {
    if (!have || s.size() < best.size() || (s.size() == best.size() && s < best)) {
      best = s;
      have = true;
    }
  }
  return PrefixClass{best};
}

std::string PrefixClass::pretty() const {
  if (blocks.empty()) return "(quantifier-free)";
  std::string out;
  for (char c : blocks) out += (c == 'E') ? "E" : "A";
  return out;
}

}  // namespace grouprank
