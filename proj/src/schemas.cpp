#include "grouprank/schemas.hpp"

#include <sstream>

#include "grouprank/numeric.hpp"

namespace grouprank {

int q_of(const std::set<int>& pi) {
  if (pi.empty()) throw InvalidInput("empty prime set");
  long long q = 1;
  for (int p : pi) {
    if (!is_prime(p)) throw InvalidInput("prime set contains a non-prime");
    q *= p;
  }
  if (q > 1'000'000) throw InvalidInput("prime set product too large");
  return int(q);
}

namespace {

std::string numbered(const std::string& stem, int i) { return stem + std::to_string(i); }

}  // namespace

Sentence build_beta1(const std::set<int>& pi, int r) {
  if (r < 1) throw InvalidInput("beta1 needs r >= 1");
  int q = q_of(pi);

  std::vector<TermPtr> a(r), x(r), y(r);
  for (int j = 0; j < r; ++j) {
    a[j] = Term::var(numbered("a", j + 1));
    x[j] = Term::var(numbered("x", j + 1));
    y[j] = Term::var(numbered("y", j + 1));
  }
  TermPtr h = Term::var("h");
  TermPtr z = Term::var("z");

  // b = [x1,y1]...[xr,yr] z^q
  std::vector<TermPtr> bfac;
  for (int j = 0; j < r; ++j) bfac.push_back(Term::commutator(x[j], y[j]));
  bfac.push_back(Term::power(z, q));
  TermPtr b = Term::product(bfac);

  // one disjunct h = a1^e1 ... ar^er b per exponent tuple, last index fastest
  std::vector<FormulaPtr> disjuncts;
  std::vector<int> e(r, 0);
  while (true) {
    std::vector<TermPtr> factors;
    for (int j = 0; j < r; ++j)
      if (e[j] != 0) factors.push_back(Term::power(a[j], e[j]));
    factors.push_back(b);
    disjuncts.push_back(Formula::eq(h, Term::product(factors)));
    int j = r - 1;
    while (j >= 0 && e[j] == q - 1) e[j--] = 0;
    if (j < 0) break;
    ++e[j];
  }

  // E a1..ar . A h . E x1 y1 .. xr yr z . (disjunction)
  FormulaPtr inner = Formula::exists("z", Formula::disj_all(std::move(disjuncts)));
  for (int j = r - 1; j >= 0; --j) {
    inner = Formula::exists(numbered("y", j + 1), inner);
    inner = Formula::exists(numbered("x", j + 1), inner);
  }
  FormulaPtr f = Formula::forall("h", inner);
  for (int j = r - 1; j >= 0; --j) f = Formula::exists(numbered("a", j + 1), f);

  return Sentence{f, Schema{Beta1Schema{pi, r}}};
}

Sentence build_gamma(int q) {
  if (q < 1) throw InvalidInput("gamma needs q >= 1");
  TermPtr x = Term::var("x"), y = Term::var("y"), z = Term::var("z");
  FormulaPtr f = Formula::forall(
      "x", Formula::forall(
               "y", Formula::exists("z", Formula::eq(Term::commutator(x, y),
                                                     Term::power(z, 2LL * q)))));
  return Sentence{f, Schema{GammaSchema{q}}};
}

Sentence build_quotient_iso_sentence(const GroupPtr& B, const FormulaPtr& phi) {
  auto fv = free_variables(phi);
  if (fv.size() != 1)
    throw InvalidInput("quotient-iso needs a defining formula with exactly one free variable");
  std::string v = *fv.begin();

  int n = B->order();
  int fresh = 0;
  auto apply = [&](const TermPtr& t) { return substitute(phi, v, t, fresh); };

  std::vector<TermPtr> a(n);
  for (int i = 0; i < n; ++i) a[i] = Term::var(numbered("a", i + 1));
  TermPtr x = Term::var("qx"), y = Term::var("qy");

  std::vector<FormulaPtr> conjuncts;
  conjuncts.push_back(apply(Term::one()));
  conjuncts.push_back(Formula::implies(Formula::conj(apply(x), apply(y)),
                                       apply(Term::mul(Term::inv(x), y))));
  conjuncts.push_back(
      Formula::implies(apply(x), apply(Term::mul(Term::mul(Term::inv(y), x), y))));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      conjuncts.push_back(Formula::negation(apply(Term::mul(Term::inv(a[i]), a[j]))));
  {
    std::vector<FormulaPtr> cover;
    for (int i = 0; i < n; ++i) cover.push_back(apply(Term::mul(Term::inv(a[i]), y)));
    conjuncts.push_back(Formula::disj_all(std::move(cover)));
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int m = B->mul(i, j);
      conjuncts.push_back(apply(Term::mul(Term::inv(a[m]), Term::mul(a[i], a[j]))));
    }

  FormulaPtr f = Formula::forall("qx", Formula::forall("qy", Formula::conj_all(std::move(conjuncts))));
  for (int i = n - 1; i >= 0; --i) f = Formula::exists(numbered("a", i + 1), f);
  return Sentence{f, Schema{QuotientIsoSchema{B, phi, v}}};
}

Sentence conj_sentences(std::vector<Sentence> parts) {
  if (parts.empty()) throw InvalidInput("empty conjunction of sentences");
  if (parts.size() == 1) return parts[0];
  std::vector<FormulaPtr> fs;
  ConjSchema cs;
  bool all_tagged = true;
  for (auto& p : parts) {
    fs.push_back(p.formula);
    if (p.schema)
      cs.parts.push_back(*p.schema);
    else
      all_tagged = false;
  }
  Sentence out;
  out.formula = Formula::conj_all(std::move(fs));
  if (all_tagged) out.schema = Schema{std::move(cs)};
  return out;
}

// ----------------------------------------------------------- annotations

std::string schema_annotation(const Schema& s) {
  std::ostringstream os;
  if (auto* b = std::get_if<Beta1Schema>(&s.node)) {
    os << "beta1 pi=";
    bool first = true;
    for (int p : b->pi) {
      if (!first) os << ",";
      os << p;
      first = false;
    }
    os << " r=" << b->r;
  } else if (auto* g = std::get_if<GammaSchema>(&s.node)) {
    os << "gamma q=" << g->q;
  } else if (std::holds_alternative<QuotientIsoSchema>(s.node)) {
    os << "quotient-iso";  // not reconstructible from text alone
  } else {
    os << "conj";
  }
  return os.str();
}

std::optional<Schema> parse_schema_annotation(const std::string& text) {
  std::istringstream is(text);
  std::string kind;
  is >> kind;
  if (kind == "gamma") {
    std::string qs;
    is >> qs;
    if (!qs.starts_with("q=")) return std::nullopt;
    return Schema{GammaSchema{std::stoi(qs.substr(2))}};
  }
  if (kind == "beta1") {
    std::string ps, rs;
    is >> ps >> rs;
    if (!ps.starts_with("pi=") || !rs.starts_with("r=")) return std::nullopt;
    std::set<int> pi;
    std::string rest = ps.substr(3);
    size_t at = 0;
    while (at < rest.size()) {
      size_t comma = rest.find(',', at);
      if (comma == std::string::npos) comma = rest.size();
      pi.insert(std::stoi(rest.substr(at, comma - at)));
      at = comma + 1;
    }
    return Schema{Beta1Schema{pi, std::stoi(rs.substr(2))}};
  }
  return std::nullopt;
}

}  // namespace grouprank
