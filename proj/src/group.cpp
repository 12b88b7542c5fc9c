#include "grouprank/group.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "grouprank/analysis.hpp"
#include "grouprank/numeric.hpp"

namespace grouprank {

const Config& default_config() {
  static const Config cfg;
  return cfg;
}

namespace {

struct Bitset {
  explicit Bitset(int n) : bits((n + 63) / 64, 0) {}
  bool test(int i) const { return (bits[i >> 6] >> (i & 63)) & 1; }
  void set(int i) { bits[i >> 6] |= (uint64_t{1} << (i & 63)); }
  std::vector<uint64_t> bits;
};

struct VecHash {
  size_t operator()(const std::vector<int32_t>& v) const {
    size_t h = v.size();
    for (int32_t x : v) h ^= size_t(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

// Closure under products starting from an already-closed base plus extra
// seeds.  `members` is extended in place; `start` marks the first index
// whose pairs are not yet closed.
void close_under_products(const FiniteGroup& G, std::vector<int32_t>& members,
                          Bitset& in, size_t start) {
  for (size_t i = start; i < members.size(); ++i) {
    int32_t x = members[i];
    for (size_t j = 0; j < members.size(); ++j) {
      int32_t y = members[j];
      int32_t a = G.mul(x, y);
      if (!in.test(a)) {
        in.set(a);
        members.push_back(a);
      }
      int32_t b = G.mul(y, x);
      if (!in.test(b)) {
        in.set(b);
        members.push_back(b);
      }
    }
  }
}

}  // namespace

// ---------------------------------------------------------------- FiniteGroup

FiniteGroup::FiniteGroup(int order, std::vector<int32_t> table, std::string label)
    : order_(order),
      table_(std::move(table)),
      label_(std::move(label)),
      analysis_(std::make_unique<detail::Analysis>()) {}

FiniteGroup::~FiniteGroup() = default;

GroupPtr FiniteGroup::make(int order, std::vector<int32_t> table, std::string label,
                           const Config& cfg) {
  if (order < 1) throw InvalidInput("group order must be positive");
  if (order > cfg.order_cap)
    throw CapExceeded("order-cap", "group of order " + std::to_string(order) +
                                       " exceeds order cap " + std::to_string(cfg.order_cap));
  if (order > Config::hard_order_limit)
    throw CapExceeded("order-cap", "group of order " + std::to_string(order) +
                                       " exceeds the dense-table limit " +
                                       std::to_string(Config::hard_order_limit));
  if (table.size() != size_t(order) * order)
    throw InvalidInput("Cayley table has wrong shape");
  for (int32_t v : table)
    if (v < 0 || v >= order) throw InvalidInput("Cayley table entry out of range");

  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup(order, std::move(table), std::move(label)));

  // identity at index 0
  for (int32_t a = 0; a < order; ++a)
    if (g->mul(0, a) != a || g->mul(a, 0) != a)
      throw InvalidInput("index 0 is not a two-sided identity in '" + g->label_ + "'");

  // two-sided inverses
  g->inverse_.assign(order, -1);
  for (int32_t a = 0; a < order; ++a) {
    for (int32_t b = 0; b < order; ++b) {
      if (g->mul(a, b) == 0) {
        if (g->mul(b, a) != 0)
          throw InvalidInput("one-sided inverse in '" + g->label_ + "'");
        g->inverse_[a] = b;
        break;
      }
    }
    if (g->inverse_[a] < 0) throw InvalidInput("missing inverse in '" + g->label_ + "'");
  }

  if (order <= 256) {
    g->validate_exhaustive();
  } else {
    // deterministic sample; constructions from verified specs are
    // associative by construction, this is a tripwire for literal tables
    uint64_t s = 0x9e3779b97f4a7c15ULL;
    auto next = [&s] {
      s ^= s << 13;
      s ^= s >> 7;
      s ^= s << 17;
      return s;
    };
    for (int i = 0; i < 200000; ++i) {
      int32_t a = int32_t(next() % order), b = int32_t(next() % order), c = int32_t(next() % order);
      if (g->mul(g->mul(a, b), c) != g->mul(a, g->mul(b, c)))
        throw InvalidInput("associativity failure in '" + g->label_ + "'");
    }
  }
  return g;
}

void FiniteGroup::validate_exhaustive() const {
  for (int32_t a = 0; a < order_; ++a)
    for (int32_t b = 0; b < order_; ++b)
      for (int32_t c = 0; c < order_; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
          throw InvalidInput("associativity failure in '" + label_ + "'");
}

int32_t FiniteGroup::conj(int32_t g, int32_t h) const { return mul(mul(inv(h), g), h); }

int32_t FiniteGroup::comm(int32_t g, int32_t h) const {
  return mul(mul(inv(g), inv(h)), mul(g, h));
}

int32_t FiniteGroup::power(int32_t g, long long e) const {
  if (e < 0) return power(inv(g), -e);
  int32_t acc = identity, base = g;
  while (e > 0) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

int FiniteGroup::element_order(int32_t g) const {
  int o = 1;
  int32_t x = g;
  while (x != identity) {
    x = mul(x, g);
    ++o;
  }
  return o;
}

// ------------------------------------------------------------------ Subgroup

bool Subgroup::contains(int32_t g) const {
  return std::binary_search(elements.begin(), elements.end(), g);
}

bool Subgroup::is_whole_group() const { return order() == parent->order(); }

bool Subgroup::is_normal_in_parent() const {
  const FiniteGroup& G = *parent;
  for (int32_t g = 0; g < G.order(); ++g)
    for (int32_t h : elements)
      if (!contains(G.conj(h, g))) return false;
  return true;
}

bool Subgroup::normalizes(const Subgroup& inner) const {
  for (int32_t g : elements)
    for (int32_t h : inner.elements)
      if (!inner.contains(parent->conj(h, g))) return false;
  return true;
}

// -------------------------------------------------------------- Homomorphism

void Homomorphism::verify() const {
  if (map.size() != size_t(source->order()))
    throw InvalidInput("homomorphism map has wrong length");
  if (map[FiniteGroup::identity] != FiniteGroup::identity)
    throw InvalidInput("homomorphism does not fix the identity");
  int n = source->order();
  for (int32_t a = 0; a < n; ++a)
    for (int32_t b = 0; b < n; ++b)
      if (map[source->mul(a, b)] != target->mul(map[a], map[b]))
        throw InvalidInput("map is not multiplicative");
}

bool Homomorphism::is_surjective() const {
  std::vector<char> hit(target->order(), 0);
  int count = 0;
  for (int32_t v : map)
    if (!hit[v]) {
      hit[v] = 1;
      ++count;
    }
  return count == target->order();
}

Subgroup Homomorphism::kernel() const {
  std::vector<int32_t> ker;
  for (int32_t g = 0; g < source->order(); ++g)
    if (map[g] == FiniteGroup::identity) ker.push_back(g);
  return make_subgroup(source, std::move(ker));
}

int32_t MaterializedSubgroup::from_parent(int32_t parent_index) const {
  auto it = std::lower_bound(to_parent.begin(), to_parent.end(), parent_index);
  if (it == to_parent.end() || *it != parent_index)
    throw InvalidInput("element does not belong to the materialized subgroup");
  return int32_t(it - to_parent.begin());
}

// ------------------------------------------------------------------ closures

std::vector<int32_t> closed_set(const FiniteGroup& G, std::span<const int32_t> seed) {
  Bitset in(G.order());
  std::vector<int32_t> members;
  in.set(FiniteGroup::identity);
  members.push_back(FiniteGroup::identity);
  for (int32_t s : seed) {
    if (s < 0 || s >= G.order()) throw InvalidInput("seed element out of range");
    if (!in.test(s)) {
      in.set(s);
      members.push_back(s);
    }
  }
  close_under_products(G, members, in, 0);
  std::sort(members.begin(), members.end());
  return members;
}

Subgroup subgroup_generated(const GroupPtr& G, std::span<const int32_t> seed) {
  Subgroup H{G, closed_set(*G, seed)};
  return H;
}

Subgroup make_subgroup(GroupPtr G, std::vector<int32_t> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (elements.empty() || elements[0] != FiniteGroup::identity)
    throw InvalidInput("subgroup must contain the identity");
  Subgroup H{G, std::move(elements)};
  for (int32_t a : H.elements)
    for (int32_t b : H.elements)
      if (!H.contains(G->mul(a, b))) throw InvalidInput("set is not closed under products");
  if (G->order() % H.order() != 0)
    throw InvalidInput("subgroup order does not divide group order");  // cannot happen if closed
  return H;
}

Subgroup trivial_subgroup(const GroupPtr& G) {
  return Subgroup{G, {FiniteGroup::identity}};
}

Subgroup whole_group(const GroupPtr& G) {
  std::vector<int32_t> all(G->order());
  std::iota(all.begin(), all.end(), 0);
  return Subgroup{G, std::move(all)};
}

// ------------------------------------------------------------ direct product

GroupPtr direct_product(const GroupPtr& G, const GroupPtr& H, const Config& cfg) {
  long long n = 1LL * G->order() * H->order();
  if (n > cfg.order_cap || n > Config::hard_order_limit)
    throw CapExceeded("order-cap", "direct product of order " + std::to_string(n) +
                                       " exceeds the order cap");
  int nH = H->order(), N = int(n);
  std::vector<int32_t> table(size_t(N) * N);
  for (int32_t a = 0; a < N; ++a) {
    int32_t ag = a / nH, ah = a % nH;
    for (int32_t b = 0; b < N; ++b) {
      int32_t bg = b / nH, bh = b % nH;
      table[size_t(a) * N + b] = G->mul(ag, bg) * nH + H->mul(ah, bh);
    }
  }
  return FiniteGroup::make(N, std::move(table), G->label() + " x " + H->label(), cfg);
}

// ----------------------------------------------------------------- quotient

QuotientResult quotient(const GroupPtr& G, const Subgroup& N) {
  if (N.parent.get() != G.get()) throw InvalidInput("subgroup belongs to a different group");
  if (!N.is_normal_in_parent())
    throw InvalidInput("cannot form quotient: subgroup is not normal");

  int n = G->order();
  std::vector<int32_t> coset_of(n, -1);
  std::vector<int32_t> reps;
  for (int32_t g = 0; g < n; ++g) {
    if (coset_of[g] >= 0) continue;
    int32_t idx = int32_t(reps.size());
    reps.push_back(g);  // minimal index in its coset by the ascending scan
    for (int32_t h : N.elements) coset_of[G->mul(g, h)] = idx;
  }
  int m = int(reps.size());
  std::vector<int32_t> table(size_t(m) * m);
  for (int32_t i = 0; i < m; ++i)
    for (int32_t j = 0; j < m; ++j) table[size_t(i) * m + j] = coset_of[G->mul(reps[i], reps[j])];

  GroupPtr Q = FiniteGroup::make(m, std::move(table), G->label() + "/" + std::to_string(N.order()),
                                 Config{.order_cap = Config::hard_order_limit});
  Homomorphism proj{G, Q, std::move(coset_of)};
  proj.verify();
  return {Q, std::move(proj)};
}

// ------------------------------------------------------- centralizer, center

Subgroup centralizer(const GroupPtr& G, std::span<const int32_t> S) {
  std::vector<int32_t> c;
  for (int32_t g = 0; g < G->order(); ++g) {
    bool ok = true;
    for (int32_t s : S)
      if (G->mul(g, s) != G->mul(s, g)) {
        ok = false;
        break;
      }
    if (ok) c.push_back(g);
  }
  return Subgroup{G, std::move(c)};  // pointwise centralizer is closed
}

Subgroup center(const GroupPtr& G) {
  auto& set = G->analysis().center_set.get([&] {
    std::vector<int32_t> all(G->order());
    std::iota(all.begin(), all.end(), 0);
    return centralizer(G, all).elements;
  });
  return Subgroup{G, set};
}

std::vector<int32_t> derived_set(const FiniteGroup& G) {
  Bitset seen(G.order());
  std::vector<int32_t> vals;
  for (int32_t a = 0; a < G.order(); ++a)
    for (int32_t b = 0; b < G.order(); ++b) {
      int32_t c = G.comm(a, b);
      if (!seen.test(c)) {
        seen.set(c);
        vals.push_back(c);
      }
    }
  std::sort(vals.begin(), vals.end());
  return vals;
}

Subgroup derived_subgroup(const GroupPtr& G) {
  auto& set = G->analysis().derived_closure.get([&] {
    auto vals = derived_set(*G);
    return closed_set(*G, vals);
  });
  return Subgroup{G, set};
}

bool is_abelian(const FiniteGroup& G) {
  return G.analysis().abelian.get([&] {
    for (int32_t a = 0; a < G.order(); ++a)
      for (int32_t b = a + 1; b < G.order(); ++b)
        if (G.mul(a, b) != G.mul(b, a)) return false;
    return true;
  });
}

bool is_nilpotent(const FiniteGroup& G) {
  return G.analysis().nilpotent.get([&] {
    // nilpotent iff for each prime the p-power-order elements form a
    // subgroup of full p-part order (the normal Sylow subgroup)
    for (auto& [p, e] : factorize(G.order())) {
      std::vector<int32_t> pelems;
      for (int32_t g = 0; g < G.order(); ++g) {
        int o = G.element_order(g);
        if (p_part(o, p) == o) pelems.push_back(g);
      }
      if (int(pelems.size()) != p_part(G.order(), p)) return false;
      auto cl = closed_set(G, pelems);
      if (int(cl.size()) != p_part(G.order(), p)) return false;
    }
    return true;
  });
}

const std::map<int, int>& order_histogram(const FiniteGroup& G) {
  return G.analysis().order_hist.get([&] {
    std::map<int, int> h;
    for (int32_t g = 0; g < G.order(); ++g) ++h[G.element_order(g)];
    return h;
  });
}

// -------------------------------------------------------------- materialize

MaterializedSubgroup materialize(const Subgroup& H) {
  const FiniteGroup& G = *H.parent;
  int m = H.order();
  std::vector<int32_t> pos(G.order(), -1);
  for (int32_t i = 0; i < m; ++i) pos[H.elements[i]] = i;
  std::vector<int32_t> table(size_t(m) * m);
  for (int32_t i = 0; i < m; ++i)
    for (int32_t j = 0; j < m; ++j) {
      int32_t prod = G.mul(H.elements[i], H.elements[j]);
      table[size_t(i) * m + j] = pos[prod];
    }
  GroupPtr sub = FiniteGroup::make(m, std::move(table), G.label() + "<" + std::to_string(m) + ">",
                                   Config{.order_cap = Config::hard_order_limit});
  return MaterializedSubgroup{sub, H.elements};
}

Subgroup push_forward(const Homomorphism& f, const Subgroup& H) {
  std::vector<int32_t> img;
  for (int32_t h : H.elements) img.push_back(f.map[h]);
  std::sort(img.begin(), img.end());
  img.erase(std::unique(img.begin(), img.end()), img.end());
  return Subgroup{f.target, std::move(img)};
}

// ------------------------------------------------------------- all subgroups

std::vector<Subgroup> all_subgroups(const GroupPtr& G, const Config& cfg) {
  if (G->order() > cfg.subgroup_cap)
    throw CapExceeded("subgroup-cap", "subgroup enumeration refused for order " +
                                          std::to_string(G->order()) + " > cap " +
                                          std::to_string(cfg.subgroup_cap));

  auto& sets = G->analysis().subgroup_sets.get([&] {
    int n = G->order();
    std::unordered_set<std::vector<int32_t>, VecHash> found;
    std::vector<std::vector<int32_t>> worklist;

    auto add = [&](std::vector<int32_t> v) {
      if (found.insert(v).second) worklist.push_back(std::move(v));
    };

    add({FiniteGroup::identity});
    for (int32_t g = 1; g < n; ++g) add(closed_set(*G, std::span<const int32_t>(&g, 1)));

    for (size_t w = 0; w < worklist.size(); ++w) {
      std::vector<int32_t> base = worklist[w];  // copy: worklist may reallocate
      if (int(base.size()) == n) continue;
      Bitset in_base(n);
      for (int32_t x : base) in_base.set(x);
      // one adjoin per right coset: <S,g> = <S,sg>, so coset minima suffice
      Bitset covered(n);
      for (int32_t g = 0; g < n; ++g) {
        if (in_base.test(g) || covered.test(g)) continue;
        for (int32_t s : base) covered.set(G->mul(s, g));
        std::vector<int32_t> members = base;
        Bitset in = in_base;
        size_t start = members.size();
        members.push_back(g);
        in.set(g);
        close_under_products(*G, members, in, start);
        std::sort(members.begin(), members.end());
        add(std::move(members));
      }
    }

    std::vector<std::vector<int32_t>> out(found.begin(), found.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return a < b;
    });
    return out;
  });

  std::vector<Subgroup> result;
  result.reserve(sets.size());
  for (const auto& s : sets) result.push_back(Subgroup{G, s});
  return result;
}

// ---------------------------------------------------------------- isomorphism

namespace {

std::vector<int> abelianization_type(const GroupPtr& G);

// greedy generating chain: repeatedly adjoin the smallest element outside
// the closure so far
std::vector<int32_t> greedy_generators(const FiniteGroup& G) {
  std::vector<int32_t> gens;
  std::vector<int32_t> cl{FiniteGroup::identity};
  while (int(cl.size()) < G.order()) {
    int32_t g = 0;
    while (std::binary_search(cl.begin(), cl.end(), g)) ++g;
    gens.push_back(g);
    cl = closed_set(G, gens);
  }
  return gens;
}

// Extends a generator-image assignment to an injective homomorphism on the
// generated subgroup by closure.  Returns false on any conflict; when
// require_full, additionally demands that the generators span all of G.
bool extend_map(const FiniteGroup& G, const FiniteGroup& H,
                std::span<const int32_t> gens, std::span<const int32_t> images,
                bool require_full, std::int64_t& budget) {
  std::vector<int32_t> img(G.order(), -1);
  img[0] = 0;
  std::vector<int32_t> known{0};
  std::vector<char> used(H.order(), 0);
  used[0] = 1;
  for (size_t i = 0; i < gens.size(); ++i) {
    if (img[gens[i]] >= 0) {
      if (img[gens[i]] != images[i]) return false;
      continue;
    }
    if (used[images[i]]) return false;
    img[gens[i]] = images[i];
    used[images[i]] = 1;
    known.push_back(gens[i]);
  }
  for (size_t i = 0; i < known.size(); ++i) {
    int32_t x = known[i];
    for (size_t j = 0; j < known.size(); ++j) {
      if (--budget < 0) throw Undecided("search-node-cap", "isomorphism search budget exhausted");
      int32_t y = known[j];
      const int32_t prods[2] = {G.mul(x, y), G.mul(y, x)};
      const int32_t imgs[2] = {H.mul(img[x], img[y]), H.mul(img[y], img[x])};
      for (int t = 0; t < 2; ++t) {
        if (img[prods[t]] < 0) {
          if (used[imgs[t]]) return false;
          img[prods[t]] = imgs[t];
          used[imgs[t]] = 1;
          known.push_back(prods[t]);
        } else if (img[prods[t]] != imgs[t]) {
          return false;
        }
      }
    }
  }
  return !require_full || int(known.size()) == G.order();
}

bool search_isomorphism(const FiniteGroup& G, const FiniteGroup& H,
                        const std::vector<int32_t>& gens, size_t k,
                        std::vector<int32_t>& images, std::int64_t& budget) {
  if (k == gens.size())
    return extend_map(G, H, gens, images, /*require_full=*/true, budget);
  int want = G.element_order(gens[k]);
  for (int32_t h = 0; h < H.order(); ++h) {
    if (--budget < 0) throw Undecided("search-node-cap", "isomorphism search budget exhausted");
    if (H.element_order(h) != want) continue;
    images[k] = h;
    std::span<const int32_t> part(gens.data(), k + 1);
    std::span<const int32_t> pimg(images.data(), k + 1);
    if (extend_map(G, H, part, pimg, /*require_full=*/false, budget) &&
        search_isomorphism(G, H, gens, k + 1, images, budget))
      return true;
  }
  return false;
}

}  // namespace

bool is_isomorphic(const GroupPtr& Gp, const GroupPtr& Hp, const Config& cfg) {
  const FiniteGroup& G = *Gp;
  const FiniteGroup& H = *Hp;
  if (G.order() != H.order()) return false;
  if (order_histogram(G) != order_histogram(H)) return false;
  if (center(Gp).order() != center(Hp).order()) return false;
  if (derived_subgroup(Gp).order() != derived_subgroup(Hp).order()) return false;
  if (abelianization_type(Gp) != abelianization_type(Hp)) return false;

  auto gens = greedy_generators(G);
  std::vector<int32_t> images(gens.size(), -1);
  std::int64_t budget = cfg.search_node_cap;
  return search_isomorphism(G, H, gens, 0, images, budget);
}

namespace {

std::vector<int> abelianization_type(const GroupPtr& G) {
  return G->analysis().abelianization_type.get([&] {
    auto q = quotient(G, derived_subgroup(G));
    // order histogram of an abelian group pins its isomorphism type
    std::vector<int> t;
    for (auto& [o, c] : order_histogram(*q.group)) {
      t.push_back(o);
      t.push_back(c);
    }
    return t;
  });
}

}  // namespace

}  // namespace grouprank
