#include "grouprank/towers.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "grouprank/invariants.hpp"
#include "grouprank/numeric.hpp"

namespace grouprank {

namespace {

// One tensor factor of a family tower.  Product-structured families are
// computed per component: omega1, Frattini subgroups and generator counts
// all distribute over these direct factors, which keeps the deep corners
// of the parameter space exact without materializing huge products.
struct Component {
  enum class Kind { Cyclic, Constant, Jordan };
  Kind kind;
  int p = 0;
  int n = 0;          // Jordan block size
  GroupSpec torsion;  // Constant

  long long level_order(int k) const {
    switch (kind) {
      case Kind::Cyclic:
        return ipow(p, k);
      case Kind::Constant: {
        return torsion_order_;
      }
      case Kind::Jordan:
        return ipow(p, static_cast<long long>(k) * (n + 1));
    }
    return 1;
  }

  GroupPtr level(int k, const Config& cfg) const;
  // element map from level K down to level k (K >= k)
  std::vector<int32_t> projection_map(int K, int k, const Config& cfg) const;

  mutable long long torsion_order_ = 0;
};

std::vector<std::vector<long long>> jordan_matrix(int n) {
  std::vector<std::vector<long long>> J(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i) {
    J[i][i] = 1;
    if (i + 1 < n) J[i][i + 1] = 1;
  }
  return J;
}

GroupPtr Component::level(int k, const Config& cfg) const {
  switch (kind) {
    case Kind::Cyclic:
      return cyclic_group(int(ipow(p, k)), cfg);
    case Kind::Constant:
      return elaborate(torsion, cfg);
    case Kind::Jordan: {
      long long pk = ipow(p, k);
      if (pk > cfg.order_cap)
        throw CapExceeded("order-cap", "tower level base exceeds the order cap");
      auto J = jordan_matrix(n);
      int ord = action_order(std::vector<int>(n, int(pk)), J);
      // actor of exactly the action's order keeps the product faithful
      return elaborate(semidirect_spec(ord, std::vector<int>(n, int(pk)), J,
                                       "J(" + std::to_string(p) + "," + std::to_string(n) +
                                           ")@" + std::to_string(k)),
                       cfg);
    }
  }
  throw Error("internal: bad component");
}

std::vector<int32_t> Component::projection_map(int K, int k, const Config& cfg) const {
  switch (kind) {
    case Kind::Cyclic: {
      long long big = ipow(p, K), small = ipow(p, k);
      std::vector<int32_t> map(big);
      for (long long g = 0; g < big; ++g) map[g] = int32_t(g % small);
      return map;
    }
    case Kind::Constant: {
      long long m = level_order(1);
      std::vector<int32_t> map(m);
      for (long long g = 0; g < m; ++g) map[g] = int32_t(g);
      return map;
    }
    case Kind::Jordan: {
      long long pK = ipow(p, K), pk = ipow(p, k);
      auto JB = jordan_matrix(n);
      long long actor_big = action_order(std::vector<int>(n, int(pK)), JB);
      long long actor_small = action_order(std::vector<int>(n, int(pk)), JB);
      long long baseK = ipow(pK, n), basek = ipow(pk, n);
      std::vector<int32_t> map(actor_big * baseK);
      for (long long t = 0; t < actor_big; ++t) {
        for (long long x = 0; x < baseK; ++x) {
          long long rest = x, xs = 0, mult = 1;
          for (int i = 0; i < n; ++i) {
            long long xi = rest % pK;
            rest /= pK;
            xs += (xi % pk) * mult;
            mult *= pk;
          }
          map[t * baseK + x] = int32_t((t % actor_small) * basek + xs);
        }
      }
      (void)cfg;
      return map;
    }
  }
  throw Error("internal: bad component");
}

struct ComponentList {
  std::vector<Component> comps;
  long long torsion_order = 1;  // per-prime torsion size, for layer trims
};

ComponentList components_of(const ProPFamily& fam, const Config& cfg) {
  ComponentList out;
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, UniformAbelianFamily>) {
          for (int i = 0; i < node.d; ++i)
            out.comps.push_back(Component{Component::Kind::Cyclic, node.p, 0, {}});
        } else if constexpr (std::is_same_v<T, AbelianTimesTorsionFamily>) {
          for (int i = 0; i < node.d; ++i)
            out.comps.push_back(Component{Component::Kind::Cyclic, node.p, 0, {}});
          Component c{Component::Kind::Constant, node.p, 0, node.torsion};
          auto T_ = elaborate(node.torsion, cfg);
          c.torsion_order_ = T_->order();
          out.torsion_order *= T_->order();
          out.comps.push_back(std::move(c));
        } else if constexpr (std::is_same_v<T, JordanMetabelianFamily>) {
          out.comps.push_back(Component{Component::Kind::Jordan, node.p, node.n, {}});
        } else {
          for (const auto& f : node.factors) {
            auto sub = components_of(f, cfg);
            for (auto& c : sub.comps) out.comps.push_back(std::move(c));
            out.torsion_order *= sub.torsion_order;
          }
        }
      },
      fam.node);
  return out;
}

}  // namespace

// ----------------------------------------------------------- constructors

ProPFamily uniform_abelian(int p, int d) {
  if (!is_prime(p) || d < 0) throw InvalidInput("uniform_abelian needs a prime and d >= 0");
  return ProPFamily{UniformAbelianFamily{p, d},
                    "Z" + std::to_string(p) + "^" + std::to_string(d)};
}

ProPFamily abelian_times_torsion(int p, int d, GroupSpec torsion) {
  if (!is_prime(p) || d < 0) throw InvalidInput("abelian_times_torsion needs a prime and d >= 0");
  auto T = elaborate(torsion);
  if (!is_p_group(*T, p))
    throw InvalidInput("torsion part must be a " + std::to_string(p) + "-group");
  if (T->order() > 1 && !is_powerful(T, p))
    throw InvalidInput("torsion part must be powerful");
  std::string label = "Z" + std::to_string(p) + "^" + std::to_string(d) + " x " + torsion.label;
  return ProPFamily{AbelianTimesTorsionFamily{p, d, std::move(torsion)}, std::move(label)};
}

ProPFamily jordan_metabelian(int p, int n) {
  if (!is_prime(p) || !(p > n && n >= 2))
    throw InvalidInput("jordan_metabelian requires a prime p > n >= 2");
  return ProPFamily{JordanMetabelianFamily{p, n},
                    "J(" + std::to_string(p) + "," + std::to_string(n) + ")"};
}

ProPFamily family_product(std::vector<ProPFamily> factors) {
  std::vector<int> primes;
  std::string label;
  for (auto& f : factors) {
    for (int p : family_primes(f)) primes.push_back(p);
    label += (label.empty() ? "" : " x ") + f.label;
  }
  std::sort(primes.begin(), primes.end());
  if (std::adjacent_find(primes.begin(), primes.end()) != primes.end())
    throw InvalidInput("family product requires distinct primes");
  return ProPFamily{FamilyProduct{std::move(factors)}, std::move(label)};
}

std::vector<int> family_primes(const ProPFamily& fam) {
  return std::visit(
      [&](const auto& node) -> std::vector<int> {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, FamilyProduct>) {
          std::vector<int> ps;
          for (const auto& f : node.factors)
            for (int p : family_primes(f)) ps.push_back(p);
          return ps;
        } else {
          return {node.p};
        }
      },
      fam.node);
}

// -------------------------------------------------------- finite quotients

namespace {

GroupPtr product_of(const std::vector<GroupPtr>& parts, const Config& cfg) {
  if (parts.empty()) return trivial_group();
  GroupPtr acc = parts[0];
  for (size_t i = 1; i < parts.size(); ++i) acc = direct_product(acc, parts[i], cfg);
  return acc;
}

// index decode for the left-fold product: index = ((i1*n2+i2)*n3+i3)...
std::vector<int32_t> decode(long long idx, const std::vector<long long>& orders) {
  std::vector<int32_t> out(orders.size());
  for (size_t i = orders.size(); i-- > 0;) {
    out[i] = int32_t(idx % orders[i]);
    idx /= orders[i];
  }
  return out;
}

long long encode(const std::vector<int32_t>& xs, const std::vector<long long>& orders) {
  long long idx = 0;
  for (size_t i = 0; i < orders.size(); ++i) idx = idx * orders[i] + xs[i];
  return idx;
}

}  // namespace

TowerLevel finite_quotient(const ProPFamily& fam, int depth, const Config& cfg) {
  if (depth < 1) throw InvalidInput("tower depth must be >= 1");
  if (depth > cfg.tower_depth_cap)
    throw CapExceeded("tower-depth-cap", "depth " + std::to_string(depth) + " exceeds the cap");
  auto cl = components_of(fam, cfg);

  long long order = 1;
  for (auto& c : cl.comps) {
    order *= c.level_order(depth);
    if (order > cfg.order_cap || order > Config::hard_order_limit)
      throw CapExceeded("order-cap", "level order of '" + fam.label + "' at depth " +
                                         std::to_string(depth) + " exceeds the order cap");
  }

  std::vector<GroupPtr> parts;
  std::vector<long long> part_orders;
  for (auto& c : cl.comps) {
    parts.push_back(c.level(depth, cfg));
    part_orders.push_back(parts.back()->order());
  }
  TowerLevel lvl;
  lvl.depth = depth;
  lvl.group = product_of(parts, cfg);

  // designated powerful subgroup F
  {
    std::vector<int32_t> felems;
    // per component: Cyclic/Constant -> everything; Jordan -> actor^p with full base
    std::vector<std::vector<int32_t>> allowed;
    for (size_t ci = 0; ci < cl.comps.size(); ++ci) {
      std::vector<int32_t> ok;
      if (cl.comps[ci].kind == Component::Kind::Jordan) {
        const auto& g = parts[ci];
        long long base = ipow(ipow(cl.comps[ci].p, depth), cl.comps[ci].n);
        long long actor = g->order() / base;
        for (long long t = 0; t < actor; ++t)
          if (t % cl.comps[ci].p == 0)
            for (long long x = 0; x < base; ++x) ok.push_back(int32_t(t * base + x));
      } else {
        ok.resize(parts[ci]->order());
        std::iota(ok.begin(), ok.end(), 0);
      }
      allowed.push_back(std::move(ok));
    }
    std::vector<int32_t> idxs(cl.comps.size(), 0);
    std::function<void(size_t, long long)> emit = [&](size_t i, long long acc) {
      if (i == allowed.size()) {
        felems.push_back(int32_t(acc));
        return;
      }
      for (int32_t v : allowed[i]) emit(i + 1, acc * part_orders[i] + v);
    };
    emit(0, 0);
    std::sort(felems.begin(), felems.end());
    lvl.powerful_part = std::move(felems);
  }

  if (depth > 1) {
    std::vector<std::vector<int32_t>> pmaps;
    std::vector<long long> small_orders;
    for (auto& c : cl.comps) {
      pmaps.push_back(c.projection_map(depth, depth - 1, cfg));
      small_orders.push_back(c.level_order(depth - 1));
    }
    TowerLevel prev = finite_quotient(fam, depth - 1, cfg);
    std::vector<int32_t> map(lvl.group->order());
    for (long long g = 0; g < lvl.group->order(); ++g) {
      auto xs = decode(g, part_orders);
      std::vector<int32_t> ys(xs.size());
      for (size_t i = 0; i < xs.size(); ++i) ys[i] = pmaps[i][xs[i]];
      map[g] = int32_t(encode(ys, small_orders));
    }
    Homomorphism proj{lvl.group, prev.group, std::move(map)};
    proj.verify();
    if (!proj.is_surjective()) throw Error("internal: tower projection not surjective");
    lvl.to_previous = std::move(proj);
  }
  return lvl;
}

// ------------------------------------------------------------- dimensions

int dim_analytic(const ProPFamily& fam) {
  auto m = dim_analytic_map(fam);
  if (m.size() != 1) throw InvalidInput("dim_analytic on a product family: use the per-prime map");
  return m.begin()->second;
}

std::map<int, int> dim_analytic_map(const ProPFamily& fam) {
  return std::visit(
      [&](const auto& node) -> std::map<int, int> {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, UniformAbelianFamily>) {
          return {{node.p, node.d}};
        } else if constexpr (std::is_same_v<T, AbelianTimesTorsionFamily>) {
          return {{node.p, node.d}};  // torsion contributes nothing
        } else if constexpr (std::is_same_v<T, JordanMetabelianFamily>) {
          return {{node.p, node.n + 1}};
        } else {
          std::map<int, int> out;
          for (const auto& f : node.factors)
            for (auto& [p, d] : dim_analytic_map(f)) out[p] = d;
          return out;
        }
      },
      fam.node);
}

namespace {

// log_p layer sizes of the Frattini series of the designated powerful
// subgroup at the given depth, computed per component and summed.
std::vector<int> powerful_layer_logs(const ProPFamily& fam, int depth, const Config& cfg) {
  auto cl = components_of(fam, cfg);
  std::vector<std::vector<int>> per_comp;
  size_t maxlen = 0;
  for (auto& c : cl.comps) {
    GroupPtr g;
    if (c.kind == Component::Kind::Jordan) {
      // F = <c^p> ⋉ A: actor of order m(depth)-1 acting by the p-th power
      // of the unipotent map
      long long pk = ipow(c.p, depth);
      if (pk > cfg.order_cap) throw CapExceeded("order-cap", "component level exceeds cap");
      auto J = jordan_matrix(c.n);
      auto Jp = J;
      {
        std::vector<int> base(c.n, int(pk));
        // J^p by repeated multiplication
        for (int i = 1; i < c.p; ++i) {
          std::vector<std::vector<long long>> R(c.n, std::vector<long long>(c.n, 0));
          for (int a = 0; a < c.n; ++a)
            for (int b = 0; b < c.n; ++b) {
              long long s = 0;
              for (int m = 0; m < c.n; ++m) s += Jp[a][m] * J[m][b];
              R[a][b] = s % pk;
            }
          Jp = R;
        }
      }
      int ord = action_order(std::vector<int>(c.n, int(pk)), Jp);
      g = elaborate(semidirect_spec(ord, std::vector<int>(c.n, int(pk)), Jp, "F-part"), cfg);
    } else {
      g = c.level(depth, cfg);
    }
    auto chain = frattini_series(g, 4 * depth + 8, cfg);
    if (!chain.reached_fixpoint) throw Error("internal: finite p-group series did not terminate");
    std::vector<int> logs;
    for (size_t j = 0; j + 1 < chain.terms.size(); ++j)
      logs.push_back(ilog_exact(chain.terms[j].order() / chain.terms[j + 1].order(), c.p));
    per_comp.push_back(logs);
    maxlen = std::max(maxlen, logs.size());
  }
  std::vector<int> combined(maxlen, 0);
  for (auto& logs : per_comp)
    for (size_t j = 0; j < logs.size(); ++j) combined[j] += logs[j];
  return combined;
}

}  // namespace

int dim_estimate(const ProPFamily& fam, int window, const Config& cfg) {
  if (window < 2) throw InvalidInput("dim_estimate needs window >= 2");
  auto primes = family_primes(fam);
  if (primes.size() != 1)
    throw InvalidInput("dim_estimate works on single-prime families");
  int p = primes[0];
  auto cl = components_of(fam, cfg);
  // skip ceil(log_p |T|) + 1 head layers: the torsion floor distorts them
  int head = (cl.torsion_order > 1 ? ilog_exact(p_part(int(cl.torsion_order), p), p) : 0) + 1;

  for (int depth = 2; depth <= cfg.tower_depth_cap; ++depth) {
    // stop growing once any component level would blow the cap
    bool feasible = true;
    for (auto& c : cl.comps)
      if (c.level_order(depth) > cfg.order_cap) feasible = false;
    if (!feasible)
      throw Undecided("order-cap",
                      "no constant interior layer window reachable for '" + fam.label +
                          "' within the order cap");
    auto layers = powerful_layer_logs(fam, depth, cfg);
    int lo = head, hi = int(layers.size()) - cfg.layer_tail_trim;
    for (int s = lo; s + window <= hi; ++s) {
      bool constant = true;
      for (int t = s + 1; t < s + window; ++t)
        if (layers[t] != layers[s]) constant = false;
      if (constant) return layers[s];
    }
  }
  throw Undecided("tower-depth-cap", "no stabilized layer window for '" + fam.label +
                                         "' within the depth cap");
}

// ------------------------------------------------------------ omega1 tower

namespace {

// distinct images at level k of omega1 of level K, one component
long long omega1_image_count(const Component& c, int K, int k, const Config& cfg) {
  auto big = c.level(K, cfg);
  auto om = omega1(*big, c.p == 0 ? 2 : c.p);
  auto pm = c.projection_map(K, k, cfg);
  std::vector<int32_t> img;
  for (int32_t g : om) img.push_back(pm[g]);
  std::sort(img.begin(), img.end());
  img.erase(std::unique(img.begin(), img.end()), img.end());
  return static_cast<long long>(img.size());
}

}  // namespace

int omega1_stable(const ProPFamily& fam, int p, const Config& cfg) {
  auto cl = components_of(fam, cfg);
  // only the p-components can contain elements of order p
  std::vector<Component> comps;
  for (auto& c : cl.comps) {
    if (c.kind == Component::Kind::Constant) {
      auto T = elaborate(c.torsion, cfg);
      if (T->order() % p == 0) comps.push_back(c);
    } else if (c.p == p) {
      comps.push_back(c);
    }
  }
  if (comps.empty()) return 0;

  auto count_at = [&](int k, int K) {
    long long total = 1;
    for (auto& c : comps) {
      int cK = c.kind == Component::Kind::Constant ? 1 : K;
      int ck = c.kind == Component::Kind::Constant ? 1 : k;
      total *= omega1_image_count(c, cK, ck, cfg);
    }
    return total;
  };

  auto stable_over_K = [&](int k) -> long long {
    long long prev = -1;
    int run = 0;
    for (int K = k; K <= cfg.tower_depth_cap; ++K) {
      for (auto& c : comps)
        if (c.kind != Component::Kind::Constant && c.level_order(K) > cfg.order_cap)
          throw Undecided("order-cap", "omega1 tower for '" + fam.label +
                                           "' hit the order cap before stabilizing");
      long long cnt = count_at(k, K);
      run = (cnt == prev) ? run + 1 : 1;
      prev = cnt;
      if (run >= cfg.stabilization_reads) return cnt;
    }
    throw Undecided("tower-depth-cap", "omega1 tower did not stabilize in K");
  };

  long long prev = -1;
  int run = 0;
  for (int k = 1; k <= cfg.tower_depth_cap; ++k) {
    long long cnt = stable_over_K(k);
    run = (cnt == prev) ? run + 1 : 1;
    prev = cnt;
    if (run >= cfg.stabilization_reads) return ilog_exact(cnt, p);
  }
  throw Undecided("tower-depth-cap", "omega1 tower did not stabilize in k");
}

// ---------------------------------------------------------------- torsion

int torsion_rank(const ProPFamily& fam, const Config& cfg) {
  return std::visit(
      [&](const auto& node) -> int {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, AbelianTimesTorsionFamily>) {
          return min_generators(elaborate(node.torsion, cfg), cfg);
        } else if constexpr (std::is_same_v<T, FamilyProduct>) {
          int best = 0;
          for (const auto& f : node.factors) best = std::max(best, torsion_rank(f, cfg));
          return best;
        } else {
          return 0;  // torsion-free families
        }
      },
      fam.node);
}

int family_rank(const ProPFamily& fam, const Config& cfg) {
  return std::visit(
      [&](const auto& node) -> int {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, UniformAbelianFamily>) {
          return node.d;
        } else if constexpr (std::is_same_v<T, AbelianTimesTorsionFamily>) {
          return node.d + min_generators(elaborate(node.torsion, cfg), cfg);
        } else if constexpr (std::is_same_v<T, JordanMetabelianFamily>) {
          return node.n + 1;
        } else {
          int best = 0;
          for (const auto& f : node.factors) best = std::max(best, family_rank(f, cfg));
          return best;
        }
      },
      fam.node);
}

int stable_generator_count(const ProPFamily& fam, const Config& cfg) {
  auto cl = components_of(fam, cfg);
  auto d_at = [&](int depth) {
    int total = 0;
    for (auto& c : cl.comps) {
      auto g = c.level(depth, cfg);
      total += min_generators(g, cfg);
    }
    return total;
  };
  int prev = -1, run = 0;
  for (int depth = 1; depth <= cfg.tower_depth_cap; ++depth) {
    for (auto& c : cl.comps)
      if (c.level_order(depth) > cfg.order_cap)
        throw Undecided("order-cap", "generator count tower hit the order cap");
    int d = d_at(depth);
    run = (d == prev) ? run + 1 : 1;
    prev = d;
    if (run >= cfg.stabilization_reads) return d;
  }
  throw Undecided("tower-depth-cap", "generator counts did not stabilize");
}

}  // namespace grouprank
