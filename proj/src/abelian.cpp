#include "grpiso/abelian.hpp"

#include "grpiso/qsim.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace grpiso {

namespace {

constexpr u64 kOrderCap = 1000000;

void check_commuting(const std::vector<Elem>& gens, const BlackBoxGroup& g) {
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (g.mul(gens[i], gens[j]) != g.mul(gens[j], gens[i]))
        throw std::invalid_argument("generators do not commute");
}

// BFS over products of gens recording one exponent vector per element and
// the collision relations; the relations plus the order relations generate
// the full relation lattice.
struct SubgroupScan {
  std::vector<Elem> elements;  // BFS order, identity first
  std::map<Elem, std::vector<i64>> exps;
  std::vector<std::vector<i64>> relations;
};

SubgroupScan scan_subgroup(const std::vector<Elem>& gens,
                           const std::vector<u64>& orders,
                           const BlackBoxGroup& g, std::size_t guard = 1000000) {
  SubgroupScan out;
  std::size_t t = gens.size();
  out.exps[g.identity()] = std::vector<i64>(t, 0);
  out.elements.push_back(g.identity());
  for (std::size_t head = 0; head < out.elements.size(); ++head) {
    Elem cur = out.elements[head];
    std::vector<i64> cur_exp = out.exps[cur];
    for (std::size_t i = 0; i < t; ++i) {
      Elem nxt = g.mul(cur, gens[i]);
      std::vector<i64> nxt_exp = cur_exp;
      nxt_exp[i] = (nxt_exp[i] + 1) % static_cast<i64>(orders[i]);
      auto it = out.exps.find(nxt);
      if (it == out.exps.end()) {
        if (out.elements.size() >= guard)
          throw std::runtime_error("closure size guard exceeded");
        out.exps.emplace(nxt, nxt_exp);
        out.elements.push_back(nxt);
      } else {
        std::vector<i64> rel(t);
        for (std::size_t k = 0; k < t; ++k) rel[k] = nxt_exp[k] - it->second[k];
        if (std::any_of(rel.begin(), rel.end(), [](i64 v) { return v != 0; }))
          out.relations.push_back(std::move(rel));
      }
    }
  }
  return out;
}

}  // namespace

u64 order_of(const BlackBoxGroup& g, const Elem& x) {
  Elem id = g.identity();
  if (x == id) return 1;
  u64 m = 1;
  while (m * m < kOrderCap) ++m;
  // baby steps x^0 .. x^{m-1}
  std::map<Elem, u64> baby;
  Elem cur = id;
  for (u64 j = 0; j < m; ++j) {
    if (j > 0 && cur == id) return j;  // tiny order found during table build
    auto it = baby.find(cur);
    if (it == baby.end()) baby[cur] = j;
    cur = g.mul(cur, x);
  }
  // giant steps x^{im}; collision x^{im} = x^j gives a multiple im - j
  Elem giant = cur;  // x^m
  Elem walk = giant;
  u64 multiple = 0;
  for (u64 i = 1; i <= m + 1; ++i) {
    auto it = baby.find(walk);
    if (it != baby.end()) {
      // use the largest baby exponent matching walk for the smallest k
      u64 best_j = it->second;
      Elem probe = id;
      for (u64 j = 0; j < m; ++j) {
        if (probe == walk) best_j = std::max(best_j, j);
        probe = g.mul(probe, x);
      }
      multiple = i * m - best_j;
      break;
    }
    walk = g.mul(walk, giant);
  }
  if (multiple == 0) throw std::runtime_error("order_of: cap exceeded");
  u64 o = multiple;
  for (auto [p, e] : factorize(multiple)) {
    (void)e;
    while (o % p == 0 && bb_pow(g, x, o / p) == id) o /= p;
  }
  if (bb_pow(g, x, o) != id) throw std::runtime_error("order_of: inconsistent oracle");
  return o;
}

AbelianBasis abelian_basis(const std::vector<Elem>& raw_gens, const BlackBoxGroup& g) {
  std::vector<Elem> gens;
  for (const Elem& e : raw_gens)
    if (e != g.identity()) gens.push_back(e);
  check_commuting(gens, g);
  if (gens.empty()) return {};

  std::vector<u64> orders;
  for (const Elem& e : gens) orders.push_back(order_of(g, e));

  SubgroupScan scan = scan_subgroup(gens, orders, g);
  std::size_t t = gens.size();
  // relation lattice: collision relations plus o_i e_i
  ZMat rel = scan.relations;
  for (std::size_t i = 0; i < t; ++i) {
    std::vector<i64> r(t, 0);
    r[i] = static_cast<i64>(orders[i]);
    rel.push_back(std::move(r));
  }
  SmithZ snf = smith_normal_form(rel);
  // Z^t / rowspace(rel) = direct sum of Z_{s_j}; in the coordinates w = u V
  // the lattice becomes diagonal, so the quotient generators are the images
  // of the rows of V^-1
  ZMat vinv = zmat_inverse_unimodular(snf.v);
  AbelianBasis cyclic;
  for (std::size_t j = 0; j < t; ++j) {
    u64 s = j < snf.s.size() ? static_cast<u64>(std::llabs(snf.s[j][j])) : 0;
    if (s == 1) continue;
    if (s == 0) throw std::runtime_error("abelian_basis: infinite quotient");
    Elem b = g.identity();
    for (std::size_t i = 0; i < t; ++i) {
      i64 e = vinv[j][i] % static_cast<i64>(orders[i]);
      if (e < 0) e += static_cast<i64>(orders[i]);
      b = g.mul(b, bb_pow(g, gens[i], static_cast<u64>(e)));
    }
    u64 ob = order_of(g, b);
    if (ob != s) throw std::runtime_error("abelian_basis: inconsistent factor order");
    cyclic.gens.push_back(b);
    cyclic.orders.push_back(s);
  }
  // CRT-split each cyclic factor into prime-power parts
  AbelianBasis out;
  for (std::size_t j = 0; j < cyclic.gens.size(); ++j) {
    u64 s = cyclic.orders[j];
    for (auto [p, e] : factorize(s)) {
      u64 q = 1;
      for (unsigned k = 0; k < e; ++k) q *= p;
      out.gens.push_back(bb_pow(g, cyclic.gens[j], s / q));
      out.orders.push_back(q);
    }
  }
  return out;
}

std::map<Elem, std::vector<u64>> exponent_map(const AbelianBasis& basis,
                                              const BlackBoxGroup& g) {
  std::map<Elem, std::vector<u64>> out;
  std::size_t t = basis.gens.size();
  out[g.identity()] = std::vector<u64>(t, 0);
  std::vector<Elem> frontier{g.identity()};
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    Elem cur = frontier[head];
    std::vector<u64> cur_exp = out[cur];
    for (std::size_t i = 0; i < t; ++i) {
      if (cur_exp[i] + 1 >= basis.orders[i] && basis.orders[i] != 0) continue;
      Elem nxt = g.mul(cur, basis.gens[i]);
      std::vector<u64> nxt_exp = cur_exp;
      ++nxt_exp[i];
      if (out.emplace(nxt, nxt_exp).second) frontier.push_back(nxt);
    }
  }
  return out;
}

std::vector<u64> decompose_over_basis(const Elem& x, const AbelianBasis& basis,
                                      const BlackBoxGroup& g) {
  auto coords = exponent_map(basis, g);
  auto it = coords.find(x);
  if (it == coords.end())
    throw std::invalid_argument("decompose_over_basis: element not in subgroup");
  return it->second;
}

std::optional<CosetDescriptor> coset_intersection(const Elem& x,
                                                  const std::vector<Elem>& gens1,
                                                  const Elem& y,
                                                  const std::vector<Elem>& gens2,
                                                  const BlackBoxGroup& g) {
  check_commuting(g.generators(), g);
  AbelianBasis basis = abelian_basis(g.generators(), g);
  auto coords = exponent_map(basis, g);
  std::size_t r = basis.gens.size();
  auto coord_of = [&](const Elem& e) -> std::vector<u64> {
    auto it = coords.find(e);
    if (it == coords.end()) throw std::invalid_argument("invalid element");
    return it->second;
  };

  std::vector<Elem> all = gens1;
  all.insert(all.end(), gens2.begin(), gens2.end());
  std::size_t s1 = gens1.size(), s2 = gens2.size();
  std::vector<u64> unk_orders;
  for (const Elem& e : all) unk_orders.push_back(order_of(g, e));

  // solve sum_i u_i ghat_i - sum_j v_j dhat_j == yhat - xhat (mod basis orders)
  ZMat images(r, std::vector<i64>(s1 + s2, 0));
  for (std::size_t c = 0; c < s1 + s2; ++c) {
    auto col = coord_of(all[c]);
    for (std::size_t k = 0; k < r; ++k)
      images[k][c] = (c < s1 ? 1 : -1) * static_cast<i64>(col[k]);
  }
  std::vector<i64> mods(r), rhs(r);
  auto cx = coord_of(x), cy = coord_of(y);
  for (std::size_t k = 0; k < r; ++k) {
    mods[k] = static_cast<i64>(basis.orders[k]);
    i64 d = static_cast<i64>(cy[k]) - static_cast<i64>(cx[k]);
    rhs[k] = ((d % mods[k]) + mods[k]) % mods[k];
  }
  auto sol = solve_congruence(images, rhs, mods);
  if (!sol) return std::nullopt;

  Elem rep = x;
  for (std::size_t i = 0; i < s1; ++i) {
    i64 e = (*sol)[i] % static_cast<i64>(unk_orders[i]);
    if (e < 0) e += static_cast<i64>(unk_orders[i]);
    rep = g.mul(rep, bb_pow(g, gens1[i], static_cast<u64>(e)));
  }

  // the subgroup part: Gamma_1 n Gamma_2 = projections of the kernel
  std::vector<i64> src(unk_orders.begin(), unk_orders.end());
  auto kernel = congruence_kernel(images, mods, src);
  std::set<Elem> sub_gens;
  for (const auto& k : kernel) {
    Elem e = g.identity();
    for (std::size_t i = 0; i < s1; ++i)
      e = g.mul(e, bb_pow(g, gens1[i], static_cast<u64>(k[i])));
    if (e != g.identity()) sub_gens.insert(e);
  }
  return CosetDescriptor{rep, {sub_gens.begin(), sub_gens.end()}};
}

std::vector<std::vector<u64>> hidden_subgroup(
    const std::vector<u64>& dims,
    const std::function<std::string(const std::vector<u64>&)>& f,
    HspBackend backend, std::mt19937_64* rng) {
  std::size_t total = 1;
  for (u64 d : dims) {
    if (d == 0) throw std::invalid_argument("hidden_subgroup: zero dimension");
    total *= d;
    if (total > 1000000) throw std::invalid_argument("hidden_subgroup: size guard");
  }
  auto unflatten = [&](std::size_t flat) {
    std::vector<u64> idx(dims.size());
    for (std::size_t i = dims.size(); i-- > 0;) {
      idx[i] = flat % dims[i];
      flat /= dims[i];
    }
    return idx;
  };
  std::vector<std::vector<u64>> members;
  if (backend == HspBackend::Qsim) {
    std::mt19937_64 local(12021);
    std::mt19937_64& r = rng ? *rng : local;
    std::map<std::string, u64> labels;
    auto fu = [&](const std::vector<u64>& u) -> u64 {
      auto [it, fresh] = labels.emplace(f(u), labels.size());
      (void)fresh;
      return it->second;
    };
    members = hsp_recover(dims, fu, r);
  } else {
    std::string f0 = f(std::vector<u64>(dims.size(), 0));
    for (std::size_t flat = 1; flat < total; ++flat) {
      auto u = unflatten(flat);
      if (f(u) == f0) members.push_back(u);
    }
  }
  // thin to a generating set
  std::set<std::vector<u64>> gen_span{std::vector<u64>(dims.size(), 0)};
  std::vector<std::vector<u64>> gens;
  for (const auto& m : members) {
    if (gen_span.count(m)) continue;
    gens.push_back(m);
    std::vector<std::vector<u64>> frontier(gen_span.begin(), gen_span.end());
    while (!frontier.empty()) {
      auto cur = frontier.back();
      frontier.pop_back();
      for (const auto& g : gens) {
        std::vector<u64> nxt(dims.size());
        for (std::size_t i = 0; i < dims.size(); ++i) nxt[i] = (cur[i] + g[i]) % dims[i];
        if (gen_span.insert(nxt).second) frontier.push_back(nxt);
      }
    }
  }
  // promise check at desk scale: f constant on the recovered subgroup
  std::string f0 = f(std::vector<u64>(dims.size(), 0));
  for (const auto& m : gen_span)
    if (f(m) != f0) throw std::runtime_error("hidden_subgroup: promise violation");
  return gens;
}

std::vector<std::vector<u64>> hidden_subgroup_structured(
    const ZMat& images, const std::vector<i64>& mods,
    const std::vector<u64>& src_orders) {
  std::vector<i64> src(src_orders.begin(), src_orders.end());
  auto kernel = congruence_kernel(images, mods, src);
  std::vector<std::vector<u64>> out;
  for (const auto& k : kernel) {
    std::vector<u64> u(k.begin(), k.end());
    if (std::any_of(u.begin(), u.end(), [](u64 v) { return v != 0; }))
      out.push_back(std::move(u));
  }
  return out;
}

}  // namespace grpiso
