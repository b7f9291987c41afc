#include "grpiso/decompose.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace grpiso {

namespace {

u64 subgroup_order(const BlackBoxGroup& g, const std::vector<Elem>& gens) {
  return closure(g, gens).size();
}

bool commutes_with_all(const BlackBoxGroup& g, const Elem& x,
                       const std::vector<Elem>& ys) {
  for (const Elem& y : ys)
    if (g.mul(x, y) != g.mul(y, x)) return false;
  return true;
}

}  // namespace

bool zw_membership_test(const Elem& w, const Elem& z, const BlackBoxGroup& g) {
  Elem target = g.mul(g.mul(z, w), inverse(g, z));
  AbelianBasis basis = abelian_basis({w}, g);
  try {
    auto exps = decompose_over_basis(target, basis, g);
    // mandatory re-check: the decomposition algorithm may misbehave on
    // non-members
    Elem back = g.identity();
    for (std::size_t i = 0; i < exps.size(); ++i)
      back = g.mul(back, bb_pow(g, basis.gens[i], exps[i]));
    return back == target;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

StandardDecomposition standard_decompose(const BlackBoxGroup& g,
                                         DecomposeTrace* trace) {
  std::vector<Elem> gens = g.generators();
  std::size_t s = gens.size();

  // Step 1: generators of G'
  std::vector<Elem> dgens = derived_subgroup_gens(g);
  u64 dorder = subgroup_order(g, dgens);

  // Steps 2-3: kappa = lcm of generator orders, factorized
  u64 kappa = 1;
  std::vector<u64> gen_orders;
  for (const Elem& e : gens) {
    gen_orders.push_back(order_of(g, e));
    kappa = std::lcm(kappa, gen_orders.back());
  }
  auto kappa_fac = factorize(kappa);

  // Step 4
  std::vector<Elem> u_set = dgens;
  std::vector<Elem> v_set;
  std::vector<Elem> sigma;

  // Steps 5-19
  for (auto [p, e] : kappa_fac) {
    u64 pe = 1;
    for (unsigned k = 0; k < e; ++k) pe *= p;
    std::vector<Elem> gamma;
    for (std::size_t j = 0; j < s; ++j) gamma.push_back(bb_pow(g, gens[j], kappa / pe));

    bool central = true;  // [Gamma_i, G'] = e
    for (const Elem& x : gamma)
      if (!commutes_with_all(g, x, dgens)) central = false;

    if (central && std::gcd(p, dorder) != 1) {
      // Step 9
      u_set.insert(u_set.end(), gamma.begin(), gamma.end());
    } else if (central) {
      // Steps 10-15: search gamma_i with <Gamma_i>G' = <gamma_i, G'>
      std::vector<Elem> with_all = gamma;
      with_all.insert(with_all.end(), dgens.begin(), dgens.end());
      u64 full = subgroup_order(g, with_all);
      bool found = false;
      for (const Elem& cand : gamma) {
        std::vector<Elem> single{cand};
        single.insert(single.end(), dgens.begin(), dgens.end());
        if (subgroup_order(g, single) == full) {
          sigma.push_back(cand);
          found = true;
          break;
        }
      }
      if (!found) u_set.insert(u_set.end(), gamma.begin(), gamma.end());
    } else {
      // Steps 16-18: max-order element of Gamma_i, first in iteration order
      std::size_t best = 0;
      u64 best_ord = 0;
      for (std::size_t j = 0; j < gamma.size(); ++j) {
        u64 o = order_of(g, gamma[j]);
        if (o > best_ord) {
          best_ord = o;
          best = j;
        }
      }
      v_set.push_back(gamma[best]);
    }
  }

  // Steps 20-24
  std::set<Elem> placed;
  for (const Elem& w : sigma) {
    if (placed.count(w)) continue;
    const Elem* z = nullptr;
    for (const Elem& cand : sigma)
      if (g.mul(w, cand) != g.mul(cand, w)) {
        z = &cand;
        break;
      }
    if (z) {
      if (zw_membership_test(w, *z, g))
        u_set.push_back(w);
      else
        v_set.push_back(w);
      placed.insert(w);
    }
  }

  // Steps 25-28
  for (const Elem& w : sigma) {
    if (placed.count(w)) continue;
    if (commutes_with_all(g, w, u_set))
      u_set.push_back(w);
    else
      v_set.push_back(w);
    placed.insert(w);
  }

  // Step 29
  u64 b = 1;
  Elem z = g.identity();
  for (const Elem& e : v_set) {
    b *= order_of(g, e);
    z = g.mul(z, e);
  }
  u64 zord = order_of(g, z);
  if (zord % b != 0)
    throw std::runtime_error("standard_decompose: not in class or procedure failure");
  Elem v = bb_pow(g, z, zord / b);

  if (trace) *trace = DecomposeTrace{u_set, v_set, kappa};
  StandardDecomposition sd{u_set, v, order_of(g, v)};
  if (!verify_standard_decomposition(g, sd))
    throw std::runtime_error("standard_decompose: not in class or procedure failure");
  return sd;
}

bool verify_standard_decomposition(const BlackBoxGroup& g,
                                   const StandardDecomposition& sd) {
  // abelian
  for (std::size_t i = 0; i < sd.a_gens.size(); ++i)
    for (std::size_t j = i + 1; j < sd.a_gens.size(); ++j)
      if (g.mul(sd.a_gens[i], sd.a_gens[j]) != g.mul(sd.a_gens[j], sd.a_gens[i]))
        return false;
  std::vector<Elem> a_elems;
  try {
    a_elems = closure(g, sd.a_gens);
  } catch (const std::runtime_error&) {
    return false;
  }
  std::set<Elem> a_set(a_elems.begin(), a_elems.end());
  // normal
  for (const Elem& a : sd.a_gens)
    for (const Elem& ggen : g.generators())
      if (!a_set.count(conjugate(g, ggen, a))) return false;
  // coprimality and order of v
  if (order_of(g, sd.v) != sd.m) return false;
  if (std::gcd(static_cast<u64>(a_set.size()), sd.m) != 1) return false;
  // G = A<v> with trivial intersection
  if (a_set.size() * sd.m != g.order()) return false;
  Elem cur = sd.v;
  for (u64 k = 1; k < sd.m; ++k) {
    if (a_set.count(cur)) return false;
    cur = g.mul(cur, sd.v);
  }
  return true;
}

}  // namespace grpiso
