#ifndef GRPISO_SETDLOG_HPP
#define GRPISO_SETDLOG_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

#include "grpiso/poly.hpp"

namespace grpiso {

/// Solution set of a Set Discrete Logarithm instance: the coset
/// rep * <subgroup_gens> inside Z_m^*. For m = 1 the representative is 1 and
/// the subgroup is trivial.
struct SolutionCoset {
  u64 m = 1;
  u64 rep = 1;
  std::vector<u64> subgroup_gens;
};

enum class StabBackend { Brute, Hsp };

namespace detail {

/// Intersect cosets rep_i * <gens_i> of Z_m^*; nullopt when empty.
std::optional<std::pair<u64, std::vector<u64>>> intersect_unit_cosets(
    u64 m, const std::vector<std::pair<u64, std::vector<u64>>>& cosets);

/// Subgroup of Z_m^* generated by `gens`, as a sorted member list.
std::vector<u64> unit_span(u64 m, const std::vector<u64>& gens);

/// Thin a member list of a subgroup of Z_m^* to a generating set.
std::vector<u64> thin_unit_gens(u64 m, const std::vector<u64>& members);

/// Basis of Z_m^* (unit generators with their cyclic orders).
std::pair<std::vector<u64>, std::vector<u64>> unit_group_basis(u64 m);

std::vector<std::vector<u64>> hsp_over_units(
    u64 m, const std::vector<u64>& basis_units, const std::vector<u64>& basis_orders,
    const std::function<std::string(u64)>& label_of_unit);

}  // namespace detail

// The solver only needs the multiplicative structure: any element type with
// pow / mult_order / ordering works, not just field elements.

template <typename E>
std::vector<E> multiset_power(std::vector<E> t, u64 k) {
  for (E& e : t) e = e.pow(k);
  std::sort(t.begin(), t.end());
  return t;
}

/// Generators of {k in Z_m^* : T^k = T}. Requires all elements of T to share
/// one order m_i dividing m.
template <typename E>
std::vector<u64> stabilizer_subgroup(const std::vector<E>& t, u64 m,
                                     StabBackend backend = StabBackend::Brute) {
  if (m == 0) throw std::invalid_argument("stabilizer_subgroup: zero modulus");
  u64 mi = t.empty() ? 1 : mult_order(t[0]);
  for (const E& e : t)
    if (mult_order(e) != mi)
      throw std::invalid_argument("stabilizer_subgroup: mixed element orders");
  if (mi != 0 && m % mi != 0)
    throw std::invalid_argument("stabilizer_subgroup: order does not divide modulus");
  std::vector<E> base = multiset_power(t, 1);

  if (backend == StabBackend::Brute) {
    if (m > 1000000) throw std::invalid_argument("stabilizer_subgroup: modulus guard");
    std::vector<u64> members;
    for (u64 k : units_mod(m)) {
      u64 kk = (m == 1) ? 1 : k;
      if (multiset_power(t, kk) == base) members.push_back(kk);
    }
    return detail::thin_unit_gens(m, members);
  }

  // HSP backend: the oracle f(k) = (mu(k,1) y_1^-1, ...) reduction over
  // Z_m^*, with multisets serialized through a label dictionary.
  auto [basis_units, basis_orders] = detail::unit_group_basis(m);
  std::map<std::vector<E>, u64> dict;
  auto label_of_unit = [&, base_copy = base](u64 k) -> std::string {
    auto powered = multiset_power(base_copy, k);
    auto [it, fresh] = dict.emplace(powered, dict.size());
    (void)fresh;
    return std::to_string(it->second);
  };
  auto kernel = detail::hsp_over_units(m, basis_units, basis_orders, label_of_unit);
  std::vector<u64> gens;
  for (const auto& exps : kernel) {
    u64 acc = 1;
    for (std::size_t i = 0; i < exps.size(); ++i)
      acc = mulmod(acc, powmod(basis_units[i], exps[i], m), m);
    gens.push_back(m == 1 ? 1 : acc);
  }
  return detail::thin_unit_gens(m, detail::unit_span(m, gens));
}

/// One k in Z_m^* with T^k = S, via per-element discrete logs y_j^a = x_1
/// followed by multiset verification and the alpha-lift to a unit mod m.
/// All elements must share one order m_i | m; nullopt when no k exists.
template <typename E>
std::optional<u64> coset_representative(const std::vector<E>& s,
                                        const std::vector<E>& t, u64 m) {
  if (s.size() != t.size())
    throw std::invalid_argument("coset_representative: size mismatch");
  u64 mi = s.empty() ? 1 : mult_order(s[0]);
  for (const E& e : s)
    if (mult_order(e) != mi)
      throw std::invalid_argument("coset_representative: mixed element orders");
  for (const E& e : t)
    if (mult_order(e) != mi)
      throw std::invalid_argument("coset_representative: mixed element orders");
  if (mi != 0 && m % mi != 0)
    throw std::invalid_argument("coset_representative: order does not divide modulus");

  std::vector<E> s_sorted = multiset_power(s, 1);
  u64 alpha = 0;
  if (s.empty() || mi == 1) {
    if (multiset_power(t, 1) != s_sorted) return std::nullopt;
    alpha = 1;
  } else {
    const E& x1 = s_sorted[0];
    for (const E& yj : t) {
      // discrete log in <y_j>: baby-step/giant-step for a with y_j^a = x_1
      u64 step = 1;
      while (step * step < mi) ++step;
      std::map<E, u64> baby;
      E cur = yj.pow(0);
      for (u64 b = 0; b < step; ++b) {
        baby.emplace(cur, b);
        cur = cur * yj;
      }
      E giant_inv = yj.pow(mi - (step % mi));  // y_j^{-step}
      E probe = x1;
      std::optional<u64> a;
      for (u64 gstep = 0; gstep * step <= mi + step; ++gstep) {
        auto it = baby.find(probe);
        if (it != baby.end()) {
          a = (gstep * step + it->second) % mi;
          break;
        }
        probe = probe * giant_inv;
      }
      if (!a || std::gcd(*a, mi) != 1) continue;
      if (multiset_power(t, *a) == s_sorted) {
        alpha = *a;
        break;
      }
    }
    if (alpha == 0) return std::nullopt;
  }

  // lift alpha in Z_{m_i}^* to k in Z_m^*: k = alpha + m_i q_1^{d_1}...q_t^{d_t}
  // with the q_l the primes of m dividing neither m_i nor alpha
  u64 q_part = 1;
  for (auto [p, e] : factorize(m)) {
    if (mi % p == 0 || alpha % p == 0) continue;
    for (unsigned i = 0; i < e; ++i) q_part *= p;
  }
  u64 k = (alpha + mi % m * (q_part % m)) % m;
  if (m == 1) k = 1;
  if (std::gcd(k, m) != 1)
    throw std::runtime_error("coset_representative: lift not coprime");
  if (multiset_power(t, k) != s_sorted)
    throw std::runtime_error("coset_representative: lift verification failed");
  return k;
}

/// Full Set Discrete Logarithm pipeline over matched block lists.
template <typename E>
std::optional<SolutionCoset> set_discrete_log(
    const std::vector<std::vector<E>>& s_list,
    const std::vector<std::vector<E>>& t_list,
    StabBackend backend = StabBackend::Brute) {
  if (s_list.size() != t_list.size())
    throw std::invalid_argument("set_discrete_log: list length mismatch");
  std::size_t u = s_list.size();

  u64 m_s = 1, m_t = 1;
  for (const auto& block : s_list)
    for (const E& e : block) m_s = std::lcm(m_s, mult_order(e));
  for (const auto& block : t_list)
    for (const E& e : block) m_t = std::lcm(m_t, mult_order(e));
  if (m_t % m_s != 0) return std::nullopt;

  std::vector<std::vector<E>> t_norm = t_list;
  if (m_s != m_t)
    for (auto& block : t_norm)
      for (E& e : block) e = e.pow(m_t / m_s);
  u64 m = m_s;

  // partition by element order and build one coset per (h, i) block
  std::vector<std::pair<u64, std::vector<u64>>> cosets;
  for (std::size_t h = 0; h < u; ++h) {
    if (s_list[h].size() != t_norm[h].size()) return std::nullopt;
    std::map<u64, std::pair<std::vector<E>, std::vector<E>>> by_order;
    for (const E& e : s_list[h]) by_order[mult_order(e)].first.push_back(e);
    for (const E& e : t_norm[h]) by_order[mult_order(e)].second.push_back(e);
    for (auto& [mi, pair] : by_order) {
      auto& [sh, th] = pair;
      if (sh.size() != th.size()) return std::nullopt;
      auto rep = coset_representative(sh, th, m);
      if (!rep) return std::nullopt;
      cosets.push_back({*rep, stabilizer_subgroup(th, m, backend)});
    }
  }
  if (cosets.empty()) return SolutionCoset{1, 1, {}};

  auto meet = detail::intersect_unit_cosets(m, cosets);
  if (!meet) return std::nullopt;
  SolutionCoset out{m, meet->first, meet->second};
  if (out.rep == 0) out.rep = 1;  // m = 1 convention
  // hard post-condition: re-verify the representative by direct powering
  for (std::size_t h = 0; h < u; ++h)
    if (multiset_power(t_norm[h], out.rep) != multiset_power(s_list[h], 1))
      throw std::runtime_error("set_discrete_log: representative failed verification");
  return out;
}

// ---------------------------------------------------------------------------
// Field-flavored interface.

/// Multiset of nonzero elements of one finite field.
struct FieldMultiset {
  const FiniteField* field = nullptr;
  std::vector<FFElem> elems;

  FieldMultiset() = default;
  FieldMultiset(const FiniteField& f, std::vector<FFElem> e);
};

std::optional<SolutionCoset> set_discrete_log(
    const std::vector<FieldMultiset>& s_list,
    const std::vector<FieldMultiset>& t_list,
    StabBackend backend = StabBackend::Brute);

/// All members of the solution coset, sorted.
std::vector<u64> coset_members(const SolutionCoset& c);

}  // namespace grpiso

#endif
