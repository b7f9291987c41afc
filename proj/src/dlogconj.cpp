#include "grpiso/dlogconj.hpp"

#include <numeric>
#include <stdexcept>

namespace grpiso {

u64 common_exponent(const std::vector<Matrix>& mats) {
  u64 m = 1;
  for (const Matrix& a : mats) {
    if (!a.invertible()) throw std::invalid_argument("common_exponent: singular matrix");
    m = std::lcm(m, mat_order(a));
  }
  return m;
}

std::optional<ConjLogSolution> dlog_up_to_conjugacy(const ConjLogInstance& inst) {
  std::vector<Matrix> m1s, m2s;
  for (const auto& [a, b] : inst.blocks) {
    if (!(a.field() == b.field()) || a.dim() != b.dim())
      throw std::invalid_argument("dlog_up_to_conjugacy: mismatched block");
    if (!a.invertible() || !b.invertible())
      throw std::invalid_argument("dlog_up_to_conjugacy: singular matrix");
    m1s.push_back(a);
    m2s.push_back(b);
  }

  u64 m1 = common_exponent(m1s);
  u64 m2 = common_exponent(m2s);
  if (m2 % m1 != 0) return std::nullopt;
  std::vector<Matrix> n2s;
  for (const Matrix& b : m2s) n2s.push_back(b.pow(m2 / m1));

  // one Set Discrete Logarithm block per (h, d, l) bucket
  std::vector<std::vector<FFElem>> s_list, t_list;
  for (std::size_t h = 0; h < m1s.size(); ++h) {
    EDTable e1 = elementary_divisors(m1s[h]);
    EDTable e2 = elementary_divisors(n2s[h]);
    if (e1.buckets.size() != e2.buckets.size()) return std::nullopt;
    for (const auto& [key, roots1] : e1.buckets) {
      auto it = e2.buckets.find(key);
      if (it == e2.buckets.end() || it->second.size() != roots1.size())
        return std::nullopt;
      s_list.push_back(roots1);
      t_list.push_back(it->second);
    }
  }

  // a unit exponent preserves element orders, so differing root-order lcms
  // mean no solution (and keep setdlog from renormalizing underneath us)
  u64 ls = 1, lt = 1;
  for (const auto& b : s_list)
    for (const FFElem& e : b) ls = std::lcm(ls, mult_order(e));
  for (const auto& b : t_list)
    for (const FFElem& e : b) lt = std::lcm(lt, mult_order(e));
  if (ls != lt) return std::nullopt;

  auto sd = set_discrete_log(s_list, t_list);
  if (!sd) return std::nullopt;

  // lift the coset from Z_{m_s}^* to Z_{m1}^*
  u64 ms = sd->m;
  std::vector<u64> members;
  if (m1 > 1000000) throw std::invalid_argument("dlog_up_to_conjugacy: exponent guard");
  auto sols = coset_members(*sd);
  for (u64 k : units_mod(m1)) {
    u64 kk = (m1 == 1) ? 1 : k;
    u64 red = ms == 1 ? 1 : kk % ms;
    if (std::binary_search(sols.begin(), sols.end(), red)) members.push_back(kk);
  }
  if (members.empty()) return std::nullopt;

  ConjLogSolution out;
  out.coset = SolutionCoset{m1, members.front(), {}};
  std::vector<u64> rel;
  u64 inv = m1 == 1 ? 1 : mod_inverse(out.coset.rep, m1);
  for (u64 u : members) rel.push_back(m1 == 1 ? 1 : mulmod(u, inv, m1));
  out.coset.subgroup_gens = detail::thin_unit_gens(m1, rel);

  // conjugators for the chosen representative, verified unconditionally
  u64 kprime = out.coset.rep;
  out.k = kprime * (m2 / m1);
  for (std::size_t h = 0; h < m1s.size(); ++h) {
    Matrix target = n2s[h].pow(kprime);
    Matrix x = conjugator(m1s[h], target);
    if (!x.invertible() || !(x * m1s[h] == target * x))
      throw std::runtime_error("dlog_up_to_conjugacy: conjugator verification failed");
    out.x_list.push_back(x);
  }
  return out;
}

}  // namespace grpiso
