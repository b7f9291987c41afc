#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "grpiso/setdlog.hpp"

using namespace grpiso;

namespace {

FieldMultiset ms(const FiniteField& f, const std::vector<u64>& residues) {
  std::vector<FFElem> e;
  for (u64 r : residues) e.push_back(f.from_residue(r));
  return FieldMultiset(f, std::move(e));
}

// Brute-force oracle: the full solution set {k in Z_m^* : T_h^k = S_h for
// all h} of the normalized instance, or nullopt when m_S does not divide m_T.
template <typename E>
std::optional<std::vector<u64>> brute_solutions(std::vector<std::vector<E>> s,
                                                std::vector<std::vector<E>> t) {
  u64 m_s = 1, m_t = 1;
  for (const auto& b : s)
    for (const E& e : b) m_s = std::lcm(m_s, mult_order(e));
  for (const auto& b : t)
    for (const E& e : b) m_t = std::lcm(m_t, mult_order(e));
  if (m_t % m_s != 0) return std::nullopt;
  for (auto& b : t)
    for (E& e : b) e = e.pow(m_t / m_s);
  for (auto& b : s) std::sort(b.begin(), b.end());

  std::vector<u64> sols;
  for (u64 k : units_mod(m_s)) {
    u64 kk = (m_s == 1) ? 1 : k;
    bool ok = s.size() == t.size();
    for (std::size_t h = 0; ok && h < s.size(); ++h)
      ok = multiset_power(t[h], kk) == s[h];
    if (ok) sols.push_back(kk);
  }
  return sols;
}

template <typename E>
void check_against_brute(const std::vector<std::vector<E>>& s,
                         const std::vector<std::vector<E>>& t,
                         StabBackend backend = StabBackend::Brute) {
  auto truth = brute_solutions(s, t);
  auto got = set_discrete_log(s, t, backend);
  if (!truth || truth->empty()) {
    CHECK(!got);
    return;
  }
  REQUIRE(got.has_value());
  CHECK(coset_members(*got) == *truth);
}

// Generic multiplicative-group adapter: units mod n (not a field, and for
// n = 16 not even cyclic).
struct UnitMod {
  u64 n = 2, v = 1;
  UnitMod pow(u64 e) const { return {n, powmod(v, e, n)}; }
  UnitMod operator*(const UnitMod& o) const { return {n, mulmod(v, o.v, n)}; }
  auto operator<=>(const UnitMod&) const = default;
};

u64 mult_order(const UnitMod& a) {
  u64 k = 1;
  UnitMod cur = a;
  while (cur.v != 1) {
    cur = cur * a;
    ++k;
  }
  return k;
}

}  // namespace

TEST_CASE("stated examples over GF(7)") {
  const FiniteField& f7 = splitting_field(7, 1);

  auto sol = set_discrete_log({ms(f7, {2})}, {ms(f7, {4})});
  REQUIRE(sol.has_value());
  CHECK(sol->m == 3);
  CHECK(coset_members(*sol) == std::vector<u64>{2});

  // identical multisets: 1 is in the solution coset
  auto same = set_discrete_log({ms(f7, {3, 5})}, {ms(f7, {3, 5})});
  REQUIRE(same.has_value());
  auto members = coset_members(*same);
  CHECK(std::binary_search(members.begin(), members.end(), 1));

  // m_S = 6 does not divide m_T = 3
  CHECK(!set_discrete_log({ms(f7, {3})}, {ms(f7, {2})}));

  // size mismatch inside the instance
  CHECK(!set_discrete_log({ms(f7, {2, 2})}, {ms(f7, {4})}));
}

TEST_CASE("m = 1 edge cases") {
  const FiniteField& f7 = splitting_field(7, 1);
  auto triv = set_discrete_log({ms(f7, {1})}, {ms(f7, {1})});
  REQUIRE(triv.has_value());
  CHECK(triv->m == 1);
  CHECK(triv->rep == 1);
  CHECK(triv->subgroup_gens.empty());

  // m_S = 1 divides m_T: T normalizes to identities
  auto norm = set_discrete_log({ms(f7, {1})}, {ms(f7, {3})});
  REQUIRE(norm.has_value());
  CHECK(norm->m == 1);

  auto empty = set_discrete_log(std::vector<FieldMultiset>{}, {});
  REQUIRE(empty.has_value());
  CHECK(empty->m == 1);
}

TEST_CASE("stabilizer_subgroup: stated and properties") {
  const FiniteField& f7 = splitting_field(7, 1);

  // T = {2, 4}: squaring permutes the pair, so the stabilizer is all of Z_3^*
  auto st = stabilizer_subgroup(ms(f7, {2, 4}).elems, 3);
  CHECK(detail::unit_span(3, st) == std::vector<u64>{1, 2});

  // T = {4}: only k = 1 fixes it
  CHECK(stabilizer_subgroup(ms(f7, {4}).elems, 3).empty());

  CHECK_THROWS_AS(stabilizer_subgroup(ms(f7, {2, 3}).elems, 6), std::invalid_argument);

  // property: members stabilize, non-members do not, span is a subgroup
  std::mt19937_64 rng(11);
  const FiniteField& f31 = splitting_field(31, 1);
  for (int trial = 0; trial < 30; ++trial) {
    u64 ord = std::vector<u64>{3, 5, 6, 10, 15, 30}[rng() % 6];
    u64 g = powmod(3, 30 / ord, 31);  // 3 is a primitive root mod 31
    std::vector<FFElem> t;
    for (int i = 0, n = 1 + int(rng() % 4); i < n; ++i) {
      u64 e = 1 + rng() % ord;
      while (std::gcd(e, ord) != 1) e = 1 + rng() % ord;
      t.push_back(f31.from_residue(powmod(g, e, 31)));
    }
    u64 m = ord * std::vector<u64>{1, 2, 4}[rng() % 3];
    auto gens = stabilizer_subgroup(t, m);
    auto span = detail::unit_span(m, gens);
    auto base = multiset_power(t, 1);
    for (u64 k : units_mod(m)) {
      u64 kk = (m == 1) ? 1 : k;
      bool fixes = multiset_power(t, kk) == base;
      bool in_span = std::binary_search(span.begin(), span.end(), kk);
      CHECK(fixes == in_span);
    }
  }
}

TEST_CASE("stabilizer_subgroup: HSP backend agrees with brute force") {
  const FiniteField& f13 = splitting_field(13, 1);
  const FiniteField& f31 = splitting_field(31, 1);
  std::vector<std::pair<const FiniteField*, std::vector<u64>>> cases{
      {&f13, {3, 9}},       // order 3 elements
      {&f13, {5}},          // order 4
      {&f13, {2, 6, 7}},    // order 12 elements
      {&f31, {2, 4, 8, 16}},  // order 5 elements
  };
  for (auto& [f, residues] : cases) {
    auto t = ms(*f, residues).elems;
    u64 m = mult_order(t[0]);
    auto brute = detail::unit_span(m, stabilizer_subgroup(t, m, StabBackend::Brute));
    auto hsp = detail::unit_span(m, stabilizer_subgroup(t, m, StabBackend::Hsp));
    CHECK(brute == hsp);
  }
}

TEST_CASE("coset_representative: lift keeps the representative a unit") {
  // GF(31), b = 3^6 has order 5; the per-block log of {b^3} over {b} is
  // 3 mod 5, which is not coprime with m = 15 and must be lifted
  const FiniteField& f31 = splitting_field(31, 1);
  u64 b = powmod(3, 6, 31);
  std::vector<FFElem> s{f31.from_residue(powmod(b, 3, 31))};
  std::vector<FFElem> t{f31.from_residue(b)};
  auto k = coset_representative(s, t, 15);
  REQUIRE(k.has_value());
  CHECK(*k % 5 == 3);
  CHECK(std::gcd(*k, u64(15)) == 1);
  CHECK(powmod(b, *k, 31) == powmod(b, 3, 31));

  CHECK_THROWS_AS(coset_representative(s, std::vector<FFElem>{}, 15),
                  std::invalid_argument);
  std::vector<FFElem> mixed{f31.from_residue(b), f31.from_residue(30)};
  CHECK_THROWS_AS(coset_representative(mixed, mixed, 10), std::invalid_argument);
}

TEST_CASE("oracle equivalence on random field instances") {
  std::vector<u64> primes{5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43};
  std::mt19937_64 rng(20240817);
  for (int trial = 0; trial < 500; ++trial) {
    u64 p = primes[rng() % primes.size()];
    const FiniteField& f = splitting_field(p, 1);
    std::size_t u = 1 + rng() % 3;
    std::vector<std::vector<FFElem>> s(u), t(u);
    for (std::size_t h = 0; h < u; ++h) {
      std::size_t v = 1 + rng() % 4;
      for (std::size_t j = 0; j < v; ++j)
        t[h].push_back(f.from_residue(1 + rng() % (p - 1)));
    }
    unsigned mode = rng() % 4;
    if (mode == 0) {
      // planted solution: S = T^k0 for a unit k0
      u64 k0 = 1 + rng() % (p - 1);
      while (std::gcd(k0, p - 1) != 1) k0 = 1 + rng() % (p - 1);
      for (std::size_t h = 0; h < u; ++h)
        for (const FFElem& e : t[h]) s[h].push_back(e.pow(k0));
    } else if (mode == 1) {
      // planted with order drop: exercises the m_T / m_S normalization
      u64 d = 2 + rng() % 3;
      for (std::size_t h = 0; h < u; ++h)
        for (const FFElem& e : t[h]) s[h].push_back(e.pow(d));
    } else {
      for (std::size_t h = 0; h < u; ++h)
        for (std::size_t j = 0; j < t[h].size(); ++j)
          s[h].push_back(f.from_residue(1 + rng() % (p - 1)));
    }
    CAPTURE(p);
    CAPTURE(trial);
    check_against_brute(s, t);
  }
}

TEST_CASE("generic adapter: multisets over the non-cyclic group Z_16^*") {
  std::mt19937_64 rng(99);
  std::vector<u64> units = units_mod(16);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t u = 1 + rng() % 2;
    std::vector<std::vector<UnitMod>> s(u), t(u);
    for (std::size_t h = 0; h < u; ++h)
      for (int j = 0, n = 1 + int(rng() % 3); j < n; ++j)
        t[h].push_back({16, units[rng() % units.size()]});
    if (rng() % 2) {
      u64 k0 = 1 + 2 * (rng() % 4);  // odd, hence a unit mod any 2-power
      for (std::size_t h = 0; h < u; ++h)
        for (const UnitMod& e : t[h]) s[h].push_back(e.pow(k0));
    } else {
      for (std::size_t h = 0; h < u; ++h)
        for (std::size_t j = 0; j < t[h].size(); ++j)
          s[h].push_back({16, units[rng() % units.size()]});
    }
    CAPTURE(trial);
    check_against_brute(s, t);
  }
}

TEST_CASE("solution coset is exact, not just a containing coset") {
  // two blocks whose individual stabilizers differ; the intersection must
  // cut the coset down to the common refinement
  const FiniteField& f13 = splitting_field(13, 1);
  // order 12: 2; order 3: 3; block 1 pins k mod 12, block 2 only mod 3
  std::vector<std::vector<FFElem>> t{{f13.from_residue(2)}, {f13.from_residue(3)}};
  std::vector<std::vector<FFElem>> s;
  for (const auto& b : t) {
    s.push_back({});
    for (const FFElem& e : b) s.back().push_back(e.pow(7));
  }
  auto sol = set_discrete_log(s, t);
  REQUIRE(sol.has_value());
  CHECK(sol->m == 12);
  CHECK(coset_members(*sol) == *brute_solutions(s, t));
}
