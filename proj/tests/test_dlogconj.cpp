#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "grpiso/dlogconj.hpp"

using namespace grpiso;

namespace {

Matrix random_invertible(const FiniteField& f, std::size_t r, std::mt19937_64& rng) {
  while (true) {
    Matrix m(f, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        m.at(i, j) = f.from_residue(rng() % f.characteristic());
    if (m.invertible()) return m;
  }
}

// brute-force similarity: exhaustive conjugator search at the smallest size,
// invariant-factor equality otherwise
bool brute_similar(const Matrix& a, const Matrix& b) {
  if (a.dim() == 2 && a.field().size() == 2) {
    const FiniteField& f = a.field();
    for (unsigned bits = 0; bits < 16; ++bits) {
      Matrix x(f, 2);
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
          x.at(i, j) = f.from_residue((bits >> (2 * i + j)) & 1);
      if (x.invertible() && x * a == b * x) return true;
    }
    return false;
  }
  return invariant_factors(a) == invariant_factors(b);
}

// the true normalized solution set {k in Z_{m1}^* : M1[h] ~ N2[h]^k for all h}
std::optional<std::vector<u64>> brute_kset(const ConjLogInstance& inst) {
  std::vector<Matrix> m1s, m2s;
  for (const auto& [a, b] : inst.blocks) {
    m1s.push_back(a);
    m2s.push_back(b);
  }
  u64 m1 = common_exponent(m1s), m2 = common_exponent(m2s);
  if (m2 % m1 != 0) return std::nullopt;
  std::vector<Matrix> n2s;
  for (const Matrix& b : m2s) n2s.push_back(b.pow(m2 / m1));
  std::vector<u64> sols;
  for (u64 k : units_mod(m1)) {
    u64 kk = (m1 == 1) ? 1 : k;
    bool ok = true;
    for (std::size_t h = 0; ok && h < m1s.size(); ++h)
      ok = brute_similar(m1s[h], n2s[h].pow(kk));
    if (ok) sols.push_back(kk);
  }
  return sols;
}

void check_instance(const ConjLogInstance& inst) {
  auto truth = brute_kset(inst);
  auto sol = dlog_up_to_conjugacy(inst);
  if (!truth || truth->empty()) {
    CHECK(!sol);
    return;
  }
  REQUIRE(sol.has_value());
  CHECK(coset_members(sol->coset) == *truth);
  // conjugator invariant against the original matrices
  for (std::size_t h = 0; h < inst.blocks.size(); ++h) {
    const Matrix& x = sol->x_list[h];
    CHECK(x.invertible());
    CHECK(x * inst.blocks[h].first == inst.blocks[h].second.pow(sol->k) * x);
  }
}

}  // namespace

TEST_CASE("common_exponent stated examples") {
  const FiniteField& f2 = splitting_field(2, 1);
  const FiniteField& f5 = splitting_field(5, 1);

  CHECK(common_exponent({Matrix::identity(f5, 2)}) == 1);

  Matrix ord4 = Matrix::from_residues(f5, {{2}});
  Matrix ord3 = companion(Poly(f2, std::vector<u64>{1, 1, 1}));
  CHECK(common_exponent({ord4, ord3}) == 12);
  CHECK(common_exponent({ord3}) == 3);

  CHECK_THROWS_AS(common_exponent({Matrix(f5, 2)}), std::invalid_argument);
}

TEST_CASE("stated examples") {
  const FiniteField& f3 = splitting_field(3, 1);
  Matrix m2 = Matrix::from_residues(f3, {{0, 2}, {1, 0}});
  REQUIRE(mat_order(m2) == 4);

  // M1 = M2: k = 1 valid
  auto same = dlog_up_to_conjugacy({{{m2, m2}}});
  REQUIRE(same.has_value());
  auto members = coset_members(same->coset);
  CHECK(std::binary_search(members.begin(), members.end(), u64(1)));

  // M1 = P M2^3 P^-1: solutions are exactly k = 3 (mod 4)
  Matrix p = Matrix::from_residues(f3, {{1, 1}, {0, 1}});
  Matrix m1 = p * m2.pow(3) * *p.inverse();
  auto sol = dlog_up_to_conjugacy({{{m1, m2}}});
  REQUIRE(sol.has_value());
  CHECK(sol->coset.m == 4);
  auto ks = coset_members(sol->coset);
  CHECK(std::binary_search(ks.begin(), ks.end(), u64(3)));  // k = 3 is valid
  CHECK(ks == *brute_kset({{{m1, m2}}}));
  CHECK(sol->x_list[0] * m1 == m2.pow(sol->k) * sol->x_list[0]);

  // m1 = 2 does not divide m2 = 1
  Matrix ord2 = Matrix::from_residues(f3, {{2, 0}, {0, 1}});
  CHECK(!dlog_up_to_conjugacy({{{ord2, Matrix::identity(f3, 2)}}}));
}

TEST_CASE("claim: equal exponents but mismatched divisor degrees refuse") {
  const FiniteField& f3 = splitting_field(3, 1);
  FFElem one = f3.one();
  // (x-1)^3 vs (x-1)^2 (x-1): same order 3, different (d, l) buckets
  Matrix m1 = jordan_matrix(one, 3);
  Matrix m2(f3, 3);
  Matrix j2 = jordan_matrix(one, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) m2.at(i, j) = j2.at(i, j);
  m2.at(2, 2) = one;
  REQUIRE(mat_order(m1) == 3);
  REQUIRE(mat_order(m2) == 3);
  CHECK(!dlog_up_to_conjugacy({{{m1, m2}}}));
}

TEST_CASE("claim: planted conjugate powers are always solved") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    u64 pr = std::vector<u64>{2, 3, 5}[rng() % 3];
    const FiniteField& f = splitting_field(pr, 1);
    std::size_t r = 2 + rng() % 2;
    Matrix m2 = random_invertible(f, r, rng);
    u64 ord = mat_order(m2);
    u64 k0 = 1 + rng() % ord;
    while (std::gcd(k0, ord) != 1) k0 = 1 + rng() % ord;
    Matrix p = random_invertible(f, r, rng);
    Matrix m1 = p * m2.pow(k0) * *p.inverse();
    auto sol = dlog_up_to_conjugacy({{{m1, m2}}});
    REQUIRE(sol.has_value());
    auto members = coset_members(sol->coset);
    CHECK(std::binary_search(members.begin(), members.end(),
                             sol->coset.m == 1 ? 1 : k0 % sol->coset.m));
  }
}

TEST_CASE("oracle equivalence on random instances") {
  std::mt19937_64 rng(20240818);
  for (int trial = 0; trial < 200; ++trial) {
    u64 pr = std::vector<u64>{2, 3, 5}[rng() % 3];
    const FiniteField& f = splitting_field(pr, 1);
    std::size_t u = 1 + rng() % 2;
    std::size_t r = 1 + rng() % 3;
    ConjLogInstance inst;
    for (std::size_t h = 0; h < u; ++h) {
      Matrix m2 = random_invertible(f, r, rng);
      if (rng() % 2) {
        u64 e = 1 + rng() % 6;
        Matrix p = random_invertible(f, r, rng);
        inst.blocks.push_back({p * m2.pow(e) * *p.inverse(), m2});
      } else {
        inst.blocks.push_back({random_invertible(f, r, rng), m2});
      }
    }
    CAPTURE(trial);
    check_instance(inst);
  }
}

TEST_CASE("malformed blocks throw") {
  const FiniteField& f2 = splitting_field(2, 1);
  const FiniteField& f3 = splitting_field(3, 1);
  Matrix a = Matrix::identity(f2, 2);
  Matrix b = Matrix::identity(f3, 2);
  CHECK_THROWS_AS(dlog_up_to_conjugacy({{{a, b}}}), std::invalid_argument);
  CHECK_THROWS_AS(dlog_up_to_conjugacy({{{a, Matrix::identity(f2, 3)}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(dlog_up_to_conjugacy({{{a, Matrix(f2, 2)}}}), std::invalid_argument);
}
