#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "grpiso/canonical.hpp"

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

Matrix block_diag(const FiniteField& f, const std::vector<Matrix>& blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.dim();
  Matrix out(f, n);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.dim(); ++i)
      for (std::size_t j = 0; j < b.dim(); ++j) out.at(off + i, off + j) = b.at(i, j);
    off += b.dim();
  }
  return out;
}

}  // namespace

TEST_CASE("companion matrix layout") {
  const FiniteField& f2 = splitting_field(2, 1);
  Matrix c = companion(Poly(f2, std::vector<u64>{1, 1, 1}));
  CHECK(c == Matrix::from_residues(f2, {{0, 1}, {1, 1}}));
  const FiniteField& f7 = splitting_field(7, 1);
  Matrix lin = companion(Poly(f7, std::vector<u64>{4, 1}));  // x + 4 = x - 3
  CHECK(lin.at(0, 0) == f7.from_residue(3));
  // 4x4 layout: ones down the first subdiagonal, -b_i in the last column
  Matrix c4 = companion(Poly(f7, std::vector<u64>{1, 2, 3, 4, 1}));
  CHECK(c4 == Matrix::from_residues(f7, {{0, 0, 0, 6}, {1, 0, 0, 5}, {0, 1, 0, 4}, {0, 0, 1, 3}}));
  CHECK_THROWS(companion(Poly(f7, std::vector<u64>{1, 2})));  // not monic
}

TEST_CASE("invariant factors: identity and companion") {
  const FiniteField& f3 = splitting_field(3, 1);
  auto inv = invariant_factors(Matrix::identity(f3, 3));
  REQUIRE(inv.size() == 3);
  Poly xm1(f3, std::vector<u64>{2, 1});
  for (const auto& a : inv) CHECK(a == xm1);

  const FiniteField& f2 = splitting_field(2, 1);
  Poly f(f2, std::vector<u64>{1, 1, 0, 0, 1});
  auto single = invariant_factors(companion(f));
  REQUIRE(single.size() == 1);
  CHECK(single[0] == f);
}

TEST_CASE("worked 11x11 example: invariant factors and Sigma buckets") {
  const FiniteField& f2 = splitting_field(2, 1);
  Poly f1(f2, std::vector<u64>{1, 1, 1});
  Poly f3cub(f2, std::vector<u64>{1, 1, 0, 1});
  Poly f2poly = f1 * f1 * f3cub;  // (x^2+x+1)^2 (x^3+x+1), degree 7
  Matrix m = block_diag(f2, {companion(f1), companion(f1), companion(f2poly)});
  REQUIRE(m.dim() == 11);

  auto inv = invariant_factors(m);
  REQUIRE(inv.size() == 3);
  CHECK(inv[0] == f1);
  CHECK(inv[1] == f1);
  CHECK(inv[2] == f2poly);

  EDTable table = elementary_divisors(m);
  REQUIRE(table.buckets.size() == 3);
  auto r2 = roots_in_splitting_ext(f1);
  auto r3 = roots_in_splitting_ext(f3cub);
  REQUIRE(table.buckets.count({2, 1}) == 1);
  REQUIRE(table.buckets.count({2, 2}) == 1);
  REQUIRE(table.buckets.count({3, 1}) == 1);
  // Sigma_{2,1} = {a, a, a^2, a^2}
  std::vector<FFElem> s21{r2[0], r2[0], r2[1], r2[1]};
  std::sort(s21.begin(), s21.end());
  CHECK(table.buckets.at({2, 1}) == s21);
  // Sigma_{2,2} = {a, a^2}
  std::vector<FFElem> s22{r2[0], r2[1]};
  std::sort(s22.begin(), s22.end());
  CHECK(table.buckets.at({2, 2}) == s22);
  // Sigma_{3,1} = {b, b^2, b^4}
  std::vector<FFElem> s31 = r3;
  std::sort(s31.begin(), s31.end());
  CHECK(table.buckets.at({3, 1}) == s31);
  CHECK(table.total_degree() == 11);
}

TEST_CASE("elementary divisors: small stated cases") {
  const FiniteField& f3 = splitting_field(3, 1);
  EDTable id = elementary_divisors(Matrix::identity(f3, 2));
  REQUIRE(id.buckets.size() == 1);
  CHECK(id.buckets.at({1, 1}).size() == 2);

  Matrix j = Matrix::from_residues(f3, {{1, 1}, {0, 1}});
  EDTable jt = elementary_divisors(j);
  REQUIRE(jt.buckets.size() == 1);
  REQUIRE(jt.buckets.count({1, 2}) == 1);
  CHECK(jt.buckets.at({1, 2}).size() == 1);
  CHECK(jt.buckets.at({1, 2})[0] == splitting_field(3, 1).one());
}

TEST_CASE("similar: stated cases and random conjugates") {
  const FiniteField& f3 = splitting_field(3, 1);
  Matrix i2 = Matrix::identity(f3, 2);
  Matrix j = Matrix::from_residues(f3, {{1, 1}, {0, 1}});
  CHECK(similar(i2, i2));
  CHECK_FALSE(similar(i2, j));
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    u64 p = std::vector<u64>{2, 3, 5}[rng() % 3];
    const FiniteField& f = splitting_field(p, 1);
    std::size_t r = 2 + rng() % 3;
    Matrix m = random_invertible(f, r, rng);
    Matrix pmat = random_invertible(f, r, rng);
    Matrix conj = pmat * m * pmat.inverse().value();
    CHECK(similar(m, conj));
  }
}

TEST_CASE("similar agrees with exhaustive conjugation over GL(2,2)") {
  const FiniteField& f2 = splitting_field(2, 1);
  std::vector<Matrix> gl2;
  for (u64 bits = 0; bits < 16; ++bits) {
    Matrix m = Matrix::from_residues(
        f2, {{bits & 1, (bits >> 1) & 1}, {(bits >> 2) & 1, (bits >> 3) & 1}});
    if (m.invertible()) gl2.push_back(m);
  }
  REQUIRE(gl2.size() == 6);
  for (const auto& m1 : gl2)
    for (const auto& m2 : gl2) {
      bool brute = false;
      for (const auto& x : gl2)
        if (x * m1 == m2 * x) brute = true;
      CHECK(similar(m1, m2) == brute);
    }
}

TEST_CASE("conjugator: constructed and transpose cases") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 25; ++trial) {
    u64 p = std::vector<u64>{2, 3, 5}[rng() % 3];
    const FiniteField& f = splitting_field(p, 1);
    std::size_t r = 2 + rng() % 3;
    Matrix m = random_invertible(f, r, rng);
    Matrix pmat = random_invertible(f, r, rng);
    Matrix m2 = pmat * m * pmat.inverse().value();
    Matrix x = conjugator(m, m2);
    CHECK(x.invertible());
    CHECK(x * m == m2 * x);
    Matrix self = conjugator(m, m);
    CHECK(self * m == m * self);
  }
  // a companion matrix and its transpose are similar
  const FiniteField& f5 = splitting_field(5, 1);
  Matrix c = companion(Poly(f5, std::vector<u64>{3, 1, 4, 1}));
  Matrix ct(f5, c.dim());
  for (std::size_t i = 0; i < c.dim(); ++i)
    for (std::size_t j = 0; j < c.dim(); ++j) ct.at(i, j) = c.at(j, i);
  Matrix x = conjugator(c, ct);
  CHECK(x * c == ct * x);
  CHECK(x.invertible());
  // not-similar input rejected
  const FiniteField& f3 = splitting_field(3, 1);
  CHECK_THROWS(conjugator(Matrix::identity(f3, 2), Matrix::from_residues(f3, {{1, 1}, {0, 1}})));
}

TEST_CASE("mat_order stated cases") {
  const FiniteField& f3 = splitting_field(3, 1);
  CHECK(mat_order(Matrix::identity(f3, 2)) == 1);
  CHECK(mat_order(Matrix::from_residues(f3, {{0, 2}, {1, 0}})) == 4);
  const FiniteField& f2 = splitting_field(2, 1);
  CHECK(mat_order(companion(Poly(f2, std::vector<u64>{1, 1, 1}))) == 3);
  // agreement with direct powering on random matrices
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    u64 p = std::vector<u64>{2, 3}[rng() % 2];
    const FiniteField& f = splitting_field(p, 1);
    Matrix m = random_invertible(f, 2 + rng() % 2, rng);
    u64 ord = mat_order(m);
    CHECK(m.pow(ord).is_identity());
    for (u64 e = 1; e < ord; ++e) CHECK_FALSE(m.pow(e).is_identity());
  }
}

TEST_CASE("round trip: diag of companions recovers invariant factor chains") {
  std::mt19937_64 rng(31);
  int done = 0;
  while (done < 200) {
    u64 p = std::vector<u64>{2, 3, 5}[rng() % 3];
    const FiniteField& f = splitting_field(p, 1);
    // random divisibility chain a_1 | a_2 with total degree <= 8,
    // nonzero constant terms so the block matrix is invertible
    unsigned d1 = 1 + rng() % 2;
    Poly a1 = find_irreducible(p, d1, rng());
    Poly mult(f, std::vector<u64>{rng() % (p - 1) + 1, 1});
    Poly a2 = a1 * mult;
    if (a1.coeff(0).is_zero() || a2.coeff(0).is_zero()) continue;
    Matrix m = block_diag(f, {companion(a1), companion(a2)});
    auto inv = invariant_factors(m);
    REQUIRE(inv.size() == 2);
    CHECK(inv[0] == a1);
    CHECK(inv[1] == a2);
    ++done;
  }
}

TEST_CASE("EDTable degree accounting on random matrices") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    u64 p = std::vector<u64>{2, 3, 5}[rng() % 3];
    const FiniteField& f = splitting_field(p, 1);
    std::size_t r = 1 + rng() % 4;
    Matrix m = random_invertible(f, r, rng);
    CHECK(elementary_divisors(m).total_degree() == r);
  }
}

TEST_CASE("power lemma: ED buckets of M^k are k-th powers of M's buckets") {
  std::mt19937_64 rng(51);
  int done = 0;
  while (done < 60) {
    u64 p = std::vector<u64>{2, 3, 5}[rng() % 3];
    const FiniteField& f = splitting_field(p, 1);
    std::size_t r = 1 + rng() % 4;
    Matrix m = random_invertible(f, r, rng);
    u64 ord = mat_order(m);
    u64 k = 1 + rng() % (2 * ord);
    if (std::gcd(k, ord) != 1) continue;
    EDTable base = elementary_divisors(m);
    EDTable powered = elementary_divisors(m.pow(k));
    EDTable expected;
    for (const auto& [key, bucket] : base.buckets)
      for (const auto& lambda : bucket) expected.insert(key.first, key.second, lambda.pow(k));
    CHECK(powered == expected);
    ++done;
  }
}

TEST_CASE("jordan_power_eds against explicit matrix powers") {
  // 1x1 case
  const FiniteField& f5 = splitting_field(5, 1);
  EDTable t1 = jordan_power_eds(f5.from_residue(2), 1, 3);
  CHECK(t1.buckets.at({1, 1})[0] == f5.from_residue(3));  // 2^3 = 8 = 3

  // J(1,3) over GF(3) has order 3; k = 2 coprime
  const FiniteField& f3 = splitting_field(3, 1);
  Matrix j13 = jordan_matrix(f3.one(), 3);
  CHECK(mat_order(j13) == 3);
  EDTable analytic = jordan_power_eds(f3.one(), 3, 2);
  CHECK(analytic == elementary_divisors(j13.pow(2)));

  // J(a,2) over GF(4), k = 5: a^5 = a^2
  FiniteField f4(2, {1, 1, 1});
  FFElem a = f4.generator_x();
  Matrix j = jordan_matrix(a, 2);
  EDTable an = jordan_power_eds(a, 2, 5);
  CHECK(an.buckets.at({1, 2})[0] == a * a);
  CHECK(an == elementary_divisors(j.pow(5)));

  // k sharing a factor with the order is rejected
  CHECK_THROWS(jordan_power_eds(f3.one(), 3, 3));
  CHECK_THROWS(jordan_power_eds(f3.zero(), 2, 1));
}
