#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "grpiso/poly.hpp"

using namespace grpiso;

TEST_CASE("prime field arithmetic") {
  FiniteField f7(7);
  CHECK((f7.from_residue(3) * f7.from_residue(5)).is_one());
  CHECK(f7.from_residue(3) + f7.zero() == f7.from_residue(3));
  CHECK(f7.from_residue(2) / f7.from_residue(2) == f7.one());
  CHECK_THROWS(f7.one() / f7.zero());
  CHECK_THROWS(FiniteField(6));
}

TEST_CASE("GF(4) arithmetic: alpha has order 3") {
  FiniteField f4(2, {1, 1, 1});  // x^2 + x + 1
  FFElem a = f4.generator_x();
  CHECK(a * a * a == f4.one());
  CHECK(mult_order(a) == 3);
  CHECK(mult_order(f4.one()) == 1);
  CHECK(minimal_subfield_degree(a) == 2);
  CHECK(minimal_subfield_degree(f4.one()) == 1);
}

TEST_CASE("GF(8): root of x^3+x+1 has order 7") {
  FiniteField f8(2, {1, 1, 0, 1});
  CHECK(mult_order(f8.generator_x()) == 7);
}

TEST_CASE("field axioms, exhaustive for small fields") {
  for (auto params : std::vector<std::pair<u64, std::vector<u64>>>{
           {5, {0, 1}}, {2, {1, 1, 1}}, {3, {1, 2, 1, 1}}}) {
    FiniteField f = params.second.size() > 2 ? FiniteField(params.first, params.second)
                                             : FiniteField(params.first);
    auto elems = f.all_elements();
    REQUIRE(f.size() <= 64);
    for (const auto& a : elems)
      for (const auto& b : elems) {
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        if (!b.is_zero()) CHECK((a / b) * b == a);
        for (const auto& c : elems) {
          CHECK((a + b) + c == a + (b + c));
          CHECK((a * b) * c == a * (b * c));
          CHECK(a * (b + c) == a * b + a * c);
        }
      }
    // mult_order divides field size - 1
    for (const auto& a : elems)
      if (!a.is_zero()) CHECK((f.size() - 1) % mult_order(a) == 0);
  }
}

TEST_CASE("find_irreducible basic cases") {
  Poly lin = find_irreducible(2, 1);
  CHECK(lin.degree() == 1);
  Poly quad = find_irreducible(2, 2);
  CHECK(quad == Poly(splitting_field(2, 1), std::vector<u64>{1, 1, 1}));
  Poly cubic = find_irreducible(2, 3);
  bool ok = cubic == Poly(splitting_field(2, 1), std::vector<u64>{1, 1, 0, 1}) ||
            cubic == Poly(splitting_field(2, 1), std::vector<u64>{1, 0, 1, 1});
  CHECK(ok);
  for (u64 p : {2ULL, 3ULL, 5ULL})
    for (unsigned d = 1; d <= 5; ++d) CHECK(is_irreducible(find_irreducible(p, d, 99)));
}

TEST_CASE("factor_poly on stated examples") {
  const FiniteField& f2 = splitting_field(2, 1);
  auto fac = factor_poly(Poly(f2, std::vector<u64>{1, 1, 1}));
  REQUIRE(fac.size() == 1);
  CHECK(fac[0].first == Poly(f2, std::vector<u64>{1, 1, 1}));
  CHECK(fac[0].second == 1);

  const FiniteField& f3 = splitting_field(3, 1);
  Poly xm1(f3, std::vector<u64>{2, 1});  // x - 1
  auto sq = factor_poly(xm1 * xm1);
  REQUIRE(sq.size() == 1);
  CHECK(sq[0].first == xm1);
  CHECK(sq[0].second == 2);

  const FiniteField& f5 = splitting_field(5, 1);
  auto ds = factor_poly(Poly(f5, std::vector<u64>{4, 0, 1}));  // x^2 - 1
  REQUIRE(ds.size() == 2);
  CHECK(ds[0].second == 1);
  CHECK(ds[1].second == 1);
  CHECK(ds[0].first * ds[1].first == Poly(f5, std::vector<u64>{4, 0, 1}));
}

TEST_CASE("factor_poly reconstruction on random polynomials") {
  std::mt19937_64 rng(123);
  int checked = 0;
  for (u64 p : {2ULL, 3ULL, 5ULL}) {
    const FiniteField& f = splitting_field(p, 1);
    for (int trial = 0; trial < 170; ++trial) {
      unsigned deg = 1 + rng() % 8;
      std::vector<u64> coeffs(deg + 1);
      for (unsigned i = 0; i < deg; ++i) coeffs[i] = rng() % p;
      coeffs[deg] = 1;
      Poly poly(f, coeffs);
      auto fac = factor_poly(poly, rng());
      Poly prod(f, std::vector<u64>{1});
      for (auto& [g, mult] : fac) {
        CHECK(is_irreducible(g));
        for (unsigned i = 0; i < mult; ++i) prod = prod * g;
      }
      CHECK(prod == poly);
      ++checked;
    }
  }
  CHECK(checked >= 500);
}

TEST_CASE("roots_in_splitting_ext: GF(4)/GF(8) examples") {
  const FiniteField& f2 = splitting_field(2, 1);
  Poly quad(f2, std::vector<u64>{1, 1, 1});
  auto roots2 = roots_in_splitting_ext(quad);
  REQUIRE(roots2.size() == 2);
  CHECK(roots2[1] == roots2[0] * roots2[0]);  // Frobenius orbit {a, a^2}
  CHECK(mult_order(roots2[0]) == 3);

  Poly cubic(f2, std::vector<u64>{1, 1, 0, 1});
  auto roots3 = roots_in_splitting_ext(cubic);
  REQUIRE(roots3.size() == 3);
  CHECK(mult_order(roots3[0]) == 7);
  CHECK(roots3[1] == roots3[0].pow(2));
  CHECK(roots3[2] == roots3[0].pow(4));
  // distinct, in no proper subfield, and reconstruct the polynomial
  std::set<std::vector<u64>> uniq;
  for (auto& r : roots3) {
    uniq.insert(r.coeffs());
    CHECK(minimal_subfield_degree(r) == 3);
  }
  CHECK(uniq.size() == 3);
  const FiniteField& f8 = splitting_field(2, 3);
  Poly rebuilt = Poly::from_roots(f8, roots3);
  for (int i = 0; i <= 3; ++i)
    CHECK(rebuilt.coeff(i) == f8.from_residue(cubic.coeff(i).coeffs()[0]));
}

TEST_CASE("roots_in_splitting_ext: linear and error cases") {
  const FiniteField& f5 = splitting_field(5, 1);
  auto roots = roots_in_splitting_ext(Poly(f5, std::vector<u64>{2, 1}));  // x + 2
  REQUIRE(roots.size() == 1);
  CHECK(roots[0] == f5.from_residue(3));
  CHECK_THROWS(roots_in_splitting_ext(Poly(f5, std::vector<u64>{4, 0, 1})));  // reducible
}

TEST_CASE("Frobenius closure of splitting-field root sets (property)") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    u64 p = std::vector<u64>{2, 3, 5}[rng() % 3];
    unsigned d = 2 + rng() % 3;
    Poly f = find_irreducible(p, d, rng());
    auto roots = roots_in_splitting_ext(f);
    std::set<std::vector<u64>> root_set;
    for (auto& r : roots) root_set.insert(r.coeffs());
    for (auto& r : roots) CHECK(root_set.count(r.frobenius().coeffs()) == 1);
  }
}
