#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "grpiso/numth.hpp"

using namespace grpiso;

TEST_CASE("primality and factorization") {
  CHECK(is_prime(2));
  CHECK(is_prime(3));
  CHECK(is_prime(104729));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(104730));
  auto f = factorize(324);
  REQUIRE(f.size() == 2);
  CHECK(f[0] == std::pair<u64, unsigned>{2, 2});
  CHECK(f[1] == std::pair<u64, unsigned>{3, 4});
  CHECK(factorize(1).empty());
  auto big = factorize(600851475143ULL);
  u64 prod = 1;
  for (auto [p, e] : big)
    for (unsigned i = 0; i < e; ++i) prod *= p;
  CHECK(prod == 600851475143ULL);
}

TEST_CASE("divisors") {
  CHECK(divisors(12) == std::vector<u64>{1, 2, 3, 4, 6, 12});
  CHECK(divisors(1) == std::vector<u64>{1});
}

TEST_CASE("mod inverse and units") {
  CHECK(mod_inverse(3, 7) == 5);
  CHECK(mulmod(mod_inverse(17, 101), 17, 101) == 1);
  CHECK(units_mod(12) == std::vector<u64>{1, 5, 7, 11});
  CHECK(units_mod(1) == std::vector<u64>{0});
}

TEST_CASE("smith normal form: random matrices reconstruct") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
    ZMat a(rows, std::vector<i64>(cols));
    for (auto& row : a)
      for (auto& v : row) v = static_cast<i64>(rng() % 21) - 10;
    SmithZ snf = smith_normal_form(a);
    // u * a * v == s
    ZMat prod = zmat_mul(zmat_mul(snf.u, a), snf.v);
    CHECK(prod == snf.s);
    // diagonal with divisibility chain
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (i != j) CHECK(snf.s[i][j] == 0);
    for (std::size_t i = 0; i + 1 < std::min(rows, cols); ++i) {
      if (snf.s[i][i] != 0 && snf.s[i + 1][i + 1] != 0)
        CHECK(snf.s[i + 1][i + 1] % snf.s[i][i] == 0);
      if (snf.s[i][i] == 0) CHECK(snf.s[i + 1][i + 1] == 0);
    }
  }
}

TEST_CASE("congruence kernel matches brute force") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 1 + rng() % 3, t = 1 + rng() % 2;
    std::vector<i64> src_mods, mods;
    for (std::size_t j = 0; j < n; ++j) src_mods.push_back(2 + static_cast<i64>(rng() % 6));
    for (std::size_t i = 0; i < t; ++i) mods.push_back(2 + static_cast<i64>(rng() % 6));
    // entries must describe a well-defined map Z_{src_mods} -> Z_{mods}:
    // images[i][j] * src_mods[j] == 0 (mod mods[i])
    ZMat images(t, std::vector<i64>(n));
    for (std::size_t i = 0; i < t; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        i64 step = mods[i] / std::gcd(mods[i], src_mods[j]);
        images[i][j] = step * static_cast<i64>(rng() % 12);
      }

    auto in_kernel = [&](const std::vector<i64>& u) {
      for (std::size_t i = 0; i < t; ++i) {
        i64 acc = 0;
        for (std::size_t j = 0; j < n; ++j) acc += images[i][j] * u[j];
        if (((acc % mods[i]) + mods[i]) % mods[i] != 0) return false;
      }
      return true;
    };
    // brute-force kernel subgroup of Z_{src_mods}
    std::vector<std::vector<i64>> truth;
    std::vector<i64> u(n, 0);
    while (true) {
      if (in_kernel(u)) truth.push_back(u);
      std::size_t j = 0;
      while (j < n && ++u[j] == src_mods[j]) u[j++] = 0;
      if (j == n) break;
    }
    // generated subgroup from congruence_kernel
    auto gens = congruence_kernel(images, mods, src_mods);
    std::set<std::vector<i64>> gen_set;
    std::vector<std::vector<i64>> frontier{std::vector<i64>(n, 0)};
    gen_set.insert(frontier[0]);
    while (!frontier.empty()) {
      auto cur = frontier.back();
      frontier.pop_back();
      for (const auto& g : gens) {
        std::vector<i64> nxt(n);
        for (std::size_t j = 0; j < n; ++j) nxt[j] = (cur[j] + g[j]) % src_mods[j];
        if (gen_set.insert(nxt).second) frontier.push_back(nxt);
      }
    }
    CHECK(gen_set.size() == truth.size());
    for (const auto& v : truth) CHECK(gen_set.count(v) == 1);
  }
}

TEST_CASE("solve_congruence finds solutions iff they exist") {
  ZMat images{{2, 0}, {0, 3}};
  std::vector<i64> mods{4, 9};
  auto sol = solve_congruence(images, {2, 3}, mods);
  REQUIRE(sol.has_value());
  CHECK((((2 * (*sol)[0] - 2) % 4) + 4) % 4 == 0);
  CHECK((((3 * (*sol)[1] - 3) % 9) + 9) % 9 == 0);
  // 2x == 1 mod 4 has no solution
  auto none = solve_congruence(ZMat{{2}}, {1}, {4});
  CHECK_FALSE(none.has_value());
}
