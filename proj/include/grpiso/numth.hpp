#ifndef GRPISO_NUMTH_HPP
#define GRPISO_NUMTH_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace grpiso {

using u64 = std::uint64_t;
using i64 = std::int64_t;

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 base, u64 exp, u64 m);

bool is_prime(u64 n);

/// Prime factorization as (prime, exponent) pairs, primes ascending.
/// Trial division plus Pollard rho; intended for desk-scale inputs.
std::vector<std::pair<u64, unsigned>> factorize(u64 n);

/// All divisors of n, ascending.
std::vector<u64> divisors(u64 n);

/// Modular inverse of a mod m; requires gcd(a, m) = 1.
u64 mod_inverse(u64 a, u64 m);

/// Elements of Z_m^* (residues coprime with m). m >= 1; for m = 1
/// returns {0} (the trivial group, with 0 acting as identity 1 mod 1).
std::vector<u64> units_mod(u64 m);

// ---------------------------------------------------------------------------
// Integer linear algebra (Smith normal form and congruence solving).
// Matrices are dense row-major vectors of rows.

using ZMat = std::vector<std::vector<i64>>;

ZMat zmat_identity(std::size_t n);
ZMat zmat_mul(const ZMat& a, const ZMat& b);

/// Exact determinant (Bareiss fraction-free elimination).
i64 zmat_det(ZMat a);

/// Inverse of a unimodular integer matrix (det = +-1), via the adjugate.
ZMat zmat_inverse_unimodular(const ZMat& a);

struct SmithZ {
  ZMat s;  // diagonal, s[i][i] >= 0, each dividing the next
  ZMat u;  // unimodular, u * a * v = s
  ZMat v;
};

/// Smith normal form of an integer matrix with transform tracking.
SmithZ smith_normal_form(ZMat a);

/// Generators of the kernel of the map Z^n -> Z_{mods[0]} x ... given by
/// `images` (one row per target component, n columns): all u with
/// images * u == 0 componentwise mod mods. Returned vectors are reduced
/// mod `src_mods` (the orders of the source generators) and generate the
/// kernel subgroup of Z_{src_mods[0]} x ... x Z_{src_mods[n-1]}.
std::vector<std::vector<i64>> congruence_kernel(const ZMat& images,
                                                const std::vector<i64>& mods,
                                                const std::vector<i64>& src_mods);

/// One solution u of images * u == rhs componentwise mod mods, if any.
std::optional<std::vector<i64>> solve_congruence(const ZMat& images,
                                                 const std::vector<i64>& rhs,
                                                 const std::vector<i64>& mods);

}  // namespace grpiso

#endif
