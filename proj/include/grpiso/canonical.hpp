#ifndef GRPISO_CANONICAL_HPP
#define GRPISO_CANONICAL_HPP

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "grpiso/matrix.hpp"
#include "grpiso/poly.hpp"

namespace grpiso {

/// Invariant factors a_1 | a_2 | ... | a_s (monic, ascending divisibility;
/// the last one is the minimal polynomial). Sum of degrees = dim.
using InvariantFactors = std::vector<Poly>;

/// Multisets of elementary-divisor roots, bucketed by (d, l): the roots
/// lambda of degree-l elementary divisors (x - lambda)^l whose minimal field
/// of definition over the base field has extension degree exactly d. Each
/// bucket is kept sorted, so tables compare as multisets.
struct EDTable {
  std::map<std::pair<unsigned, unsigned>, std::vector<FFElem>> buckets;

  bool operator==(const EDTable& o) const { return buckets == o.buckets; }
  /// Sum over buckets of l * bucket size (must equal the matrix dimension).
  std::size_t total_degree() const;
  void insert(unsigned d, unsigned ell, const FFElem& root);
};

/// Companion matrix of a monic polynomial of degree >= 1 (1's on the first
/// subdiagonal, negated coefficients down the last column).
Matrix companion(const Poly& a);

InvariantFactors invariant_factors(const Matrix& m);

/// Rational canonical form data: m * basis = basis * rcf, basis invertible.
struct RcfTransform {
  Matrix rcf;
  Matrix basis;
};
RcfTransform rcf_transform(const Matrix& m);

bool similar(const Matrix& m1, const Matrix& m2);

/// An invertible X with X * m1 = m2 * X; requires similar(m1, m2).
Matrix conjugator(const Matrix& m1, const Matrix& m2);

/// Multiplicative order (smallest e >= 1 with m^e = I); requires invertible.
u64 mat_order(const Matrix& m);

EDTable elementary_divisors(const Matrix& m);

Matrix jordan_matrix(const FFElem& lambda, unsigned c);

/// Elementary-divisor table of J(lambda, c)^k, computed analytically as the
/// single divisor (x - lambda^k)^c; requires lambda != 0 and k coprime with
/// the order of J(lambda, c).
EDTable jordan_power_eds(const FFElem& lambda, unsigned c, u64 k);

}  // namespace grpiso

#endif
