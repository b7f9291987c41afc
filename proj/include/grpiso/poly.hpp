#ifndef GRPISO_POLY_HPP
#define GRPISO_POLY_HPP

#include <utility>
#include <vector>

#include "grpiso/field.hpp"

namespace grpiso {

/// Univariate polynomial over a finite field, coefficients lowest degree
/// first, no trailing zeros (the zero polynomial has an empty vector).
class Poly {
 public:
  explicit Poly(const FiniteField& field) : field_(&field) {}
  Poly(const FiniteField& field, std::vector<FFElem> coeffs);
  /// Convenience: coefficients given as base-field residues.
  Poly(const FiniteField& field, const std::vector<u64>& residues);

  const FiniteField& field() const { return *field_; }
  const std::vector<FFElem>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_monic() const { return !c_.empty() && c_.back().is_one(); }
  FFElem coeff(std::size_t i) const;  // zero beyond the stored degree
  FFElem leading() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const FFElem& s) const;
  bool operator==(const Poly& o) const { return c_ == o.c_; }
  std::strong_ordering operator<=>(const Poly& o) const;

  Poly monic() const;
  FFElem eval(const FFElem& x) const;

  static Poly x_power(const FiniteField& field, unsigned k);
  /// Product of (x - r) over the given roots.
  static Poly from_roots(const FiniteField& field, const std::vector<FFElem>& roots);

  std::string to_string() const;

 private:
  void trim();
  const FiniteField* field_;
  std::vector<FFElem> c_;
};

/// Quotient and remainder; divisor must be nonzero.
std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b);
Poly poly_mod(const Poly& a, const Poly& b);
Poly poly_div_exact(const Poly& a, const Poly& b);
Poly poly_gcd(Poly a, Poly b);  // monic gcd
Poly poly_powmod(const Poly& base, u64 exp, const Poly& mod);
Poly poly_derivative(const Poly& a);

bool is_irreducible(const Poly& f);

/// Deterministic-for-a-seed monic irreducible polynomial of degree d over
/// GF(p). The returned polynomial lives over splitting_field(p, 1).
Poly find_irreducible(u64 p, unsigned d, u64 seed = 1);

/// Full factorization of a nonzero monic polynomial into monic irreducible
/// factors with multiplicities (squarefree decomposition, distinct-degree,
/// then randomized equal-degree splitting). Deterministic given the seed.
/// Factors sorted by degree then coefficient order.
std::vector<std::pair<Poly, unsigned>> factor_poly(const Poly& f, u64 seed = 1);

/// The d distinct roots in GF(p^d) of an irreducible degree-d polynomial
/// over GF(p), as the Frobenius orbit of one root. Uses the canonical
/// splitting_field(p, d).
std::vector<FFElem> roots_in_splitting_ext(const Poly& f);

/// All roots of f lying in f's own coefficient field (with multiplicity 1
/// each; multiplicities are ignored).
std::vector<FFElem> roots_in_field(const Poly& f, u64 seed = 1);

}  // namespace grpiso

#endif
