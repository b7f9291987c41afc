#ifndef GRPISO_FIELD_HPP
#define GRPISO_FIELD_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "grpiso/numth.hpp"

namespace grpiso {

class FFElem;

/// GF(p^d), represented as GF(p)[x] modulo a monic irreducible polynomial
/// of degree d. For d = 1 arithmetic degenerates to residues mod p.
class FiniteField {
 public:
  /// Prime field GF(p).
  explicit FiniteField(u64 p);
  /// Extension field GF(p^d) with the given monic irreducible modulus
  /// (coefficients lowest degree first, length d + 1, leading 1).
  FiniteField(u64 p, const std::vector<u64>& modulus);

  u64 characteristic() const { return p_; }
  unsigned degree() const { return d_; }
  u64 size() const { return size_; }
  const std::vector<u64>& modulus() const { return modulus_; }

  FFElem zero() const;
  FFElem one() const;
  /// Element from base-field residue (the prime subfield embedding).
  FFElem from_residue(u64 r) const;
  /// Element from coefficient vector (length <= d, lowest degree first).
  FFElem from_coeffs(std::vector<u64> coeffs) const;
  /// The class of x in GF(p)[x]/(modulus); requires d >= 2.
  FFElem generator_x() const;
  /// Enumerate all p^d elements (desk scale only).
  std::vector<FFElem> all_elements() const;

  bool operator==(const FiniteField& other) const {
    return p_ == other.p_ && modulus_ == other.modulus_;
  }

 private:
  u64 p_;
  unsigned d_;
  u64 size_;
  std::vector<u64> modulus_;  // length d_ + 1, monic
};

/// Canonical splitting-field registry: one cached GF(p^d) per (p, d) with a
/// deterministically chosen modulus, so elements from independent
/// computations are directly comparable. The returned reference is valid for
/// the lifetime of the program.
const FiniteField& splitting_field(u64 p, unsigned d);

class FFElem {
 public:
  FFElem() : field_(nullptr) {}
  FFElem(const FiniteField* field, std::vector<u64> coeffs);

  const FiniteField& field() const { return *field_; }
  const std::vector<u64>& coeffs() const { return c_; }
  bool is_zero() const;
  bool is_one() const;

  FFElem operator+(const FFElem& o) const;
  FFElem operator-(const FFElem& o) const;
  FFElem operator-() const;
  FFElem operator*(const FFElem& o) const;
  FFElem operator/(const FFElem& o) const;
  FFElem inverse() const;
  FFElem pow(u64 e) const;
  /// Frobenius x -> x^p applied n times.
  FFElem frobenius(unsigned n = 1) const;

  bool operator==(const FFElem& o) const;
  bool operator!=(const FFElem& o) const { return !(*this == o); }
  /// Coefficient-lexicographic total order (the canonical ordering used to
  /// canonicalize multisets).
  std::strong_ordering operator<=>(const FFElem& o) const;

  std::string to_string() const;

 private:
  friend class FiniteField;
  const FiniteField* field_;
  std::vector<u64> c_;  // length d, fully reduced mod p
};

/// Multiplicative order of a nonzero element; divides p^d - 1.
u64 mult_order(const FFElem& a);

/// Smallest e (dividing d) with a in GF(p^e), i.e. a^(p^e) = a.
unsigned minimal_subfield_degree(const FFElem& a);

}  // namespace grpiso

#endif
