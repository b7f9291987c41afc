#ifndef GRPISO_MATRIX_HPP
#define GRPISO_MATRIX_HPP

#include <optional>
#include <string>
#include <vector>

#include "grpiso/field.hpp"

namespace grpiso {

/// Dense square matrix over a finite field.
class Matrix {
 public:
  Matrix(const FiniteField& field, std::size_t r);
  static Matrix identity(const FiniteField& field, std::size_t r);
  static Matrix from_residues(const FiniteField& field,
                              const std::vector<std::vector<u64>>& rows);

  const FiniteField& field() const { return *field_; }
  std::size_t dim() const { return r_; }
  FFElem& at(std::size_t i, std::size_t j) { return e_[i * r_ + j]; }
  const FFElem& at(std::size_t i, std::size_t j) const { return e_[i * r_ + j]; }

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  bool operator==(const Matrix& o) const;
  Matrix pow(u64 e) const;
  std::vector<FFElem> apply(const std::vector<FFElem>& v) const;

  FFElem det() const;
  bool invertible() const { return !det().is_zero(); }
  /// Inverse via Gauss-Jordan; nullopt when singular.
  std::optional<Matrix> inverse() const;
  bool is_identity() const;

  std::string to_string() const;

 private:
  const FiniteField* field_;
  std::size_t r_;
  std::vector<FFElem> e_;
};

}  // namespace grpiso

#endif
