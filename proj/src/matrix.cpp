#include "grpiso/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace grpiso {

Matrix::Matrix(const FiniteField& field, std::size_t r)
    : field_(&field), r_(r), e_(r * r, field.zero()) {}

Matrix Matrix::identity(const FiniteField& field, std::size_t r) {
  Matrix m(field, r);
  for (std::size_t i = 0; i < r; ++i) m.at(i, i) = field.one();
  return m;
}

Matrix Matrix::from_residues(const FiniteField& field,
                             const std::vector<std::vector<u64>>& rows) {
  std::size_t r = rows.size();
  Matrix m(field, r);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != r) throw std::invalid_argument("Matrix: not square");
    for (std::size_t j = 0; j < r; ++j) m.at(i, j) = field.from_residue(rows[i][j]);
  }
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (r_ != o.r_ || !(field() == o.field()))
    throw std::invalid_argument("Matrix: dimension/field mismatch");
  Matrix c(*field_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t k = 0; k < r_; ++k) {
      const FFElem& a = at(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < r_; ++j) c.at(i, j) = c.at(i, j) + a * o.at(k, j);
    }
  return c;
}

Matrix Matrix::operator+(const Matrix& o) const {
  Matrix c(*field_, r_);
  for (std::size_t i = 0; i < e_.size(); ++i) c.e_[i] = e_[i] + o.e_[i];
  return c;
}

Matrix Matrix::operator-(const Matrix& o) const {
  Matrix c(*field_, r_);
  for (std::size_t i = 0; i < e_.size(); ++i) c.e_[i] = e_[i] - o.e_[i];
  return c;
}

bool Matrix::operator==(const Matrix& o) const { return r_ == o.r_ && e_ == o.e_; }

Matrix Matrix::pow(u64 e) const {
  Matrix r = identity(*field_, r_);
  Matrix b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

std::vector<FFElem> Matrix::apply(const std::vector<FFElem>& v) const {
  std::vector<FFElem> out(r_, field_->zero());
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < r_; ++j) out[i] = out[i] + at(i, j) * v[j];
  return out;
}

FFElem Matrix::det() const {
  Matrix m = *this;
  FFElem d = field_->one();
  for (std::size_t col = 0; col < r_; ++col) {
    std::size_t pivot = col;
    while (pivot < r_ && m.at(pivot, col).is_zero()) ++pivot;
    if (pivot == r_) return field_->zero();
    if (pivot != col) {
      for (std::size_t j = 0; j < r_; ++j) std::swap(m.at(pivot, j), m.at(col, j));
      d = -d;
    }
    d = d * m.at(col, col);
    FFElem inv = m.at(col, col).inverse();
    for (std::size_t i = col + 1; i < r_; ++i) {
      FFElem f = m.at(i, col) * inv;
      if (f.is_zero()) continue;
      for (std::size_t j = col; j < r_; ++j) m.at(i, j) = m.at(i, j) - f * m.at(col, j);
    }
  }
  return d;
}

std::optional<Matrix> Matrix::inverse() const {
  Matrix m = *this;
  Matrix inv = identity(*field_, r_);
  for (std::size_t col = 0; col < r_; ++col) {
    std::size_t pivot = col;
    while (pivot < r_ && m.at(pivot, col).is_zero()) ++pivot;
    if (pivot == r_) return std::nullopt;
    if (pivot != col)
      for (std::size_t j = 0; j < r_; ++j) {
        std::swap(m.at(pivot, j), m.at(col, j));
        std::swap(inv.at(pivot, j), inv.at(col, j));
      }
    FFElem s = m.at(col, col).inverse();
    for (std::size_t j = 0; j < r_; ++j) {
      m.at(col, j) = m.at(col, j) * s;
      inv.at(col, j) = inv.at(col, j) * s;
    }
    for (std::size_t i = 0; i < r_; ++i) {
      if (i == col) continue;
      FFElem f = m.at(i, col);
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < r_; ++j) {
        m.at(i, j) = m.at(i, j) - f * m.at(col, j);
        inv.at(i, j) = inv.at(i, j) - f * inv.at(col, j);
      }
    }
  }
  return inv;
}

bool Matrix::is_identity() const {
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < r_; ++j) {
      if (i == j && !at(i, j).is_one()) return false;
      if (i != j && !at(i, j).is_zero()) return false;
    }
  return true;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < r_; ++i) {
    for (std::size_t j = 0; j < r_; ++j) {
      if (j) os << ' ';
      os << at(i, j).to_string();
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace grpiso
