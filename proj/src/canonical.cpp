#include "grpiso/canonical.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace grpiso {

std::size_t EDTable::total_degree() const {
  std::size_t total = 0;
  for (const auto& [key, bucket] : buckets) total += key.second * bucket.size();
  return total;
}

void EDTable::insert(unsigned d, unsigned ell, const FFElem& root) {
  auto& bucket = buckets[{d, ell}];
  bucket.insert(std::upper_bound(bucket.begin(), bucket.end(), root), root);
}

Matrix companion(const Poly& a) {
  if (!a.is_monic()) throw std::invalid_argument("companion: polynomial must be monic");
  if (a.degree() < 1) throw std::invalid_argument("companion: degree must be >= 1");
  std::size_t k = static_cast<std::size_t>(a.degree());
  Matrix c(a.field(), k);
  for (std::size_t i = 0; i + 1 < k; ++i) c.at(i + 1, i) = a.field().one();
  for (std::size_t i = 0; i < k; ++i) c.at(i, k - 1) = -a.coeff(i);
  return c;
}

namespace {

// Polynomial-matrix Smith normal form of xI - M over F[x], tracking the
// inverse of the accumulated row transform. With u (xI - M) v = s, the
// columns of uinv are the cyclic generators of the F[x]-module
// decomposition, which is exactly what the RCF basis needs.
struct PolySmith {
  std::vector<Poly> diagonal;                 // s_1 | s_2 | ... (monic)
  std::vector<std::vector<Poly>> uinv;        // r x r polynomial matrix
};

PolySmith poly_smith_char_matrix(const Matrix& m) {
  const FiniteField& f = m.field();
  std::size_t r = m.dim();
  std::vector<std::vector<Poly>> a(r, std::vector<Poly>(r, Poly(f)));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      std::vector<FFElem> c{-m.at(i, j)};
      if (i == j) c.push_back(f.one());
      a[i][j] = Poly(f, std::move(c));
    }
  std::vector<std::vector<Poly>> uinv(r, std::vector<Poly>(r, Poly(f)));
  Poly one(f, std::vector<u64>{1});
  for (std::size_t i = 0; i < r; ++i) uinv[i][i] = one;

  auto row_sub = [&](std::size_t i, std::size_t j, const Poly& q) {
    // row i -= q * row j; uinv column j += q * column i
    for (std::size_t c = 0; c < r; ++c) a[i][c] = a[i][c] - q * a[j][c];
    for (std::size_t c = 0; c < r; ++c) uinv[c][j] = uinv[c][j] + q * uinv[c][i];
  };
  auto row_swap = [&](std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    for (std::size_t c = 0; c < r; ++c) std::swap(uinv[c][i], uinv[c][j]);
  };
  auto col_sub = [&](std::size_t i, std::size_t j, const Poly& q) {
    // col i -= q * col j (no tracking needed)
    for (std::size_t row = 0; row < r; ++row) a[row][i] = a[row][i] - q * a[row][j];
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    for (std::size_t row = 0; row < r; ++row) std::swap(a[row][i], a[row][j]);
  };
  auto scale_row = [&](std::size_t i, const FFElem& c) {
    for (std::size_t col = 0; col < r; ++col) a[i][col] = a[i][col] * c;
    FFElem inv = c.inverse();
    for (std::size_t row = 0; row < r; ++row) uinv[row][i] = uinv[row][i] * inv;
  };

  std::size_t t = 0;
  while (t < r) {
    // pivot: nonzero entry of minimal degree in the trailing block
    int best = -1;
    std::size_t pi = t, pj = t;
    for (std::size_t i = t; i < r; ++i)
      for (std::size_t j = t; j < r; ++j)
        if (!a[i][j].is_zero() && (best < 0 || a[i][j].degree() < best)) {
          best = a[i][j].degree();
          pi = i;
          pj = j;
        }
    if (best < 0) break;
    row_swap(t, pi);
    col_swap(t, pj);

    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (a[i][t].is_zero()) continue;
        Poly q = poly_divmod(a[i][t], a[t][t]).first;
        row_sub(i, t, q);
        if (!a[i][t].is_zero()) {
          row_swap(t, i);
          dirty = true;
        }
      }
      for (std::size_t j = t + 1; j < r; ++j) {
        if (a[t][j].is_zero()) continue;
        Poly q = poly_divmod(a[t][j], a[t][t]).first;
        col_sub(j, t, q);
        if (!a[t][j].is_zero()) {
          col_swap(t, j);
          dirty = true;
        }
      }
    }
    ++t;
  }
  if (t != r) throw std::logic_error("poly_smith_char_matrix: xI - M is always full rank");

  // enforce the divisibility chain
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i + 1 < r; ++i) {
      if (poly_divmod(a[i + 1][i + 1], a[i][i]).second.is_zero()) continue;
      // fold column i+1 into column i, then re-reduce the 2x2 corner
      for (std::size_t row = 0; row < r; ++row) a[row][i] = a[row][i] + a[row][i + 1];
      while (!a[i + 1][i].is_zero()) {
        Poly q = poly_divmod(a[i][i], a[i + 1][i]).first;
        row_sub(i, i + 1, q);
        row_swap(i, i + 1);
      }
      if (!a[i][i + 1].is_zero()) {
        Poly q = poly_divmod(a[i][i + 1], a[i][i]).first;
        col_sub(i + 1, i, q);
      }
      changed = true;
    }
  }
  for (std::size_t i = 0; i < r; ++i) {
    FFElem lead = a[i][i].leading();
    if (!lead.is_one()) scale_row(i, lead.inverse());
  }

  PolySmith out;
  for (std::size_t i = 0; i < r; ++i) out.diagonal.push_back(a[i][i]);
  out.uinv = std::move(uinv);
  return out;
}

// Evaluate q(M) applied to the j-th standard basis vector, given the
// precomputed powers of M.
std::vector<FFElem> poly_of_matrix_column(const Poly& q, const std::vector<Matrix>& powers,
                                          std::size_t j) {
  const FiniteField& f = powers[0].field();
  std::size_t r = powers[0].dim();
  std::vector<FFElem> out(r, f.zero());
  for (int k = 0; k <= q.degree(); ++k) {
    const FFElem& c = q.coeff(static_cast<std::size_t>(k));
    if (c.is_zero()) continue;
    for (std::size_t i = 0; i < r; ++i)
      out[i] = out[i] + c * powers[static_cast<std::size_t>(k)].at(i, j);
  }
  return out;
}

}  // namespace

InvariantFactors invariant_factors(const Matrix& m) {
  if (!m.invertible()) throw std::invalid_argument("invariant_factors: singular matrix");
  PolySmith smith = poly_smith_char_matrix(m);
  InvariantFactors out;
  for (const Poly& s : smith.diagonal)
    if (s.degree() >= 1) out.push_back(s);
  return out;
}

RcfTransform rcf_transform(const Matrix& m) {
  const FiniteField& f = m.field();
  std::size_t r = m.dim();
  PolySmith smith = poly_smith_char_matrix(m);

  int max_deg = 0;
  for (const auto& row : smith.uinv)
    for (const auto& q : row) max_deg = std::max(max_deg, q.degree());
  std::vector<Matrix> powers;
  powers.push_back(Matrix::identity(f, r));
  for (int k = 1; k <= std::max(max_deg, static_cast<int>(r)); ++k)
    powers.push_back(powers.back() * m);

  Matrix basis(f, r);
  std::vector<Poly> factors;
  std::size_t col = 0;
  for (std::size_t i = 0; i < r; ++i) {
    const Poly& s = smith.diagonal[i];
    if (s.degree() < 1) continue;
    factors.push_back(s);
    // cyclic generator w = sum_j uinv[j][i](M) e_j
    std::vector<FFElem> w(r, f.zero());
    for (std::size_t j = 0; j < r; ++j) {
      std::vector<FFElem> part = poly_of_matrix_column(smith.uinv[j][i], powers, j);
      for (std::size_t k = 0; k < r; ++k) w[k] = w[k] + part[k];
    }
    for (int k = 0; k < s.degree(); ++k) {
      for (std::size_t row = 0; row < r; ++row) basis.at(row, col) = w[row];
      ++col;
      w = m.apply(w);
    }
  }
  if (col != r) throw std::logic_error("rcf_transform: degree accounting failed");

  Matrix rcf(f, r);
  std::size_t offset = 0;
  for (const Poly& s : factors) {
    Matrix block = companion(s);
    std::size_t k = block.dim();
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) rcf.at(offset + i, offset + j) = block.at(i, j);
    offset += k;
  }
  if (!basis.invertible()) throw std::logic_error("rcf_transform: basis not invertible");
  return {rcf, basis};
}

bool similar(const Matrix& m1, const Matrix& m2) {
  if (m1.dim() != m2.dim() || !(m1.field() == m2.field()))
    throw std::invalid_argument("similar: dimension/field mismatch");
  InvariantFactors f1 = invariant_factors(m1);
  InvariantFactors f2 = invariant_factors(m2);
  return f1 == f2;
}

Matrix conjugator(const Matrix& m1, const Matrix& m2) {
  if (!similar(m1, m2)) throw std::invalid_argument("conjugator: matrices not similar");
  RcfTransform t1 = rcf_transform(m1);
  RcfTransform t2 = rcf_transform(m2);
  // m_i * basis_i = basis_i * rcf, same rcf for both
  Matrix x = t2.basis * t1.basis.inverse().value();
  if (!(x * m1 == m2 * x)) throw std::logic_error("conjugator: verification failed");
  return x;
}

EDTable elementary_divisors(const Matrix& m) {
  InvariantFactors factors = invariant_factors(m);
  EDTable table;
  for (const Poly& a : factors) {
    for (const auto& [g, mult] : factor_poly(a)) {
      unsigned d = static_cast<unsigned>(g.degree());
      if (m.field().degree() == 1) {
        for (const FFElem& root : roots_in_splitting_ext(g)) table.insert(d, mult, root);
      } else if (d == 1) {
        table.insert(1, mult, -g.coeff(0));
      } else {
        // nested extension towers are out of scope
        throw std::invalid_argument(
            "elementary_divisors: non-linear factor over an extension base field");
      }
    }
  }
  if (table.total_degree() != m.dim())
    throw std::logic_error("elementary_divisors: degree accounting failed");
  return table;
}

u64 mat_order(const Matrix& m) {
  if (!m.invertible()) throw std::invalid_argument("mat_order: singular matrix");
  if (m.is_identity()) return 1;
  u64 p = m.field().characteristic();
  u64 order = 1;
  try {
    EDTable table = elementary_divisors(m);
    for (const auto& [key, bucket] : table.buckets) {
      unsigned ell = key.second;
      u64 pk = 1;
      while (pk < ell) pk *= p;
      for (const FFElem& lambda : bucket) order = std::lcm(order, mult_order(lambda) * pk);
    }
  } catch (const std::invalid_argument&) {
    order = 0;  // nonlinear factor over an extension base; iterate below
  }
  if (order == 0) {
    Matrix acc = m;
    for (u64 e = 1; e <= 1000000; ++e) {
      if (acc.is_identity()) return e;
      acc = acc * m;
    }
    throw std::logic_error("mat_order: order not found within cap");
  }
  if (!m.pow(order).is_identity()) {
    // fallback: direct iteration with a hard cap
    Matrix acc = m;
    for (u64 e = 1; e <= 1000000; ++e) {
      if (acc.is_identity()) return e;
      acc = acc * m;
    }
    throw std::logic_error("mat_order: order not found within cap");
  }
  // reduce to the exact minimum
  for (auto [q, e] : factorize(order)) {
    for (unsigned i = 0; i < e; ++i) {
      if (m.pow(order / q).is_identity())
        order /= q;
      else
        break;
    }
  }
  return order;
}

Matrix jordan_matrix(const FFElem& lambda, unsigned c) {
  const FiniteField& f = lambda.field();
  Matrix j(f, c);
  for (unsigned i = 0; i < c; ++i) {
    j.at(i, i) = lambda;
    if (i + 1 < c) j.at(i, i + 1) = f.one();
  }
  return j;
}

EDTable jordan_power_eds(const FFElem& lambda, unsigned c, u64 k) {
  if (lambda.is_zero()) throw std::invalid_argument("jordan_power_eds: lambda must be nonzero");
  u64 p = lambda.field().characteristic();
  u64 pk = 1;
  while (pk < c) pk *= p;
  u64 order = mult_order(lambda) * (c > 1 ? pk : 1);
  if (std::gcd(k, order) != 1)
    throw std::invalid_argument("jordan_power_eds: k not coprime with the matrix order");
  EDTable table;
  table.insert(1, c, lambda.pow(k));
  return table;
}

}  // namespace grpiso
