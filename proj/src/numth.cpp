#include "grpiso/numth.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace grpiso {

u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

u64 powmod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 r = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

namespace {

bool miller_rabin(u64 n, u64 a) {
  if (a % n == 0) return true;
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  u64 x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 0; i < s - 1; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

u64 pollard_rho(u64 n) {
  if ((n & 1) == 0) return 2;
  u64 c = 1;
  while (true) {
    u64 x = 2, y = 2, d = 1;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
    ++c;
  }
}

void factor_rec(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  u64 d = pollard_rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  // Deterministic Miller-Rabin bases for 64-bit inputs.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (!miller_rabin(n, a)) return false;
  }
  return true;
}

std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
  std::vector<u64> primes;
  for (u64 p = 2; p * p <= n && p < 10000; ++p) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  factor_rec(n, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<u64, unsigned>> out;
  for (u64 p : primes) {
    if (!out.empty() && out.back().first == p) {
      ++out.back().second;
    } else {
      out.push_back({p, 1});
    }
  }
  return out;
}

std::vector<u64> divisors(u64 n) {
  std::vector<u64> out{1};
  for (auto [p, e] : factorize(n)) {
    std::size_t sz = out.size();
    u64 pk = 1;
    for (unsigned i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < sz; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

u64 mod_inverse(u64 a, u64 m) {
  if (m == 1) return 0;
  i64 t = 0, new_t = 1;
  i64 r = static_cast<i64>(m), new_r = static_cast<i64>(a % m);
  while (new_r != 0) {
    i64 q = r / new_r;
    std::swap(t -= q * new_t, new_t);
    std::swap(r -= q * new_r, new_r);
  }
  if (r != 1) throw std::invalid_argument("mod_inverse: arguments not coprime");
  return static_cast<u64>(t < 0 ? t + static_cast<i64>(m) : t);
}

std::vector<u64> units_mod(u64 m) {
  if (m == 1) return {0};
  std::vector<u64> out;
  for (u64 k = 1; k < m; ++k)
    if (std::gcd(k, m) == 1) out.push_back(k);
  return out;
}

// ---------------------------------------------------------------------------

ZMat zmat_identity(std::size_t n) {
  ZMat m(n, std::vector<i64>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

ZMat zmat_mul(const ZMat& a, const ZMat& b) {
  std::size_t n = a.size(), k = b.size(), p = b.empty() ? 0 : b[0].size();
  ZMat c(n, std::vector<i64>(p, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (a[i][j] == 0) continue;
      for (std::size_t l = 0; l < p; ++l) c[i][l] += a[i][j] * b[j][l];
    }
  return c;
}

i64 zmat_det(ZMat a) {
  std::size_t n = a.size();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination
  i64 sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

ZMat zmat_inverse_unimodular(const ZMat& a) {
  std::size_t n = a.size();
  i64 det = zmat_det(a);
  if (det != 1 && det != -1)
    throw std::invalid_argument("zmat_inverse_unimodular: determinant not a unit");
  ZMat inv(n, std::vector<i64>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      ZMat minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        std::vector<i64> row;
        for (std::size_t c = 0; c < n; ++c)
          if (c != i) row.push_back(a[r][c]);
        minor.push_back(std::move(row));
      }
      i64 cof = zmat_det(std::move(minor));
      if ((i + j) % 2 == 1) cof = -cof;
      inv[i][j] = cof * det;  // divide by det = multiply, since det = +-1
    }
  return inv;
}

SmithZ smith_normal_form(ZMat a) {
  std::size_t rows = a.size();
  std::size_t cols = rows ? a[0].size() : 0;
  SmithZ res;
  res.u = zmat_identity(rows);
  res.v = zmat_identity(cols);
  ZMat& m = a;

  auto row_op = [&](std::size_t i, std::size_t j, i64 q) {
    // row i -= q * row j
    for (std::size_t c = 0; c < cols; ++c) m[i][c] -= q * m[j][c];
    for (std::size_t c = 0; c < rows; ++c) res.u[i][c] -= q * res.u[j][c];
  };
  auto col_op = [&](std::size_t i, std::size_t j, i64 q) {
    // col i -= q * col j
    for (std::size_t r = 0; r < rows; ++r) m[r][i] -= q * m[r][j];
    for (std::size_t r = 0; r < cols; ++r) res.v[r][i] -= q * res.v[r][j];
  };
  auto row_swap = [&](std::size_t i, std::size_t j) {
    std::swap(m[i], m[j]);
    std::swap(res.u[i], res.u[j]);
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < rows; ++r) std::swap(m[r][i], m[r][j]);
    for (std::size_t r = 0; r < cols; ++r) std::swap(res.v[r][i], res.v[r][j]);
  };

  std::size_t t = 0;
  while (t < rows && t < cols) {
    // locate a nonzero pivot of minimal absolute value
    std::size_t pi = t, pj = t;
    i64 best = 0;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        i64 v = m[i][j] < 0 ? -m[i][j] : m[i][j];
        if (v != 0 && (best == 0 || v < best)) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (best == 0) break;
    row_swap(t, pi);
    col_swap(t, pj);

    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        i64 q = m[i][t] / m[t][t];
        row_op(i, t, q);
        if (m[i][t] != 0) {
          row_swap(t, i);
          dirty = true;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        i64 q = m[t][j] / m[t][t];
        col_op(j, t, q);
        if (m[t][j] != 0) {
          col_swap(t, j);
          dirty = true;
        }
      }
    }
    ++t;
  }
  // enforce divisibility chain
  std::size_t rank = t;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i + 1 < rank; ++i) {
      if (m[i + 1][i + 1] % m[i][i] != 0) {
        // add column i+1 to column i, then redo the 2x2 corner
        for (std::size_t r = 0; r < rows; ++r) m[r][i] += m[r][i + 1];
        for (std::size_t r = 0; r < cols; ++r) res.v[r][i] += res.v[r][i + 1];
        // now m[i][i] and m[i+1][i] nonzero; eliminate with gcd steps
        while (m[i + 1][i] != 0) {
          i64 q = m[i][i] / m[i + 1][i];
          row_op(i, i + 1, q);
          row_swap(i, i + 1);
        }
        // clear m[i][i+1]
        if (m[i][i + 1] != 0) {
          i64 q = m[i][i + 1] / m[i][i];
          col_op(i + 1, i, q);
        }
        changed = true;
      }
    }
  }
  for (std::size_t i = 0; i < rank; ++i) {
    if (m[i][i] < 0) {
      for (std::size_t r = 0; r < rows; ++r) m[r][i] = -m[r][i];
      for (std::size_t r = 0; r < cols; ++r) res.v[r][i] = -res.v[r][i];
    }
  }
  res.s = std::move(m);
  return res;
}

namespace {

// Build the stacked matrix [images | diag(mods)] whose integer kernel,
// projected to the first n coordinates, is the congruence kernel.
ZMat stack_with_moduli(const ZMat& images, const std::vector<i64>& mods) {
  std::size_t t = images.size();
  std::size_t n = t ? images[0].size() : 0;
  ZMat a(t, std::vector<i64>(n + t, 0));
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = images[i][j];
    a[i][n + i] = mods[i];
  }
  return a;
}

}  // namespace

std::vector<std::vector<i64>> congruence_kernel(const ZMat& images,
                                                const std::vector<i64>& mods,
                                                const std::vector<i64>& src_mods) {
  std::size_t t = images.size();
  std::size_t n = t ? images[0].size() : src_mods.size();
  if (t == 0) {
    // everything is in the kernel; standard generators suffice
    std::vector<std::vector<i64>> gens;
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<i64> g(n, 0);
      g[j] = 1;
      gens.push_back(g);
    }
    return gens;
  }
  ZMat a = stack_with_moduli(images, mods);
  SmithZ snf = smith_normal_form(a);
  std::size_t rank = 0;
  for (std::size_t i = 0; i < std::min(snf.s.size(), snf.s[0].size()); ++i)
    if (snf.s[i][i] != 0) ++rank;
  // kernel of a = columns of v beyond the rank
  std::vector<std::vector<i64>> gens;
  std::size_t total = n + t;
  for (std::size_t j = rank; j < total; ++j) {
    std::vector<i64> g(n);
    bool nonzero = false;
    for (std::size_t i = 0; i < n; ++i) {
      i64 val = snf.v[i][j] % src_mods[i];
      if (val < 0) val += src_mods[i];
      g[i] = val;
      if (val != 0) nonzero = true;
    }
    if (nonzero) gens.push_back(std::move(g));
  }
  // also include the source relations themselves (src_mods * e_i are kernel
  // members trivially; they reduce to zero so nothing to add)
  return gens;
}

std::optional<std::vector<i64>> solve_congruence(const ZMat& images,
                                                 const std::vector<i64>& rhs,
                                                 const std::vector<i64>& mods) {
  std::size_t t = images.size();
  std::size_t n = t ? images[0].size() : 0;
  if (t == 0) return std::vector<i64>(n, 0);
  ZMat a = stack_with_moduli(images, mods);
  SmithZ snf = smith_normal_form(a);
  // a * w = rhs  <=>  s * (v^-1 w) = u * rhs
  std::size_t total = n + t;
  std::vector<i64> b(t, 0);
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < t; ++j) b[i] += snf.u[i][j] * rhs[j];
  std::vector<i64> y(total, 0);
  for (std::size_t i = 0; i < t; ++i) {
    i64 d = i < std::min(snf.s.size(), snf.s[0].size()) ? snf.s[i][i] : 0;
    if (d == 0) {
      if (b[i] != 0) return std::nullopt;
    } else {
      if (b[i] % d != 0) return std::nullopt;
      y[i] = b[i] / d;
    }
  }
  std::vector<i64> w(total, 0);
  for (std::size_t i = 0; i < total; ++i)
    for (std::size_t j = 0; j < total; ++j) w[i] += snf.v[i][j] * y[j];
  std::vector<i64> out(w.begin(), w.begin() + n);
  return out;
}

}  // namespace grpiso
