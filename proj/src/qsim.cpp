#include "grpiso/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace grpiso {

namespace {

constexpr std::size_t kMaxAmps = 1 << 14;

// In-place radix-2 FFT with sign +1 (QFT convention) or -1 (inverse),
// unnormalized.
void fft_pow2(std::vector<std::complex<double>>& a, int sign) {
  std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
    std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        std::complex<double> u = a[i + j], v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

void dft_naive(std::vector<std::complex<double>>& a, int sign) {
  std::size_t n = a.size();
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc(0.0);
    for (std::size_t j = 0; j < n; ++j) {
      double ang = sign * 2.0 * std::numbers::pi * static_cast<double>(j * k) /
                   static_cast<double>(n);
      acc += a[j] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    out[k] = acc;
  }
  a = std::move(out);
}

}  // namespace

StateVector::StateVector(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  std::size_t total = 1;
  for (std::size_t d : dims_) {
    if (d == 0) throw std::invalid_argument("zero register dimension");
    total *= d;
    if (total > kMaxAmps) throw std::invalid_argument("state-vector size guard exceeded");
  }
  amps_.assign(total, std::complex<double>(0.0));
  amps_[0] = 1.0;
}

StateVector StateVector::basis(std::vector<std::size_t> dims,
                               const std::vector<std::size_t>& index) {
  StateVector s(std::move(dims));
  s.amps_[0] = 0.0;
  s.amps_[s.flatten(index)] = 1.0;
  return s;
}

std::size_t StateVector::flatten(const std::vector<std::size_t>& index) const {
  if (index.size() != dims_.size()) throw std::invalid_argument("index arity mismatch");
  std::size_t flat = 0;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (index[i] >= dims_[i]) throw std::invalid_argument("index out of range");
    flat = flat * dims_[i] + index[i];
  }
  return flat;
}

double StateVector::norm() const {
  double acc = 0;
  for (const auto& a : amps_) acc += std::norm(a);
  return std::sqrt(acc);
}

void StateVector::normalize() {
  double n = norm();
  if (n == 0) throw std::runtime_error("cannot normalize zero state");
  for (auto& a : amps_) a /= n;
}

void StateVector::qft(std::size_t component, bool inverse) {
  if (component >= dims_.size()) throw std::invalid_argument("bad component");
  std::size_t d = dims_[component];
  std::size_t inner = 1;
  for (std::size_t i = component + 1; i < dims_.size(); ++i) inner *= dims_[i];
  std::size_t outer = amps_.size() / (d * inner);
  int sign = inverse ? -1 : 1;
  bool pow2 = (d & (d - 1)) == 0;
  double scale = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<std::complex<double>> slice(d);
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t in = 0; in < inner; ++in) {
      std::size_t base = o * d * inner + in;
      for (std::size_t k = 0; k < d; ++k) slice[k] = amps_[base + k * inner];
      if (pow2)
        fft_pow2(slice, sign);
      else
        dft_naive(slice, sign);
      for (std::size_t k = 0; k < d; ++k) amps_[base + k * inner] = slice[k] * scale;
    }
}

std::vector<std::size_t> StateVector::measure(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double r = unif(rng) * norm() * norm();
  std::size_t flat = 0;
  double acc = 0;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    acc += std::norm(amps_[i]);
    if (acc >= r) {
      flat = i;
      break;
    }
    flat = i;
  }
  std::vector<std::size_t> index(dims_.size());
  for (std::size_t i = dims_.size(); i-- > 0;) {
    index[i] = flat % dims_[i];
    flat /= dims_[i];
  }
  return index;
}

u64 shor_order_attempt(u64 a, u64 n, std::mt19937_64& rng) {
  if (n < 2 || n > 64) throw std::invalid_argument("shor_order: modulus out of range");
  a %= n;
  if (std::gcd(a, n) != 1) throw std::invalid_argument("shor_order: gcd(a, N) != 1");

  std::size_t q = 1;
  while (q < n * n) q <<= 1;

  // Value table of f(x) = a^x mod N over Z_Q; used both as the oracle and to
  // build the post-measurement state of the work register.
  std::vector<u64> f(q);
  f[0] = 1 % n;
  for (std::size_t x = 1; x < q; ++x) f[x] = (f[x - 1] * a) % n;

  // Measure the work register: pick a random input, keep its collision class.
  u64 v = f[rng() % q];
  StateVector s({q});
  s.amp(0) = 0.0;
  for (std::size_t x = 0; x < q; ++x)
    if (f[x] == v) s.amp(x) = 1.0;
  s.normalize();
  s.qft(0);
  u64 y = s.measure(rng)[0];

  // Continued fraction expansion of y/Q; candidate orders are convergent
  // denominators below N and their small multiples.
  u64 num = y, den = q;
  u64 q_prev = 1, q_cur = 0;  // denominator recurrence seeds k_{-2}, k_{-1}
  u64 best = 0;
  while (den != 0) {
    u64 quot = num / den;
    u64 rem = num % den;
    u64 q_next = quot * q_cur + q_prev;
    q_prev = q_cur;
    q_cur = q_next;
    num = den;
    den = rem;
    if (q_cur == 0) continue;
    if (q_cur >= n) break;
    for (u64 mult = 1; mult <= 8 && mult * q_cur < n; ++mult)
      if (powmod(a, mult * q_cur, n) == 1) return mult * q_cur;
    best = q_cur;
  }
  return best;  // may be 0 or a proper divisor of the order
}

u64 shor_order(u64 a, u64 n, std::mt19937_64& rng) {
  if (n == 1) return 1;
  u64 combined = 1;
  for (int attempt = 0; attempt < 64; ++attempt) {
    u64 cand = shor_order_attempt(a, n, rng);
    if (cand) combined = std::lcm(combined, cand);
    if (combined < n && powmod(a, combined, n) == 1) {
      // reduce to the exact order
      u64 o = combined;
      for (auto [p, e] : factorize(combined)) {
        (void)e;
        while (o % p == 0 && powmod(a, o / p, n) == 1) o /= p;
      }
      return o;
    }
    if (combined >= n) combined = 1;  // bad lcm accumulation; start over
  }
  throw std::runtime_error("shor_order: retry budget exhausted");
}

std::vector<u64> hsp_sample(const std::vector<u64>& dims,
                            const std::function<u64(const std::vector<u64>&)>& f,
                            std::mt19937_64& rng) {
  std::size_t total = 1;
  for (u64 d : dims) {
    if (d == 0) throw std::invalid_argument("hsp_sample: zero dimension");
    total *= d;
    if (total > kMaxAmps) throw std::invalid_argument("hsp_sample: size guard exceeded");
  }
  // Enumerate P once to find the collision class of a random point (the
  // post-measurement state of the value register).
  std::vector<std::size_t> sdims(dims.begin(), dims.end());
  auto unflatten = [&](std::size_t flat) {
    std::vector<u64> idx(dims.size());
    for (std::size_t i = dims.size(); i-- > 0;) {
      idx[i] = flat % dims[i];
      flat /= dims[i];
    }
    return idx;
  };
  u64 v = f(unflatten(rng() % total));
  StateVector s(sdims);
  s.amp(0) = 0.0;
  for (std::size_t flat = 0; flat < total; ++flat)
    if (f(unflatten(flat)) == v) s.amp(flat) = 1.0;
  s.normalize();
  for (std::size_t c = 0; c < dims.size(); ++c) s.qft(c);
  auto outcome = s.measure(rng);
  return std::vector<u64>(outcome.begin(), outcome.end());
}

std::vector<std::vector<u64>> hsp_recover(
    const std::vector<u64>& dims,
    const std::function<u64(const std::vector<u64>&)>& f, std::mt19937_64& rng) {
  u64 big = 1;
  for (u64 d : dims) big = std::lcm(big, d);
  std::vector<u64> f0_arg(dims.size(), 0);
  u64 f0 = f(f0_arg);

  std::vector<std::vector<i64>> samples;
  unsigned batch = 8 + 4 * static_cast<unsigned>(dims.size());
  for (int round = 0; round < 16; ++round) {
    for (unsigned i = 0; i < batch; ++i) {
      auto c = hsp_sample(dims, f, rng);
      std::vector<i64> row(dims.size());
      // orthogonality: sum_i c_i u_i (L / n_i) == 0 mod L for u in K
      for (std::size_t j = 0; j < dims.size(); ++j)
        row[j] = static_cast<i64>(c[j] * (big / dims[j]) % big);
      samples.push_back(std::move(row));
    }
    std::vector<i64> mods(samples.size(), static_cast<i64>(big));
    std::vector<i64> src(dims.begin(), dims.end());
    auto kernel = congruence_kernel(samples, mods, src);
    // every character is orthogonal to K, so kernel >= K holds; equality
    // holds exactly when every kernel generator collides with f(0)
    bool ok = true;
    for (const auto& g : kernel) {
      std::vector<u64> u(g.begin(), g.end());
      if (f(u) != f0) {
        ok = false;
        break;
      }
    }
    if (ok) {
      std::vector<std::vector<u64>> out;
      for (const auto& g : kernel) {
        std::vector<u64> u(g.begin(), g.end());
        bool zero = std::all_of(u.begin(), u.end(), [](u64 x) { return x == 0; });
        if (!zero) out.push_back(std::move(u));
      }
      return out;
    }
  }
  throw std::runtime_error("hsp_recover: sampling budget exhausted");
}

}  // namespace grpiso
