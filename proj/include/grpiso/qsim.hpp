#ifndef GRPISO_QSIM_HPP
#define GRPISO_QSIM_HPP

#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "grpiso/numth.hpp"

namespace grpiso {

/// State vector over a product of cyclic index sets Z_{d_1} x ... x Z_{d_t}
/// (qudit registers). Row-major flat layout, last component fastest.
class StateVector {
 public:
  explicit StateVector(std::vector<std::size_t> dims);
  static StateVector basis(std::vector<std::size_t> dims,
                           const std::vector<std::size_t>& index);

  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t total() const { return amps_.size(); }
  std::complex<double>& amp(std::size_t flat) { return amps_[flat]; }
  const std::complex<double>& amp(std::size_t flat) const { return amps_[flat]; }
  std::size_t flatten(const std::vector<std::size_t>& index) const;

  double norm() const;
  void normalize();

  /// QFT over Z_{dims[component]} on one tensor factor; conjugated transform
  /// when inverse is set. Unitary.
  void qft(std::size_t component, bool inverse = false);

  /// Sample a computational-basis outcome from |amp|^2.
  std::vector<std::size_t> measure(std::mt19937_64& rng) const;

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::complex<double>> amps_;
};

/// Multiplicative order of a mod N by state-vector Shor with continued
/// fraction post-processing. Verified by powering before returning; retries
/// on unlucky measurements. Throws when gcd(a, N) != 1, N > 64, or the retry
/// budget is exhausted.
u64 shor_order(u64 a, u64 n, std::mt19937_64& rng);

/// One measurement attempt; returns the order candidate its post-processing
/// produced (0 when the attempt yielded nothing usable). Exposed so the
/// per-attempt success rate is observable.
u64 shor_order_attempt(u64 a, u64 n, std::mt19937_64& rng);

/// One HSP sample over P = Z_{dims[0]} x ...: a uniformly random character
/// (c_1,...,c_t) trivial on the hidden subgroup K of the oracle f.
/// Requires |P| <= 2^14.
std::vector<u64> hsp_sample(const std::vector<u64>& dims,
                            const std::function<u64(const std::vector<u64>&)>& f,
                            std::mt19937_64& rng);

/// Recover generators of K by repeated sampling plus integer-kernel
/// post-processing; verifies the result against f before returning.
std::vector<std::vector<u64>> hsp_recover(
    const std::vector<u64>& dims,
    const std::function<u64(const std::vector<u64>&)>& f, std::mt19937_64& rng);

}  // namespace grpiso

#endif
