#ifndef GRPISO_DLOGCONJ_HPP
#define GRPISO_DLOGCONJ_HPP

#include "grpiso/canonical.hpp"
#include "grpiso/setdlog.hpp"

namespace grpiso {

/// Discrete log up to conjugacy: blocks of matrix pairs (M1, M2), each over
/// one prime field and invertible.
struct ConjLogInstance {
  std::vector<std::pair<Matrix, Matrix>> blocks;
};

/// A solution: X[h] * M1[h] = (M2[h])^k * X[h] for every block, with k the
/// exponent against the *original* M2. `coset` describes every valid
/// normalized exponent k' in Z_{m1}^* (k = k' * m2/m1).
struct ConjLogSolution {
  u64 k = 1;
  std::vector<Matrix> x_list;
  SolutionCoset coset;
};

/// lcm of mat_order over the list; throws on a singular matrix.
u64 common_exponent(const std::vector<Matrix>& mats);

/// Solve the instance; nullopt iff no (k, X-list) exists. Every returned
/// solution is re-verified by multiplication before return.
std::optional<ConjLogSolution> dlog_up_to_conjugacy(const ConjLogInstance& inst);

}  // namespace grpiso

#endif
