#ifndef GRPISO_DECOMPOSE_HPP
#define GRPISO_DECOMPOSE_HPP

#include "grpiso/abelian.hpp"

namespace grpiso {

/// A standard decomposition (<A_gens>, <v>): normal abelian subgroup with a
/// cyclic complement of coprime order.
struct StandardDecomposition {
  std::vector<Elem> a_gens;
  Elem v;
  u64 m = 1;  // order of v
};

/// Observable internals of one run, for property checks.
struct DecomposeTrace {
  std::vector<Elem> u_set;
  std::vector<Elem> v_set;  // elements placed in V during the run
  u64 kappa = 1;
};

/// Procedure Decompose. Requires G in class S (promise); when the promise
/// fails the result may not verify, in which case this throws rather than
/// returning a wrong answer. Deterministic for a fixed group.
StandardDecomposition standard_decompose(const BlackBoxGroup& g,
                                         DecomposeTrace* trace = nullptr);

/// Pure predicate for the three defining conditions: <A_gens> normal
/// abelian, gcd(|A|, m) = 1, and G = <A_gens><v> with trivial intersection.
bool verify_standard_decomposition(const BlackBoxGroup& g,
                                   const StandardDecomposition& sd);

/// True iff z w z^-1 lies in <w>, via constructive decomposition over <w>
/// plus mandatory re-verification.
bool zw_membership_test(const Elem& w, const Elem& z, const BlackBoxGroup& g);

}  // namespace grpiso

#endif
