#ifndef GRPISO_ISO_HPP
#define GRPISO_ISO_HPP

#include "grpiso/decompose.hpp"
#include "grpiso/dlogconj.hpp"

namespace grpiso {

/// Action by conjugation of y on A = <basis>: column j of `u` holds the
/// exponents with y g_j y^-1 = g_1^{u_1j} ... g_s^{u_sj}.
struct ConjugationAction {
  AbelianBasis basis;
  ZMat u;
};

/// Image of a coprime-order automorphism under Phi: one matrix over GF(p_i)
/// per distinct prime-power type p_i^{f_i} of the basis orders.
struct PhiImage {
  std::vector<std::pair<u64, unsigned>> types;  // (p, f), ascending
  std::vector<Matrix> mats;
};

/// Assembled isomorphism mu(x y_1^j) = chi(x) y_2^{kj}.
struct Isomorphism {
  ZMat chi;  // column j = exponents of chi(g_j) over the target basis
  u64 k = 1;
  std::vector<std::pair<Elem, Elem>> gen_images;  // source generator -> image
};

/// Exponent matrix of y = sd.v acting on the given basis of <sd.a_gens>.
ConjugationAction conjugation_action(const BlackBoxGroup& g,
                                     const StandardDecomposition& sd,
                                     const AbelianBasis& basis);

/// Phi(action): per-type exponent blocks reduced mod p. Requires the
/// automorphism order coprime with |A|.
PhiImage phi_image(const ConjugationAction& action);

/// chi: A_1 -> A_2 with chi phi_1 = phi_2^k chi, reconstructed from per-type
/// conjugators X (X_i Phi_1 = Phi_2^k X_i componentwise). Verified on every
/// basis element plus surjectivity; throws std::runtime_error on failure.
ZMat chi_from_conjugator(const std::vector<Matrix>& x_list,
                         const ConjugationAction& a1, const ConjugationAction& a2,
                         u64 k, u64 m);

/// The top-level tester. Requires both groups in class S (promise); returns
/// a verified isomorphism or nullopt with `reason` set.
std::optional<Isomorphism> group_isomorphism(const BlackBoxGroup& g,
                                             const BlackBoxGroup& h,
                                             std::string* reason = nullptr);

/// Complete desk-scale check: the generator images extend to a bijective
/// homomorphism over a full enumeration of G.
bool verify_isomorphism(const BlackBoxGroup& g, const BlackBoxGroup& h,
                        const Isomorphism& iso);

}  // namespace grpiso

#endif
