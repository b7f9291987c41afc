#ifndef GRPISO_ABELIAN_HPP
#define GRPISO_ABELIAN_HPP

#include <functional>
#include <map>
#include <optional>
#include <random>

#include "grpiso/blackbox.hpp"

namespace grpiso {

/// Basis of an abelian subgroup: the generated group is the internal direct
/// product of the <gens[i]>, each of prime-power order.
struct AbelianBasis {
  std::vector<Elem> gens;
  std::vector<u64> orders;
};

/// The coset rep * <subgroup_gens>.
struct CosetDescriptor {
  Elem rep;
  std::vector<Elem> subgroup_gens;
};

/// Smallest k >= 1 with x^k = identity, by baby-step/giant-step on <x>.
/// Errors out beyond the 10^6 cap rather than running forever.
u64 order_of(const BlackBoxGroup& g, const Elem& x);

/// Basis of the abelian subgroup <gens>. Throws when the generators do not
/// pairwise commute.
AbelianBasis abelian_basis(const std::vector<Elem>& gens, const BlackBoxGroup& g);

/// Exponents (u_1,...,u_s) with x = prod gens[i]^{u_i}, 0 <= u_i < orders[i].
/// Throws when x is outside the generated subgroup.
std::vector<u64> decompose_over_basis(const Elem& x, const AbelianBasis& basis,
                                      const BlackBoxGroup& g);

/// Exponent coordinates of every element of <basis>; the membership map
/// behind decompose_over_basis, exposed for callers doing many lookups.
std::map<Elem, std::vector<u64>> exponent_map(const AbelianBasis& basis,
                                              const BlackBoxGroup& g);

/// Intersection of x<gens1> and y<gens2> inside the abelian group `g`:
/// nullopt when disjoint, else a coset of the subgroup <gens1> n <gens2>.
std::optional<CosetDescriptor> coset_intersection(const Elem& x,
                                                  const std::vector<Elem>& gens1,
                                                  const Elem& y,
                                                  const std::vector<Elem>& gens2,
                                                  const BlackBoxGroup& g);

enum class HspBackend { Exhaustive, Qsim };

/// Generators of the subgroup K of Z_{dims[0]} x ... hidden by f (constant
/// on K-cosets, distinct across). The oracle returns opaque labels.
std::vector<std::vector<u64>> hidden_subgroup(
    const std::vector<u64>& dims,
    const std::function<std::string(const std::vector<u64>&)>& f,
    HspBackend backend = HspBackend::Exhaustive, std::mt19937_64* rng = nullptr);

/// Structured backend: the kernel of u -> images * u (componentwise mod
/// `mods`), for u in Z_{src_orders}. Every HSP instance in the pipelines is
/// of this shape once images are written in basis exponents.
std::vector<std::vector<u64>> hidden_subgroup_structured(
    const ZMat& images, const std::vector<i64>& mods,
    const std::vector<u64>& src_orders);

}  // namespace grpiso

#endif
