#ifndef GRPISO_BLACKBOX_HPP
#define GRPISO_BLACKBOX_HPP

#include <memory>
#include <string>
#include <vector>

#include "grpiso/numth.hpp"

namespace grpiso {

/// Opaque black-box group element encoding.
using Elem = std::string;

/// Group access restricted to an opaque multiplication oracle over unique
/// fixed-length string encodings.
class BlackBoxGroup {
 public:
  virtual ~BlackBoxGroup() = default;

  /// The multiplication oracle. Throws on invalid encodings.
  virtual Elem mul(const Elem& a, const Elem& b) const = 0;
  virtual Elem identity() const = 0;
  virtual std::vector<Elem> generators() const = 0;
  virtual std::size_t encoding_length() const = 0;
  /// |G|. Known at construction for every backend we support.
  virtual u64 order() const = 0;
};

/// Parameters for A x| Z_m with A = Z_{n_1} x ... x Z_{n_s} and the action
/// y g_j y^-1 = prod_i g_i^{T_ij}.
struct ClassSGroupSpec {
  std::vector<u64> abelian_orders;
  u64 m = 1;
  ZMat action;      // s x s, column j = image of g_j
  u64 scramble_seed = 0;  // 0 = transparent encoding

  /// Throws std::invalid_argument naming the violated constraint:
  /// gcd(|A|, m) = 1, action well-defined on the factor orders, T^m = id.
  void validate() const;
};

/// Concrete semidirect-product black-box group. The transparent internal
/// representation (vector over A, exponent mod m) is reachable through
/// encode/decode for test oracles; algorithms must not use it.
class ClassSGroup : public BlackBoxGroup {
 public:
  explicit ClassSGroup(ClassSGroupSpec spec);

  Elem mul(const Elem& a, const Elem& b) const override;
  Elem identity() const override;
  std::vector<Elem> generators() const override;
  std::size_t encoding_length() const override { return enc_len_; }
  u64 order() const override { return order_; }

  const ClassSGroupSpec& spec() const { return spec_; }
  Elem encode(const std::vector<u64>& a, u64 i) const;
  std::pair<std::vector<u64>, u64> decode(const Elem& g) const;

 private:
  u64 scramble(u64 idx) const;
  u64 unscramble(u64 val) const;

  ClassSGroupSpec spec_;
  u64 order_;
  std::size_t enc_len_;
  unsigned width_;  // Feistel permutation width in bits
  std::vector<ZMat> t_pow_;  // T^0 .. T^{m-1}, rows reduced mod n_i
};

std::shared_ptr<ClassSGroup> build_group(const ClassSGroupSpec& spec);

/// Group given by an explicit multiplication table; element i is encoded as
/// the decimal string of i. Used to ingest groups not born from specs.
std::shared_ptr<BlackBoxGroup> table_group(
    const std::vector<std::vector<std::size_t>>& table);

// Generic utilities on top of the oracle.

Elem bb_pow(const BlackBoxGroup& g, Elem base, u64 e);
u64 element_order(const BlackBoxGroup& g, const Elem& x);
/// g^(|g|-1); inversion without an inverse oracle.
Elem inverse(const BlackBoxGroup& g, const Elem& x);
Elem conjugate(const BlackBoxGroup& g, const Elem& by, const Elem& x);
/// [a, b] = a b a^-1 b^-1.
Elem commutator(const BlackBoxGroup& g, const Elem& a, const Elem& b);

/// All elements generated by `gens`; throws if the closure exceeds `guard`.
std::vector<Elem> closure(const BlackBoxGroup& g, const std::vector<Elem>& gens,
                          std::size_t guard = 100000);
std::vector<Elem> enumerate_elements(const BlackBoxGroup& g,
                                     std::size_t guard = 100000);

/// Generators of G' = [G, G]: normal closure of the generator commutators.
std::vector<Elem> derived_subgroup_gens(const BlackBoxGroup& g);

u64 group_order(const BlackBoxGroup& g);

}  // namespace grpiso

#endif
