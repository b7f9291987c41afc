#include "grpiso/iso.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace grpiso {

namespace {

// exponent matrices act on coordinates mod the per-row generator orders

ZMat act_reduce(ZMat a, const std::vector<u64>& orders) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (i64& e : a[i]) {
      i64 o = static_cast<i64>(orders[i]);
      e %= o;
      if (e < 0) e += o;
    }
  return a;
}

ZMat act_mul(const ZMat& a, const ZMat& b, const std::vector<u64>& orders) {
  return act_reduce(zmat_mul(a, b), orders);
}

ZMat act_pow(ZMat base, u64 e, const std::vector<u64>& orders) {
  ZMat out = zmat_identity(base.size());
  base = act_reduce(std::move(base), orders);
  while (e) {
    if (e & 1) out = act_mul(out, base, orders);
    base = act_mul(base, base, orders);
    e >>= 1;
  }
  return act_reduce(std::move(out), orders);
}

u64 act_order(const ZMat& a, const std::vector<u64>& orders) {
  ZMat id = zmat_identity(a.size());
  ZMat cur = act_reduce(a, orders);
  for (u64 k = 1; k <= 1000000; ++k) {
    if (cur == id) return k;
    cur = act_mul(cur, a, orders);
  }
  throw std::runtime_error("act_order: exceeded guard");
}

// distinct prime-power types (p, f) -> indices of basis generators of that
// order, types ascending
std::map<std::pair<u64, unsigned>, std::vector<std::size_t>> type_index(
    const std::vector<u64>& orders) {
  std::map<std::pair<u64, unsigned>, std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    auto fac = factorize(orders[i]);
    if (fac.size() != 1)
      throw std::invalid_argument("type_index: basis order not a prime power");
    out[{fac[0].first, fac[0].second}].push_back(i);
  }
  return out;
}

bool hom_well_defined(const ZMat& c, const std::vector<u64>& src_orders,
                      const std::vector<u64>& dst_orders) {
  for (std::size_t i = 0; i < dst_orders.size(); ++i)
    for (std::size_t j = 0; j < src_orders.size(); ++j)
      if ((static_cast<u64>(c[i][j]) % dst_orders[i]) * src_orders[j] %
              dst_orders[i] !=
          0)
        return false;
  return true;
}

bool hom_surjective(const ZMat& c, const std::vector<u64>& dst_orders) {
  std::size_t t = dst_orders.size(), s = c.empty() ? 0 : c[0].size();
  ZMat m(t, std::vector<i64>(s + t, 0));
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 0; j < s; ++j) m[i][j] = c[i][j];
    m[i][s + i] = static_cast<i64>(dst_orders[i]);
  }
  auto snf = smith_normal_form(m);
  i64 quot = 1;
  for (std::size_t i = 0; i < t; ++i) quot *= snf.s[i][i];
  return quot == 1 || quot == -1;
}

u64 basis_size(const std::vector<u64>& orders) {
  u64 n = 1;
  for (u64 o : orders) n *= o;
  return n;
}

Elem from_exponents(const BlackBoxGroup& g, const AbelianBasis& basis,
                    const std::vector<i64>& exps) {
  Elem out = g.identity();
  for (std::size_t i = 0; i < basis.gens.size(); ++i) {
    i64 o = static_cast<i64>(basis.orders[i]);
    i64 e = ((exps[i] % o) + o) % o;
    out = g.mul(out, bb_pow(g, basis.gens[i], static_cast<u64>(e)));
  }
  return out;
}

}  // namespace

ConjugationAction conjugation_action(const BlackBoxGroup& g,
                                     const StandardDecomposition& sd,
                                     const AbelianBasis& basis) {
  std::size_t s = basis.gens.size();
  ZMat u(s, std::vector<i64>(s, 0));
  for (std::size_t j = 0; j < s; ++j) {
    Elem im = conjugate(g, sd.v, basis.gens[j]);
    auto col = decompose_over_basis(im, basis, g);
    for (std::size_t i = 0; i < s; ++i) u[i][j] = static_cast<i64>(col[i]);
  }
  return ConjugationAction{basis, u};
}

PhiImage phi_image(const ConjugationAction& action) {
  const auto& orders = action.basis.orders;
  u64 asize = basis_size(orders);
  u64 ord = act_order(action.u, orders);
  if (std::gcd(ord, asize) != 1)
    throw std::invalid_argument("phi_image: automorphism order not coprime with |A|");

  PhiImage out;
  for (const auto& [type, idx] : type_index(orders)) {
    const FiniteField& f = splitting_field(type.first, 1);
    Matrix m(f, idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = 0; b < idx.size(); ++b)
        m.at(a, b) = f.from_residue(static_cast<u64>(action.u[idx[a]][idx[b]]) %
                                    type.first);
    if (!m.invertible())
      throw std::runtime_error("phi_image: component not invertible");
    out.types.push_back(type);
    out.mats.push_back(m);
  }
  return out;
}

ZMat chi_from_conjugator(const std::vector<Matrix>& x_list,
                         const ConjugationAction& a1, const ConjugationAction& a2,
                         u64 k, u64 m) {
  const auto& o1 = a1.basis.orders;
  const auto& o2 = a2.basis.orders;
  auto types1 = type_index(o1);
  auto types2 = type_index(o2);
  if (types1.size() != types2.size() || types1.size() != x_list.size())
    throw std::invalid_argument("chi_from_conjugator: type mismatch");
  std::size_t s = o1.size();
  if (o2.size() != s) throw std::invalid_argument("chi_from_conjugator: rank mismatch");

  // theta: any isomorphism lifting X, block per type in order-matched pairing
  ZMat theta(s, std::vector<i64>(s, 0));
  {
    std::size_t t = 0;
    auto it2 = types2.begin();
    for (auto it1 = types1.begin(); it1 != types1.end(); ++it1, ++it2, ++t) {
      if (it1->first != it2->first || it1->second.size() != it2->second.size())
        throw std::invalid_argument("chi_from_conjugator: type mismatch");
      const auto& i1 = it1->second;
      const auto& i2 = it2->second;
      if (x_list[t].dim() != i1.size())
        throw std::invalid_argument("chi_from_conjugator: block size mismatch");
      for (std::size_t a = 0; a < i2.size(); ++a)
        for (std::size_t b = 0; b < i1.size(); ++b)
          theta[i2[a]][i1[b]] =
              static_cast<i64>(x_list[t].at(a, b).coeffs()[0]);
    }
  }

  // averaging: chi = m^-1 sum_j phi_2^{kj} theta phi_1^{-j}; the sum
  // telescopes into an exact intertwiner whenever X conjugates the Phi images
  ZMat vk = act_pow(a2.u, k, o2);
  ZMat sum(s, std::vector<i64>(s, 0));
  ZMat left = zmat_identity(s);
  std::vector<ZMat> upow{zmat_identity(s)};
  for (u64 j = 1; j <= m; ++j) upow.push_back(act_mul(upow.back(), a1.u, o1));
  for (u64 j = 0; j < m; ++j) {
    ZMat term = act_reduce(zmat_mul(zmat_mul(left, theta), upow[m - j]), o2);
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t jj = 0; jj < s; ++jj)
        sum[i][jj] = (sum[i][jj] + term[i][jj]) % static_cast<i64>(o2[i]);
    left = act_mul(left, vk, o2);
  }
  ZMat chi(s, std::vector<i64>(s, 0));
  for (std::size_t i = 0; i < s; ++i) {
    if (std::gcd(m % o2[i], o2[i]) != 1)
      throw std::invalid_argument("chi_from_conjugator: m not coprime with |A|");
    u64 minv = mod_inverse(m % o2[i], o2[i]);
    for (std::size_t j = 0; j < s; ++j)
      chi[i][j] = static_cast<i64>(mulmod(minv, static_cast<u64>(sum[i][j]), o2[i]));
  }

  // hard verification: well-defined, surjective, and exact intertwining
  if (!hom_well_defined(chi, o1, o2))
    throw std::runtime_error("chi_from_conjugator: verification failed");
  if (!hom_surjective(chi, o2))
    throw std::runtime_error("chi_from_conjugator: verification failed");
  if (act_reduce(zmat_mul(chi, a1.u), o2) != act_mul(vk, chi, o2))
    throw std::runtime_error("chi_from_conjugator: verification failed");
  return chi;
}

bool verify_isomorphism(const BlackBoxGroup& g, const BlackBoxGroup& h,
                        const Isomorphism& iso) {
  if (g.order() != h.order() || g.order() > 100000) return false;
  std::map<Elem, Elem> img(iso.gen_images.begin(), iso.gen_images.end());
  std::vector<std::pair<Elem, Elem>> gens;
  for (const Elem& e : g.generators()) {
    auto it = img.find(e);
    if (it == img.end()) return false;
    gens.push_back(*it);
  }
  std::map<Elem, Elem> mu{{g.identity(), h.identity()}};
  std::vector<Elem> work{g.identity()};
  while (!work.empty()) {
    Elem a = work.back();
    work.pop_back();
    Elem ma = mu.at(a);
    for (const auto& [gen, mgen] : gens) {
      Elem b = g.mul(a, gen);
      Elem mb = h.mul(ma, mgen);
      auto it = mu.find(b);
      if (it != mu.end()) {
        if (it->second != mb) return false;
      } else {
        mu.emplace(b, mb);
        work.push_back(b);
      }
    }
  }
  if (mu.size() != g.order()) return false;
  std::set<Elem> image;
  for (const auto& [a, ma] : mu) image.insert(ma);
  return image.size() == g.order();
}

std::optional<Isomorphism> group_isomorphism(const BlackBoxGroup& g,
                                             const BlackBoxGroup& h,
                                             std::string* reason) {
  auto fail = [&](const char* why) -> std::optional<Isomorphism> {
    if (reason) *reason = why;
    return std::nullopt;
  };

  StandardDecomposition sd1 = standard_decompose(g);
  StandardDecomposition sd2 = standard_decompose(h);
  if (g.order() != h.order()) return fail("order mismatch");
  if (sd1.m != sd2.m) return fail("cyclic part orders differ");
  u64 m = sd1.m;

  AbelianBasis basis1 = abelian_basis(sd1.a_gens, g);
  AbelianBasis basis2 = abelian_basis(sd2.a_gens, h);
  {
    std::vector<u64> s1 = basis1.orders, s2 = basis2.orders;
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    if (s1 != s2) return fail("abelian parts not isomorphic");
  }

  ConjugationAction a1 = conjugation_action(g, sd1, basis1);
  ConjugationAction a2 = conjugation_action(h, sd2, basis2);
  PhiImage phi1 = phi_image(a1);
  PhiImage phi2 = phi_image(a2);
  if (phi1.types != phi2.types) return fail("abelian parts not isomorphic");

  ConjLogInstance inst;
  for (std::size_t i = 0; i < phi1.mats.size(); ++i)
    inst.blocks.push_back({phi1.mats[i], phi2.mats[i]});
  auto sol = dlog_up_to_conjugacy(inst);
  if (!sol) return fail("no conjugacy exponent");

  u64 m1 = common_exponent(phi1.mats);
  u64 m2 = common_exponent(phi2.mats);
  std::vector<Matrix> n2s;
  for (const Matrix& b : phi2.mats) n2s.push_back(b.pow(m2 / m1));

  auto emap1 = exponent_map(basis1, g);
  for (u64 w : coset_members(sol->coset)) {
    std::vector<Matrix> xs;
    bool ok = true;
    for (std::size_t i = 0; i < phi1.mats.size() && ok; ++i) {
      Matrix target = n2s[i].pow(w);
      if (!similar(phi1.mats[i], target)) {
        ok = false;
        break;
      }
      xs.push_back(conjugator(phi1.mats[i], target));
    }
    if (!ok) continue;
    u64 k = (m2 / m1) * w % std::max<u64>(m, 1);
    if (k == 0) k = m;  // exponent of y_2 only matters mod m
    ZMat chi;
    try {
      chi = chi_from_conjugator(xs, a1, a2, k, m);
    } catch (const std::runtime_error&) {
      continue;
    }

    // assemble mu(x y_1^j) = chi(x) y_2^{kj} on the generators
    Isomorphism iso;
    iso.chi = chi;
    iso.k = k;
    bool assembled = true;
    for (const Elem& gen : g.generators()) {
      bool placed = false;
      for (u64 j = 0; j < m && !placed; ++j) {
        Elem x = g.mul(gen, bb_pow(g, sd1.v, m - j));
        auto it = emap1.find(x);
        if (it == emap1.end()) continue;
        std::vector<i64> out(chi.size(), 0);
        for (std::size_t r = 0; r < chi.size(); ++r)
          for (std::size_t c = 0; c < it->second.size(); ++c)
            out[r] += chi[r][c] * static_cast<i64>(it->second[c]);
        Elem image = h.mul(from_exponents(h, basis2, out),
                           bb_pow(h, sd2.v, k * j % m));
        iso.gen_images.push_back({gen, image});
        placed = true;
      }
      if (!placed) {
        assembled = false;
        break;
      }
    }
    if (!assembled) continue;
    if (verify_isomorphism(g, h, iso)) return iso;
  }
  return fail("no verified isomorphism");
}

}  // namespace grpiso
