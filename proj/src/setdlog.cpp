#include "grpiso/setdlog.hpp"

#include <memory>

#include "grpiso/abelian.hpp"
#include "grpiso/blackbox.hpp"

namespace grpiso {

namespace detail {

namespace {

// Table groups report every element as a generator; the abelian engine is
// happier with a thin generating set.
class ThinnedGroup : public BlackBoxGroup {
 public:
  ThinnedGroup(std::shared_ptr<BlackBoxGroup> inner, std::vector<Elem> gens)
      : inner_(std::move(inner)), gens_(std::move(gens)) {}
  Elem mul(const Elem& a, const Elem& b) const override { return inner_->mul(a, b); }
  Elem identity() const override { return inner_->identity(); }
  std::vector<Elem> generators() const override { return gens_; }
  std::size_t encoding_length() const override { return inner_->encoding_length(); }
  u64 order() const override { return inner_->order(); }

 private:
  std::shared_ptr<BlackBoxGroup> inner_;
  std::vector<Elem> gens_;
};

// Z_m^* as a table group, with translation between unit values and the table
// encodings used by the abelian engine.
struct UnitCtx {
  std::shared_ptr<BlackBoxGroup> g;
  std::vector<u64> units;
  std::map<u64, std::size_t> index;
  std::size_t enc_len = 1;

  Elem enc(u64 u) const {
    std::string s = std::to_string(index.at(u));
    return std::string(enc_len - s.size(), '0') + s;
  }
  u64 dec(const Elem& e) const {
    std::size_t v = 0;
    for (char c : e) v = v * 10 + static_cast<std::size_t>(c - '0');
    return units[v];
  }
};

UnitCtx make_unit_ctx(u64 m) {
  UnitCtx ctx;
  ctx.units = units_mod(m);
  std::size_t n = ctx.units.size();
  for (std::size_t i = 0; i < n; ++i) ctx.index[ctx.units[i]] = i;
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      table[i][j] = ctx.index.at(mulmod(ctx.units[i], ctx.units[j], m));
  ctx.g = table_group(table);
  ctx.enc_len = std::to_string(n - 1).size();
  std::vector<Elem> thin;
  for (u64 u : thin_unit_gens(m, ctx.units)) thin.push_back(ctx.enc(u));
  ctx.g = std::make_shared<ThinnedGroup>(ctx.g, thin);
  return ctx;
}

}  // namespace

std::vector<u64> unit_span(u64 m, const std::vector<u64>& gens) {
  if (m == 1) return {1};
  std::vector<u64> members{1};
  std::map<u64, bool> seen{{1, true}};
  std::vector<u64> work{1};
  while (!work.empty()) {
    u64 cur = work.back();
    work.pop_back();
    for (u64 gen : gens) {
      u64 nxt = mulmod(cur, gen % m, m);
      if (!seen.count(nxt)) {
        seen[nxt] = true;
        members.push_back(nxt);
        work.push_back(nxt);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

std::vector<u64> thin_unit_gens(u64 m, const std::vector<u64>& members) {
  if (m == 1) return {};
  std::vector<u64> gens;
  std::vector<u64> span{1};
  for (u64 u : members) {
    if (std::binary_search(span.begin(), span.end(), u)) continue;
    gens.push_back(u);
    span = unit_span(m, gens);
  }
  return gens;
}

std::optional<std::pair<u64, std::vector<u64>>> intersect_unit_cosets(
    u64 m, const std::vector<std::pair<u64, std::vector<u64>>>& cosets) {
  if (cosets.empty()) return std::make_pair(u64(1 % m), std::vector<u64>{});
  if (m == 1) return std::make_pair(u64(1), std::vector<u64>{});
  UnitCtx ctx = make_unit_ctx(m);
  auto lift_gens = [&](const std::vector<u64>& gs) {
    std::vector<Elem> out;
    for (u64 u : gs) out.push_back(ctx.enc(u % m));
    return out;
  };
  u64 rep = cosets[0].first % m;
  std::vector<u64> gens = cosets[0].second;
  for (std::size_t i = 1; i < cosets.size(); ++i) {
    auto meet =
        coset_intersection(ctx.enc(rep), lift_gens(gens), ctx.enc(cosets[i].first % m),
                           lift_gens(cosets[i].second), *ctx.g);
    if (!meet) return std::nullopt;
    rep = ctx.dec(meet->rep);
    gens.clear();
    for (const Elem& e : meet->subgroup_gens) gens.push_back(ctx.dec(e));
  }
  return std::make_pair(rep, thin_unit_gens(m, unit_span(m, gens)));
}

std::pair<std::vector<u64>, std::vector<u64>> unit_group_basis(u64 m) {
  if (m <= 2) return {{}, {}};
  UnitCtx ctx = make_unit_ctx(m);
  AbelianBasis basis = abelian_basis(ctx.g->generators(), *ctx.g);
  std::vector<u64> units, orders;
  for (std::size_t i = 0; i < basis.gens.size(); ++i) {
    units.push_back(ctx.dec(basis.gens[i]));
    orders.push_back(basis.orders[i]);
  }
  return {units, orders};
}

std::vector<std::vector<u64>> hsp_over_units(
    u64 m, const std::vector<u64>& basis_units, const std::vector<u64>& basis_orders,
    const std::function<std::string(u64)>& label_of_unit) {
  if (basis_units.empty()) return {};
  auto f = [&](const std::vector<u64>& u) {
    u64 k = 1;
    for (std::size_t i = 0; i < u.size(); ++i)
      k = mulmod(k, powmod(basis_units[i], u[i], m), m);
    return label_of_unit(k);
  };
  return hidden_subgroup(basis_orders, f);
}

}  // namespace detail

FieldMultiset::FieldMultiset(const FiniteField& f, std::vector<FFElem> e)
    : field(&f), elems(std::move(e)) {
  for (const FFElem& x : elems) {
    if (!(x.field() == f))
      throw std::invalid_argument("FieldMultiset: element from a different field");
    if (x.is_zero()) throw std::invalid_argument("FieldMultiset: zero element");
  }
  std::sort(elems.begin(), elems.end());
}

std::optional<SolutionCoset> set_discrete_log(
    const std::vector<FieldMultiset>& s_list, const std::vector<FieldMultiset>& t_list,
    StabBackend backend) {
  std::vector<std::vector<FFElem>> s, t;
  for (const auto& ms : s_list) s.push_back(ms.elems);
  for (const auto& ms : t_list) t.push_back(ms.elems);
  return set_discrete_log(s, t, backend);
}

std::vector<u64> coset_members(const SolutionCoset& c) {
  std::vector<u64> out;
  for (u64 u : detail::unit_span(c.m, c.subgroup_gens))
    out.push_back(c.m == 1 ? 1 : mulmod(c.rep % c.m, u, c.m));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace grpiso
