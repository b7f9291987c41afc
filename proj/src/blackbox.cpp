#include "grpiso/blackbox.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <stdexcept>

namespace grpiso {

namespace {

i64 mod_nonneg(i64 v, u64 n) {
  i64 r = v % static_cast<i64>(n);
  if (r < 0) r += static_cast<i64>(n);
  return r;
}

// Compose two action matrices, reducing row i mod n_i. Entry (i,j) of an
// action matrix only matters mod n_i once the matrix is well-defined on A.
ZMat action_mul(const ZMat& a, const ZMat& b, const std::vector<u64>& orders) {
  std::size_t s = orders.size();
  ZMat out(s, std::vector<i64>(s, 0));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) {
      i64 acc = 0;
      for (std::size_t k = 0; k < s; ++k)
        acc = mod_nonneg(acc + mod_nonneg(a[i][k] * b[k][j], orders[i]), orders[i]);
      out[i][j] = acc;
    }
  return out;
}

u64 splitmix(u64 x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

void ClassSGroupSpec::validate() const {
  if (abelian_orders.empty()) throw std::invalid_argument("spec: abelian part empty");
  for (u64 n : abelian_orders)
    if (n == 0) throw std::invalid_argument("spec: zero cyclic factor order");
  if (m == 0) throw std::invalid_argument("spec: m must be positive");
  u64 a_order = 1;
  for (u64 n : abelian_orders) a_order *= n;
  if (std::gcd(a_order, m) != 1)
    throw std::invalid_argument("spec: gcd(|A|, m) != 1 violates the class-S condition");
  std::size_t s = abelian_orders.size();
  if (action.size() != s)
    throw std::invalid_argument("spec: action matrix must be s x s");
  for (const auto& row : action)
    if (row.size() != s) throw std::invalid_argument("spec: action matrix must be s x s");
  // well-defined on A: T_ij * n_j == 0 mod n_i
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j)
      if (mod_nonneg(action[i][j] * static_cast<i64>(abelian_orders[j]),
                     abelian_orders[i]) != 0)
        throw std::invalid_argument("spec: action not compatible with factor orders");
  // T^m = identity automorphism (also forces T invertible)
  ZMat acc(s, std::vector<i64>(s, 0));
  for (std::size_t i = 0; i < s; ++i) acc[i][i] = abelian_orders[i] > 1 ? 1 : 0;
  ZMat t(s, std::vector<i64>(s));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) t[i][j] = mod_nonneg(action[i][j], abelian_orders[i]);
  ZMat p = acc;
  for (u64 e = 0; e < m; ++e) p = action_mul(p, t, abelian_orders);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) {
      i64 want = (i == j) ? mod_nonneg(1, abelian_orders[i]) : 0;
      if (p[i][j] != want)
        throw std::invalid_argument("spec: action does not have order dividing m");
    }
}

ClassSGroup::ClassSGroup(ClassSGroupSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  order_ = spec_.m;
  for (u64 n : spec_.abelian_orders) order_ *= n;
  unsigned bits = std::bit_width(order_);
  enc_len_ = (bits + 7) / 8 + 1;
  width_ = static_cast<unsigned>(8 * enc_len_);
  if (width_ > 62) throw std::invalid_argument("spec: group too large to encode");

  std::size_t s = spec_.abelian_orders.size();
  ZMat id(s, std::vector<i64>(s, 0));
  for (std::size_t i = 0; i < s; ++i)
    id[i][i] = spec_.abelian_orders[i] > 1 ? 1 : 0;
  ZMat t(s, std::vector<i64>(s));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j)
      t[i][j] = mod_nonneg(spec_.action[i][j], spec_.abelian_orders[i]);
  t_pow_.push_back(id);
  for (u64 e = 1; e < spec_.m; ++e)
    t_pow_.push_back(action_mul(t_pow_.back(), t, spec_.abelian_orders));
}

u64 ClassSGroup::scramble(u64 idx) const {
  if (spec_.scramble_seed == 0) return idx;
  unsigned half = width_ / 2;
  u64 mask = (1ULL << half) - 1;
  u64 l = idx >> half, r = idx & mask;
  for (unsigned round = 0; round < 4; ++round) {
    u64 f = splitmix(r ^ splitmix(spec_.scramble_seed + round)) & mask;
    u64 nl = r, nr = l ^ f;
    l = nl;
    r = nr;
  }
  return (l << half) | r;
}

u64 ClassSGroup::unscramble(u64 val) const {
  if (spec_.scramble_seed == 0) return val;
  unsigned half = width_ / 2;
  u64 mask = (1ULL << half) - 1;
  u64 l = val >> half, r = val & mask;
  for (int round = 3; round >= 0; --round) {
    u64 f = splitmix(l ^ splitmix(spec_.scramble_seed + static_cast<u64>(round))) & mask;
    u64 pr = l, pl = r ^ f;
    l = pl;
    r = pr;
  }
  return (l << half) | r;
}

Elem ClassSGroup::encode(const std::vector<u64>& a, u64 i) const {
  std::size_t s = spec_.abelian_orders.size();
  if (a.size() != s) throw std::invalid_argument("encode: wrong vector length");
  u64 idx = i % spec_.m;
  for (std::size_t j = s; j-- > 0;)
    idx = idx * spec_.abelian_orders[j] + a[j] % spec_.abelian_orders[j];
  u64 val = scramble(idx);
  Elem out(enc_len_, '\0');
  for (std::size_t b = 0; b < enc_len_; ++b)
    out[b] = static_cast<char>((val >> (8 * b)) & 0xff);
  return out;
}

std::pair<std::vector<u64>, u64> ClassSGroup::decode(const Elem& g) const {
  if (g.size() != enc_len_) throw std::invalid_argument("invalid encoding length");
  u64 val = 0;
  for (std::size_t b = 0; b < enc_len_; ++b)
    val |= static_cast<u64>(static_cast<unsigned char>(g[b])) << (8 * b);
  u64 idx = unscramble(val);
  if (idx >= order_) throw std::invalid_argument("invalid element encoding");
  std::size_t s = spec_.abelian_orders.size();
  std::vector<u64> a(s);
  for (std::size_t j = 0; j < s; ++j) {
    a[j] = idx % spec_.abelian_orders[j];
    idx /= spec_.abelian_orders[j];
  }
  return {a, idx};
}

Elem ClassSGroup::mul(const Elem& x, const Elem& y) const {
  auto [a, i] = decode(x);
  auto [b, j] = decode(y);
  // (a, i) (b, j) = (a + T^i b, i + j)
  std::size_t s = a.size();
  const ZMat& ti = t_pow_[i];
  std::vector<u64> c(s);
  for (std::size_t r = 0; r < s; ++r) {
    u64 acc = a[r];
    for (std::size_t k = 0; k < s; ++k)
      acc = (acc + static_cast<u64>(ti[r][k]) * b[k]) % spec_.abelian_orders[r];
    c[r] = acc;
  }
  return encode(c, (i + j) % spec_.m);
}

Elem ClassSGroup::identity() const {
  return encode(std::vector<u64>(spec_.abelian_orders.size(), 0), 0);
}

std::vector<Elem> ClassSGroup::generators() const {
  std::vector<Elem> gens;
  std::size_t s = spec_.abelian_orders.size();
  for (std::size_t j = 0; j < s; ++j) {
    if (spec_.abelian_orders[j] == 1) continue;
    std::vector<u64> a(s, 0);
    a[j] = 1;
    gens.push_back(encode(a, 0));
  }
  if (spec_.m > 1) gens.push_back(encode(std::vector<u64>(s, 0), 1));
  if (gens.empty()) gens.push_back(identity());
  return gens;
}

std::shared_ptr<ClassSGroup> build_group(const ClassSGroupSpec& spec) {
  return std::make_shared<ClassSGroup>(spec);
}

namespace {

class TableGroup : public BlackBoxGroup {
 public:
  explicit TableGroup(std::vector<std::vector<std::size_t>> table)
      : table_(std::move(table)) {
    std::size_t n = table_.size();
    if (n == 0) throw std::invalid_argument("table: empty");
    for (const auto& row : table_) {
      if (row.size() != n) throw std::invalid_argument("table: not square");
      for (std::size_t v : row)
        if (v >= n) throw std::invalid_argument("table: index out of range");
    }
    id_ = n;
    for (std::size_t e = 0; e < n; ++e) {
      bool ok = true;
      for (std::size_t j = 0; j < n; ++j)
        if (table_[e][j] != j || table_[j][e] != j) ok = false;
      if (ok) {
        id_ = e;
        break;
      }
    }
    if (id_ == n) throw std::invalid_argument("table: no identity element");
    // rows and columns must be permutations (cancellation law)
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<bool> row(n, false), col(n, false);
      for (std::size_t j = 0; j < n; ++j) {
        if (row[table_[i][j]] || col[table_[j][i]])
          throw std::invalid_argument("table: not a Latin square");
        row[table_[i][j]] = col[table_[j][i]] = true;
      }
    }
    enc_len_ = std::to_string(n - 1).size();
  }

  Elem mul(const Elem& a, const Elem& b) const override {
    return enc(table_[dec(a)][dec(b)]);
  }
  Elem identity() const override { return enc(id_); }
  std::vector<Elem> generators() const override {
    // every element; callers relying on small generating sets can thin this
    std::vector<Elem> g;
    for (std::size_t i = 0; i < table_.size(); ++i) g.push_back(enc(i));
    return g;
  }
  std::size_t encoding_length() const override { return enc_len_; }
  u64 order() const override { return table_.size(); }

 private:
  Elem enc(std::size_t i) const {
    std::string s = std::to_string(i);
    return std::string(enc_len_ - s.size(), '0') + s;
  }
  std::size_t dec(const Elem& e) const {
    if (e.size() != enc_len_) throw std::invalid_argument("invalid encoding");
    std::size_t v = 0;
    for (char c : e) {
      if (c < '0' || c > '9') throw std::invalid_argument("invalid encoding");
      v = v * 10 + static_cast<std::size_t>(c - '0');
    }
    if (v >= table_.size()) throw std::invalid_argument("invalid encoding");
    return v;
  }

  std::vector<std::vector<std::size_t>> table_;
  std::size_t id_;
  std::size_t enc_len_;
};

}  // namespace

std::shared_ptr<BlackBoxGroup> table_group(
    const std::vector<std::vector<std::size_t>>& table) {
  return std::make_shared<TableGroup>(table);
}

Elem bb_pow(const BlackBoxGroup& g, Elem base, u64 e) {
  Elem acc = g.identity();
  while (e) {
    if (e & 1) acc = g.mul(acc, base);
    base = g.mul(base, base);
    e >>= 1;
  }
  return acc;
}

u64 element_order(const BlackBoxGroup& g, const Elem& x) {
  u64 o = g.order();
  for (auto [p, e] : factorize(o)) {
    (void)e;
    while (o % p == 0 && bb_pow(g, x, o / p) == g.identity()) o /= p;
  }
  return o;
}

Elem inverse(const BlackBoxGroup& g, const Elem& x) {
  return bb_pow(g, x, element_order(g, x) - 1);
}

Elem conjugate(const BlackBoxGroup& g, const Elem& by, const Elem& x) {
  return g.mul(g.mul(by, x), inverse(g, by));
}

Elem commutator(const BlackBoxGroup& g, const Elem& a, const Elem& b) {
  return g.mul(g.mul(a, b), g.mul(inverse(g, a), inverse(g, b)));
}

std::vector<Elem> closure(const BlackBoxGroup& g, const std::vector<Elem>& gens,
                          std::size_t guard) {
  std::set<Elem> seen{g.identity()};
  std::vector<Elem> frontier{g.identity()};
  while (!frontier.empty()) {
    Elem cur = frontier.back();
    frontier.pop_back();
    for (const Elem& s : gens) {
      Elem nxt = g.mul(cur, s);
      if (seen.insert(nxt).second) {
        if (seen.size() > guard) throw std::runtime_error("closure size guard exceeded");
        frontier.push_back(nxt);
      }
    }
  }
  return {seen.begin(), seen.end()};
}

std::vector<Elem> enumerate_elements(const BlackBoxGroup& g, std::size_t guard) {
  return closure(g, g.generators(), guard);
}

std::vector<Elem> derived_subgroup_gens(const BlackBoxGroup& g) {
  std::vector<Elem> ggens = g.generators();
  std::set<Elem> gens;
  for (const Elem& a : ggens)
    for (const Elem& b : ggens) {
      Elem c = commutator(g, a, b);
      if (c != g.identity()) gens.insert(c);
    }
  // normal closure: conjugates of generators of N by generators of G stay in N
  while (true) {
    std::vector<Elem> cur(gens.begin(), gens.end());
    std::set<Elem> members;
    for (const Elem& e : closure(g, cur)) members.insert(e);
    bool grew = false;
    for (const Elem& s : cur)
      for (const Elem& a : ggens) {
        Elem c = conjugate(g, a, s);
        if (!members.count(c)) {
          gens.insert(c);
          grew = true;
        }
      }
    if (!grew) break;
  }
  return {gens.begin(), gens.end()};
}

u64 group_order(const BlackBoxGroup& g) { return g.order(); }

}  // namespace grpiso
