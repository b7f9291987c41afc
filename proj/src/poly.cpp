#include "grpiso/poly.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace grpiso {

Poly::Poly(const FiniteField& field, std::vector<FFElem> coeffs)
    : field_(&field), c_(std::move(coeffs)) {
  trim();
}

Poly::Poly(const FiniteField& field, const std::vector<u64>& residues) : field_(&field) {
  for (u64 r : residues) c_.push_back(field.from_residue(r));
  trim();
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FFElem Poly::coeff(std::size_t i) const {
  return i < c_.size() ? c_[i] : field_->zero();
}

FFElem Poly::leading() const {
  if (c_.empty()) throw std::domain_error("leading: zero polynomial");
  return c_.back();
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<FFElem> r;
  std::size_t n = std::max(c_.size(), o.c_.size());
  r.reserve(n);
  for (std::size_t i = 0; i < n; ++i) r.push_back(coeff(i) + o.coeff(i));
  return Poly(*field_, std::move(r));
}

Poly Poly::operator-(const Poly& o) const {
  std::vector<FFElem> r;
  std::size_t n = std::max(c_.size(), o.c_.size());
  r.reserve(n);
  for (std::size_t i = 0; i < n; ++i) r.push_back(coeff(i) - o.coeff(i));
  return Poly(*field_, std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly(*field_);
  std::vector<FFElem> r(c_.size() + o.c_.size() - 1, field_->zero());
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = r[i + j] + c_[i] * o.c_[j];
  }
  return Poly(*field_, std::move(r));
}

Poly Poly::operator*(const FFElem& s) const {
  std::vector<FFElem> r;
  r.reserve(c_.size());
  for (const auto& c : c_) r.push_back(c * s);
  return Poly(*field_, std::move(r));
}

std::strong_ordering Poly::operator<=>(const Poly& o) const {
  if (auto cmp = c_.size() <=> o.c_.size(); cmp != 0) return cmp;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (auto cmp = c_[i] <=> o.c_[i]; cmp != 0) return cmp;
  }
  return std::strong_ordering::equal;
}

Poly Poly::monic() const {
  if (is_zero()) throw std::domain_error("monic: zero polynomial");
  if (is_monic()) return *this;
  return *this * leading().inverse();
}

FFElem Poly::eval(const FFElem& x) const {
  FFElem acc = field_->zero();
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

Poly Poly::x_power(const FiniteField& field, unsigned k) {
  std::vector<FFElem> c(k + 1, field.zero());
  c[k] = field.one();
  return Poly(field, std::move(c));
}

Poly Poly::from_roots(const FiniteField& field, const std::vector<FFElem>& roots) {
  Poly acc(field, std::vector<FFElem>{field.one()});
  for (const auto& r : roots) acc = acc * Poly(field, std::vector<FFElem>{-r, field.one()});
  return acc;
}

std::string Poly::to_string() const {
  std::ostringstream os;
  if (is_zero()) return "0";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) os << ' ';
    os << c_[i].to_string();
  }
  return os.str();
}

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("poly_divmod: division by zero polynomial");
  const FiniteField& f = a.field();
  std::vector<FFElem> rem(a.coeffs());
  int db = b.degree();
  if (a.degree() < db) return {Poly(f), a};
  std::vector<FFElem> quot(a.degree() - db + 1, f.zero());
  FFElem lead_inv = b.leading().inverse();
  for (int k = a.degree() - db; k >= 0; --k) {
    FFElem q = rem[k + db] * lead_inv;
    quot[k] = q;
    if (q.is_zero()) continue;
    for (int j = 0; j <= db; ++j) rem[k + j] = rem[k + j] - q * b.coeff(j);
  }
  return {Poly(f, std::move(quot)), Poly(f, std::move(rem))};
}

Poly poly_mod(const Poly& a, const Poly& b) { return poly_divmod(a, b).second; }

Poly poly_div_exact(const Poly& a, const Poly& b) {
  auto [q, r] = poly_divmod(a, b);
  if (!r.is_zero()) throw std::logic_error("poly_div_exact: nonzero remainder");
  return q;
}

Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a.monic();
}

Poly poly_powmod(const Poly& base, u64 exp, const Poly& mod) {
  Poly r(base.field(), std::vector<u64>{1});
  Poly b = poly_mod(base, mod);
  while (exp > 0) {
    if (exp & 1) r = poly_mod(r * b, mod);
    b = poly_mod(b * b, mod);
    exp >>= 1;
  }
  return r;
}

Poly poly_derivative(const Poly& a) {
  const FiniteField& f = a.field();
  if (a.degree() < 1) return Poly(f);
  std::vector<FFElem> r;
  for (int i = 1; i <= a.degree(); ++i)
    r.push_back(a.coeff(i) * f.from_residue(static_cast<u64>(i)));
  return Poly(f, std::move(r));
}

namespace {

// x^(q^n) mod f via repeated q-th powering (q = field size).
Poly frob_x_power(const Poly& f, unsigned n) {
  u64 q = f.field().size();
  Poly g = poly_powmod(Poly::x_power(f.field(), 1), q, f);
  for (unsigned i = 1; i < n; ++i) g = poly_powmod(g, q, f);
  return g;
}

Poly random_poly(const FiniteField& field, int deg_below, std::mt19937_64& rng) {
  std::vector<FFElem> c;
  unsigned d = field.degree();
  c.reserve(deg_below);
  for (int i = 0; i < deg_below; ++i) {
    std::vector<u64> elem(d);
    for (unsigned j = 0; j < d; ++j) elem[j] = rng() % field.characteristic();
    c.push_back(field.from_coeffs(std::move(elem)));
  }
  return Poly(field, std::move(c));
}

// Splits a monic squarefree product of irreducibles of degree e.
void equal_degree_split(const Poly& h, unsigned e, std::mt19937_64& rng,
                        std::vector<Poly>& out) {
  const FiniteField& field = h.field();
  if (h.degree() == static_cast<int>(e)) {
    out.push_back(h);
    return;
  }
  u64 q = field.size();
  while (true) {
    Poly a = random_poly(field, h.degree(), rng);
    if (a.degree() < 1) continue;
    Poly g = poly_gcd(a, h);
    if (g.degree() > 0 && g.degree() < h.degree()) {
      equal_degree_split(g, e, rng, out);
      equal_degree_split(poly_div_exact(h, g), e, rng, out);
      return;
    }
    if (field.characteristic() == 2) {
      // trace map to GF(2): sum of a^(2^i) for i < e * log2(q^1) * deg ext
      unsigned bits = e * field.degree();
      Poly t = poly_mod(a, h);
      Poly acc = t;
      for (unsigned i = 1; i < bits; ++i) {
        t = poly_mod(t * t, h);
        acc = poly_mod(acc + t, h);
      }
      g = poly_gcd(acc, h);
    } else {
      u64 qe = 1;
      for (unsigned i = 0; i < e; ++i) qe *= q;
      Poly b = poly_powmod(a, (qe - 1) / 2, h);
      g = poly_gcd(b - Poly(field, std::vector<u64>{1}), h);
    }
    if (g.degree() > 0 && g.degree() < h.degree()) {
      equal_degree_split(g, e, rng, out);
      equal_degree_split(poly_div_exact(h, g), e, rng, out);
      return;
    }
  }
}

// Squarefree decomposition: returns (squarefree monic part, multiplicity)
// pairs. Handles inseparable parts (derivative zero) by p-th roots.
void squarefree_decomp(const Poly& f, unsigned mult,
                       std::vector<std::pair<Poly, unsigned>>& out) {
  const FiniteField& field = f.field();
  u64 p = field.characteristic();
  if (f.degree() == 0) return;
  Poly deriv = poly_derivative(f);
  if (deriv.is_zero()) {
    // f = h(x^p); coefficients get their p-th roots (c -> c^(q/p))
    std::vector<FFElem> hc;
    u64 root_exp = field.size() / p;
    for (int i = 0; i <= f.degree(); i += static_cast<int>(p))
      hc.push_back(f.coeff(static_cast<std::size_t>(i)).pow(root_exp));
    squarefree_decomp(Poly(field, std::move(hc)), mult * static_cast<unsigned>(p), out);
    return;
  }
  Poly w = poly_gcd(f, deriv);
  Poly s = poly_div_exact(f, w).monic();
  unsigned i = 1;
  while (s.degree() > 0) {
    Poly y = poly_gcd(w, s);
    Poly z = poly_div_exact(s, y);
    if (z.degree() > 0) out.push_back({z.monic(), mult * i});
    s = y;
    w = poly_div_exact(w, y);
    ++i;
  }
  if (w.degree() > 0) squarefree_decomp(w.monic(), mult, out);
}

}  // namespace

bool is_irreducible(const Poly& f) {
  int n = f.degree();
  if (n < 1) return false;
  if (n == 1) return true;
  Poly xq = frob_x_power(f, static_cast<unsigned>(n));
  Poly x = Poly::x_power(f.field(), 1);
  if (!(poly_mod(xq - x, f).is_zero())) return false;
  for (auto [ell, e] : factorize(static_cast<u64>(n))) {
    Poly sub = frob_x_power(f, static_cast<unsigned>(n / ell));
    Poly g = poly_gcd(sub - x, f);
    if (g.degree() != 0) return false;
  }
  return true;
}

Poly find_irreducible(u64 p, unsigned d, u64 seed) {
  if (d < 1) throw std::invalid_argument("find_irreducible: degree must be >= 1");
  const FiniteField& field = splitting_field(p, 1);
  if (d == 1) return Poly::x_power(field, 1);
  std::mt19937_64 rng(seed);
  while (true) {
    std::vector<u64> coeffs(d + 1, 0);
    for (unsigned i = 0; i < d; ++i) coeffs[i] = rng() % p;
    coeffs[d] = 1;
    Poly cand(field, coeffs);
    if (is_irreducible(cand)) return cand;
  }
}

std::vector<std::pair<Poly, unsigned>> factor_poly(const Poly& f, u64 seed) {
  if (f.is_zero()) throw std::domain_error("factor_poly: zero polynomial");
  std::mt19937_64 rng(seed);
  Poly g = f.monic();
  std::vector<std::pair<Poly, unsigned>> sqfree;
  squarefree_decomp(g, 1, sqfree);
  std::vector<std::pair<Poly, unsigned>> out;
  for (auto& [part, mult] : sqfree) {
    // distinct-degree split of the squarefree part
    Poly rest = part;
    Poly x = Poly::x_power(f.field(), 1);
    Poly frob = x;
    u64 q = f.field().size();
    for (unsigned e = 1; rest.degree() > 0; ++e) {
      if (2 * static_cast<int>(e) > rest.degree()) {
        // remainder is a single irreducible factor
        out.push_back({rest.monic(), mult});
        break;
      }
      frob = poly_powmod(frob, q, rest);
      Poly block = poly_gcd(frob - x, rest);
      if (block.degree() > 0) {
        std::vector<Poly> irreducibles;
        equal_degree_split(block, e, rng, irreducibles);
        for (auto& irr : irreducibles) out.push_back({irr, mult});
        rest = poly_div_exact(rest, block);
        frob = poly_mod(frob, rest);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (auto cmp = a.first <=> b.first; cmp != 0) return cmp < 0;
    return a.second < b.second;
  });
  return out;
}

std::vector<FFElem> roots_in_field(const Poly& f, u64 seed) {
  if (f.is_zero()) throw std::domain_error("roots_in_field: zero polynomial");
  const FiniteField& field = f.field();
  std::mt19937_64 rng(seed);
  Poly x = Poly::x_power(field, 1);
  Poly xq = poly_powmod(x, field.size(), f);
  Poly lin = poly_gcd(xq - x, f);
  std::vector<FFElem> roots;
  if (lin.degree() < 1) return roots;
  std::vector<Poly> factors;
  equal_degree_split(lin, 1, rng, factors);
  for (const auto& fac : factors) roots.push_back(-fac.coeff(0));
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<FFElem> roots_in_splitting_ext(const Poly& f) {
  if (!is_irreducible(f)) throw std::invalid_argument("roots_in_splitting_ext: reducible input");
  if (f.field().degree() != 1)
    throw std::invalid_argument("roots_in_splitting_ext: base field must be prime");
  u64 p = f.field().characteristic();
  unsigned d = static_cast<unsigned>(f.degree());
  const FiniteField& ext = splitting_field(p, d);
  std::vector<FFElem> lifted;
  for (const auto& c : f.coeffs()) lifted.push_back(ext.from_residue(c.coeffs()[0]));
  Poly fk(ext, std::move(lifted));
  std::vector<FFElem> some = roots_in_field(fk);
  if (some.empty()) throw std::logic_error("roots_in_splitting_ext: no root found");
  std::vector<FFElem> orbit;
  FFElem r = some.front();
  for (unsigned i = 0; i < d; ++i) {
    orbit.push_back(r);
    r = r.frobenius();
  }
  return orbit;
}

}  // namespace grpiso
