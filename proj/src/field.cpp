#include "grpiso/field.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "grpiso/poly.hpp"

namespace grpiso {

namespace {

void check_prime(u64 p) {
  if (!is_prime(p)) throw std::invalid_argument("FiniteField: modulus is not prime");
}

}  // namespace

FiniteField::FiniteField(u64 p) : p_(p), d_(1), size_(p), modulus_{0, 1} {
  check_prime(p);
}

FiniteField::FiniteField(u64 p, const std::vector<u64>& modulus)
    : p_(p), d_(static_cast<unsigned>(modulus.size()) - 1), size_(1), modulus_(modulus) {
  check_prime(p);
  if (modulus.size() < 2 || modulus.back() % p != 1)
    throw std::invalid_argument("FiniteField: modulus must be monic of degree >= 1");
  for (auto& c : modulus_) c %= p;
  for (unsigned i = 0; i < d_; ++i) size_ *= p;
}

FFElem FiniteField::zero() const { return FFElem(this, std::vector<u64>(d_, 0)); }

FFElem FiniteField::one() const { return from_residue(1); }

FFElem FiniteField::from_residue(u64 r) const {
  std::vector<u64> c(d_, 0);
  c[0] = r % p_;
  return FFElem(this, std::move(c));
}

FFElem FiniteField::from_coeffs(std::vector<u64> coeffs) const {
  if (coeffs.size() > d_) throw std::invalid_argument("from_coeffs: too many coefficients");
  coeffs.resize(d_, 0);
  for (auto& c : coeffs) c %= p_;
  return FFElem(this, std::move(coeffs));
}

FFElem FiniteField::generator_x() const {
  if (d_ < 2) throw std::logic_error("generator_x: prime field has no x");
  std::vector<u64> c(d_, 0);
  c[1] = 1;
  return FFElem(this, std::move(c));
}

std::vector<FFElem> FiniteField::all_elements() const {
  std::vector<FFElem> out;
  out.reserve(size_);
  std::vector<u64> c(d_, 0);
  for (u64 idx = 0; idx < size_; ++idx) {
    u64 v = idx;
    for (unsigned i = 0; i < d_; ++i) {
      c[i] = v % p_;
      v /= p_;
    }
    out.push_back(FFElem(this, c));
  }
  return out;
}

const FiniteField& splitting_field(u64 p, unsigned d) {
  static std::map<std::pair<u64, unsigned>, FiniteField> cache;
  static std::recursive_mutex mu;
  std::lock_guard<std::recursive_mutex> lock(mu);
  auto it = cache.find({p, d});
  if (it != cache.end()) return it->second;
  if (d == 1) {
    auto [ins, ok] = cache.emplace(std::pair{p, d}, FiniteField(p));
    return ins->second;
  }
  Poly mod = find_irreducible(p, d, /*seed=*/0x5eedF1e1dULL);
  std::vector<u64> coeffs;
  for (const auto& c : mod.coeffs()) coeffs.push_back(c.coeffs()[0]);
  auto [ins, ok] = cache.emplace(std::pair{p, d}, FiniteField(p, coeffs));
  return ins->second;
}

// ---------------------------------------------------------------------------

FFElem::FFElem(const FiniteField* field, std::vector<u64> coeffs)
    : field_(field), c_(std::move(coeffs)) {
  if (c_.size() != field_->degree()) throw std::invalid_argument("FFElem: bad coefficient count");
}

bool FFElem::is_zero() const {
  for (u64 v : c_)
    if (v != 0) return false;
  return true;
}

bool FFElem::is_one() const {
  if (c_[0] != 1) return false;
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

namespace {

void check_same_field(const FFElem& a, const FFElem& b) {
  if (!(a.field() == b.field())) throw std::invalid_argument("FFElem: mismatched fields");
}

}  // namespace

FFElem FFElem::operator+(const FFElem& o) const {
  check_same_field(*this, o);
  u64 p = field_->characteristic();
  std::vector<u64> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = (c_[i] + o.c_[i]) % p;
  return FFElem(field_, std::move(r));
}

FFElem FFElem::operator-(const FFElem& o) const {
  check_same_field(*this, o);
  u64 p = field_->characteristic();
  std::vector<u64> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = (c_[i] + p - o.c_[i]) % p;
  return FFElem(field_, std::move(r));
}

FFElem FFElem::operator-() const {
  u64 p = field_->characteristic();
  std::vector<u64> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = (p - c_[i]) % p;
  return FFElem(field_, std::move(r));
}

FFElem FFElem::operator*(const FFElem& o) const {
  check_same_field(*this, o);
  u64 p = field_->characteristic();
  unsigned d = field_->degree();
  if (d == 1) return FFElem(field_, {mulmod(c_[0], o.c_[0], p)});
  // schoolbook multiply then reduce mod the modulus polynomial
  std::vector<u64> prod(2 * d - 1, 0);
  for (unsigned i = 0; i < d; ++i) {
    if (c_[i] == 0) continue;
    for (unsigned j = 0; j < d; ++j)
      prod[i + j] = (prod[i + j] + mulmod(c_[i], o.c_[j], p)) % p;
  }
  const std::vector<u64>& mod = field_->modulus();
  for (unsigned k = 2 * d - 2; k >= d; --k) {
    u64 lead = prod[k];
    if (lead == 0) continue;
    prod[k] = 0;
    for (unsigned j = 0; j < d; ++j) {
      u64 sub = mulmod(lead, mod[j], p);
      prod[k - d + j] = (prod[k - d + j] + p - sub % p) % p;
    }
  }
  prod.resize(d);
  return FFElem(field_, std::move(prod));
}

FFElem FFElem::pow(u64 e) const {
  FFElem r = field_->one();
  FFElem b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

FFElem FFElem::inverse() const {
  if (is_zero()) throw std::domain_error("FFElem: division by zero");
  return pow(field_->size() - 2);
}

FFElem FFElem::operator/(const FFElem& o) const { return *this * o.inverse(); }

FFElem FFElem::frobenius(unsigned n) const {
  FFElem r = *this;
  for (unsigned i = 0; i < n; ++i) r = r.pow(field_->characteristic());
  return r;
}

bool FFElem::operator==(const FFElem& o) const {
  return field_ == o.field_ ? c_ == o.c_ : (field()==o.field() && c_ == o.c_);
}

std::strong_ordering FFElem::operator<=>(const FFElem& o) const {
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (auto cmp = c_[i] <=> o.c_[i]; cmp != 0) return cmp;
  }
  return std::strong_ordering::equal;
}

std::string FFElem::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) os << ',';
    os << c_[i];
  }
  return os.str();
}

u64 mult_order(const FFElem& a) {
  if (a.is_zero()) throw std::domain_error("mult_order: zero element");
  u64 n = a.field().size() - 1;
  u64 order = n;
  for (auto [p, e] : factorize(n)) {
    for (unsigned i = 0; i < e; ++i) {
      if (a.pow(order / p).is_one())
        order /= p;
      else
        break;
    }
  }
  return order;
}

unsigned minimal_subfield_degree(const FFElem& a) {
  unsigned d = a.field().degree();
  for (u64 e : divisors(d)) {
    u64 q = 1;
    for (u64 i = 0; i < e; ++i) q *= a.field().characteristic();
    if (a.pow(q) == a) return static_cast<unsigned>(e);
  }
  return d;
}

}  // namespace grpiso
