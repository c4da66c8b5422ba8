#include "greenberg/finite_field.hpp"

#include <map>
#include <mutex>

namespace greenberg {

namespace {

constexpr unsigned kMaxDegree = 6;
constexpr unsigned kTableLimit = 1024;  // build q*q tables up to this q

// Dense coefficient vectors over F_p, lowest degree first.
using Poly = std::vector<unsigned>;

Poly decode(unsigned p, unsigned d, ff_elt a) {
  Poly c(d, 0);
  for (unsigned i = 0; i < d && a; ++i) {
    c[i] = a % p;
    a = static_cast<ff_elt>(a / p);
  }
  return c;
}

ff_elt encode(unsigned p, const Poly& c) {
  std::uint32_t v = 0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * p + c[i];
  return static_cast<ff_elt>(v);
}

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// a mod b, b monic-normalised on the fly (lead coefficient inverted mod p).
Poly poly_mod(Poly a, const Poly& b, unsigned p) {
  trim(a);
  Poly bb = b;
  trim(bb);
  unsigned lead = bb.back();
  unsigned lead_inv = 1;
  for (unsigned x = 1; x < p; ++x)
    if (x * lead % p == 1) {
      lead_inv = x;
      break;
    }
  while (a.size() >= bb.size()) {
    unsigned f = a.back() * lead_inv % p;
    std::size_t shift = a.size() - bb.size();
    for (std::size_t i = 0; i < bb.size(); ++i)
      a[shift + i] = (a[shift + i] + p * p - f * bb[i] % p) % p;
    trim(a);
    if (a.empty()) break;
  }
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, unsigned p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  return c;
}

}  // namespace

bool FiniteField::is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned f = 2; f * f <= p; ++f)
    if (p % f == 0) return false;
  return true;
}

bool FiniteField::is_irreducible(unsigned p, const std::vector<unsigned>& coeffs) {
  // coeffs are c_0..c_{d-1} of a monic degree-d polynomial.
  const unsigned d = static_cast<unsigned>(coeffs.size());
  if (d == 0) return false;
  Poly f(coeffs.begin(), coeffs.end());
  f.push_back(1);
  if (d == 1) return true;
  if (f[0] == 0) return false;  // divisible by x
  // Monic candidate divisors of every degree 1..d-1.
  for (unsigned e = 1; e < d; ++e) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < e; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Poly g(e + 1, 0);
      std::uint64_t v = idx;
      for (unsigned i = 0; i < e; ++i) {
        g[i] = static_cast<unsigned>(v % p);
        v /= p;
      }
      g[e] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

FiniteField::FiniteField(unsigned p, unsigned d, std::vector<unsigned> modulus)
    : p_(p), d_(d), modulus_(std::move(modulus)) {
  std::uint32_t q = 1;
  for (unsigned i = 0; i < d; ++i) q *= p;
  if (q > UINT16_MAX) throw Error("field cardinality " + std::to_string(q) + " above element-code limit");
  q_ = q;

  if (q_ <= kTableLimit) {
    tabled_ = true;
    add_tab_.resize(std::size_t(q_) * q_);
    mul_tab_.resize(std::size_t(q_) * q_);
    neg_tab_.resize(q_);
    inv_tab_.assign(q_, 0);
    for (ff_elt a = 0; a < q_; ++a)
      for (ff_elt b = 0; b < q_; ++b) {
        add_tab_[std::size_t(a) * q_ + b] = add_slow(a, b);
        mul_tab_[std::size_t(a) * q_ + b] = mul_slow(a, b);
      }
    for (ff_elt a = 0; a < q_; ++a) {
      // -a is the additive inverse digit-wise.
      Poly c = decode(p_, d_, a);
      for (auto& x : c) x = (p_ - x) % p_;
      neg_tab_[a] = encode(p_, c);
    }
    for (ff_elt a = 1; a < q_; ++a)
      for (ff_elt b = 1; b < q_; ++b)
        if (mul_tab_[std::size_t(a) * q_ + b] == 1) {
          inv_tab_[a] = b;
          break;
        }
  }
}

std::shared_ptr<const FiniteField> FiniteField::make(unsigned p, unsigned d) {
  if (!is_prime(p)) throw Error("field characteristic " + std::to_string(p) + " is not prime");
  if (d == 0 || d > kMaxDegree)
    throw Error("field extension degree " + std::to_string(d) + " outside supported range 1..6");

  static std::mutex mx;
  static std::map<std::pair<unsigned, unsigned>, std::shared_ptr<const FiniteField>> cache;
  std::lock_guard<std::mutex> lock(mx);
  auto it = cache.find({p, d});
  if (it != cache.end()) return it->second;

  // Lexicographically smallest monic irreducible, coefficients compared
  // low-degree-first: iterate c_0 as the most significant odometer digit.
  std::vector<unsigned> coeffs(d, 0);
  std::uint64_t count = 1;
  for (unsigned i = 0; i < d; ++i) count *= p;
  bool found = false;
  for (std::uint64_t idx = 0; idx < count && !found; ++idx) {
    std::uint64_t v = idx;
    for (unsigned i = d; i-- > 0;) {
      coeffs[i] = static_cast<unsigned>(v % p);
      v /= p;
    }
    if (is_irreducible(p, coeffs)) found = true;
  }
  if (!found) throw InternalError("no irreducible modulus found");  // cannot happen

  auto field = std::shared_ptr<const FiniteField>(new FiniteField(p, d, coeffs));
  cache[{p, d}] = field;
  return field;
}

std::shared_ptr<const FiniteField> FiniteField::make(unsigned p, unsigned d,
                                                     const std::vector<unsigned>& modulus) {
  if (!is_prime(p)) throw Error("field characteristic " + std::to_string(p) + " is not prime");
  if (d == 0 || d > kMaxDegree)
    throw Error("field extension degree " + std::to_string(d) + " outside supported range 1..6");
  if (modulus.size() != d) throw Error("modulus must supply exactly d non-leading coefficients");
  for (unsigned c : modulus)
    if (c >= p) throw Error("modulus coefficient out of range");
  if (!is_irreducible(p, modulus)) throw Error("user-supplied modulus is reducible");
  return std::shared_ptr<const FiniteField>(new FiniteField(p, d, modulus));
}

ff_elt FiniteField::add_slow(ff_elt a, ff_elt b) const {
  Poly ca = decode(p_, d_, a), cb = decode(p_, d_, b);
  for (unsigned i = 0; i < d_; ++i) ca[i] = (ca[i] + cb[i]) % p_;
  return encode(p_, ca);
}

ff_elt FiniteField::mul_slow(ff_elt a, ff_elt b) const {
  Poly f = modulus_;
  f.push_back(1);
  Poly prod = poly_mul(decode(p_, d_, a), decode(p_, d_, b), p_);
  Poly r = poly_mod(prod, f, p_);
  r.resize(d_, 0);
  return encode(p_, r);
}

ff_elt FiniteField::add(ff_elt a, ff_elt b) const {
  return tabled_ ? add_tab_[std::size_t(a) * q_ + b] : add_slow(a, b);
}

ff_elt FiniteField::neg(ff_elt a) const {
  if (tabled_) return neg_tab_[a];
  Poly c = decode(p_, d_, a);
  for (auto& x : c) x = (p_ - x) % p_;
  return encode(p_, c);
}

ff_elt FiniteField::sub(ff_elt a, ff_elt b) const { return add(a, neg(b)); }

ff_elt FiniteField::mul(ff_elt a, ff_elt b) const {
  return tabled_ ? mul_tab_[std::size_t(a) * q_ + b] : mul_slow(a, b);
}

ff_elt FiniteField::inv(ff_elt a) const {
  if (a == 0) throw NonUnitError(element_string(a));
  if (tabled_) return inv_tab_[a];
  return pow(a, q_ - 2);
}

ff_elt FiniteField::pow(ff_elt a, std::uint64_t e) const {
  ff_elt r = 1, base = a;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

ff_elt FiniteField::frobenius_iter(ff_elt a, unsigned k) const {
  if (d_ == 1) return a;
  ff_elt r = a;
  for (unsigned i = 0; i < k % d_; ++i) r = frobenius(r);
  return r;
}

ff_elt FiniteField::frobenius_inv_iter(ff_elt a, unsigned k) const {
  if (d_ == 1) return a;
  return frobenius_iter(a, d_ - k % d_);
}

std::string FiniteField::element_string(ff_elt a) const {
  if (d_ == 1) return std::to_string(a);
  Poly c = decode(p_, d_, a);
  std::string s = "[";
  for (unsigned i = 0; i < d_; ++i) {
    if (i) s += ',';
    s += std::to_string(c[i]);
  }
  return s + "]";
}

}  // namespace greenberg
