#include "greenberg/local_ring.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

namespace greenberg {

namespace {

constexpr std::uint32_t kCardinalityLimit = 65535;  // element codes must fit u16
constexpr std::uint32_t kOpTableLimit = 1024;       // build card^2 tables up to here

std::uint64_t upow64(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

LocalRing::LocalRing(RingFamily family, Field base, unsigned length)
    : family_(family), base_(std::move(base)), length_(length) {
  const std::uint64_t card = upow64(base_->q(), length_);
  if (card > kCardinalityLimit)
    throw Error("ring cardinality " + std::to_string(card) + " above desk-scale limit " +
                std::to_string(kCardinalityLimit));
  card_ = static_cast<std::uint32_t>(card);

  if (family_ == RingFamily::Unramified) {
    if (length_ - 1 > kMaxWittDepth)
      throw Error("Witt length " + std::to_string(length_) + " above supported cap " +
                  std::to_string(kMaxWittDepth + 1));
    witt_ = WittTable::make(base_->p(), length_ - 1);
  }

  // rank = sum digit_i * q^(r-1-i): numeric order of ranks is lexicographic
  // order on digit vectors, digit 0 first.
  rank_tab_.resize(card_);
  by_rank_tab_.resize(card_);
  const unsigned q = base_->q();
  for (ring_code a = 0; a < card_; ++a) {
    std::uint32_t key = 0;
    for (unsigned i = 0; i < length_; ++i) key = key * q + digit(a, i);
    rank_tab_[a] = key;
    by_rank_tab_[key] = a;
  }

  // Operation tables need card^2 polynomial evaluations for Witt rings;
  // skip them when the table polynomials are too heavy (deep tables over
  // larger primes), leaving the exact per-operation evaluation path.
  bool affordable = true;
  if (family_ == RingFamily::Unramified) {
    std::size_t terms = 0;
    for (unsigned i = 0; i < length_; ++i)
      terms += witt_->sum(i).term_count() + witt_->product(i).term_count();
    affordable = static_cast<std::uint64_t>(terms) * card_ * card_ <= 50000000ull;
  }
  if (card_ <= kOpTableLimit && affordable) {
    tabled_ = true;
    add_tab_.resize(std::size_t(card_) * card_);
    mul_tab_.resize(std::size_t(card_) * card_);
    neg_tab_.resize(card_);
    inv_tab_.assign(card_, 0);
    for (ring_code a = 0; a < card_; ++a) neg_tab_[a] = static_cast<std::uint16_t>(neg_slow(a));
    for (ring_code a = 0; a < card_; ++a)
      for (ring_code b = 0; b < card_; ++b) {
        add_tab_[std::size_t(a) * card_ + b] = static_cast<std::uint16_t>(add_slow(a, b));
        mul_tab_[std::size_t(a) * card_ + b] = static_cast<std::uint16_t>(mul_slow(a, b));
      }
    for (ring_code a = 0; a < card_; ++a) {
      if (!is_unit(a)) continue;
      for (ring_code b = 0; b < card_; ++b)
        if (mul_tab_[std::size_t(a) * card_ + b] == 1) {
          inv_tab_[a] = static_cast<std::uint16_t>(b);
          break;
        }
    }
  }

  // Generating set of the unit group: greedy closure sweep in canonical
  // order, adding each unit not yet reachable.
  {
    std::vector<ring_code> all_units = units();
    std::sort(all_units.begin(), all_units.end(),
              [&](ring_code a, ring_code b) { return rank(a) < rank(b); });
    std::set<ring_code> closed{one()};
    auto close = [&] {
      std::vector<ring_code> frontier(closed.begin(), closed.end());
      for (std::size_t i = 0; i < frontier.size(); ++i)
        for (ring_code g : unit_gens_) {
          ring_code y = mul(frontier[i], g);
          if (closed.insert(y).second) frontier.push_back(y);
        }
    };
    for (ring_code u : all_units) {
      if (closed.size() == unit_count()) break;
      if (closed.count(u)) continue;
      unit_gens_.push_back(u);
      close();
    }
  }

  // Additive p-group generators: one per (digit position, F_p-basis vector).
  for (unsigned l = 0; l < length_; ++l)
    for (unsigned j = 0; j < base_->degree(); ++j) {
      ff_elt basis = static_cast<ff_elt>(upow64(base_->p(), j));
      additive_gens_.push_back(static_cast<ring_code>(std::uint64_t(basis) * upow64(q, l)));
    }
}

Ring LocalRing::make(RingFamily family, Field base, unsigned length) {
  if (length < 1) throw Error("ring length must be at least 1");
  // the interning key carries the modulus: fields over the same (p, d) but
  // with a user-chosen modulus are different rings
  static std::mutex mx;
  static std::map<std::tuple<int, unsigned, unsigned, std::vector<unsigned>, unsigned>, Ring>
      cache;
  std::lock_guard<std::mutex> lock(mx);
  auto key = std::make_tuple(static_cast<int>(family), base->p(), base->degree(),
                             base->modulus(), length);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  Ring ring(new LocalRing(family, std::move(base), length));
  cache[key] = ring;
  return ring;
}

// --- descriptor parsing ---

namespace {

struct Cursor {
  std::string_view s;
  std::size_t pos = 0;
  bool eof() const { return pos >= s.size(); }
  char peek() const { return eof() ? '\0' : s[pos]; }
  void expect(std::string_view lit) {
    if (s.substr(pos, lit.size()) != lit)
      throw ParseError("expected \"" + std::string(lit) + "\"",
                       std::string(s.substr(pos, std::max<std::size_t>(lit.size(), 1))), pos);
    pos += lit.size();
  }
  std::uint64_t number() {
    if (eof() || !isdigit(static_cast<unsigned char>(peek())))
      throw ParseError("expected a number", std::string(s.substr(pos, 1)), pos);
    std::uint64_t v = 0;
    while (!eof() && isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (s[pos] - '0');
      if (v > 100000000ull) throw ParseError("number too large", std::string(s.substr(pos, 1)), pos);
      ++pos;
    }
    return v;
  }
};

// q = p^d with p the smallest prime factor; rejects non prime powers.
void factor_prime_power(std::uint64_t q, std::size_t pos, const std::string& token, unsigned& p,
                        unsigned& d) {
  if (q < 2) throw ParseError("prime power must be at least 2", token, pos);
  unsigned f = 2;
  while (q % f != 0) ++f;
  unsigned e = 0;
  std::uint64_t v = q;
  while (v % f == 0) {
    v /= f;
    ++e;
  }
  if (v != 1) throw ParseError("not a prime power", token, pos);
  p = f;
  d = e;
}

}  // namespace

Ring LocalRing::parse(std::string_view spec) {
  for (std::size_t i = 0; i < spec.size(); ++i)
    if (isspace(static_cast<unsigned char>(spec[i])))
      throw ParseError("ring descriptor must be whitespace-free", std::string(spec.substr(i, 1)), i);
  Cursor c{spec};
  if (c.eof()) throw ParseError("empty ring descriptor", "", 0);

  if (c.peek() == 'F') {
    c.expect("F");
    std::size_t qpos = c.pos;
    std::uint64_t q = c.number();
    unsigned p, d;
    factor_prime_power(q, qpos, std::to_string(q), p, d);
    c.expect("[t]/t^");
    std::uint64_t r = c.number();
    if (!c.eof()) throw ParseError("trailing characters", std::string(c.s.substr(c.pos)), c.pos);
    if (r < 1) throw ParseError("length must be at least 1", std::to_string(r), qpos);
    return make(RingFamily::EqualChar, FiniteField::make(p, d), static_cast<unsigned>(r));
  }
  if (c.peek() == 'W') {
    c.expect("W");
    std::uint64_t r = c.number();
    c.expect("(F");
    std::size_t qpos = c.pos;
    std::uint64_t q = c.number();
    c.expect(")");
    if (!c.eof()) throw ParseError("trailing characters", std::string(c.s.substr(c.pos)), c.pos);
    unsigned p, d;
    factor_prime_power(q, qpos, std::to_string(q), p, d);
    if (r < 1) throw ParseError("length must be at least 1", std::to_string(r), 1);
    return make(RingFamily::Unramified, FiniteField::make(p, d), static_cast<unsigned>(r));
  }
  if (c.peek() == 'Z') {
    c.expect("Z/");
    std::size_t npos = c.pos;
    std::uint64_t n = c.number();
    if (!c.eof() && c.peek() == '^') {
      // Z/<p>^<r>
      c.expect("^");
      std::uint64_t r = c.number();
      if (!c.eof()) throw ParseError("trailing characters", std::string(c.s.substr(c.pos)), c.pos);
      if (!FiniteField::is_prime(static_cast<unsigned>(n)))
        throw ParseError("base of Z/p^r must be prime", std::to_string(n), npos);
      return make(RingFamily::Unramified, FiniteField::make(static_cast<unsigned>(n), 1),
                  static_cast<unsigned>(r));
    }
    if (!c.eof()) throw ParseError("trailing characters", std::string(c.s.substr(c.pos)), c.pos);
    unsigned p, r;
    factor_prime_power(n, npos, std::to_string(n), p, r);
    return make(RingFamily::Unramified, FiniteField::make(p, 1), r);
  }
  throw ParseError("unknown ring family", std::string(spec.substr(0, 1)), 0);
}

std::string LocalRing::spec_string() const {
  if (family_ == RingFamily::EqualChar)
    return "F" + std::to_string(base_->q()) + "[t]/t^" + std::to_string(length_);
  if (base_->degree() == 1)
    return "Z/" + std::to_string(upow64(base_->p(), length_));
  return "W" + std::to_string(length_) + "(F" + std::to_string(base_->q()) + ")";
}

// --- arithmetic ---

ff_elt LocalRing::digit(ring_code a, unsigned i) const {
  const unsigned q = base_->q();
  for (unsigned k = 0; k < i; ++k) a /= q;
  return static_cast<ff_elt>(a % q);
}

std::vector<ff_elt> LocalRing::digits(ring_code a) const {
  std::vector<ff_elt> out(length_);
  const unsigned q = base_->q();
  for (unsigned i = 0; i < length_; ++i) {
    out[i] = static_cast<ff_elt>(a % q);
    a /= q;
  }
  return out;
}

ring_code LocalRing::from_digits(const std::vector<ff_elt>& ds) const {
  if (ds.size() != length_) throw MismatchError("digit vector length mismatch");
  std::uint64_t v = 0;
  const unsigned q = base_->q();
  for (std::size_t i = ds.size(); i-- > 0;) {
    if (ds[i] >= q) throw MismatchError("digit out of range");
    v = v * q + ds[i];
  }
  return static_cast<ring_code>(v);
}

ring_code LocalRing::add_slow(ring_code a, ring_code b) const {
  const auto da = digits(a), db = digits(b);
  std::vector<ff_elt> out(length_);
  if (family_ == RingFamily::EqualChar) {
    for (unsigned i = 0; i < length_; ++i) out[i] = base_->add(da[i], db[i]);
  } else {
    std::vector<ff_elt> vals(IntegerPolynomial::kVars, 0);
    for (unsigned i = 0; i < length_; ++i) {
      vals[IntegerPolynomial::x_index(i)] = da[i];
      vals[IntegerPolynomial::y_index(i)] = db[i];
    }
    for (unsigned i = 0; i < length_; ++i) out[i] = witt_->sum(i).eval_field(*base_, vals);
  }
  return from_digits(out);
}

ring_code LocalRing::mul_slow(ring_code a, ring_code b) const {
  const auto da = digits(a), db = digits(b);
  std::vector<ff_elt> out(length_);
  if (family_ == RingFamily::EqualChar) {
    for (unsigned k = 0; k < length_; ++k) {
      ff_elt acc = 0;
      for (unsigned i = 0; i <= k; ++i) acc = base_->add(acc, base_->mul(da[i], db[k - i]));
      out[k] = acc;
    }
  } else {
    std::vector<ff_elt> vals(IntegerPolynomial::kVars, 0);
    for (unsigned i = 0; i < length_; ++i) {
      vals[IntegerPolynomial::x_index(i)] = da[i];
      vals[IntegerPolynomial::y_index(i)] = db[i];
    }
    for (unsigned i = 0; i < length_; ++i) out[i] = witt_->product(i).eval_field(*base_, vals);
  }
  return from_digits(out);
}

ring_code LocalRing::neg_slow(ring_code a) const {
  const auto da = digits(a);
  std::vector<ff_elt> out(length_);
  if (family_ == RingFamily::EqualChar || base_->p() != 2) {
    for (unsigned i = 0; i < length_; ++i) out[i] = base_->neg(da[i]);
  } else {
    std::vector<ff_elt> vals(IntegerPolynomial::kVars, 0);
    for (unsigned i = 0; i < length_; ++i) vals[IntegerPolynomial::x_index(i)] = da[i];
    for (unsigned i = 0; i < length_; ++i) out[i] = witt_->negation(i).eval_field(*base_, vals);
  }
  return from_digits(out);
}

ring_code LocalRing::add(ring_code a, ring_code b) const {
  return tabled_ ? add_tab_[std::size_t(a) * card_ + b] : add_slow(a, b);
}

ring_code LocalRing::neg(ring_code a) const { return tabled_ ? neg_tab_[a] : neg_slow(a); }

ring_code LocalRing::sub(ring_code a, ring_code b) const { return add(a, neg(b)); }

ring_code LocalRing::mul(ring_code a, ring_code b) const {
  return tabled_ ? mul_tab_[std::size_t(a) * card_ + b] : mul_slow(a, b);
}

ring_code LocalRing::inv_unit(ring_code a) const {
  if (!is_unit(a)) throw NonUnitError(element_string(a));
  if (tabled_) return inv_tab_[a];
  return pow(a, unit_count() - 1);
}

ring_code LocalRing::pow(ring_code a, std::uint64_t e) const {
  ring_code r = one(), base = a;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

Ring LocalRing::reduced_ring(unsigned r2) const {
  if (r2 < 1 || r2 > length_)
    throw Error("reduction length " + std::to_string(r2) + " out of range 1.." +
                std::to_string(length_));
  return make(family_, base_, r2);
}

ring_code LocalRing::reduce(ring_code a, unsigned r2) const {
  if (r2 < 1 || r2 > length_)
    throw Error("reduction length " + std::to_string(r2) + " out of range 1.." +
                std::to_string(length_));
  return a % static_cast<ring_code>(upow64(base_->q(), r2));
}

ring_code LocalRing::pi() const { return length_ >= 2 ? base_->q() : 0; }

ring_code LocalRing::pi_power(unsigned l) const {
  if (l >= length_) return 0;
  return static_cast<ring_code>(upow64(base_->q(), l));
}

ring_code LocalRing::layer_embed(unsigned l, ff_elt c) const {
  if (l == 0) return teichmuller(c);
  return mul(pi_power(l), teichmuller(c));
}

ff_elt LocalRing::layer_coord(unsigned l, ring_code a) const {
  ff_elt d = digit(a, l);
  if (family_ == RingFamily::Unramified && base_->degree() > 1)
    return base_->frobenius_inv_iter(d, l);  // pi^l twists the coordinate by Frobenius^l
  return d;
}

std::uint32_t LocalRing::rank(ring_code a) const { return rank_tab_[a]; }

ring_code LocalRing::by_rank(std::uint32_t rank) const { return by_rank_tab_[rank]; }

int LocalRing::cmp(ring_code a, ring_code b) const {
  const std::uint32_t ra = rank_tab_[a], rb = rank_tab_[b];
  return ra < rb ? -1 : (ra > rb ? 1 : 0);
}

std::vector<ring_code> LocalRing::units() const {
  std::vector<ring_code> out;
  out.reserve(unit_count());
  for (ring_code a = 0; a < card_; ++a)
    if (is_unit(a)) out.push_back(a);
  return out;
}

std::string LocalRing::element_string(ring_code a) const {
  static const char* digits36 = "0123456789abcdefghijklmnopqrstuvwxyz";
  const auto ds = digits(a);
  std::string s;
  if (base_->q() <= 36) {
    for (ff_elt d : ds) s += digits36[d];
  } else {
    for (std::size_t i = 0; i < ds.size(); ++i) {
      if (i) s += '.';
      s += std::to_string(ds[i]);
    }
  }
  return s;
}

}  // namespace greenberg
