#include "greenberg/witt.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <unordered_map>

#include "greenberg/rng.hpp"

namespace greenberg {

namespace {

using Mono = IntegerPolynomial::Monomial;

unsigned total_degree(const Mono& m) {
  unsigned d = 0;
  for (auto e : m) d += e;
  return d;
}

// Exponents stay below p^depth <= 625, so 12 bits per variable pack the
// whole monomial into one 128-bit key for fast accumulation.
using PackedMono = unsigned __int128;

PackedMono pack(const Mono& m) {
  PackedMono key = 0;
  for (unsigned i = 0; i < IntegerPolynomial::kVars; ++i)
    key |= static_cast<PackedMono>(m[i] & 0xFFF) << (12 * i);
  return key;
}

Mono unpack(PackedMono key) {
  Mono m{};
  for (unsigned i = 0; i < IntegerPolynomial::kVars; ++i)
    m[i] = static_cast<std::uint16_t>((key >> (12 * i)) & 0xFFF);
  return m;
}

struct PackedHash {
  std::size_t operator()(PackedMono k) const {
    std::uint64_t lo = static_cast<std::uint64_t>(k);
    std::uint64_t hi = static_cast<std::uint64_t>(k >> 64);
    std::uint64_t h = lo * 0x9e3779b97f4a7c15ull ^ (hi + 0x9e3779b97f4a7c15ull + (lo << 6));
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

}  // namespace

// Descending graded-lex: higher total degree first; ties broken by the
// exponent tuple (X0, X1, .., Y0, ..) compared lexicographically, larger
// exponents first.
bool IntegerPolynomial::mono_less(const Mono& a, const Mono& b) {
  unsigned da = total_degree(a), db = total_degree(b);
  if (da != db) return da > db;
  return a > b;
}

IntegerPolynomial IntegerPolynomial::from_map(std::vector<Term>&& raw) {
  std::sort(raw.begin(), raw.end(),
            [](const Term& s, const Term& t) { return mono_less(s.mono, t.mono); });
  std::vector<Term> out;
  out.reserve(raw.size());
  for (auto& t : raw) {
    if (t.coeff == 0) continue;
    if (!out.empty() && out.back().mono == t.mono)
      out.back().coeff += t.coeff;
    else
      out.push_back(std::move(t));
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const Term& t) { return t.coeff == 0; }),
            out.end());
  return IntegerPolynomial(std::move(out));
}

IntegerPolynomial IntegerPolynomial::constant(const mpz_class& c) {
  if (c == 0) return {};
  Mono m{};
  return IntegerPolynomial({Term{m, c}});
}

IntegerPolynomial IntegerPolynomial::x_var(unsigned i, unsigned exponent) {
  Mono m{};
  m[x_index(i)] = static_cast<std::uint16_t>(exponent);
  return IntegerPolynomial({Term{m, 1}});
}

IntegerPolynomial IntegerPolynomial::y_var(unsigned i, unsigned exponent) {
  Mono m{};
  m[y_index(i)] = static_cast<std::uint16_t>(exponent);
  return IntegerPolynomial({Term{m, 1}});
}

IntegerPolynomial IntegerPolynomial::operator+(const IntegerPolynomial& o) const {
  std::vector<Term> raw;
  raw.reserve(terms_.size() + o.terms_.size());
  raw.insert(raw.end(), terms_.begin(), terms_.end());
  raw.insert(raw.end(), o.terms_.begin(), o.terms_.end());
  return from_map(std::move(raw));
}

IntegerPolynomial IntegerPolynomial::operator-() const {
  std::vector<Term> raw = terms_;
  for (auto& t : raw) t.coeff = -t.coeff;
  return IntegerPolynomial(std::move(raw));
}

IntegerPolynomial IntegerPolynomial::operator-(const IntegerPolynomial& o) const {
  return *this + (-o);
}

IntegerPolynomial IntegerPolynomial::operator*(const IntegerPolynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  // exponent sums stay within the 12-bit packing (powers are capped by the
  // depth limit); accumulate in place to avoid temporary big integers
  std::unordered_map<PackedMono, mpz_class, PackedHash> acc;
  acc.reserve(terms_.size() + o.terms_.size());
  std::vector<PackedMono> right(o.terms_.size());
  for (std::size_t j = 0; j < o.terms_.size(); ++j) right[j] = pack(o.terms_[j].mono);
  for (const auto& s : terms_) {
    const PackedMono base = pack(s.mono);
    for (std::size_t j = 0; j < o.terms_.size(); ++j) {
      mpz_class& slot = acc[base + right[j]];
      mpz_addmul(slot.get_mpz_t(), s.coeff.get_mpz_t(), o.terms_[j].coeff.get_mpz_t());
    }
  }
  std::vector<Term> raw;
  raw.reserve(acc.size());
  for (auto& [key, c] : acc) {
    if (c == 0) continue;
    raw.push_back(Term{unpack(key), std::move(c)});
  }
  std::sort(raw.begin(), raw.end(),
            [](const Term& s, const Term& t) { return mono_less(s.mono, t.mono); });
  return IntegerPolynomial(std::move(raw));
}

IntegerPolynomial IntegerPolynomial::pow(std::uint64_t e) const {
  IntegerPolynomial r = constant(1), base = *this;
  while (e) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

IntegerPolynomial IntegerPolynomial::scaled(const mpz_class& c) const {
  if (c == 0) return {};
  std::vector<Term> raw = terms_;
  for (auto& t : raw) t.coeff *= c;
  return IntegerPolynomial(std::move(raw));
}

IntegerPolynomial IntegerPolynomial::divided_exact(const mpz_class& c) const {
  std::vector<Term> raw = terms_;
  for (auto& t : raw) {
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), t.coeff.get_mpz_t(), c.get_mpz_t());
    if (r != 0)
      throw InternalError("non-exact division in ghost recursion; coefficient " +
                          t.coeff.get_str() + " not divisible by " + c.get_str());
    t.coeff = q;
  }
  return IntegerPolynomial(std::move(raw));
}

IntegerPolynomial IntegerPolynomial::substituted(
    const std::vector<const IntegerPolynomial*>& args) const {
  // Cache powers of each substituted argument.
  std::vector<std::map<unsigned, IntegerPolynomial>> powers(kVars);
  auto arg_power = [&](unsigned var, unsigned e) -> const IntegerPolynomial& {
    auto it = powers[var].find(e);
    if (it != powers[var].end()) return it->second;
    return powers[var].emplace(e, args[var]->pow(e)).first->second;
  };

  IntegerPolynomial out;
  for (const auto& t : terms_) {
    IntegerPolynomial factor = constant(t.coeff);
    for (unsigned v = 0; v < kVars; ++v) {
      if (t.mono[v] == 0) continue;
      if (v < args.size() && args[v] != nullptr)
        factor = factor * arg_power(v, t.mono[v]);
      else {
        Mono m{};
        m[v] = t.mono[v];
        factor = factor * IntegerPolynomial({Term{m, 1}});
      }
    }
    out = out + factor;
  }
  return out;
}

mpz_class IntegerPolynomial::eval_int(const std::vector<mpz_class>& values) const {
  // exponents repeat across terms; cache values[i]^e per call
  std::unordered_map<std::uint32_t, mpz_class> powers;
  auto var_power = [&](unsigned i, unsigned e) -> const mpz_class& {
    const std::uint32_t key = i << 16 | e;
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    mpz_class p;
    mpz_pow_ui(p.get_mpz_t(), values.at(i).get_mpz_t(), e);
    return powers.emplace(key, std::move(p)).first->second;
  };
  mpz_class total = 0, v;
  for (const auto& t : terms_) {
    v = t.coeff;
    for (unsigned i = 0; i < kVars; ++i)
      if (t.mono[i]) v *= var_power(i, t.mono[i]);
    total += v;
  }
  return total;
}

ff_elt IntegerPolynomial::eval_field(const FiniteField& k, const std::vector<ff_elt>& values) const {
  ff_elt total = 0;
  for (const auto& t : terms_) {
    mpz_class cmod = t.coeff % k.p();
    if (cmod < 0) cmod += k.p();
    ff_elt v = k.from_int(cmod.get_ui());
    for (unsigned i = 0; i < kVars; ++i)
      if (t.mono[i]) v = k.mul(v, k.pow(values.at(i), t.mono[i]));
    total = k.add(total, v);
  }
  return total;
}

std::string IntegerPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    mpz_class c = t.coeff;
    bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) out += "-";
      first = false;
    } else {
      out += negative ? " - " : " + ";
    }
    std::string vars;
    for (unsigned i = 0; i < kVars; ++i) {
      if (t.mono[i] == 0) continue;
      if (!vars.empty()) vars += "*";
      const unsigned half = kMaxWittDepth + 1;
      vars += (i < half ? "X" + std::to_string(i) : "Y" + std::to_string(i - half));
      if (t.mono[i] > 1) vars += "^" + std::to_string(t.mono[i]);
    }
    if (vars.empty())
      out += c.get_str();
    else if (c == 1)
      out += vars;
    else
      out += c.get_str() + "*" + vars;
  }
  return out;
}

std::vector<mpz_class> ghost(const std::vector<mpz_class>& coords, unsigned p) {
  std::vector<mpz_class> w(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    mpz_class total = 0;
    mpz_class pj = 1;
    for (std::size_t j = 0; j <= i; ++j) {
      mpz_class term;
      std::uint64_t e = 1;
      for (std::size_t k = 0; k < i - j; ++k) e *= p;
      mpz_pow_ui(term.get_mpz_t(), coords[j].get_mpz_t(), e);
      total += pj * term;
      pj *= p;
    }
    w[i] = total;
  }
  return w;
}

namespace {

// w_i in the X (or Y) variables as a polynomial.
IntegerPolynomial ghost_poly(unsigned i, unsigned p, bool y_side) {
  IntegerPolynomial w;
  mpz_class pj = 1;
  for (unsigned j = 0; j <= i; ++j) {
    std::uint64_t e = 1;
    for (unsigned k = 0; k < i - j; ++k) e *= p;
    IntegerPolynomial var = y_side ? IntegerPolynomial::y_var(j, static_cast<unsigned>(e))
                                   : IntegerPolynomial::x_var(j, static_cast<unsigned>(e));
    w = w + var.scaled(pj);
    pj *= p;
  }
  return w;
}

std::uint64_t upow(unsigned base, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= base;
  return r;
}

}  // namespace

WittTable::WittTable(unsigned p, unsigned depth) : p_(p), depth_(depth) {
  // Powers S_j^{p^{i-j}} recur across levels; cache them.
  std::vector<std::map<std::uint64_t, IntegerPolynomial>> s_pows(depth + 1), p_pows(depth + 1),
      i_pows(depth + 1);
  auto cached_pow = [](std::vector<std::map<std::uint64_t, IntegerPolynomial>>& cache,
                       const std::vector<IntegerPolynomial>& polys, unsigned j,
                       std::uint64_t e) -> const IntegerPolynomial& {
    auto it = cache[j].find(e);
    if (it != cache[j].end()) return it->second;
    return cache[j].emplace(e, polys[j].pow(e)).first->second;
  };

  mpz_class p_i = 1;
  for (unsigned i = 0; i <= depth; ++i) {
    IntegerPolynomial ws = ghost_poly(i, p, false) + ghost_poly(i, p, true);
    IntegerPolynomial wp = ghost_poly(i, p, false) * ghost_poly(i, p, true);
    IntegerPolynomial wi = -ghost_poly(i, p, false);
    mpz_class pj = 1;
    for (unsigned j = 0; j < i; ++j) {
      const std::uint64_t e = upow(p, i - j);
      ws = ws - cached_pow(s_pows, S_, j, e).scaled(pj);
      wp = wp - cached_pow(p_pows, P_, j, e).scaled(pj);
      wi = wi - cached_pow(i_pows, I_, j, e).scaled(pj);
      pj *= p;
    }
    S_.push_back(ws.divided_exact(p_i));
    P_.push_back(wp.divided_exact(p_i));
    I_.push_back(wi.divided_exact(p_i));
    p_i *= p;
  }
}

std::shared_ptr<const WittTable> WittTable::make(unsigned p, unsigned depth) {
  if (!FiniteField::is_prime(p)) throw Error("Witt table characteristic " + std::to_string(p) + " is not prime");
  if (depth > kMaxWittDepth)
    throw Error("Witt depth " + std::to_string(depth) + " above supported cap " +
                std::to_string(kMaxWittDepth));

  static std::mutex mx;
  static std::map<std::pair<unsigned, unsigned>, std::shared_ptr<const WittTable>> cache;
  {
    std::lock_guard<std::mutex> lock(mx);
    auto it = cache.find({p, depth});
    if (it != cache.end()) return it->second;
  }
  auto table = std::shared_ptr<const WittTable>(new WittTable(p, depth));
  GhostCheck check = table->verify_ghost_identities();
  if (!check.ok) throw InternalError("ghost identity failed at construction: " + check.first_failure);
  std::lock_guard<std::mutex> lock(mx);
  auto [it, inserted] = cache.emplace(std::make_pair(p, depth), table);
  return it->second;
}

GhostCheck WittTable::verify_ghost_identities() const {
  GhostCheck check;
  auto fail = [&](const std::string& what) {
    if (check.ok) {
      check.ok = false;
      check.first_failure = what;
    }
  };

  // Symbolic: w_i applied to the family equals the ghost of the operands.
  for (unsigned i = 0; i <= depth_ && check.ok; ++i) {
    IntegerPolynomial lhs_s, lhs_p, lhs_i;
    mpz_class pj = 1;
    for (unsigned j = 0; j <= i; ++j) {
      const std::uint64_t e = upow(p_, i - j);
      lhs_s = lhs_s + S_[j].pow(e).scaled(pj);
      lhs_p = lhs_p + P_[j].pow(e).scaled(pj);
      lhs_i = lhs_i + I_[j].pow(e).scaled(pj);
      pj *= p_;
    }
    if (lhs_s != ghost_poly(i, p_, false) + ghost_poly(i, p_, true))
      fail("w_" + std::to_string(i) + "(S) != w_i(X) + w_i(Y) for p=" + std::to_string(p_));
    if (lhs_p != ghost_poly(i, p_, false) * ghost_poly(i, p_, true))
      fail("w_" + std::to_string(i) + "(P) != w_i(X) * w_i(Y) for p=" + std::to_string(p_));
    if (lhs_i != -ghost_poly(i, p_, false))
      fail("w_" + std::to_string(i) + "(I) != -w_i(X) for p=" + std::to_string(p_));
  }
  if (!check.ok) return check;

  // Numeric spot check at random integer points, through the integer ghost
  // map rather than the polynomial comparison above.
  Rng rng(0x9e3779b97f4a7c15ull);
  for (unsigned trial = 0; trial < 100 && check.ok; ++trial) {
    std::vector<mpz_class> xs(depth_ + 1), ys(depth_ + 1), vals(IntegerPolynomial::kVars, 0);
    for (unsigned j = 0; j <= depth_; ++j) {
      xs[j] = static_cast<long>(rng.below(19)) - 9;
      ys[j] = static_cast<long>(rng.below(19)) - 9;
      vals[IntegerPolynomial::x_index(j)] = xs[j];
      vals[IntegerPolynomial::y_index(j)] = ys[j];
    }
    std::vector<mpz_class> s_out(depth_ + 1), p_out(depth_ + 1), i_out(depth_ + 1);
    for (unsigned j = 0; j <= depth_; ++j) {
      s_out[j] = S_[j].eval_int(vals);
      p_out[j] = P_[j].eval_int(vals);
      i_out[j] = I_[j].eval_int(vals);
    }
    auto gx = ghost(xs, p_), gy = ghost(ys, p_);
    auto gs = ghost(s_out, p_), gp = ghost(p_out, p_), gi = ghost(i_out, p_);
    for (unsigned j = 0; j <= depth_; ++j) {
      if (gs[j] != gx[j] + gy[j]) fail("numeric ghost mismatch in S at level " + std::to_string(j));
      if (gp[j] != gx[j] * gy[j]) fail("numeric ghost mismatch in P at level " + std::to_string(j));
      if (gi[j] != -gx[j]) fail("numeric ghost mismatch in I at level " + std::to_string(j));
    }
  }
  return check;
}

std::string WittTable::dump() const {
  std::string out;
  for (unsigned i = 0; i <= depth_; ++i)
    out += "S" + std::to_string(i) + " = " + S_[i].to_string() + "\n";
  for (unsigned i = 0; i <= depth_; ++i)
    out += "P" + std::to_string(i) + " = " + P_[i].to_string() + "\n";
  for (unsigned i = 0; i <= depth_; ++i)
    out += "I" + std::to_string(i) + " = " + I_[i].to_string() + "\n";
  return out;
}

}  // namespace greenberg
