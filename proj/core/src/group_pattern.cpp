#include "greenberg/group_pattern.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace greenberg {

namespace {

constexpr std::uint64_t kRawScanCap = 1ull << 33;

mpz_class mpz_pow(std::uint64_t base, std::uint64_t e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

mpz_class gl_order(unsigned q, unsigned r, unsigned n) {
  // q^{(r-1) n^2} * prod_{i<n} (q^n - q^i)
  mpz_class total = mpz_pow(q, std::uint64_t(r - 1) * n * n);
  mpz_class qn = mpz_pow(q, n);
  for (unsigned i = 0; i < n; ++i) total *= qn - mpz_pow(q, i);
  return total;
}

mpz_class factorial(unsigned n) {
  mpz_class r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace

GroupPattern::GroupPattern(PatternKind k, Ambient a, Ring ring, unsigned n)
    : kind_(k), ambient_(a), n_(n), ring_(std::move(ring)) {
  if (n < 1) throw Error("group dimension must be at least 1");
}

GroupPattern GroupPattern::general_linear(Ring ring, unsigned n) {
  return GroupPattern(PatternKind::GL, Ambient::GL, std::move(ring), n);
}

GroupPattern GroupPattern::special_linear(Ring ring, unsigned n) {
  return GroupPattern(PatternKind::SL, Ambient::SL, std::move(ring), n);
}

GroupPattern GroupPattern::ambient_group(Ambient a, Ring ring, unsigned n) {
  return a == Ambient::GL ? general_linear(std::move(ring), n) : special_linear(std::move(ring), n);
}

GroupPattern GroupPattern::diagonal_torus(Ambient a, Ring ring, unsigned n) {
  return GroupPattern(PatternKind::DiagonalTorus, a, std::move(ring), n);
}

GroupPattern GroupPattern::std_borel(Ambient a, Ring ring, unsigned n) {
  return GroupPattern(PatternKind::StdBorel, a, std::move(ring), n);
}

GroupPattern GroupPattern::std_unipotent(Ambient a, Ring ring, unsigned n) {
  return GroupPattern(PatternKind::StdUnipotent, a, std::move(ring), n);
}

GroupPattern GroupPattern::std_parabolic(Ambient a, Ring ring, unsigned n,
                                         std::vector<unsigned> shape) {
  unsigned total = std::accumulate(shape.begin(), shape.end(), 0u);
  if (shape.empty() || total != n)
    throw Error("parabolic shape must be a composition of n");
  for (unsigned b : shape)
    if (b == 0) throw Error("parabolic shape blocks must be positive");
  GroupPattern p(PatternKind::StdParabolic, a, std::move(ring), n);
  p.shape_ = std::move(shape);
  return p;
}

GroupPattern GroupPattern::monomial(Ambient a, Ring ring, unsigned n) {
  return GroupPattern(PatternKind::Monomial, a, std::move(ring), n);
}

GroupPattern GroupPattern::congruence_kernel(Ambient a, Ring ring, unsigned n, unsigned level) {
  if (level < 1 || level > ring->length())
    throw Error("congruence level " + std::to_string(level) + " out of range 1.." +
                std::to_string(ring->length()));
  GroupPattern p(PatternKind::CongruenceKernel, a, std::move(ring), n);
  p.level_ = level;
  return p;
}

GroupPattern GroupPattern::full_preimage(Ambient a, Ring ring, GroupPattern residue) {
  if (residue.ring() != ring->reduced_ring(1).get())
    throw MismatchError("full preimage needs a residue-field pattern of the same ring");
  if (residue.ambient() != a) throw MismatchError("full preimage residue pattern ambient mismatch");
  GroupPattern p(PatternKind::FullPreimage, a, std::move(ring), residue.dim());
  p.residue_ = std::make_shared<const GroupPattern>(std::move(residue));
  return p;
}

const GroupPattern& GroupPattern::residue_pattern() const {
  if (!residue_) throw Error("pattern has no residue component");
  return *residue_;
}

GroupPattern GroupPattern::residue_version() const {
  if (kind_ == PatternKind::FullPreimage) return *residue_;
  GroupPattern p(kind_, ambient_, ring_->reduced_ring(1), n_);
  p.shape_ = shape_;
  p.level_ = kind_ == PatternKind::CongruenceKernel ? 1 : 0;
  return p;
}

GroupPattern GroupPattern::ambient_pattern() const { return ambient_group(ambient_, ring_, n_); }

bool GroupPattern::block_upper_ok(const Matrix& m) const {
  // zero below the block diagonal
  std::vector<unsigned> block_of(n_);
  unsigned row = 0;
  for (unsigned bi = 0; bi < shape_.size(); ++bi)
    for (unsigned i = 0; i < shape_[bi]; ++i) block_of[row++] = bi;
  for (unsigned i = 0; i < n_; ++i)
    for (unsigned j = 0; j < n_; ++j)
      if (block_of[i] > block_of[j] && m.at(i, j) != 0) return false;
  return true;
}

bool GroupPattern::contains(const Matrix& m) const {
  if (m.ring() != ring_.get() || m.dim() != n_)
    throw MismatchError("membership test against a matrix from a different group");
  const LocalRing& A = *ring_;

  auto ambient_ok = [&] {
    const ring_code d = det(m);
    return ambient_ == Ambient::GL ? A.is_unit(d) : d == A.one();
  };

  switch (kind_) {
    case PatternKind::GL:
    case PatternKind::SL:
      return ambient_ok();
    case PatternKind::DiagonalTorus: {
      for (unsigned i = 0; i < n_; ++i)
        for (unsigned j = 0; j < n_; ++j) {
          if (i == j && !A.is_unit(m.at(i, j))) return false;
          if (i != j && m.at(i, j) != 0) return false;
        }
      return ambient_ == Ambient::GL || ambient_ok();
    }
    case PatternKind::StdBorel: {
      for (unsigned i = 0; i < n_; ++i) {
        if (!A.is_unit(m.at(i, i))) return false;
        for (unsigned j = 0; j < i; ++j)
          if (m.at(i, j) != 0) return false;
      }
      return ambient_ == Ambient::GL || ambient_ok();
    }
    case PatternKind::StdUnipotent: {
      for (unsigned i = 0; i < n_; ++i) {
        if (m.at(i, i) != A.one()) return false;
        for (unsigned j = 0; j < i; ++j)
          if (m.at(i, j) != 0) return false;
      }
      return true;
    }
    case PatternKind::StdParabolic:
      return block_upper_ok(m) && ambient_ok();
    case PatternKind::Monomial: {
      std::vector<bool> col_used(n_, false);
      for (unsigned i = 0; i < n_; ++i) {
        unsigned nonzero = n_;
        for (unsigned j = 0; j < n_; ++j) {
          if (m.at(i, j) == 0) continue;
          if (nonzero != n_) return false;  // second nonzero in row
          nonzero = j;
        }
        if (nonzero == n_ || !A.is_unit(m.at(i, nonzero)) || col_used[nonzero]) return false;
        col_used[nonzero] = true;
      }
      return ambient_ == Ambient::GL || ambient_ok();
    }
    case PatternKind::CongruenceKernel: {
      if (!m.reduced(level_).is_identity()) return false;
      return ambient_ == Ambient::GL || ambient_ok();
    }
    case PatternKind::FullPreimage:
      return ambient_ok() && residue_->contains(m.reduced(1));
  }
  throw InternalError("unhandled pattern kind");
}

mpz_class GroupPattern::order() const {
  const unsigned q = ring_->residue_q();
  const unsigned r = ring_->length();
  const mpz_class units = ring_->unit_count();
  const mpz_class card = ring_->cardinality();

  switch (kind_) {
    case PatternKind::GL:
      return gl_order(q, r, n_);
    case PatternKind::SL:
      return gl_order(q, r, n_) / units;
    case PatternKind::DiagonalTorus: {
      mpz_class t;
      mpz_pow_ui(t.get_mpz_t(), units.get_mpz_t(), ambient_ == Ambient::GL ? n_ : n_ - 1);
      return t;
    }
    case PatternKind::StdBorel: {
      mpz_class t;
      mpz_pow_ui(t.get_mpz_t(), units.get_mpz_t(), ambient_ == Ambient::GL ? n_ : n_ - 1);
      mpz_class u;
      mpz_pow_ui(u.get_mpz_t(), card.get_mpz_t(), std::uint64_t(n_) * (n_ - 1) / 2);
      return t * u;
    }
    case PatternKind::StdUnipotent: {
      mpz_class u;
      mpz_pow_ui(u.get_mpz_t(), card.get_mpz_t(), std::uint64_t(n_) * (n_ - 1) / 2);
      return u;
    }
    case PatternKind::StdParabolic: {
      mpz_class total = 1;
      std::uint64_t cross = 0;
      for (std::size_t i = 0; i < shape_.size(); ++i) {
        total *= gl_order(q, r, shape_[i]);
        for (std::size_t j = i + 1; j < shape_.size(); ++j)
          cross += std::uint64_t(shape_[i]) * shape_[j];
      }
      mpz_class u;
      mpz_pow_ui(u.get_mpz_t(), card.get_mpz_t(), cross);
      total *= u;
      if (ambient_ == Ambient::SL) total /= units;
      return total;
    }
    case PatternKind::Monomial: {
      mpz_class t;
      mpz_pow_ui(t.get_mpz_t(), units.get_mpz_t(), ambient_ == Ambient::GL ? n_ : n_ - 1);
      return factorial(n_) * t;
    }
    case PatternKind::CongruenceKernel:
      return mpz_pow(q, std::uint64_t(r - level_) * ambient_dim(ambient_, n_));
    case PatternKind::FullPreimage:
      return residue_->order() * mpz_pow(q, std::uint64_t(r - 1) * ambient_dim(ambient_, n_));
  }
  throw InternalError("unhandled pattern kind");
}

// --- generators ---

namespace {

Matrix elementary(const LocalRing* A, unsigned n, unsigned i, unsigned j, ring_code c) {
  Matrix m = Matrix::identity(A, n);
  m.set(i, j, c);
  return m;
}

}  // namespace

std::vector<Matrix> GroupPattern::generators() const {
  const LocalRing* A = ring_.get();
  const auto& ugens = A->unit_group_generators();
  const auto& agens = A->additive_generators();
  std::vector<Matrix> out;

  auto push_torus_gens = [&] {
    if (ambient_ == Ambient::GL) {
      for (unsigned i = 0; i < n_; ++i)
        for (ring_code u : ugens) {
          Matrix m = Matrix::identity(A, n_);
          m.set(i, i, u);
          out.push_back(m);
        }
    } else {
      for (unsigned i = 0; i + 1 < n_; ++i)
        for (ring_code u : ugens) {
          Matrix m = Matrix::identity(A, n_);
          m.set(i, i, u);
          m.set(i + 1, i + 1, A->inv_unit(u));
          out.push_back(m);
        }
    }
  };

  switch (kind_) {
    case PatternKind::GL:
    case PatternKind::SL: {
      for (unsigned i = 0; i < n_; ++i)
        for (unsigned j = 0; j < n_; ++j) {
          if (i == j) continue;
          for (ring_code c : agens) out.push_back(elementary(A, n_, i, j, c));
        }
      if (kind_ == PatternKind::GL && n_ >= 1)
        for (ring_code u : ugens) {
          Matrix m = Matrix::identity(A, n_);
          m.set(0, 0, u);
          out.push_back(m);
        }
      if (n_ == 1 && kind_ == PatternKind::SL) out.push_back(Matrix::identity(A, 1));
      break;
    }
    case PatternKind::DiagonalTorus:
      push_torus_gens();
      break;
    case PatternKind::StdUnipotent:
      for (unsigned i = 0; i < n_; ++i)
        for (unsigned j = i + 1; j < n_; ++j)
          for (ring_code c : agens) out.push_back(elementary(A, n_, i, j, c));
      break;
    case PatternKind::StdBorel: {
      push_torus_gens();
      for (unsigned i = 0; i < n_; ++i)
        for (unsigned j = i + 1; j < n_; ++j)
          for (ring_code c : agens) out.push_back(elementary(A, n_, i, j, c));
      break;
    }
    case PatternKind::StdParabolic: {
      std::vector<unsigned> block_of(n_);
      unsigned row = 0;
      for (unsigned bi = 0; bi < shape_.size(); ++bi)
        for (unsigned k = 0; k < shape_[bi]; ++k) block_of[row++] = bi;
      push_torus_gens();
      for (unsigned i = 0; i < n_; ++i)
        for (unsigned j = 0; j < n_; ++j) {
          if (i == j || block_of[i] > block_of[j]) continue;
          for (ring_code c : agens) out.push_back(elementary(A, n_, i, j, c));
        }
      break;
    }
    case PatternKind::Monomial: {
      push_torus_gens();
      for (unsigned i = 0; i + 1 < n_; ++i) {
        Matrix m = Matrix::identity(A, n_);
        m.set(i, i, 0);
        m.set(i + 1, i + 1, 0);
        // plain swap for GL; determinant-one signed swap for SL
        m.set(i, i + 1, ambient_ == Ambient::GL ? A->one() : A->neg(A->one()));
        m.set(i + 1, i, A->one());
        out.push_back(m);
      }
      break;
    }
    case PatternKind::CongruenceKernel: {
      std::vector<ring_code> layer_gens;
      for (ring_code c : agens)
        if (A->reduce(c, level_) == 0) layer_gens.push_back(c);
      for (unsigned i = 0; i < n_; ++i)
        for (unsigned j = 0; j < n_; ++j) {
          if (i == j) continue;
          for (ring_code c : layer_gens) out.push_back(elementary(A, n_, i, j, c));
        }
      if (ambient_ == Ambient::GL) {
        for (unsigned i = 0; i < n_; ++i)
          for (ring_code c : layer_gens) {
            Matrix m = Matrix::identity(A, n_);
            m.set(i, i, A->add(A->one(), c));
            out.push_back(m);
          }
      } else {
        for (unsigned i = 0; i + 1 < n_; ++i)
          for (ring_code c : layer_gens) {
            Matrix m = Matrix::identity(A, n_);
            const ring_code u = A->add(A->one(), c);
            m.set(i, i, u);
            m.set(i + 1, i + 1, A->inv_unit(u));
            out.push_back(m);
          }
      }
      break;
    }
    case PatternKind::FullPreimage: {
      Ring target = ring_;
      for (const Matrix& g : residue_->generators()) out.push_back(lift_point(g, ambient_, target));
      GroupPattern kernel = congruence_kernel(ambient_, ring_, n_, 1);
      for (Matrix& g : kernel.generators()) out.push_back(std::move(g));
      break;
    }
  }
  if (out.empty()) out.push_back(Matrix::identity(A, n_));
  return out;
}

// --- enumeration ---

namespace {

// Odometer over per-position allowed entry lists (already rank-sorted),
// with an optional final predicate. Positions run row-major, so output is
// in canonical matrix order.
void scan_allowed(const LocalRing* A, unsigned n,
                  const std::vector<std::vector<ring_code>>& allowed,
                  const std::function<bool(const Matrix&)>& keep, std::vector<Matrix>& out,
                  std::uint64_t raw_cap) {
  const unsigned nn = n * n;
  mpz_class raw = 1;
  for (const auto& a : allowed) raw *= static_cast<unsigned long>(a.size());
  if (raw == 0) return;
  if (raw > raw_cap)
    throw SizeGuardError("enumeration scan space", raw.get_str(), raw_cap);

  std::vector<std::size_t> idx(nn, 0);
  Matrix m(A, n);
  for (unsigned p = 0; p < nn; ++p) m.set(p / n, p % n, allowed[p][0]);
  for (;;) {
    if (keep(m)) out.push_back(m);
    // increment, last position fastest
    bool advanced = false;
    unsigned p = nn;
    while (p-- > 0) {
      if (++idx[p] < allowed[p].size()) {
        m.set(p / n, p % n, allowed[p][idx[p]]);
        advanced = true;
        break;
      }
      idx[p] = 0;
      m.set(p / n, p % n, allowed[p][0]);
    }
    if (!advanced) return;
  }
}

std::vector<ring_code> all_elements_sorted(const LocalRing* A) {
  std::vector<ring_code> v(A->cardinality());
  for (std::uint32_t r = 0; r < A->cardinality(); ++r) v[r] = A->by_rank(r);
  return v;
}

std::vector<ring_code> units_sorted(const LocalRing* A) {
  std::vector<ring_code> v;
  for (std::uint32_t r = 0; r < A->cardinality(); ++r)
    if (A->is_unit(A->by_rank(r))) v.push_back(A->by_rank(r));
  return v;
}

}  // namespace

std::vector<Matrix> GroupPattern::enumerate_elements(std::uint64_t guard) const {
  const mpz_class ord = order();
  if (ord > guard) throw SizeGuardError("order of " + name(), ord.get_str(), guard);

  const LocalRing* A = ring_.get();
  std::vector<Matrix> out;
  out.reserve(ord.get_ui());

  const auto everything = all_elements_sorted(A);
  const auto units = units_sorted(A);
  const std::vector<ring_code> just_zero{0};
  const std::vector<ring_code> just_one{A->one()};

  auto det_ok = [&](const Matrix& m) {
    const ring_code d = det(m);
    return ambient_ == Ambient::GL ? A->is_unit(d) : d == A->one();
  };
  auto always = [](const Matrix&) { return true; };
  auto sl_filter = ambient_ == Ambient::SL ? std::function<bool(const Matrix&)>(det_ok)
                                           : std::function<bool(const Matrix&)>(always);

  switch (kind_) {
    case PatternKind::GL:
    case PatternKind::SL: {
      std::vector<std::vector<ring_code>> allowed(n_ * n_, everything);
      scan_allowed(A, n_, allowed, det_ok, out, kRawScanCap);
      break;
    }
    case PatternKind::DiagonalTorus: {
      std::vector<std::vector<ring_code>> allowed(n_ * n_, just_zero);
      for (unsigned i = 0; i < n_; ++i) allowed[i * n_ + i] = units;
      scan_allowed(A, n_, allowed, sl_filter, out, kRawScanCap);
      break;
    }
    case PatternKind::StdBorel: {
      std::vector<std::vector<ring_code>> allowed(n_ * n_, just_zero);
      for (unsigned i = 0; i < n_; ++i) {
        allowed[i * n_ + i] = units;
        for (unsigned j = i + 1; j < n_; ++j) allowed[i * n_ + j] = everything;
      }
      scan_allowed(A, n_, allowed, sl_filter, out, kRawScanCap);
      break;
    }
    case PatternKind::StdUnipotent: {
      std::vector<std::vector<ring_code>> allowed(n_ * n_, just_zero);
      for (unsigned i = 0; i < n_; ++i) {
        allowed[i * n_ + i] = just_one;
        for (unsigned j = i + 1; j < n_; ++j) allowed[i * n_ + j] = everything;
      }
      scan_allowed(A, n_, allowed, always, out, kRawScanCap);
      break;
    }
    case PatternKind::StdParabolic: {
      std::vector<unsigned> block_of(n_);
      unsigned row = 0;
      for (unsigned bi = 0; bi < shape_.size(); ++bi)
        for (unsigned k = 0; k < shape_[bi]; ++k) block_of[row++] = bi;
      std::vector<std::vector<ring_code>> allowed(n_ * n_, just_zero);
      for (unsigned i = 0; i < n_; ++i)
        for (unsigned j = 0; j < n_; ++j)
          if (block_of[i] <= block_of[j]) allowed[i * n_ + j] = everything;
      scan_allowed(A, n_, allowed, det_ok, out, kRawScanCap);
      break;
    }
    case PatternKind::CongruenceKernel: {
      std::vector<ring_code> near_zero, near_one;
      for (ring_code c : everything) {
        if (A->reduce(c, level_) == 0) near_zero.push_back(c);
        if (A->reduce(c, level_) == A->one()) near_one.push_back(c);
      }
      std::vector<std::vector<ring_code>> allowed(n_ * n_);
      for (unsigned i = 0; i < n_; ++i)
        for (unsigned j = 0; j < n_; ++j) allowed[i * n_ + j] = (i == j ? near_one : near_zero);
      scan_allowed(A, n_, allowed, sl_filter, out, kRawScanCap);
      break;
    }
    case PatternKind::Monomial: {
      // Rows in order; nonzero column descending (zeros sort first), unit
      // values ascending: exactly canonical order.
      std::vector<bool> used(n_, false);
      Matrix m(A, n_);
      std::function<void(unsigned)> rec = [&](unsigned row) {
        if (row == n_) {
          if (ambient_ == Ambient::GL || det(m) == A->one()) out.push_back(m);
          return;
        }
        for (unsigned cc = n_; cc-- > 0;) {
          if (used[cc]) continue;
          used[cc] = true;
          for (ring_code u : units) {
            m.set(row, cc, u);
            rec(row + 1);
          }
          m.set(row, cc, 0);
          used[cc] = false;
        }
      };
      rec(0);
      break;
    }
    case PatternKind::FullPreimage: {
      const auto residue_members = residue_->enumerate_elements(guard);
      const unsigned q = A->residue_q();
      const unsigned r = A->length();
      // extensions of one residue member: all digit vectors above digit 0
      const std::uint32_t ext = A->cardinality() / q;
      mpz_class raw = mpz_class(residue_members.size());
      for (unsigned k = 0; k < n_ * n_; ++k) raw *= ext;
      if (raw > kRawScanCap) throw SizeGuardError("preimage scan space", raw.get_str(), kRawScanCap);
      for (const Matrix& base : residue_members) {
        std::vector<std::uint32_t> idx(n_ * n_, 0);
        Matrix m(A, n_);
        for (unsigned i = 0; i < n_; ++i)
          for (unsigned j = 0; j < n_; ++j) m.set(i, j, base.at(i, j));
        for (;;) {
          if (ambient_ == Ambient::GL || det(m) == A->one()) out.push_back(m);
          unsigned p = n_ * n_;
          bool done = true;
          while (p-- > 0) {
            if (++idx[p] < ext) {
              m.set(p / n_, p % n_, base.at(p / n_, p % n_) + idx[p] * q);
              done = false;
              break;
            }
            idx[p] = 0;
            m.set(p / n_, p % n_, base.at(p / n_, p % n_));
          }
          if (done) break;
        }
      }
      std::sort(out.begin(), out.end());
      break;
    }
  }
  if (mpz_class(static_cast<unsigned long>(out.size())) != ord)
    throw InternalError("enumeration of " + name() + " produced " + std::to_string(out.size()) +
                        " elements, closed form says " + ord.get_str());
  return out;
}

Matrix GroupPattern::random_element(Rng& rng) const {
  if (kind_ != PatternKind::GL && kind_ != PatternKind::SL)
    throw Error("random elements are drawn from the ambient GL/SL only");
  const LocalRing* A = ring_.get();
  for (;;) {
    Matrix m(A, n_);
    for (unsigned i = 0; i < n_; ++i)
      for (unsigned j = 0; j < n_; ++j)
        m.set(i, j, static_cast<ring_code>(rng.below(A->cardinality())));
    const ring_code d = det(m);
    if (ambient_ == Ambient::GL ? A->is_unit(d) : d == A->one()) return m;
  }
}

std::string GroupPattern::name() const {
  const std::string amb = (ambient_ == Ambient::GL ? "GL" : "SL") + std::to_string(n_);
  switch (kind_) {
    case PatternKind::GL:
    case PatternKind::SL:
      return amb;
    case PatternKind::DiagonalTorus:
      return "T(" + amb + ")";
    case PatternKind::StdBorel:
      return "B(" + amb + ")";
    case PatternKind::StdUnipotent:
      return "U(" + amb + ")";
    case PatternKind::StdParabolic: {
      std::string s;
      for (unsigned b : shape_) s += (s.empty() ? "" : ",") + std::to_string(b);
      return "P(" + s + ")(" + amb + ")";
    }
    case PatternKind::Monomial:
      return "Mono(" + amb + ")";
    case PatternKind::CongruenceKernel:
      return "Ker" + std::to_string(level_) + "(" + amb + ")";
    case PatternKind::FullPreimage:
      return "Pre[" + residue_->name() + "](" + amb + ")";
  }
  return amb;
}

bool GroupPattern::operator==(const GroupPattern& o) const {
  if (kind_ != o.kind_ || ambient_ != o.ambient_ || n_ != o.n_ || ring_ != o.ring_ ||
      shape_ != o.shape_ || level_ != o.level_)
    return false;
  if (!residue_ != !o.residue_) return false;
  if (residue_ && !(*residue_ == *o.residue_)) return false;
  return true;
}

Matrix reduce_hom(const Matrix& g, unsigned r2) { return g.reduced(r2); }

Matrix lift_point(const Matrix& g, Ambient kind, Ring target) {
  const LocalRing* src = g.ring();
  if (target->family() != src->family() || &target->base() != &src->base())
    throw MismatchError("lift target ring has a different family or residue field");
  if (target->length() < src->length())
    throw MismatchError("lift target is shorter than the source ring");
  const LocalRing* A = target.get();
  const ring_code d_src = det(g);
  if (kind == Ambient::GL ? !src->is_unit(d_src) : d_src != src->one())
    throw Error("lift input is not a group element of the stated kind");

  Matrix h(A, g.dim());
  for (unsigned i = 0; i < g.dim(); ++i)
    for (unsigned j = 0; j < g.dim(); ++j) h.set(i, j, g.at(i, j));  // zero-fill digits
  if (kind == Ambient::SL) {
    const ring_code d = det(h);
    const ring_code fix = A->inv_unit(d);
    for (unsigned i = 0; i < g.dim(); ++i) h.set(i, 0, A->mul(h.at(i, 0), fix));
  }
  return h;
}

}  // namespace greenberg
