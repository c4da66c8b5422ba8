#include "greenberg/matrix.hpp"

#include <vector>

namespace greenberg {

Matrix::Matrix(const LocalRing* ring, unsigned n) : ring_(ring), n_(static_cast<std::uint8_t>(n)) {
  if (n < 1 || n > kMaxDim)
    throw Error("matrix dimension " + std::to_string(n) + " outside supported range 1.." +
                std::to_string(kMaxDim));
}

Matrix Matrix::identity(const LocalRing* ring, unsigned n) {
  Matrix m(ring, n);
  for (unsigned i = 0; i < n; ++i) m.set(i, i, ring->one());
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (ring_ != o.ring_ || n_ != o.n_) throw MismatchError("matrix product operands incompatible");
  Matrix r(ring_, n_);
  const LocalRing& A = *ring_;
  for (unsigned i = 0; i < n_; ++i)
    for (unsigned j = 0; j < n_; ++j) {
      ring_code acc = 0;
      for (unsigned k = 0; k < n_; ++k) acc = A.add(acc, A.mul(at(i, k), o.at(k, j)));
      r.set(i, j, acc);
    }
  return r;
}

bool Matrix::operator==(const Matrix& o) const {
  if (ring_ != o.ring_ || n_ != o.n_) return false;
  for (unsigned i = 0; i < unsigned(n_) * n_; ++i)
    if (e_[i] != o.e_[i]) return false;
  return true;
}

bool Matrix::is_identity() const { return *this == identity(ring_, n_); }

int Matrix::cmp(const Matrix& a, const Matrix& b) {
  if (a.ring_ != b.ring_ || a.n_ != b.n_) throw MismatchError("comparing matrices from different groups");
  const LocalRing& A = *a.ring_;
  for (unsigned i = 0; i < unsigned(a.n_) * a.n_; ++i) {
    int c = A.cmp(a.e_[i], b.e_[i]);
    if (c != 0) return c;
  }
  return 0;
}

Matrix Matrix::reduced(unsigned r2) const {
  const LocalRing* target = ring_->reduced_ring(r2).get();
  Matrix m(target, n_);
  for (unsigned i = 0; i < n_; ++i)
    for (unsigned j = 0; j < n_; ++j) m.set(i, j, ring_->reduce(at(i, j), r2));
  return m;
}

std::string Matrix::serialize() const {
  std::string s = std::to_string(n_) + ";" + ring_->spec_string() + ";";
  for (unsigned i = 0; i < n_; ++i)
    for (unsigned j = 0; j < n_; ++j) {
      if (i || j) s += ",";
      s += ring_->element_string(at(i, j));
    }
  return s;
}

Matrix::Key Matrix::key() const {
  Key k;
  k.len = static_cast<std::uint8_t>(unsigned(n_) * n_);
  for (unsigned i = 0; i < k.len; ++i) k.v[i] = e_[i];
  return k;
}

ring_code det(const Matrix& m) {
  const LocalRing& A = *m.ring();
  const unsigned n = m.dim();
  if (n == 1) return m.at(0, 0);
  if (n == 2)
    return A.sub(A.mul(m.at(0, 0), m.at(1, 1)), A.mul(m.at(0, 1), m.at(1, 0)));

  // f[mask] = det of the submatrix on rows 0..k-1 and columns `mask`,
  // k = popcount(mask). Laplace expansion along the last row of each
  // submatrix; division-free, so exact for singular matrices too.
  std::vector<ring_code> f(std::size_t(1) << n, 0);
  f[0] = A.one();
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const unsigned k = static_cast<unsigned>(__builtin_popcount(mask));
    ring_code acc = 0;
    unsigned c = 0;
    for (unsigned j = 0; j < n; ++j) {
      if (!(mask & (1u << j))) continue;
      ring_code term = A.mul(m.at(k - 1, j), f[mask & ~(1u << j)]);
      if ((k - 1 + c) % 2 == 1) term = A.neg(term);
      acc = A.add(acc, term);
      ++c;
    }
    f[mask] = acc;
  }
  return f[(1u << n) - 1];
}

Matrix mat_inv(const Matrix& m) {
  const LocalRing& A = *m.ring();
  const unsigned n = m.dim();
  Matrix work = m;
  Matrix inv = Matrix::identity(m.ring(), n);

  auto swap_rows = [&](Matrix& mat, unsigned a, unsigned b) {
    for (unsigned j = 0; j < n; ++j) {
      ring_code t = mat.at(a, j);
      mat.set(a, j, mat.at(b, j));
      mat.set(b, j, t);
    }
  };

  for (unsigned col = 0; col < n; ++col) {
    unsigned pivot = n;
    for (unsigned row = col; row < n; ++row)
      if (A.is_unit(work.at(row, col))) {
        pivot = row;
        break;
      }
    if (pivot == n)
      throw SingularMatrixError("no unit pivot in column " + std::to_string(col) +
                                " of " + m.serialize());
    if (pivot != col) {
      swap_rows(work, pivot, col);
      swap_rows(inv, pivot, col);
    }
    const ring_code scale = A.inv_unit(work.at(col, col));
    for (unsigned j = 0; j < n; ++j) {
      work.set(col, j, A.mul(scale, work.at(col, j)));
      inv.set(col, j, A.mul(scale, inv.at(col, j)));
    }
    for (unsigned row = 0; row < n; ++row) {
      if (row == col) continue;
      const ring_code f = work.at(row, col);
      if (f == 0) continue;
      for (unsigned j = 0; j < n; ++j) {
        work.set(row, j, A.sub(work.at(row, j), A.mul(f, work.at(col, j))));
        inv.set(row, j, A.sub(inv.at(row, j), A.mul(f, inv.at(col, j))));
      }
    }
  }
  return inv;
}

Matrix conj(const Matrix& g, const Matrix& h) { return g * h * mat_inv(g); }

Matrix mat_pow(const Matrix& g, std::uint64_t e) {
  Matrix r = Matrix::identity(g.ring(), g.dim());
  Matrix base = g;
  while (e) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

}  // namespace greenberg
