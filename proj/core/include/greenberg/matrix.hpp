#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "greenberg/local_ring.hpp"

namespace greenberg {

/// Matrices above this dimension are rejected; closed-form orders still work
/// at any n, only concrete matrix work is capped.
constexpr unsigned kMaxDim = 6;

/// Square matrix over a LocalRing, entries stored inline as element codes.
/// Rings are interned and immortal, so the raw owner pointer is safe.
class Matrix {
 public:
  Matrix() = default;
  Matrix(const LocalRing* ring, unsigned n);
  static Matrix identity(const LocalRing* ring, unsigned n);

  const LocalRing* ring() const { return ring_; }
  unsigned dim() const { return n_; }

  ring_code at(unsigned i, unsigned j) const { return e_[i * n_ + j]; }
  void set(unsigned i, unsigned j, ring_code v) { e_[i * n_ + j] = static_cast<std::uint16_t>(v); }

  Matrix operator*(const Matrix& o) const;
  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }
  bool is_identity() const;

  /// Row-major entrywise comparison under the canonical element order.
  static int cmp(const Matrix& a, const Matrix& b);
  bool operator<(const Matrix& o) const { return cmp(*this, o) < 0; }

  /// Entrywise reduction onto the length-r2 ring (a group homomorphism on
  /// invertible matrices).
  Matrix reduced(unsigned r2) const;

  /// "n;ring-spec;e00,e01,..." with elements as digit strings low-to-high.
  std::string serialize() const;

  struct Key {
    std::array<std::uint16_t, kMaxDim * kMaxDim> v{};
    std::uint8_t len = 0;
    bool operator==(const Key& o) const { return len == o.len && v == o.v; }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::size_t h = 1469598103934665603ull;
      for (unsigned i = 0; i < k.len; ++i) {
        h ^= k.v[i];
        h *= 1099511628211ull;
      }
      return h;
    }
  };
  Key key() const;

 private:
  const LocalRing* ring_ = nullptr;
  std::uint8_t n_ = 0;
  std::array<std::uint16_t, kMaxDim * kMaxDim> e_{};
};

/// Exact determinant by division-free expansion (column-subset dynamic
/// programming); valid for singular input too.
ring_code det(const Matrix& m);

/// Inverse by Gauss-Jordan with unit pivoting; over a local ring every
/// invertible matrix offers a unit pivot in each column after row swaps.
/// Throws SingularMatrixError otherwise.
Matrix mat_inv(const Matrix& m);

/// g h g^{-1}
Matrix conj(const Matrix& g, const Matrix& h);

Matrix mat_pow(const Matrix& g, std::uint64_t e);

}  // namespace greenberg
