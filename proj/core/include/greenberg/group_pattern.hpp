#pragma once

#include <cstdint>
#include <gmpxx.h>
#include <memory>
#include <string>
#include <vector>

#include "greenberg/matrix.hpp"
#include "greenberg/rng.hpp"

namespace greenberg {

enum class Ambient { GL, SL };

enum class PatternKind {
  GL,
  SL,
  DiagonalTorus,
  StdBorel,
  StdUnipotent,
  StdParabolic,
  Monomial,
  CongruenceKernel,
  FullPreimage,
};

inline unsigned ambient_dim(Ambient a, unsigned n) { return a == Ambient::GL ? n * n : n * n - 1; }

/// A named subgroup of GL_n(A) or SL_n(A) cut out by entry predicates.
/// Membership never searches; orders have closed forms; enumeration yields
/// the members in the canonical matrix order (row-major entrywise
/// lexicographic under the canonical element order).
class GroupPattern {
 public:
  static GroupPattern general_linear(Ring ring, unsigned n);
  static GroupPattern special_linear(Ring ring, unsigned n);
  static GroupPattern ambient_group(Ambient a, Ring ring, unsigned n);
  static GroupPattern diagonal_torus(Ambient a, Ring ring, unsigned n);
  static GroupPattern std_borel(Ambient a, Ring ring, unsigned n);
  static GroupPattern std_unipotent(Ambient a, Ring ring, unsigned n);
  /// `shape` is a composition of n (ordered block sizes); the Borel is the
  /// all-ones composition.
  static GroupPattern std_parabolic(Ambient a, Ring ring, unsigned n, std::vector<unsigned> shape);
  static GroupPattern monomial(Ambient a, Ring ring, unsigned n);
  static GroupPattern congruence_kernel(Ambient a, Ring ring, unsigned n, unsigned level);
  /// Elements of the ambient group whose reduction to the residue field
  /// lies in `residue` (a pattern over ring->reduced_ring(1)).
  static GroupPattern full_preimage(Ambient a, Ring ring, GroupPattern residue);

  PatternKind kind() const { return kind_; }
  Ambient ambient() const { return ambient_; }
  unsigned dim() const { return n_; }
  const LocalRing* ring() const { return ring_.get(); }
  Ring ring_ref() const { return ring_; }
  const std::vector<unsigned>& shape() const { return shape_; }
  unsigned level() const { return level_; }
  const GroupPattern& residue_pattern() const;

  /// The same pattern kind over the residue field (FullPreimage yields its
  /// residue pattern).
  GroupPattern residue_version() const;
  /// The ambient GL/SL pattern this group lives in.
  GroupPattern ambient_pattern() const;

  bool contains(const Matrix& m) const;
  mpz_class order() const;
  std::vector<Matrix> generators() const;

  /// Members in canonical order. Throws SizeGuardError when the order (or
  /// the raw space a scan would have to visit) exceeds the guard.
  std::vector<Matrix> enumerate_elements(std::uint64_t guard) const;

  /// Uniform element by rejection from the entry odometer (GL/SL only).
  Matrix random_element(Rng& rng) const;

  std::string name() const;

  bool operator==(const GroupPattern& o) const;

 private:
  GroupPattern(PatternKind k, Ambient a, Ring ring, unsigned n);

  bool block_upper_ok(const Matrix& m) const;

  PatternKind kind_;
  Ambient ambient_;
  unsigned n_;
  Ring ring_;
  std::vector<unsigned> shape_;
  unsigned level_ = 0;
  std::shared_ptr<const GroupPattern> residue_;
};

/// Entrywise reduction; a surjective group homomorphism onto the same
/// pattern over the shorter ring.
Matrix reduce_hom(const Matrix& g, unsigned r2);

/// Digit-extension lift along the reduction map: zero-fill for GL; for SL
/// the determinant defect (a unit congruent to 1) is pushed into column 0.
/// reduce_hom(lift_point(g), r') == g always.
Matrix lift_point(const Matrix& g, Ambient kind, Ring target);

}  // namespace greenberg
