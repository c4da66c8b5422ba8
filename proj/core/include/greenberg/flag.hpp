#pragma once

#include "greenberg/point_set.hpp"

namespace greenberg {

struct FlagOptions {
  std::uint64_t guard = 10000000;
  std::uint64_t seed = 0;
};

/// A full flag of free direct summands of A^n, carried by an adapted basis:
/// column j spans the new direction of step j+1. The basis has unit
/// determinant, certifying every step is a free rank-i direct summand. Its
/// stabilizer under the standard action is the conjugate of the standard
/// Borel by the basis matrix.
struct Flag {
  Ambient ambient = Ambient::GL;
  Matrix basis;

  const LocalRing* ring() const { return basis.ring(); }
  unsigned dim() const { return basis.dim(); }
};

/// The standard flag (identity adapted basis).
Flag std_flag(Ambient a, Ring ring, unsigned n);

/// The flag's stabilizer as an intensional point set (generators plus
/// membership oracle), with the Borel order attached.
PointSet flag_stabilizer(const Flag& f);

/// Recover the unique-at-residue flag stabilized by a conjugate of the
/// standard Borel, given only generators and a membership oracle. The
/// residue flag comes from iterated fixed spaces of the unipotent part of
/// the reduced group; each length level is then lifted by solving a linear
/// correction system over the residue field. The result is certified by
/// generator membership both ways; a non-Borel input raises NotBorelError.
Flag recover_flag(const PointSet& borel_points, const FlagOptions& opts = {});

/// A group element carrying flag `from` stepwise onto flag `to`:
/// basis(to) * basis(from)^{-1}, with one column of basis(to) rescaled to
/// reach determinant one for SL (steps are scale-invariant).
Matrix flag_transporter(const Flag& from, const Flag& to);

}  // namespace greenberg
