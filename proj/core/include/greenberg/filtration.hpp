#pragma once

#include "greenberg/point_set.hpp"

namespace greenberg {

struct FiltrationOptions {
  std::uint64_t guard = 10000000;
  std::uint64_t seed = 0;
  unsigned samples = 200;  // random conjugators for normality at large orders
};

struct FiltrationLevel {
  unsigned level = 0;
  mpz_class kernel_order;
  mpz_class layer_order;  // kernel(level) / kernel(level+1)
  bool elementary_abelian = false;
};

/// The congruence filtration G = G^0 >= G^1 >= ... >= G^r = 1 of a group
/// pattern over a length-r ring: G^l is the kernel of reduction to length l.
/// Construction checks normality, the kernel order formula, and that each
/// layer is elementary abelian of exponent p.
class Filtration {
 public:
  static Filtration compute(const GroupPattern& group, const FiltrationOptions& opts = {});

  const GroupPattern& group() const { return group_; }
  /// Kernel of reduction to length `level`, 1 <= level <= r.
  const PointSet& kernel(unsigned level) const { return kernels_.at(level - 1); }
  unsigned length() const { return static_cast<unsigned>(kernels_.size()); }
  const std::vector<FiltrationLevel>& levels() const { return levels_; }

 private:
  explicit Filtration(GroupPattern g) : group_(std::move(g)) {}
  GroupPattern group_;
  std::vector<PointSet> kernels_;
  std::vector<FiltrationLevel> levels_;
};

/// Top-layer structure check: X -> I + pi^(r-1) X is a bijective
/// homomorphism from the additive n x n matrices over the residue field
/// (trace zero for SL) onto the last nontrivial kernel. Only the top layer
/// admits this map; lower layers are covered by order counting.
bool layer_iso_check(const Filtration& f, unsigned level, const FiltrationOptions& opts = {});

/// Elements of S whose residue lies in the given identity-component pattern
/// over the residue field; always a subgroup of S.
PointSet component_points(const PointSet& S, const GroupPattern& residue_component, Rng& rng);

/// rho_1-preimage of the fibre's unipotent-radical pattern, inside the
/// ambient group of `group`. For GL/SL the residue radical is trivial and
/// the result is the level-1 congruence kernel.
PointSet unipotent_radical_points(const GroupPattern& group, const GroupPattern& residue_radical,
                                  const FiltrationOptions& opts = {});

/// Brute-force largest normal p-subgroup: seeds with the congruence kernel
/// intersected with S (verified normal p-subgroup, never assumed), then
/// grows by every p-element whose normal closure stays a p-group.
PointSet largest_normal_p_subgroup(const PointSet& S, const FiltrationOptions& opts = {});

/// Product-set identity B(A) * ker(rho_1) == rho_1^{-1}(B(k)), checked as
/// exact set equality.
bool borel_preimage_check(const GroupPattern& group, const GroupPattern& borel,
                          const FiltrationOptions& opts = {});

}  // namespace greenberg
