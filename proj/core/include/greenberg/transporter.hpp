#pragma once

#include "greenberg/point_set.hpp"

namespace greenberg {

struct ScanOptions {
  std::uint64_t guard = 10000000;
  unsigned workers = 1;
  std::uint64_t seed = 0;
};

/// Strict transporter {g in G : g Y g^{-1} = Z}, computed exactly. Y must be
/// a subgroup (its generators drive the conjugation test); Z extensional.
/// The result is a coset, not generally a subgroup.
PointSet transporter_points(const PointSet& Gpts, const PointSet& Y, const PointSet& Z,
                            const ScanOptions& opts = {});

/// Normalizer {g : g H g^{-1} = H} and centralizer {g : gh = hg for all h}.
/// When Gpts is the whole group held intensionally and too large to scan,
/// candidates are restricted to the preimage of the normalizer (resp.
/// centralizer) of the reduced subgroup over the residue field: a sound
/// restriction because reduction is a homomorphism mapping H onto its image.
PointSet normalizer_points(const PointSet& Gpts, const PointSet& H, const ScanOptions& opts = {});
PointSet centralizer_points(const PointSet& Gpts, const PointSet& H, const ScanOptions& opts = {});

/// The group scheme normalizer of the split diagonal torus has points the
/// monomial matrices (det-restricted for SL).
GroupPattern scheme_normalizer_torus(Ambient kind, unsigned n, Ring A);

}  // namespace greenberg
