#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "greenberg/group_pattern.hpp"

namespace greenberg {

/// A subset of G(A): either extensional (canonically sorted, duplicate-free
/// element list, usually with a generating set alongside) or intensional
/// (generators plus a membership oracle, for groups too large to hold).
class PointSet {
 public:
  using Oracle = std::function<bool(const Matrix&)>;

  /// Extensional subgroup; sorts, deduplicates, and verifies closure under
  /// product and inverse (all pairs up to 10^4 elements, 1000 random probes
  /// above).
  static PointSet subgroup(GroupPattern group, std::vector<Matrix> elements,
                           std::vector<Matrix> generators, Rng& rng);
  /// Extensional set with no subgroup promise (transporters are cosets).
  static PointSet plain(GroupPattern group, std::vector<Matrix> elements,
                        std::vector<Matrix> generators = {});
  /// Enumerate a pattern; generators come from the pattern. Closure is
  /// verified against the pattern predicate.
  static PointSet from_pattern(const GroupPattern& pattern, std::uint64_t guard, Rng& rng);
  /// The whole group, held intensionally.
  static PointSet whole_group(GroupPattern group);
  /// Intensional subgroup with an opaque membership oracle.
  static PointSet intensional(GroupPattern group, std::vector<Matrix> generators, Oracle oracle,
                              mpz_class order);

  bool extensional() const { return extensional_; }
  const std::vector<Matrix>& elements() const;
  const std::vector<Matrix>& generators() const { return generators_; }
  bool contains(const Matrix& m) const;
  mpz_class order() const;
  std::size_t size() const { return elements().size(); }
  /// The ambient group (GL/SL pattern) this set lives in.
  const GroupPattern& group() const { return group_; }
  /// The defining pattern when the set came from one.
  const std::optional<GroupPattern>& origin() const { return origin_; }

  bool set_equal(const PointSet& o) const;
  bool subset_of(const PointSet& o) const;

 private:
  PointSet(GroupPattern group) : group_(std::move(group)) {}

  GroupPattern group_;
  bool extensional_ = true;
  std::vector<Matrix> elements_;
  std::vector<Matrix> generators_;
  std::optional<GroupPattern> origin_;
  Oracle oracle_;
  std::optional<mpz_class> order_;
};

/// g S g^{-1}, re-sorted canonically.
PointSet conj_set(const Matrix& g, const PointSet& S);

/// Subgroup generated by `gens` (breadth-first closure). Throws
/// SizeGuardError past `limit`.
std::vector<Matrix> generated_subgroup(const std::vector<Matrix>& gens, std::uint64_t limit);

/// Greedy generating subset of a subgroup given extensionally.
std::vector<Matrix> minimal_generators(const std::vector<Matrix>& elements);

/// Drop generators already reachable from the ones kept so far; the kept
/// list generates the same subgroup (of order at most `limit`).
std::vector<Matrix> trim_generators(const std::vector<Matrix>& gens, std::uint64_t limit);

/// Entrywise reduction of a whole set (image under the reduction map),
/// deduplicated and sorted; generators map along.
PointSet reduce_set(const PointSet& S, unsigned r2);

}  // namespace greenberg
