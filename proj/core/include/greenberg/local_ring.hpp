#pragma once

#include <cstdint>
#include <gmpxx.h>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "greenberg/finite_field.hpp"
#include "greenberg/witt.hpp"

namespace greenberg {

enum class RingFamily { EqualChar, Unramified };

/// Element of a LocalRing, packed as sum(digit_i * q^i) with digits in
/// [0, q). Digit i is the t^i coefficient (EqualChar) or the i-th Witt
/// coordinate (Unramified). The packing is unique, so codes compare equal
/// iff elements are equal.
using ring_code = std::uint32_t;

class LocalRing;
using Ring = std::shared_ptr<const LocalRing>;

/// A finite local ring of one of two families over a residue field F_q:
/// F_q[t]/t^r, or the truncated Witt ring W_r(F_q). Immutable once built;
/// instances are interned, so pointer equality is ring equality.
class LocalRing {
 public:
  static Ring make(RingFamily family, Field base, unsigned length);
  /// Grammar: F<q>[t]/t^<r> | W<r>(F<q>) | Z/<p>^<r> | Z/<n> with n = p^r.
  /// Whitespace-free; errors cite the offending token.
  static Ring parse(std::string_view spec);

  RingFamily family() const { return family_; }
  const FiniteField& base() const { return *base_; }
  Field base_field() const { return base_; }
  unsigned length() const { return length_; }
  std::uint32_t cardinality() const { return card_; }
  std::uint32_t unit_count() const { return card_ - card_ / base_->q(); }
  unsigned residue_q() const { return base_->q(); }

  std::string spec_string() const;

  // --- element arithmetic on codes ---
  ring_code zero() const { return 0; }
  ring_code one() const { return 1; }
  ring_code add(ring_code a, ring_code b) const;
  ring_code sub(ring_code a, ring_code b) const;
  ring_code neg(ring_code a) const;
  ring_code mul(ring_code a, ring_code b) const;
  bool is_unit(ring_code a) const { return a % base_->q() != 0; }
  ring_code inv_unit(ring_code a) const;  // throws NonUnitError
  ring_code pow(ring_code a, std::uint64_t e) const;

  ff_elt digit(ring_code a, unsigned i) const;
  std::vector<ff_elt> digits(ring_code a) const;
  ring_code from_digits(const std::vector<ff_elt>& ds) const;

  /// Reduction onto the length-r2 ring of the same family: plain digit
  /// truncation, a surjective ring homomorphism.
  Ring reduced_ring(unsigned r2) const;
  ring_code reduce(ring_code a, unsigned r2) const;
  ff_elt residue(ring_code a) const { return static_cast<ff_elt>(a % base_->q()); }
  /// Inclusion of a length-r2 element by zero-filling the high digits
  /// (a section of `reduce` as maps of sets, not a ring map).
  ring_code zero_extend(ring_code a) const { return a; }

  /// Multiplicative section of the residue map; for EqualChar the constant
  /// digit, for Witt vectors the coordinate vector (a, 0, .., 0).
  ring_code teichmuller(ff_elt a) const { return a; }

  /// Generator of the maximal ideal (t, or p), and its powers.
  ring_code pi() const;
  ring_code pi_power(unsigned l) const;

  /// The layer m^l / m^{l+1} is a 1-dimensional k-module via
  /// psi_l(c) = pi^l * teichmuller(c); these convert both ways. The rule
  /// d * psi_l(c) = psi_l(residue(d) * c) makes layer computations k-linear.
  ring_code layer_embed(unsigned l, ff_elt c) const;
  ff_elt layer_coord(unsigned l, ring_code a) const;

  /// Canonical total order: lexicographic on the digit vector, digit 0
  /// first. `rank` is its order-isomorphic integer key and `by_rank` the
  /// inverse lookup (element at a given position of the canonical order).
  std::uint32_t rank(ring_code a) const;
  ring_code by_rank(std::uint32_t rank) const;
  int cmp(ring_code a, ring_code b) const;

  /// A minimal generating set of the unit group, in canonical order.
  const std::vector<ring_code>& unit_group_generators() const { return unit_gens_; }
  /// Generators of (A, +) as an abelian p-group: p-power basis per digit.
  const std::vector<ring_code>& additive_generators() const { return additive_gens_; }
  std::vector<ring_code> units() const;

  /// Digits low-to-high; single base-36 character per digit when q <= 36,
  /// dot-separated indices otherwise.
  std::string element_string(ring_code a) const;

 private:
  LocalRing(RingFamily family, Field base, unsigned length);

  ring_code add_slow(ring_code a, ring_code b) const;
  ring_code mul_slow(ring_code a, ring_code b) const;
  ring_code neg_slow(ring_code a) const;

  RingFamily family_;
  Field base_;
  unsigned length_;
  std::uint32_t card_;
  WittTableRef witt_;  // Unramified only
  bool tabled_ = false;
  std::vector<std::uint16_t> add_tab_, mul_tab_, neg_tab_, inv_tab_;
  std::vector<std::uint32_t> rank_tab_, by_rank_tab_;
  std::vector<ring_code> unit_gens_, additive_gens_;
};

/// Owner-aware element wrapper; handy in tests and user code. Arithmetic
/// throws MismatchError when owners differ.
class RingElement {
 public:
  RingElement() = default;
  RingElement(const LocalRing* ring, ring_code code) : ring_(ring), code_(code) {}

  const LocalRing* ring() const { return ring_; }
  ring_code code() const { return code_; }
  std::vector<ff_elt> coords() const { return ring_->digits(code_); }

  RingElement operator+(const RingElement& o) const { return {ring_, same(o).add(code_, o.code_)}; }
  RingElement operator-(const RingElement& o) const { return {ring_, same(o).sub(code_, o.code_)}; }
  RingElement operator*(const RingElement& o) const { return {ring_, same(o).mul(code_, o.code_)}; }
  RingElement operator-() const { return {ring_, ring_->neg(code_)}; }
  bool operator==(const RingElement& o) const { return ring_ == o.ring_ && code_ == o.code_; }
  bool is_unit() const { return ring_->is_unit(code_); }
  RingElement inverse() const { return {ring_, ring_->inv_unit(code_)}; }
  std::string str() const { return ring_->element_string(code_); }

 private:
  const LocalRing& same(const RingElement& o) const {
    if (ring_ != o.ring_) throw MismatchError("ring elements have different owners");
    return *ring_;
  }
  const LocalRing* ring_ = nullptr;
  ring_code code_ = 0;
};

}  // namespace greenberg
