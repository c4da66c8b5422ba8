#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "greenberg/errors.hpp"

namespace greenberg {

/// Index of a field element. Encodes the coefficient vector of a polynomial
/// over F_p in base p, lowest degree in the least significant digit.
using ff_elt = std::uint16_t;

/// F_q with q = p^d, d <= 6. Arithmetic is polynomial arithmetic modulo a
/// monic irreducible of degree d; by default the lexicographically smallest
/// one (coefficients compared low-degree-first), so every (p, d) names a
/// single concrete field. Full operation tables are built when q is small.
class FiniteField {
 public:
  static std::shared_ptr<const FiniteField> make(unsigned p, unsigned d);
  static std::shared_ptr<const FiniteField> make(unsigned p, unsigned d,
                                                 const std::vector<unsigned>& modulus);

  unsigned p() const { return p_; }
  unsigned degree() const { return d_; }
  unsigned q() const { return q_; }
  /// Non-leading coefficients c_0..c_{d-1} of the monic modulus.
  const std::vector<unsigned>& modulus() const { return modulus_; }

  ff_elt zero() const { return 0; }
  ff_elt one() const { return 1; }

  ff_elt add(ff_elt a, ff_elt b) const;
  ff_elt sub(ff_elt a, ff_elt b) const;
  ff_elt neg(ff_elt a) const;
  ff_elt mul(ff_elt a, ff_elt b) const;
  ff_elt inv(ff_elt a) const;  // throws NonUnitError on zero
  ff_elt pow(ff_elt a, std::uint64_t e) const;

  /// x -> x^p, and its inverse (Frobenius has order d).
  ff_elt frobenius(ff_elt a) const { return pow(a, p_); }
  ff_elt frobenius_iter(ff_elt a, unsigned k) const;
  ff_elt frobenius_inv_iter(ff_elt a, unsigned k) const;

  /// Embedding of integers: n mod p as a constant polynomial.
  ff_elt from_int(std::uint64_t n) const { return static_cast<ff_elt>(n % p_); }

  std::string element_string(ff_elt a) const;

  static bool is_prime(unsigned p);
  /// Trial division against every lower-degree monic polynomial.
  static bool is_irreducible(unsigned p, const std::vector<unsigned>& coeffs);

 private:
  FiniteField(unsigned p, unsigned d, std::vector<unsigned> modulus);

  ff_elt mul_slow(ff_elt a, ff_elt b) const;
  ff_elt add_slow(ff_elt a, ff_elt b) const;

  unsigned p_, d_, q_;
  std::vector<unsigned> modulus_;
  bool tabled_ = false;
  std::vector<ff_elt> add_tab_, mul_tab_, neg_tab_, inv_tab_;
};

using Field = std::shared_ptr<const FiniteField>;

}  // namespace greenberg
