#pragma once

#include <array>
#include <cstdint>
#include <gmpxx.h>
#include <memory>
#include <string>
#include <vector>

#include "greenberg/errors.hpp"
#include "greenberg/finite_field.hpp"

namespace greenberg {

/// Hard cap on Witt polynomial depth; table sizes explode beyond it.
constexpr unsigned kMaxWittDepth = 4;

/// Sparse multivariate polynomial over Z in X_0..X_4, Y_0..Y_4.
/// Terms are kept sorted in descending graded-lex order with X-variables
/// more significant than Y-variables, so representation is canonical and
/// equality is term-list equality. Coefficients are exact (GMP).
class IntegerPolynomial {
 public:
  static constexpr unsigned kVars = 2 * (kMaxWittDepth + 1);
  using Monomial = std::array<std::uint16_t, kVars>;
  struct Term {
    Monomial mono;
    mpz_class coeff;
    bool operator==(const Term& o) const { return mono == o.mono && coeff == o.coeff; }
  };

  IntegerPolynomial() = default;
  static IntegerPolynomial constant(const mpz_class& c);
  static IntegerPolynomial x_var(unsigned i, unsigned exponent = 1);
  static IntegerPolynomial y_var(unsigned i, unsigned exponent = 1);
  static unsigned x_index(unsigned i) { return i; }
  static unsigned y_index(unsigned i) { return kMaxWittDepth + 1 + i; }

  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }

  IntegerPolynomial operator+(const IntegerPolynomial& o) const;
  IntegerPolynomial operator-(const IntegerPolynomial& o) const;
  IntegerPolynomial operator-() const;
  IntegerPolynomial operator*(const IntegerPolynomial& o) const;
  IntegerPolynomial pow(std::uint64_t e) const;
  IntegerPolynomial scaled(const mpz_class& c) const;

  /// Exact division by a constant; throws InternalError if any coefficient
  /// is not divisible.
  IntegerPolynomial divided_exact(const mpz_class& c) const;

  /// Substitute: slot i of `args` replaces variable i. Missing slots keep
  /// the variable. Used for composing with the negation polynomials.
  IntegerPolynomial substituted(const std::vector<const IntegerPolynomial*>& args) const;

  mpz_class eval_int(const std::vector<mpz_class>& values) const;
  ff_elt eval_field(const FiniteField& k, const std::vector<ff_elt>& values) const;

  bool operator==(const IntegerPolynomial& o) const { return terms_ == o.terms_; }
  bool operator!=(const IntegerPolynomial& o) const { return !(*this == o); }

  /// Rendering used by the table dump: terms in the canonical order,
  /// e.g. "X0^2*Y1 + X1*Y0^2 + 2*X1*Y1".
  std::string to_string() const;

  static bool mono_less(const Monomial& a, const Monomial& b);

 private:
  explicit IntegerPolynomial(std::vector<Term> terms) : terms_(std::move(terms)) {}
  static IntegerPolynomial from_map(std::vector<Term>&& raw);

  std::vector<Term> terms_;
};

/// Ghost map over the integers: component i is sum_{j<=i} p^j c_j^{p^(i-j)}.
std::vector<mpz_class> ghost(const std::vector<mpz_class>& coords, unsigned p);

struct GhostCheck {
  bool ok = true;
  std::string first_failure;
  explicit operator bool() const { return ok; }
};

/// The universal p-typical addition/multiplication/negation polynomials
/// S_0..S_n, P_0..P_n, I_0..I_n, produced by the ghost-component recursion
/// over the integers. All divisions in the recursion are checked exact, and
/// the ghost identities are re-verified symbolically at construction.
class WittTable {
 public:
  static std::shared_ptr<const WittTable> make(unsigned p, unsigned depth);

  unsigned p() const { return p_; }
  unsigned depth() const { return depth_; }
  const IntegerPolynomial& sum(unsigned i) const { return S_.at(i); }
  const IntegerPolynomial& product(unsigned i) const { return P_.at(i); }
  const IntegerPolynomial& negation(unsigned i) const { return I_.at(i); }

  /// Symbolic ghost-compatibility check of all three families, re-verified
  /// numerically at 100 pseudo-random integer points.
  GhostCheck verify_ghost_identities() const;

  /// One polynomial per line: "S<i> = ...", then P, then I.
  std::string dump() const;

 private:
  WittTable(unsigned p, unsigned depth);

  unsigned p_, depth_;
  std::vector<IntegerPolynomial> S_, P_, I_;
};

using WittTableRef = std::shared_ptr<const WittTable>;

}  // namespace greenberg
