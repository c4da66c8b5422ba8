#include <doctest.h>

#include <map>
#include <set>

#include "greenberg/local_ring.hpp"
#include "greenberg/rng.hpp"

using namespace greenberg;

namespace {

std::vector<Ring> test_rings() {
  return {
      LocalRing::parse("F2[t]/t^2"), LocalRing::parse("F3[t]/t^2"), LocalRing::parse("F4[t]/t^2"),
      LocalRing::parse("F3[t]/t^3"), LocalRing::parse("Z/4"),       LocalRing::parse("Z/8"),
      LocalRing::parse("Z/9"),       LocalRing::parse("Z/25"),      LocalRing::parse("W2(F4)"),
      LocalRing::parse("F5[t]/t^1"), LocalRing::parse("W3(F4)"),    LocalRing::parse("Z/32"),
  };
}

}  // namespace

TEST_CASE("descriptor grammar") {
  auto a = LocalRing::parse("F2[t]/t^2");
  CHECK(a->family() == RingFamily::EqualChar);
  CHECK(a->residue_q() == 2);
  CHECK(a->length() == 2);
  CHECK(a->cardinality() == 4);

  auto b = LocalRing::parse("W2(F3)");
  CHECK(b->family() == RingFamily::Unramified);
  CHECK(b->cardinality() == 9);

  // Z/9 is an alias for W2(F3): interning makes them the same object
  CHECK(LocalRing::parse("Z/9").get() == b.get());
  CHECK(LocalRing::parse("Z/2^3").get() == LocalRing::parse("Z/8").get());

  CHECK(a->spec_string() == "F2[t]/t^2");
  CHECK(b->spec_string() == "Z/9");
  CHECK(LocalRing::parse("W2(F4)")->spec_string() == "W2(F4)");
}

TEST_CASE("descriptor errors cite the offending token") {
  CHECK_THROWS_WITH_AS(LocalRing::parse("F3[t]/t 2"), doctest::Contains("whitespace"), ParseError);
  CHECK_THROWS_AS(LocalRing::parse("Z/12"), ParseError);    // not a prime power
  CHECK_THROWS_AS(LocalRing::parse("Z/4^2"), ParseError);   // base must be prime
  CHECK_THROWS_AS(LocalRing::parse("F6[t]/t^2"), ParseError);
  CHECK_THROWS_AS(LocalRing::parse("F3[t]/t^0"), ParseError);
  CHECK_THROWS_AS(LocalRing::parse("Q/4"), ParseError);
  CHECK_THROWS_AS(LocalRing::parse("Z/9extra"), ParseError);
  try {
    LocalRing::parse("Z/12");
    FAIL("expected throw");
  } catch (const ParseError& e) {
    CHECK(e.token() == "12");
  }
}

TEST_CASE("Witt coordinate arithmetic matches the universal polynomials") {
  auto z4 = LocalRing::parse("Z/4");
  const ring_code one = z4->from_digits({1, 0});
  const ring_code t = z4->from_digits({0, 1});
  CHECK(z4->add(one, one) == t);       // S_1 = X1 + Y1 + X0 Y0 over F_2
  CHECK(z4->mul(one, t) == t);         // P_1 = X0^2 Y1 + X1 Y0^2 mod 2
  CHECK(z4->add(t, t) == z4->zero());  // 2 + 2 = 0
}

TEST_CASE("identity laws and canonical form") {
  for (const Ring& A : test_rings()) {
    for (ring_code x = 0; x < A->cardinality(); ++x) {
      CHECK(A->add(x, A->zero()) == x);
      CHECK(A->mul(x, A->one()) == x);
      CHECK(A->add(x, A->neg(x)) == A->zero());
      CHECK(A->from_digits(A->digits(x)) == x);
    }
  }
}

TEST_CASE("ring axioms: exhaustive at small cardinality, sampled above") {
  for (const Ring& A : test_rings()) {
    const std::uint64_t card = A->cardinality();
    auto check_triple = [&](ring_code x, ring_code y, ring_code z) {
      CHECK(A->add(x, y) == A->add(y, x));
      CHECK(A->mul(x, y) == A->mul(y, x));
      CHECK(A->add(A->add(x, y), z) == A->add(x, A->add(y, z)));
      CHECK(A->mul(A->mul(x, y), z) == A->mul(x, A->mul(y, z)));
      CHECK(A->mul(x, A->add(y, z)) == A->add(A->mul(x, y), A->mul(x, z)));
    };
    if (card * card * card <= 2000000) {
      for (ring_code x = 0; x < card; ++x)
        for (ring_code y = 0; y < card; ++y)
          for (ring_code z = 0; z < card; ++z) check_triple(x, y, z);
    } else {
      Rng rng(1);
      for (int s = 0; s < 2000; ++s)
        check_triple(static_cast<ring_code>(rng.below(card)),
                     static_cast<ring_code>(rng.below(card)),
                     static_cast<ring_code>(rng.below(card)));
    }
  }
}

TEST_CASE("units: count, inverses, error payload") {
  for (const Ring& A : test_rings()) {
    const unsigned q = A->residue_q();
    std::uint32_t units = 0;
    for (ring_code x = 0; x < A->cardinality(); ++x) {
      if (A->is_unit(x)) {
        ++units;
        CHECK(A->mul(x, A->inv_unit(x)) == A->one());
      } else {
        CHECK_THROWS_AS(A->inv_unit(x), NonUnitError);
      }
    }
    CHECK(units == A->cardinality() - A->cardinality() / q);
    CHECK(units == A->unit_count());
  }

  auto f3t2 = LocalRing::parse("F3[t]/t^2");
  const ring_code u = f3t2->from_digits({1, 1});   // 1 + t
  const ring_code v = f3t2->from_digits({1, 2});   // 1 - t
  CHECK(f3t2->inv_unit(u) == v);

  auto z4 = LocalRing::parse("Z/4");
  CHECK_FALSE(z4->is_unit(z4->from_digits({0, 1})));
  CHECK(z4->inv_unit(z4->one()) == z4->one());
}

TEST_CASE("maximal ideal nilpotency") {
  for (const Ring& A : test_rings()) {
    const unsigned r = A->length();
    if (r >= 2) {
      CHECK(A->pi_power(r - 1) != A->zero());
      CHECK(A->mul(A->pi_power(r - 1), A->pi()) == A->zero());
      // product of any r non-units is zero
      Rng rng(2);
      for (int s = 0; s < 100; ++s) {
        ring_code prod = A->one();
        for (unsigned i = 0; i < r; ++i) {
          ring_code x;
          do {
            x = static_cast<ring_code>(rng.below(A->cardinality()));
          } while (A->is_unit(x));
          prod = A->mul(prod, x);
        }
        CHECK(prod == A->zero());
      }
    }
  }
}

TEST_CASE("reduction maps") {
  auto f3t3 = LocalRing::parse("F3[t]/t^3");
  // 1 + 2t + t^2 -> (length 2) 1 + 2t
  CHECK(f3t3->reduce(f3t3->from_digits({1, 2, 1}), 2) ==
        f3t3->reduced_ring(2)->from_digits({1, 2}));

  auto w2f3 = LocalRing::parse("W2(F3)");
  for (ring_code x = 0; x < w2f3->cardinality(); ++x)
    CHECK(w2f3->reduce(x, 1) == w2f3->digits(x)[0]);

  for (const Ring& A : test_rings()) {
    const unsigned r = A->length();
    if (r < 2) continue;
    Rng rng(3);
    Ring half = A->reduced_ring(r - 1);
    // homomorphism on random pairs
    for (int s = 0; s < 200; ++s) {
      const ring_code x = static_cast<ring_code>(rng.below(A->cardinality()));
      const ring_code y = static_cast<ring_code>(rng.below(A->cardinality()));
      CHECK(A->reduce(A->mul(x, y), r - 1) == half->mul(A->reduce(x, r - 1), A->reduce(y, r - 1)));
      CHECK(A->reduce(A->add(x, y), r - 1) == half->add(A->reduce(x, r - 1), A->reduce(y, r - 1)));
      CHECK(A->reduce(A->reduce(x, r - 1), 1) == A->reduce(x, 1));
    }
    // surjective with fibers of size q^(r-r')
    for (unsigned r2 = 1; r2 < r; ++r2) {
      std::map<ring_code, unsigned> fibers;
      for (ring_code x = 0; x < A->cardinality(); ++x) ++fibers[A->reduce(x, r2)];
      CHECK(fibers.size() == A->reduced_ring(r2)->cardinality());
      std::uint64_t expected = 1;
      for (unsigned i = 0; i < r - r2; ++i) expected *= A->residue_q();
      for (const auto& [img, count] : fibers) CHECK(count == expected);
    }
    CHECK_THROWS_AS(A->reduce(0, 0), Error);
    CHECK_THROWS_AS(A->reduce(0, r + 1), Error);
  }
}

TEST_CASE("teichmuller section") {
  auto z4 = LocalRing::parse("Z/4");
  CHECK(z4->teichmuller(1) == z4->from_digits({1, 0}));

  // multiplicative over all pairs, residue-compatible
  for (const Ring& A : {LocalRing::parse("W2(F3)"), LocalRing::parse("F4[t]/t^2"),
                        LocalRing::parse("W2(F4)"), LocalRing::parse("Z/8")}) {
    const FiniteField& k = A->base();
    for (ff_elt a = 0; a < k.q(); ++a) {
      CHECK(A->residue(A->teichmuller(a)) == a);
      for (ff_elt b = 0; b < k.q(); ++b)
        CHECK(A->mul(A->teichmuller(a), A->teichmuller(b)) == A->teichmuller(k.mul(a, b)));
    }
  }

  // constant embedding for equal characteristic
  auto f4t2 = LocalRing::parse("F4[t]/t^2");
  for (ff_elt a = 0; a < 4; ++a) CHECK(f4t2->teichmuller(a) == f4t2->from_digits({a, 0}));
}

TEST_CASE("W_r(F_p) is Z/p^r via the Teichmuller expansion") {
  // Independent oracle: plain integer arithmetic modulo p^r, with
  // phi(a_0..a_{r-1}) = sum tau(a_i) p^i and tau(a) = a^(p^(r-1)) mod p^r.
  // (2,5) exercises the deepest supported polynomial table.
  for (auto [p, r] : std::vector<std::pair<unsigned, unsigned>>{
           {2, 2}, {2, 3}, {3, 2}, {5, 2}, {2, 5}, {3, 3}}) {
    Ring A = LocalRing::make(RingFamily::Unramified, FiniteField::make(p, 1), r);
    std::uint64_t mod = 1;
    for (unsigned i = 0; i < r; ++i) mod *= p;
    auto tau = [&](std::uint64_t a) {
      std::uint64_t e = 1;
      for (unsigned i = 0; i + 1 < r; ++i) e *= p;
      std::uint64_t acc = 1 % mod;
      for (std::uint64_t i = 0; i < e; ++i) acc = acc * a % mod;
      return acc;
    };
    auto phi = [&](ring_code x) {
      std::uint64_t total = 0, pi = 1;
      for (ff_elt d : A->digits(x)) {
        total = (total + tau(d) * pi) % mod;
        pi *= p;
      }
      return total;
    };
    // bijective
    std::set<std::uint64_t> image;
    for (ring_code x = 0; x < A->cardinality(); ++x) image.insert(phi(x));
    CHECK(image.size() == mod);
    // ring homomorphism, exhaustively
    for (ring_code x = 0; x < A->cardinality(); ++x)
      for (ring_code y = 0; y < A->cardinality(); ++y) {
        CHECK(phi(A->add(x, y)) == (phi(x) + phi(y)) % mod);
        CHECK(phi(A->mul(x, y)) == phi(x) * phi(y) % mod);
      }
  }
}

TEST_CASE("canonical order is lexicographic on digits") {
  for (const Ring& A : test_rings()) {
    std::set<std::uint32_t> ranks;
    for (ring_code x = 0; x < A->cardinality(); ++x) ranks.insert(A->rank(x));
    CHECK(ranks.size() == A->cardinality());
    for (ring_code x = 0; x < A->cardinality(); ++x) {
      CHECK(A->by_rank(A->rank(x)) == x);
      for (ring_code y = 0; y < A->cardinality(); ++y) {
        const int c = A->cmp(x, y);
        CHECK(c == (A->digits(x) < A->digits(y) ? -1 : (x == y ? 0 : 1)));
      }
    }
  }
}

TEST_CASE("layer coordinates: additive, Frobenius-aware, module rule") {
  for (const Ring& A : {LocalRing::parse("Z/8"), LocalRing::parse("F4[t]/t^2"),
                        LocalRing::parse("W2(F4)"), LocalRing::parse("F3[t]/t^3"),
                        LocalRing::parse("W3(F4)")}) {
    const FiniteField& k = A->base();
    for (unsigned l = 1; l < A->length(); ++l) {
      for (ff_elt c = 0; c < k.q(); ++c) {
        const ring_code e = A->layer_embed(l, c);
        CHECK(A->reduce(e, l) == 0);
        CHECK(A->layer_coord(l, e) == c);
        // psi_l identities live in the layer m^l / m^(l+1): reduce first
        for (ff_elt c2 = 0; c2 < k.q(); ++c2)
          CHECK(A->reduce(A->add(e, A->layer_embed(l, c2)), l + 1) ==
                A->reduce(A->layer_embed(l, k.add(c, c2)), l + 1));
        // d * psi_l(c) = psi_l(residue(d) c), again modulo m^(l+1)
        for (ring_code d = 0; d < A->cardinality(); ++d)
          CHECK(A->reduce(A->mul(d, e), l + 1) ==
                A->reduce(A->layer_embed(l, k.mul(A->residue(d), c)), l + 1));
      }
    }
  }
}

TEST_CASE("element wrapper enforces matching owners") {
  auto a = LocalRing::parse("Z/4");
  auto b = LocalRing::parse("F2[t]/t^2");
  RingElement x(a.get(), 1), y(b.get(), 1);
  CHECK_THROWS_AS(x + y, MismatchError);
  CHECK((x + x).code() == a->from_digits({0, 1}));
  CHECK(x.coords() == std::vector<ff_elt>{1, 0});
}

TEST_CASE("rings over user-modulus fields are interned separately") {
  auto default_field = FiniteField::make(2, 3);
  auto other_field = FiniteField::make(2, 3, {1, 1, 0});
  Ring a = LocalRing::make(RingFamily::EqualChar, default_field, 2);
  Ring b = LocalRing::make(RingFamily::EqualChar, other_field, 2);
  CHECK(a.get() != b.get());
  CHECK(a->base().modulus() != b->base().modulus());
  // arithmetic follows the modulus: x * x^2 differs between the two
  const ff_elt x = 2;
  CHECK(a->base().mul(a->base().mul(x, x), x) != b->base().mul(b->base().mul(x, x), x));
}

TEST_CASE("cardinality and family caps") {
  CHECK_THROWS_AS(LocalRing::parse("W6(F2)"), Error);        // Witt length cap
  CHECK_THROWS_AS(LocalRing::parse("F64[t]/t^3"), Error);    // cardinality cap
  CHECK_NOTHROW(LocalRing::parse("W5(F2)"));
  CHECK(LocalRing::parse("W5(F2)")->cardinality() == 32);
}
