#include <doctest.h>

#include "greenberg/finite_field.hpp"

using namespace greenberg;

TEST_CASE("primality and irreducibility") {
  CHECK(FiniteField::is_prime(2));
  CHECK(FiniteField::is_prime(31));
  CHECK_FALSE(FiniteField::is_prime(1));
  CHECK_FALSE(FiniteField::is_prime(9));

  // x^2 + x + 1 over F_2 is the only irreducible quadratic
  CHECK(FiniteField::is_irreducible(2, {1, 1}));
  CHECK_FALSE(FiniteField::is_irreducible(2, {1, 0}));  // x^2 + 1 = (x+1)^2
  CHECK_FALSE(FiniteField::is_irreducible(2, {0, 0}));  // x^2
  // x^2 + 1 over F_3: -1 is not a square
  CHECK(FiniteField::is_irreducible(3, {1, 0}));
}

TEST_CASE("default modulus is the lex-smallest irreducible") {
  CHECK(FiniteField::make(2, 2)->modulus() == std::vector<unsigned>{1, 1});
  // low-degree-first comparison puts x^3 + x^2 + 1 before x^3 + x + 1
  CHECK(FiniteField::make(2, 3)->modulus() == std::vector<unsigned>{1, 0, 1});
  CHECK(FiniteField::make(3, 2)->modulus() == std::vector<unsigned>{1, 0});
}

TEST_CASE("field axioms exhaustively at small q") {
  for (auto [p, d] : std::vector<std::pair<unsigned, unsigned>>{
           {2, 1}, {3, 1}, {5, 1}, {2, 2}, {3, 2}, {2, 3}, {7, 1}, {2, 6}}) {
    auto k = FiniteField::make(p, d);
    const unsigned q = k->q();
    REQUIRE(q <= 64);
    for (ff_elt a = 0; a < q; ++a) {
      CHECK(k->add(a, 0) == a);
      CHECK(k->mul(a, 1) == a);
      CHECK(k->add(a, k->neg(a)) == 0);
      if (a != 0) CHECK(k->mul(a, k->inv(a)) == 1);
      for (ff_elt b = 0; b < q; ++b) {
        CHECK(k->add(a, b) == k->add(b, a));
        CHECK(k->mul(a, b) == k->mul(b, a));
        for (ff_elt c = 0; c < q; ++c) {
          CHECK(k->mul(a, k->mul(b, c)) == k->mul(k->mul(a, b), c));
          CHECK(k->add(a, k->add(b, c)) == k->add(k->add(a, b), c));
          CHECK(k->mul(a, k->add(b, c)) == k->add(k->mul(a, b), k->mul(a, c)));
        }
      }
    }
  }
}

TEST_CASE("frobenius is a field automorphism of order d") {
  auto k = FiniteField::make(2, 3);
  for (ff_elt a = 0; a < k->q(); ++a) {
    CHECK(k->frobenius_iter(a, 3) == a);
    CHECK(k->frobenius_inv_iter(k->frobenius(a), 1) == a);
    for (ff_elt b = 0; b < k->q(); ++b)
      CHECK(k->frobenius(k->add(a, b)) == k->add(k->frobenius(a), k->frobenius(b)));
  }
}

TEST_CASE("construction rejections") {
  CHECK_THROWS_AS(FiniteField::make(4, 1), Error);        // not prime
  CHECK_THROWS_AS(FiniteField::make(2, 7), Error);        // degree cap
  CHECK_THROWS_AS(FiniteField::make(2, 2, {1, 0}), Error);  // reducible modulus
}

TEST_CASE("user modulus is honored") {
  // x^3 + x + 1 is the other irreducible cubic over F_2
  auto k = FiniteField::make(2, 3, {1, 1, 0});
  CHECK(k->modulus() == std::vector<unsigned>{1, 1, 0});
  // x^3 = x + 1 under this modulus: index of x is 2, x^3 = mul(mul(2,2),2)
  CHECK(k->mul(k->mul(2, 2), 2) == (2 + 1));
}
