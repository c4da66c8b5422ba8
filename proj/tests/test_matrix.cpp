#include <doctest.h>

#include "greenberg/group_pattern.hpp"
#include "support.hpp"

using namespace greenberg;

TEST_CASE("identity, product, comparison") {
  auto A = LocalRing::parse("F3[t]/t^2");
  Matrix id = Matrix::identity(A.get(), 2);
  CHECK(det(id) == A->one());
  CHECK(mat_inv(id) == id);
  CHECK(id * id == id);
  CHECK(Matrix::cmp(id, id) == 0);
  CHECK_THROWS_AS(Matrix(A.get(), 7), Error);
}

TEST_CASE("unipotent inverse") {
  auto A = LocalRing::parse("F3[t]/t^2");
  const ring_code t = A->pi();
  Matrix m = Matrix::identity(A.get(), 2);
  m.set(0, 1, t);
  Matrix expect = Matrix::identity(A.get(), 2);
  expect.set(0, 1, A->neg(t));
  CHECK(mat_inv(m) == expect);
}

TEST_CASE("random invertibles over Z/8 invert exactly") {
  auto A = LocalRing::parse("Z/8");
  auto gl3 = GroupPattern::general_linear(A, 3);
  Rng rng(0);
  const Matrix id = Matrix::identity(A.get(), 3);
  for (int s = 0; s < 500; ++s) {
    Matrix g = gl3.random_element(rng);
    CHECK(g * mat_inv(g) == id);
    CHECK(mat_inv(g) * g == id);
  }
}

TEST_CASE("determinant against the cofactor oracle") {
  Rng rng(1);
  for (const char* spec : {"F3[t]/t^2", "Z/8", "F4[t]/t^2"}) {
    auto A = LocalRing::parse(spec);
    for (unsigned n = 1; n <= 3; ++n) {
      for (int s = 0; s < 150; ++s) {
        Matrix m(A.get(), n);  // arbitrary, often singular
        for (unsigned i = 0; i < n; ++i)
          for (unsigned j = 0; j < n; ++j)
            m.set(i, j, static_cast<ring_code>(rng.below(A->cardinality())));
        CHECK(det(m) == testsupport::det_cofactor(m));
      }
    }
  }
}

TEST_CASE("inverse against the adjugate for n <= 3") {
  Rng rng(2);
  auto A = LocalRing::parse("Z/9");
  for (unsigned n = 2; n <= 3; ++n) {
    auto gl = GroupPattern::general_linear(A, n);
    for (int s = 0; s < 100; ++s) {
      Matrix g = gl.random_element(rng);
      // adjugate from cofactors: adj[j][i] = (-1)^(i+j) minor(i, j)
      Matrix adj(A.get(), n);
      for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
          Matrix minor(A.get(), n - 1);
          unsigned rr = 0;
          for (unsigned r2 = 0; r2 < n; ++r2) {
            if (r2 == i) continue;
            unsigned cc = 0;
            for (unsigned c2 = 0; c2 < n; ++c2) {
              if (c2 == j) continue;
              minor.set(rr, cc++, g.at(r2, c2));
            }
            ++rr;
          }
          ring_code cof = n == 2 ? minor.at(0, 0) : testsupport::det_cofactor(minor);
          if ((i + j) % 2 == 1) cof = A->neg(cof);
          adj.set(j, i, cof);
        }
      const ring_code dinv = A->inv_unit(det(g));
      Matrix expected(A.get(), n);
      for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) expected.set(i, j, A->mul(adj.at(i, j), dinv));
      CHECK(mat_inv(g) == expected);
    }
  }
}

TEST_CASE("singular matrices are rejected by inversion") {
  auto A = LocalRing::parse("F3[t]/t^2");
  Matrix m(A.get(), 2);
  m.set(0, 0, A->pi());
  m.set(1, 1, A->one());
  CHECK(det(m) == A->pi());
  CHECK_THROWS_AS(mat_inv(m), SingularMatrixError);
}

TEST_CASE("serialization format") {
  auto A = LocalRing::parse("F3[t]/t^2");
  Matrix m = Matrix::identity(A.get(), 2);
  m.set(0, 1, A->from_digits({2, 1}));
  CHECK(m.serialize() == "2;F3[t]/t^2;10,21,00,10");

  // large residue fields switch to dot-separated digit indices
  auto W = LocalRing::parse("W2(F49)");
  CHECK(W->element_string(W->from_digits({40, 7})) == "40.7");
}

TEST_CASE("entrywise reduction is a homomorphism preserving det") {
  auto A = LocalRing::parse("Z/8");
  auto gl2 = GroupPattern::general_linear(A, 2);
  Rng rng(3);
  for (int s = 0; s < 500; ++s) {
    Matrix g = gl2.random_element(rng);
    Matrix h = gl2.random_element(rng);
    CHECK((g * h).reduced(2) == g.reduced(2) * h.reduced(2));
    CHECK(A->reduce(det(g), 1) == det(g.reduced(1)));
  }
}
