#include <doctest.h>

#include "greenberg/filtration.hpp"
#include "support.hpp"

using namespace greenberg;

namespace {
constexpr std::uint64_t kGuard = 10000000;
}

TEST_CASE("kernel towers") {
  auto f = Filtration::compute(
      GroupPattern::general_linear(LocalRing::parse("F3[t]/t^2"), 2));
  CHECK(f.length() == 2);
  CHECK(f.kernel(1).order() == 81);  // q^(n^2)
  CHECK(f.kernel(2).order() == 1);

  auto g = Filtration::compute(GroupPattern::general_linear(LocalRing::parse("Z/8"), 2));
  CHECK(g.kernel(1).order() == 256);
  CHECK(g.kernel(2).order() == 16);
  CHECK(g.kernel(3).order() == 1);
  for (const auto& level : g.levels()) CHECK(level.elementary_abelian);

  auto field_case =
      Filtration::compute(GroupPattern::general_linear(LocalRing::parse("F3[t]/t^1"), 2));
  CHECK(field_case.length() == 1);
  CHECK(field_case.kernel(1).order() == 1);
}

TEST_CASE("layers are central stepwise: commutators climb the filtration") {
  auto A = LocalRing::parse("Z/8");
  auto G = GroupPattern::special_linear(A, 2);
  auto f = Filtration::compute(G);
  Rng rng(0);
  const auto& k1 = f.kernel(1).elements();
  const auto& k2 = f.kernel(2).elements();
  auto kernel2 = GroupPattern::congruence_kernel(Ambient::SL, A, 2, 2);
  for (int s = 0; s < 200; ++s) {
    const Matrix& x = k1[rng.below(k1.size())];
    const Matrix& y = k1[rng.below(k1.size())];
    CHECK(kernel2.contains(x * y * mat_inv(x) * mat_inv(y)));
    // [G^1, G^2] lands in G^3 = 1
    const Matrix& z = k2[rng.below(k2.size())];
    CHECK((x * z * mat_inv(x) * mat_inv(z)).is_identity());
  }
}

TEST_CASE("top layer is the additive matrix group of the residue field") {
  auto f32 = Filtration::compute(
      GroupPattern::general_linear(LocalRing::parse("F3[t]/t^2"), 2));
  CHECK(f32.kernel(1).order() == 81);  // M_2(F_3) as a set
  CHECK(layer_iso_check(f32, 1));

  auto sl = Filtration::compute(GroupPattern::special_linear(LocalRing::parse("Z/4"), 2));
  CHECK(sl.kernel(1).order() == 8);  // trace-zero 2x2 over F_2
  CHECK(layer_iso_check(sl, 1));

  auto deep = Filtration::compute(GroupPattern::special_linear(LocalRing::parse("Z/8"), 2));
  CHECK(layer_iso_check(deep, 2));
  CHECK_THROWS_AS(layer_iso_check(deep, 1), Error);  // top layer only

  // Galois-ring case exercises the Frobenius twist in the layer embedding
  auto galois = Filtration::compute(GroupPattern::general_linear(LocalRing::parse("W2(F4)"), 2));
  CHECK(layer_iso_check(galois, 1));

  // the identity additive matrix maps to the identity element
  auto A = LocalRing::parse("F3[t]/t^2");
  CHECK(A->layer_embed(1, 0) == 0);
}

TEST_CASE("identity-component slices") {
  Rng rng(0);
  auto A = LocalRing::parse("F3[t]/t^2");
  auto k = A->reduced_ring(1);

  // monomial points whose reduction is diagonal are exactly the torus points
  PointSet mono = PointSet::from_pattern(GroupPattern::monomial(Ambient::GL, A, 2), kGuard, rng);
  PointSet torus =
      PointSet::from_pattern(GroupPattern::diagonal_torus(Ambient::GL, A, 2), kGuard, rng);
  PointSet comp = component_points(mono, GroupPattern::diagonal_torus(Ambient::GL, k, 2), rng);
  CHECK(comp.set_equal(torus));
  // index equals the component count of the residue pattern: the Weyl count
  CHECK(mono.size() / comp.size() ==
        GroupPattern::monomial(Ambient::GL, k, 2).order() /
            GroupPattern::diagonal_torus(Ambient::GL, k, 2).order());

  // whole group with the full residue group: everything
  PointSet G = PointSet::from_pattern(GroupPattern::general_linear(A, 2), kGuard, rng);
  CHECK(component_points(G, GroupPattern::general_linear(k, 2), rng).set_equal(G));

  // kernel with the trivial residue component: everything again
  PointSet kern =
      PointSet::from_pattern(GroupPattern::congruence_kernel(Ambient::GL, A, 2, 1), kGuard, rng);
  PointSet kern_comp =
      component_points(kern, GroupPattern::congruence_kernel(Ambient::GL, k, 2, 1), rng);
  CHECK(kern_comp.set_equal(kern));

  CHECK_THROWS_AS(component_points(mono, GroupPattern::diagonal_torus(Ambient::GL, A, 2), rng),
                  MismatchError);
}

TEST_CASE("unipotent radical points") {
  Rng rng(0);
  auto A = LocalRing::parse("F3[t]/t^2");
  auto k = A->reduced_ring(1);

  // reductive case: preimage of the trivial radical is the congruence kernel
  PointSet rad = unipotent_radical_points(GroupPattern::general_linear(A, 2),
                                          GroupPattern::congruence_kernel(Ambient::GL, k, 2, 1));
  PointSet kern =
      PointSet::from_pattern(GroupPattern::congruence_kernel(Ambient::GL, A, 2, 1), kGuard, rng);
  CHECK(rad.set_equal(kern));
  CHECK(rad.size() == 81);

  // Borel case over F2: the preimage of the residue unipotent has 32 points
  auto B2 = LocalRing::parse("F2[t]/t^2");
  PointSet brad =
      unipotent_radical_points(GroupPattern::std_borel(Ambient::GL, B2, 2),
                               GroupPattern::std_unipotent(Ambient::GL, B2->reduced_ring(1), 2));
  CHECK(brad.size() == 32);

  // over a field the radical of the reductive group is trivial
  PointSet frad = unipotent_radical_points(GroupPattern::general_linear(k, 2),
                                           GroupPattern::congruence_kernel(Ambient::GL, k, 2, 1));
  CHECK(frad.size() == 1);
}

TEST_CASE("largest normal p-subgroup oracle") {
  Rng rng(0);
  // over the residue field: trivial for GL_2(F_3)
  auto f3 = LocalRing::parse("F3[t]/t^1");
  PointSet Gf = PointSet::from_pattern(GroupPattern::general_linear(f3, 2), kGuard, rng);
  CHECK(largest_normal_p_subgroup(Gf).size() == 1);

  // over the length-2 ring: exactly the congruence kernel
  auto A = LocalRing::parse("F3[t]/t^2");
  PointSet G = PointSet::from_pattern(GroupPattern::general_linear(A, 2), kGuard, rng);
  PointSet Op = largest_normal_p_subgroup(G);
  PointSet kern =
      PointSet::from_pattern(GroupPattern::congruence_kernel(Ambient::GL, A, 2, 1), kGuard, rng);
  CHECK(Op.set_equal(kern));

  // p-group input: the whole group
  auto B2 = LocalRing::parse("F2[t]/t^2");
  PointSet U = PointSet::from_pattern(GroupPattern::std_unipotent(Ambient::GL, B2, 3), kGuard, rng);
  CHECK(largest_normal_p_subgroup(U).set_equal(U));

  // result is a normal p-subgroup
  const auto& gel = G.elements();
  CHECK(testsupport::is_normal_in(Op.elements(), gel));
  CHECK(testsupport::is_p_power(Op.size(), 3));
}

TEST_CASE("oracle agrees with the full subgroup lattice on small groups") {
  Rng rng(0);
  auto z4 = LocalRing::parse("Z/4");
  PointSet S = PointSet::from_pattern(GroupPattern::special_linear(z4, 2), kGuard, rng);
  const auto subs = testsupport::all_subgroups(S.elements());
  std::size_t best = 1;
  for (const auto& sub : subs)
    if (testsupport::is_p_power(sub.size(), 2) && testsupport::is_normal_in(sub, S.elements()))
      best = std::max(best, sub.size());
  PointSet Op = largest_normal_p_subgroup(S);
  CHECK(Op.size() == best);
  CHECK(Op.size() == 8);  // the congruence kernel of SL_2(Z/4)
  CHECK(Op.set_equal(
      PointSet::from_pattern(GroupPattern::congruence_kernel(Ambient::SL, z4, 2, 1), kGuard, rng)));
  // every normal p-subgroup is contained in the oracle's answer
  for (const auto& sub : subs)
    if (testsupport::is_p_power(sub.size(), 2) && testsupport::is_normal_in(sub, S.elements()))
      for (const Matrix& m : sub) CHECK(Op.contains(m));
}

TEST_CASE("borel preimage identity") {
  FiltrationOptions opts;
  for (const char* spec : {"F2[t]/t^2", "F3[t]/t^2"}) {
    auto A = LocalRing::parse(spec);
    CHECK(borel_preimage_check(GroupPattern::general_linear(A, 2),
                               GroupPattern::std_borel(Ambient::GL, A, 2), opts));
  }
  // counts: |B(k)| q^(n^2) on both sides
  Rng rng(0);
  auto A = LocalRing::parse("F3[t]/t^2");
  auto pre = GroupPattern::full_preimage(
      Ambient::GL, A, GroupPattern::std_borel(Ambient::GL, A->reduced_ring(1), 2));
  CHECK(pre.order() == 972);

  auto field = LocalRing::parse("F3[t]/t^1");
  CHECK(borel_preimage_check(GroupPattern::general_linear(field, 2),
                             GroupPattern::std_borel(Ambient::GL, field, 2), opts));
}
