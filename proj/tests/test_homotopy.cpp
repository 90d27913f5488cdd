#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tamloday/homotopy.hpp"

using namespace tamloday;

namespace {

TambaraPtr zmod(long m, int p) { return constant_tambara(integers_mod(m), p, "Z/" + std::to_string(m)); }

// Explicit map from π_0 of a level-0 box of copies of r (all orbits fixed) to r by multiplication.
TambaraMorphism multiply_out(const SimplicialTambara& l, const QuotientTambara& pi0, const TambaraPtr& r) {
  const BoxTambara& b = l.boxes[0];
  std::vector<TambaraMorphism> ids(b.factors.size(), identity_morphism(r));
  return descend_to_quotient(pi0, box_universal(b, r, ids));
}

}  // namespace

TEST(Homotopy, ConstantObjectHasPiZeroOnly) {
  TambaraPtr t = burnside_tambara(3);
  SimplicialTambara c = constant_simplicial(t, 3);
  PiResult p0 = pi_n(c, 0);
  EXPECT_TRUE(is_isomorphism(unit_map(t, p0.tambara)));
  for (int n = 1; n <= 2; ++n) EXPECT_TRUE(is_zero(pi_n(c, n).mackey)) << n;
}

TEST(Homotopy, RotationCircleWithIntegersGivesBurnside) {
  for (int p : {2, 3}) {
    SimplicialTambara l = loday(rotation_circle(p), constant_tambara(integers(), p, "Z"), 3);
    PiResult p0 = pi_n(l, 0);
    EXPECT_TRUE(is_isomorphism(unit_map(burnside_tambara(p), p0.tambara))) << p;
    EXPECT_TRUE(check_tambara_axioms(*p0.tambara).empty());
    for (int n = 1; n <= 2; ++n) EXPECT_TRUE(is_zero(pi_n(l, n).mackey)) << p << " " << n;
  }
}

TEST(Homotopy, ReflectionCircleWithIntegersGivesIntegers) {
  TambaraPtr z = constant_tambara(integers(), 2, "Z");
  SimplicialTambara l = loday(reflection_circle(), z, 3);
  QuotientTambara q = pi_0_quotient(l);
  TambaraMorphism m = multiply_out(l, q, z);
  EXPECT_TRUE(check_tambara_isomorphism(m).empty());
  for (int n = 1; n <= 2; ++n) EXPECT_TRUE(is_zero(pi_n(l, n).mackey)) << n;
}

TEST(Homotopy, SolidRingOnReflectionCircleIsConcentratedInDegreeZero) {
  TambaraPtr r = zmod(3, 2);
  Coefficient c = make_coefficient(r);
  SimplicialTambara l = loday(reflection_circle(), c, 3);
  BoxOver bo = box_over(r, c.norm.t, r, c.counit, c.counit);
  QuotientTambara q = pi_0_quotient(l);
  const BoxTambara& b0 = l.boxes[0];
  TambaraMorphism to_pi0 = descend_to_quotient(
      bo.quotient, compose(q.projection, box_universal(bo.box, b0.t, {b0.insertion(0), b0.insertion(1)})));
  EXPECT_TRUE(check_tambara_isomorphism(to_pi0).empty());
  PiResult p0 = pi_n(l, 0);
  EXPECT_EQ(p0.mackey.fixed.describe(), "Z/3");
  EXPECT_EQ(p0.mackey.free.describe(), "Z/3");
  for (int n = 1; n <= 2; ++n) EXPECT_TRUE(is_zero(pi_n(l, n).mackey)) << n;
}

TEST(Homotopy, HigherPiAreMackeyFunctors) {
  SimplicialTambara l = loday(rotation_circle(2), zmod(4, 2), 3);
  for (int n = 0; n <= 2; ++n) EXPECT_TRUE(check_mackey_axioms(pi_n(l, n).mackey).empty()) << n;
  // F_2[e]/(e^2) has nonzero first Hochschild homology.
  RingObject dual = RingObject::from_presentation(2, {Vec{2, 0}, Vec{0, 2}}, Vec{1, 0}, {{{1, 1}, Vec{0, 0}}});
  SimplicialTambara s = loday(rotation_quotient_circle(2), constant_tambara(dual, 2), 2);
  PiResult p1 = pi_n(s, 1);
  EXPECT_TRUE(check_mackey_axioms(p1.mackey).empty());
  EXPECT_FALSE(is_zero(p1.mackey));
}

TEST(Homotopy, InsufficientTruncationThrows) {
  SimplicialTambara l = loday(rotation_circle(2), zmod(4, 2), 2);
  EXPECT_THROW(pi_n(l, 2), AlgebraError);
  EXPECT_NO_THROW(pi_n(l, 1));
}

TEST(Homotopy, VerifiedIsomorphismsInduceIsomorphismsOnPi) {
  VerifiedIso iso = rotation_hc_iso(zmod(4, 3), 3);
  for (int n = 0; n <= 2; ++n) {
    MackeyMorphism m = induced_on_pi(iso.source, iso.target, iso.map, n);
    EXPECT_TRUE(check_mackey_morphism(m).empty());
    EXPECT_TRUE(is_isomorphism(m)) << n;
  }
  VerifiedIso bar = reflection_bar_iso(burnside_tambara(2), 3);
  for (int n = 0; n <= 2; ++n) EXPECT_TRUE(is_isomorphism(induced_on_pi(bar.source, bar.target, bar.map, n))) << n;
}

TEST(Homotopy, ConeIsContractible) {
  TambaraPtr r = zmod(4, 2);
  ModelSimplicialGSet<ConeElement> cm = cone_model(reflection_circle());
  Coefficient c = make_coefficient(r);
  SimplicialTambara l = loday(cm.sset(), c, 3);
  PiResult p0 = pi_n(l, 0);
  QuotientTambara q = pi_0_quotient(l);
  // The apex orbit is fixed; its insertion descends to an isomorphism r ≅ π_0.
  std::size_t apex = 0;
  for (std::size_t o = 0; o < cm.sset().orbits(0).size(); ++o)
    if (!cm.to_element(cm.sset().orbits(0)[o]).has_x) apex = o;
  EXPECT_TRUE(check_tambara_isomorphism(compose(q.projection, l.boxes[0].insertion(apex))).empty());
  for (int n = 1; n <= 2; ++n) EXPECT_TRUE(is_zero(pi_n(l, n).mackey)) << n;
}

TEST(Homotopy, HomotopyEndpointsAgreeOnPi) {
  Coefficient c = make_coefficient(zmod(4, 2));
  for (const SimplicialGSet& base : {reflection_circle(), rotation_circle(2), interval_sigma()}) {
    ModelSimplicialGSet<ConeElement> cm = cone_model(base);
    SimplicialTambara l = loday(cm.sset(), c, 3);
    SimplicialHomotopy h = loday_simplicial_homotopy(cm.sset(), cm.sset(), cone_contraction(cm, base), c, l, l);
    for (int n = 0; n <= 2; ++n)
      EXPECT_TRUE(equal_maps(induced_on_pi(l, l, h.at0, n), induced_on_pi(l, l, h.at1, n))) << base.name() << " " << n;
  }
}

TEST(Homotopy, ConstantHomotopyHasEqualSlices) {
  SimplicialGSet x = reflection_circle();
  Coefficient c = make_coefficient(zmod(3, 2));
  SimplicialTambara l = loday(x, c, 2);
  SimplicialHomotopy h = loday_simplicial_homotopy(x, x, [](const Simplex& s, int) { return s; }, c, l, l);
  for (auto& row : h.slices)
    for (auto& m : row) EXPECT_TRUE(equal_morphisms(m, row.front()));
}

TEST(Homotopy, HochschildOfCyclicBar) {
  for (long m : {2, 3, 4}) {
    std::vector<FgAbGroup> h = hochschild_homology(cyclic_bar(integers_mod(m), 5), 4);
    std::vector<FgAbGroup> expected = oracle::cyclic_bar_homology(m, 5);
    for (int n = 0; n <= 4; ++n) EXPECT_EQ(h[static_cast<std::size_t>(n)].orders(), expected[static_cast<std::size_t>(n)].orders()) << m << " " << n;
    EXPECT_EQ(h[0].describe(), "Z/" + std::to_string(m));
  }
}

TEST(Homotopy, SubdividedAndStandardCirclesHaveIsomorphicHomology) {
  RingObject s = integers_mod(4);
  SimplicialRing a = nonequiv_loday(rotation_circle(2), s, 4);
  SimplicialRing b = cyclic_bar(s, 4);
  std::vector<FgAbGroup> ha = hochschild_homology(a, 3), hb = hochschild_homology(b, 3);
  for (int n = 0; n <= 3; ++n) EXPECT_EQ(ha[static_cast<std::size_t>(n)].orders(), hb[static_cast<std::size_t>(n)].orders()) << n;
}
