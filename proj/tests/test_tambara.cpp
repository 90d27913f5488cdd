#include <gtest/gtest.h>

#include <random>

#include "mutations.hpp"
#include "oracles.hpp"
#include "tamloday/tambara.hpp"

using namespace tamloday;

namespace {

RingObject dual_numbers_mod2() {
  return RingObject::from_presentation(2, {{2, 0}, {0, 2}}, {1, 0}, {{{1, 1}, {0, 0}}});
}

std::string report_of(const TambaraFunctor& t) { return format_report(check_tambara_axioms(t)); }

}  // namespace

TEST(TambaraAxioms, ConstructorOutputsAreValid) {
  std::vector<TambaraPtr> ts = {constant_tambara(integers_mod(4), 2), constant_tambara(integers(), 3), burnside_tambara(2),
                                burnside_tambara(3), burnside_tambara(5)};
  for (auto [m, p] : std::vector<std::pair<long, int>>{{0, 2}, {2, 2}, {3, 2}, {4, 2}, {2, 3}, {4, 3}, {0, 5}})
    ts.push_back(norm_construction(integers_mod(m), p).t);
  ts.push_back(norm_construction(dual_numbers_mod2(), 2).t);
  ts.push_back(box_tambara(constant_tambara(integers_mod(4), 2), burnside_tambara(2)).t);
  ts.push_back(box_tambara(norm_construction(integers_mod(2), 2).t, constant_tambara(integers_mod(4), 2)).t);
  for (auto& t : ts) EXPECT_TRUE(check_tambara_axioms(*t).empty()) << t->name << "\n" << report_of(*t);
}

TEST(TambaraAxioms, CorruptedNormWitness) {
  TambaraFunctor z = *constant_tambara(integers(), 2);
  z.norm_override = [](const Vec& x) { return x; };
  Report r = check_tambara_axioms(z);
  bool found = false;
  for (auto& v : r)
    if (v.axiom == "tambara reciprocity" && v.witness == "(1,1): 2 != 4") found = true;
  EXPECT_TRUE(found) << format_report(r);
}

TEST(TambaraAxioms, MutationsAreRejected) {
  auto ms = mutation::mutations();
  EXPECT_EQ(ms.size(), 20u);
  for (auto& m : ms) {
    Report r = check_tambara_axioms(m.functor);
    ASSERT_FALSE(r.empty()) << m.name;
    EXPECT_FALSE(r.front().witness.empty()) << m.name;
  }
}

TEST(Constant, Examples) {
  auto a = burnside_tambara(2);
  Vec t = burnside_element(*a, 0, 1);
  EXPECT_EQ(a->fixed_ring.mul(t, t), burnside_element(*a, 0, 2));
  auto z3 = constant_tambara(integers_mod(3), 2);
  EXPECT_EQ(z3->norm(Vec{2}), Vec{1});
  auto a3 = burnside_tambara(3);
  EXPECT_EQ(a3->norm(Vec{2}), burnside_element(*a3, 2, 2));
}

TEST(NormConstruction, IntegersGiveBurnside) {
  for (int p : {2, 3}) {
    auto a = burnside_tambara(p);
    NormConstruction n = norm_construction(integers(), p);
    TambaraMorphism f = unit_map(a, n.t);
    EXPECT_TRUE(check_tambara_isomorphism(f).empty()) << format_report(check_tambara_isomorphism(f));
  }
  NormConstruction n3 = norm_construction(integers(), 3);
  EXPECT_EQ(canonical_decomposition(n3.t->fixed()), (CanonicalDecomposition{2, {}}));
  Vec n1 = n3.norm_symbol(0), tt = n3.t->tr(n3.t->free_ring.one());
  for (long c = -4; c <= 4; ++c) {
    Vec expected = n3.t->fixed().reduce(Integer(c) * n1 + Integer((c * c * c - c) / 3) * tt);
    EXPECT_EQ(n3.t->norm(n3.inject(Vec{c})), expected);
    EXPECT_EQ(n3.t->res(n3.t->norm(Vec{c})), Vec{c * c * c});
  }
}

TEST(NormConstruction, ModTwo) {
  NormConstruction n = norm_construction(integers_mod(2), 2);
  EXPECT_EQ(n.t->fixed().orders(), std::vector<Integer>{4});
  EXPECT_TRUE(n.t->mackey.res.is_surjective());
  EXPECT_EQ(n.t->tr(n.t->free_ring.one()), n.t->fixed().reduce(Integer(2) * n.norm_symbol(0)));
}

TEST(NormConstruction, MatchesUniversalOracle) {
  for (auto [m, p] : std::vector<std::pair<long, int>>{{2, 2}, {3, 2}, {4, 2}, {2, 3}, {5, 2}, {3, 3}}) {
    NormConstruction n = norm_construction(integers_mod(m), p);
    EXPECT_EQ(canonical_decomposition(n.t->fixed()), canonical_decomposition(oracle::norm_fixed_level(m, p))) << m << " " << p;
  }
}

TEST(MultiplicativeExtension, Examples) {
  NormConstruction n = norm_construction(integers_mod(4), 2);
  const TambaraFunctor& t = *n.t;
  Vec a = n.inject(Vec{3}), b = t.free_ring.one();
  EXPECT_EQ(multiplicative_extension(t, {{1, a}}), t.norm(a));
  EXPECT_EQ(multiplicative_extension(t, {{1, a}, {1, b}}),
            t.fixed().reduce(t.norm(a) + t.norm(b) + t.tr(t.free_ring.mul(a, t.weyl(b)))));
  NormConstruction n3 = norm_construction(integers_mod(4), 3);
  const TambaraFunctor& u = *n3.t;
  Vec x = n3.inject(Vec{1}), y = n3.inject(Vec{2});
  const RingObject& r = u.free_ring;
  Vec words = r.mul(r.mul(x, u.weyl(x)), u.weyl(y, 2)) + r.mul(r.mul(x, u.weyl(y)), u.weyl(y, 2));
  EXPECT_EQ(multiplicative_extension(u, {{1, x}, {1, y}}), u.fixed().reduce(u.norm(x) + u.norm(y) + u.tr(r.additive().reduce(words))));
  EXPECT_EQ(u.norm(x + y), multiplicative_extension(u, {{1, x}, {1, y}}));
}

TEST(Counit, Examples) {
  auto z = constant_tambara(integers(), 2);
  TambaraMorphism e = counit(z);
  EXPECT_TRUE(check_tambara_morphism(e).empty());
  EXPECT_EQ(e.free.image_of_gen(0), Vec{1});

  auto a = burnside_tambara(2);
  NormConstruction na = norm_construction(a->free_ring, 2);
  TambaraMorphism ea = counit(na, a);
  EXPECT_TRUE(check_tambara_morphism(ea).empty()) << format_report(check_tambara_morphism(ea));
  for (long c = -3; c <= 3; ++c)
    EXPECT_EQ(ea.fixed(na.t->norm(na.inject(Vec{c}))), burnside_element(*a, c, (c * c - c) / 2));

  auto z4 = constant_tambara(integers_mod(4), 2);
  NormConstruction n4 = norm_construction(z4->free_ring, 2);
  TambaraMorphism e4 = counit(n4, z4);
  for (long x = 0; x < 4; ++x)
    for (long y = 0; y < 4; ++y) {
      Vec cls = n4.t->tr(n4.power.pure({Vec{x}, Vec{y}}));
      EXPECT_EQ(e4.fixed(cls), z4->fixed().reduce(Vec{2 * x * y}));
    }
  for (auto r : {z4, a, burnside_tambara(3), norm_construction(integers_mod(2), 2).t, constant_tambara(integers_mod(3), 3)})
    EXPECT_TRUE(check_tambara_morphism(counit(r)).empty()) << r->name;
}

TEST(Counit, Naturality) {
  struct Case {
    long from, to;
    int p;
  };
  for (auto c : {Case{0, 4, 2}, Case{4, 2, 2}, Case{0, 3, 3}, Case{6, 2, 2}, Case{6, 3, 3}}) {
    RingObject s = integers_mod(c.from), t = integers_mod(c.to);
    GroupMap f = GroupMap::from_images(s.additive(), t.additive(), {t.one()});
    auto sc = constant_tambara(s, c.p), tc = constant_tambara(t, c.p);
    NormConstruction ns = norm_construction(s, c.p), nt = norm_construction(t, c.p);
    TambaraMorphism nf = norm_of_ring_map(ns, nt, f);
    EXPECT_TRUE(check_tambara_morphism(nf).empty());
    TambaraMorphism lhs = compose(counit(nt, tc), nf);
    TambaraMorphism rhs = compose(constant_morphism(sc, tc, f), counit(ns, sc));
    EXPECT_TRUE(equal_morphisms(lhs, rhs)) << c.from << " -> " << c.to;
  }
}

TEST(BoxTambara, UnitAndConstants) {
  auto a = burnside_tambara(2);
  for (auto t : {constant_tambara(integers_mod(4), 2), norm_construction(integers_mod(2), 2).t, a}) {
    BoxTambara b = box_tambara(a, t);
    TambaraMorphism f = box_universal(b, t, {unit_map(a, t), identity_morphism(t)});
    EXPECT_TRUE(check_tambara_isomorphism(f).empty()) << t->name << "\n" << format_report(check_tambara_isomorphism(f));
  }
  for (auto [m1, m2] : std::vector<std::pair<long, long>>{{4, 2}, {0, 3}, {4, 4}}) {
    RingObject r = integers_mod(m1), s = integers_mod(m2);
    TensorRing rs({r, s});
    auto rc = constant_tambara(r, 2), sc = constant_tambara(s, 2), rsc = constant_tambara(rs.ring(), 2);
    BoxTambara b = box_tambara(rc, sc);
    EXPECT_TRUE(check_tambara_axioms(*b.t).empty());
    GroupMap i0 = GroupMap::from_function(r.additive(), rs.ring().additive(), [&](std::size_t j) { return rs.insert(0, r.additive().gen(j)); });
    GroupMap i1 = GroupMap::from_function(s.additive(), rs.ring().additive(), [&](std::size_t j) { return rs.insert(1, s.additive().gen(j)); });
    TambaraMorphism f = box_universal(b, rsc, {constant_morphism(rc, rsc, i0), constant_morphism(sc, rsc, i1)});
    EXPECT_TRUE(check_tambara_isomorphism(f).empty()) << m1 << " " << m2;
  }
}

TEST(TensorGSet, Examples) {
  auto z = constant_tambara(integers(), 2);
  Coefficient c = make_coefficient(z);
  BoxTambara one = tensor_gset(FinGSet{2, {2}}, c);
  EXPECT_TRUE(check_tambara_isomorphism(one.insertion(0)).empty());
  for (int p : {2, 3}) {
    Coefficient cp = make_coefficient(constant_tambara(integers(), p));
    BoxTambara free = tensor_gset(FinGSet{p, {1}}, cp);
    auto a = burnside_tambara(p);
    EXPECT_TRUE(check_tambara_isomorphism(unit_map(a, free.t)).empty());
  }
  BoxTambara mixed = tensor_gset(FinGSet{2, {1, 2}}, c);
  TambaraMorphism f = box_universal(mixed, z, {c.counit, identity_morphism(z)});
  EXPECT_TRUE(check_tambara_isomorphism(f).empty());
}

TEST(InducedMap, Examples) {
  auto z = constant_tambara(integers(), 2);
  Coefficient c = make_coefficient(z);
  FinGSet s{2, {1}}, pt{2, {2}}, two{2, {1, 1}};
  BoxTambara bs = tensor_gset(s, c), bp = tensor_gset(pt, c), b2 = tensor_gset(two, c);
  EXPECT_TRUE(equal_morphisms(induced_map(GMap::identity(two), c, b2, b2), identity_morphism(b2.t)));
  TambaraMorphism proj = induced_map(GMap(s, pt, {{0, 0}}), c, bs, bp);
  EXPECT_TRUE(check_tambara_morphism(proj).empty());
  const TambaraFunctor& n = *bs.t;
  for (long k = -3; k <= 3; ++k) EXPECT_EQ(proj.fixed(n.norm(Vec{k})), Vec{k * k});
  EXPECT_EQ(proj.fixed(n.tr(n.free_ring.one())), Vec{2});
  // fold is multiplication on the free level
  auto z4 = constant_tambara(integers_mod(4), 2);
  Coefficient c4 = make_coefficient(z4);
  BoxTambara f2 = tensor_gset(two, c4), f1 = tensor_gset(s, c4);
  TambaraMorphism fold = induced_map(GMap(two, s, {{0, 0}, {0, 0}}), c4, f2, f1);
  EXPECT_TRUE(check_tambara_morphism(fold).empty());
  const TensorRing& pw = c4.norm.power;
  for (long x = 0; x < 4; ++x)
    for (long y = 0; y < 4; ++y) {
      Vec u = pw.pure({Vec{x}, Vec{1}}), v = pw.pure({Vec{y}, Vec{3}});
      EXPECT_EQ(fold.free(f2.pure({u, v})), f1.t->free_ring.mul(f1.pure({u}), f1.pure({v})));
    }
  EXPECT_THROW(GMap(pt, s, {{0, 0}}), AlgebraError);
}

TEST(InducedMap, FunctorialityProperty) {
  std::mt19937 rng(97);
  for (int p : {2, 3}) {
    Coefficient c = make_coefficient(constant_tambara(integers_mod(p == 2 ? 4 : 2), p));
    auto random_set = [&] {
      std::vector<int> st;
      int k = 1 + static_cast<int>(rng() % 2);
      for (int i = 0; i < k; ++i) st.push_back(rng() % 2 ? 1 : p);
      return FinGSet{p, st};
    };
    auto random_map = [&](const FinGSet& a, const FinGSet& b) {
      std::vector<GElement> im;
      for (std::size_t o = 0; o < a.num_orbits(); ++o) {
        std::vector<std::size_t> ok;
        for (std::size_t t = 0; t < b.num_orbits(); ++t)
          if (b.stabilizers[t] % a.stabilizers[o] == 0) ok.push_back(t);
        if (ok.empty()) return std::optional<GMap>{};
        im.push_back({ok[rng() % ok.size()], static_cast<int>(rng() % static_cast<unsigned>(p))});
      }
      return std::optional<GMap>(GMap(a, b, im));
    };
    int done = 0;
    for (int trial = 0; trial < 40 && done < 6; ++trial) {
      FinGSet x = random_set(), y = random_set(), z = random_set();
      auto f = random_map(x, y);
      auto g = random_map(y, z);
      if (!f || !g) continue;
      BoxTambara bx = tensor_gset(x, c), by = tensor_gset(y, c), bz = tensor_gset(z, c);
      TambaraMorphism fg = induced_map(compose(*g, *f), c, bx, bz);
      TambaraMorphism gf = compose(induced_map(*g, c, by, bz), induced_map(*f, c, bx, by));
      EXPECT_TRUE(equal_morphisms(fg, gf)) << "p = " << p;
      EXPECT_TRUE(check_tambara_morphism(fg).empty());
      ++done;
    }
    EXPECT_GE(done, 3);
  }
}

TEST(TensorGSet, DisjointUnion) {
  auto r = constant_tambara(integers_mod(4), 2);
  Coefficient c = make_coefficient(r);
  FinGSet x{2, {1, 2}}, y{2, {1}}, xy{2, {1, 2, 1}};
  BoxTambara bx = tensor_gset(x, c), by = tensor_gset(y, c), bxy = tensor_gset(xy, c);
  BoxTambara both = box_tambara(bx.t, by.t);
  std::vector<TambaraMorphism> phis = {compose(both.insertion(0), bx.insertion(0)), compose(both.insertion(0), bx.insertion(1)),
                                       compose(both.insertion(1), by.insertion(0))};
  TambaraMorphism f = box_universal(bxy, both.t, phis);
  EXPECT_TRUE(check_tambara_isomorphism(f).empty()) << format_report(check_tambara_isomorphism(f));
}

TEST(BoxOver, Examples) {
  auto a = burnside_tambara(2);
  auto z4 = constant_tambara(integers_mod(4), 2), z2 = constant_tambara(integers_mod(2), 2);
  BoxOver over_unit = box_over(z4, a, z2, unit_map(a, z4), unit_map(a, z2));
  EXPECT_TRUE(check_tambara_isomorphism(over_unit.quotient.projection).empty());
  EXPECT_TRUE(check_tambara_axioms(*over_unit.t()).empty());

  BoxOver idem = box_over(z4, z4, z4, identity_morphism(z4), identity_morphism(z4));
  TambaraMorphism mult = descend_to_quotient(idem.quotient, box_universal(idem.box, z4, {identity_morphism(z4), identity_morphism(z4)}));
  EXPECT_TRUE(check_tambara_isomorphism(mult).empty());

  auto z3 = constant_tambara(integers_mod(3), 2);
  NormConstruction n = norm_construction(z3->free_ring, 2);
  TambaraMorphism e = counit(n, z3);
  BoxOver solid = box_over(z3, n.t, z3, e, e);
  EXPECT_TRUE(check_tambara_axioms(*solid.t()).empty());
  EXPECT_EQ(solid.t()->fixed().orders(), std::vector<Integer>{3});
  EXPECT_EQ(solid.t()->free().orders(), std::vector<Integer>{3});
  EXPECT_THROW(box_over(z3, n.t, z4, e, e), AlgebraError);
}

TEST(Quotient, RejectsNonIdeal) {
  auto z4 = constant_tambara(integers_mod(4), 2);
  EXPECT_THROW(quotient_tambara(z4, {}, {Vec{2}}), AlgebraError);
  QuotientTambara q = quotient_tambara(z4, {Vec{2}}, {Vec{2}});
  EXPECT_TRUE(check_tambara_axioms(*q.t).empty());
  EXPECT_EQ(q.t->fixed().orders(), std::vector<Integer>{2});
}

namespace {

// Fixed-point Tambara functor of Z^3 with cyclically permuted idempotents (p = 3).
TambaraPtr permutation_tambara() {
  FgAbGroup z3 = FgAbGroup::free(3);
  std::vector<std::vector<Vec>> table(3, std::vector<Vec>(3, zero_vec(3)));
  for (std::size_t i = 0; i < 3; ++i) table[i][i] = unit_vec(3, i);
  GroupMap w = GroupMap::from_images(z3, z3, {unit_vec(3, 1), unit_vec(3, 2), unit_vec(3, 0)});
  RingObject z = integers();
  TambaraFunctor t;
  t.mackey = {3, z3, z.additive(), GroupMap::from_images(z.additive(), z3, {{1, 1, 1}}),
              GroupMap::from_images(z3, z.additive(), {{1}, {1}, {1}}), w};
  t.free_ring = RingObject(z3, {1, 1, 1}, table, w, 3);
  t.fixed_ring = z;
  t.norm_gen = {{0}, {0}, {0}};
  t.name = "Z^3";
  return make_tambara(std::move(t));
}

}  // namespace

TEST(Counit, InverseTwistWithNontrivialWeylAction) {
  auto r = permutation_tambara();
  ASSERT_TRUE(check_tambara_axioms(*r).empty()) << report_of(*r);
  NormConstruction nc = norm_construction(r->free_ring, 3);
  EXPECT_TRUE(check_tambara_morphism(counit(nc, r)).empty());
  // the untwisted-direction product x_0 w(x_1) w^2(x_2) is not equivariant
  GroupMap plus = nc.power.map_by_slots(r->free_ring, [&](std::size_t i, std::size_t j) {
    return r->weyl(r->free().gen(j), static_cast<long>(i));
  });
  EXPECT_FALSE(compose(plus, nc.t->mackey.weyl).equals(compose(r->mackey.weyl, plus)));
}
