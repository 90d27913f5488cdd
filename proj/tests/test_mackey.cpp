#include <gtest/gtest.h>

#include <random>

#include "tamloday/tambara.hpp"

using namespace tamloday;

namespace {

MackeyFunctor burnside_mackey(int p) { return burnside_tambara(p)->mackey; }
MackeyFunctor constant_mackey(long m, int p) { return constant_tambara(integers_mod(m), p)->mackey; }

bool has_axiom(const Report& r, const std::string& axiom) {
  for (auto& v : r)
    if (v.axiom == axiom) return true;
  return false;
}

// A_G acts on M_G by (α + βt)·x = αx + β tr(res x).
MackeyMorphism burnside_unit_iso(const MackeyFunctor& m) {
  MackeyFunctor a = burnside_mackey(m.p);
  BoxLayout l(m.p, {a, m});
  return box_map(
      l, m, [&](const std::vector<std::size_t>& idx) { return m.free.gen(idx[1]); },
      [&](const std::vector<std::size_t>& idx) {
        Vec ab = a.fixed.to_generators(a.fixed.gen(idx[0]));
        Vec x = m.fixed.gen(idx[1]);
        return m.fixed.reduce(ab[0] * x + ab[1] * m.tr(m.res(x)));
      });
}

MackeyMorphism swap_iso(const MackeyFunctor& m, const MackeyFunctor& n) {
  BoxLayout l(m.p, {m, n}), r(m.p, {n, m});
  return box_map(
      l, r.mackey(), [&](const std::vector<std::size_t>& idx) { return r.pure({n.free.gen(idx[1]), m.free.gen(idx[0])}); },
      [&](const std::vector<std::size_t>& idx) { return r.symbol({n.fixed.gen(idx[1]), m.fixed.gen(idx[0])}); });
}

// (L□M)□N → L□(M□N)
MackeyMorphism rebracket(const MackeyFunctor& l, const MackeyFunctor& m, const MackeyFunctor& n) {
  const int p = l.p;
  BoxLayout lm(p, {l, m}), left(p, {lm.mackey(), n}), mn(p, {m, n}), right(p, {l, mn.mackey()});
  auto free_of = [&](const Vec& u_lm, const Vec& z) {
    Vec out = right.free().zero();
    Vec lift = lm.free().to_generators(u_lm);
    for (std::size_t k = 0; k < lift.size(); ++k) {
      if (lift[k] == 0) continue;
      auto idx = lm.free_tensor().decode(k);
      out = out + lift[k] * right.pure({l.free.gen(idx[0]), mn.pure({m.free.gen(idx[1]), z})});
    }
    return right.free().reduce(out);
  };
  MackeyFunctor target = right.mackey();
  return box_map(
      left, target,
      [&](const std::vector<std::size_t>& idx) { return free_of(lm.free().gen(idx[0]), n.free.gen(idx[1])); },
      [&](const std::vector<std::size_t>& idx) {
        Vec c = n.fixed.gen(idx[1]);
        Vec pres = lm.fixed().to_generators(lm.fixed().gen(idx[0]));
        Vec out = right.fixed().zero();
        for (std::size_t g = 0; g < pres.size(); ++g) {
          if (pres[g] == 0) continue;
          if (g < lm.num_symbols()) {
            auto s = lm.symbol_tensor().decode(g);
            out = out + pres[g] * right.symbol({l.fixed.gen(s[0]), mn.symbol({m.fixed.gen(s[1]), c})});
          } else {
            Vec u = lm.free().gen(g - lm.num_symbols());
            out = out + pres[g] * right.tr()(free_of(u, n.res(c)));
          }
        }
        return right.fixed().reduce(out);
      });
}

}  // namespace

TEST(MackeyAxioms, Examples) {
  EXPECT_TRUE(check_mackey_axioms(burnside_mackey(2)).empty());
  EXPECT_TRUE(check_mackey_axioms(constant_mackey(0, 2)).empty());
  EXPECT_TRUE(check_mackey_axioms(constant_mackey(0, 3)).empty());
  MackeyFunctor bad = constant_mackey(0, 2);
  bad.tr = GroupMap::identity(bad.free);
  Report r = check_mackey_axioms(bad);
  EXPECT_TRUE(has_axiom(r, "double coset")) << format_report(r);
}

TEST(BoxMackey, UnitIsomorphism) {
  for (auto m : {constant_mackey(4, 2), constant_mackey(0, 3), norm_construction(integers_mod(2), 2).t->mackey}) {
    MackeyMorphism f = burnside_unit_iso(m);
    EXPECT_TRUE(check_mackey_morphism(f).empty()) << format_report(check_mackey_morphism(f));
    EXPECT_TRUE(is_isomorphism(f));
  }
}

TEST(BoxMackey, ConstantIntegers) {
  MackeyFunctor z = constant_mackey(0, 2);
  BoxLayout l(2, {z, z});
  MackeyMorphism f = box_map(
      l, z, [&](const std::vector<std::size_t>&) { return Vec{1}; }, [&](const std::vector<std::size_t>&) { return Vec{1}; });
  EXPECT_TRUE(check_mackey_morphism(f).empty());
  EXPECT_TRUE(is_isomorphism(f));
  EXPECT_TRUE(check_mackey_axioms(box_mackey(z, z)).empty());
}

TEST(BoxMackey, SymmetryAndAssociativityProperty) {
  std::vector<MackeyFunctor> pool = {burnside_mackey(2), constant_mackey(0, 2), constant_mackey(4, 2), constant_mackey(2, 2),
                                     norm_construction(integers_mod(2), 2).t->mackey};
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 8; ++trial) {
    const MackeyFunctor& a = pool[rng() % pool.size()];
    const MackeyFunctor& b = pool[rng() % pool.size()];
    const MackeyFunctor& c = pool[rng() % pool.size()];
    EXPECT_TRUE(check_mackey_axioms(box_mackey(a, b)).empty());
    MackeyMorphism s = swap_iso(a, b);
    EXPECT_TRUE(check_mackey_morphism(s).empty());
    EXPECT_TRUE(is_isomorphism(s));
    MackeyMorphism r = rebracket(a, b, c);
    EXPECT_TRUE(check_mackey_morphism(r).empty()) << format_report(check_mackey_morphism(r));
    EXPECT_TRUE(is_isomorphism(r));
  }
}

TEST(BoxMackey, MismatchedPrime) {
  EXPECT_THROW(box_mackey(constant_mackey(0, 2), constant_mackey(0, 3)), AlgebraError);
}
