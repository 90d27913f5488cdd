#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "mutations.hpp"
#include "oracles.hpp"
#include "tamloday/homotopy.hpp"

using namespace tamloday;

namespace {

// Runtime limits in seconds, pinned per criterion; 0 means no limit is stated.
constexpr double kNoLimit = 0;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string what;
  double limit_seconds;
  std::function<void(Outcome&)> body;
};

void require(Outcome& o, bool cond, const std::string& msg) {
  if (!cond && o.pass) {
    o.pass = false;
    o.detail = msg;
  }
}

void require_empty(Outcome& o, const Report& r, const std::string& msg) {
  require(o, r.empty(), msg + (r.empty() ? "" : ": " + format_report(r)));
}

TambaraPtr zmod(long m, int p) { return constant_tambara(integers_mod(m), p, "Z/" + std::to_string(m)); }

TambaraPtr zc(int p) { return constant_tambara(integers(), p, "Z"); }

RingMap reduction(long from, long to) {
  RingObject a = integers_mod(from), b = integers_mod(to);
  return {a, b, GroupMap::from_function(a.additive(), b.additive(), [](std::size_t) { return Vec{1}; })};
}

RingObject dual_numbers() { return RingObject::from_presentation(2, {Vec{2, 0}, Vec{0, 2}}, Vec{1, 0}, {{{1, 1}, Vec{0, 0}}}); }

std::size_t free_apex(const SimplicialGSet& i) {
  for (std::size_t c = 0; c < i.cells().size(); ++c)
    if (i.cells()[c].dim == 0 && i.cells()[c].stabilizer == 1) return c;
  throw AlgebraError("no free vertex");
}

void require_zero_above(Outcome& o, const SimplicialTambara& l, int from, int to, const std::string& what) {
  for (int n = from; n <= to; ++n) require(o, is_zero(pi_n(l, n).mackey), what + ": π_" + std::to_string(n) + " is nonzero");
}

// Levelwise maps from the constant object at t; an isomorphism means the object is constant.
void require_constant(Outcome& o, const SimplicialTambara& l, const TambaraPtr& t, const std::function<TambaraMorphism(int)>& to_level,
                      const std::string& what) {
  SimplicialMorphism m;
  for (int k = 0; k <= l.top; ++k) m.levels.push_back(to_level(k));
  require_empty(o, check_simplicial_isomorphism(constant_simplicial(t, l.top), l, m), what + " is not levelwise constant");
}

void norm_is_burnside(Outcome& o) {
  for (int p : {2, 3}) {
    NormConstruction n = norm_construction(integers(), p);
    require_empty(o, check_tambara_isomorphism(unit_map(burnside_tambara(p), n.t)), "A → N(Z), p=" + std::to_string(p));
  }
}

void norm_oracle(Outcome& o) {
  for (auto [m, p] : std::vector<std::pair<long, int>>{{2, 2}, {3, 2}, {4, 2}, {2, 3}}) {
    NormConstruction n = norm_construction(integers_mod(m), p);
    FgAbGroup oracle = oracle::norm_fixed_level(m, p);
    require(o, n.t->fixed().orders() == oracle.orders(),
            "N(Z/" + std::to_string(m) + ") p=" + std::to_string(p) + ": " + n.t->fixed().describe() + " vs oracle " + oracle.describe());
  }
  require(o, norm_construction(integers_mod(2), 2).t->fixed().describe() == "Z/4", "N_e^{C_2}(Z/2) fixed level is not Z/4");
}

void constant_dichotomy(Outcome& o) {
  const int D = 4;
  for (int p : {2, 3}) {
    TambaraPtr a = burnside_tambara(p);
    SimplicialTambara l = loday(rotation_circle(p), zc(p), D);
    require_empty(o, check_tambara_isomorphism(unit_map(a, pi_n(l, 0).tambara)), "π_0 rotation ≇ A");
    require_zero_above(o, l, 1, 3, "rotation p=" + std::to_string(p));
    require_constant(o, l, a, [&](int k) { return unit_map(a, l.levels[static_cast<std::size_t>(k)]); }, "rotation");
  }
  TambaraPtr z = zc(2);
  Coefficient c = make_coefficient(z);
  SimplicialGSet x = reflection_circle();
  SimplicialTambara l = loday(x, c, D);
  QuotientTambara q = pi_0_quotient(l);
  std::vector<TambaraMorphism> ids(l.boxes[0].factors.size(), identity_morphism(z));
  require_empty(o, check_tambara_isomorphism(descend_to_quotient(q, box_universal(l.boxes[0], z, ids))), "π_0 reflection ≇ Z^c");
  require_zero_above(o, l, 1, 3, "reflection");
  // Collapse to a point is a levelwise isomorphism onto L_pt(Z^c), which is constant at Z^c.
  SimplicialGSet pt = point(2);
  SimplicialTambara lp = loday(pt, c, D);
  require_empty(o, check_simplicial_isomorphism(l, lp, loday_map(x, pt, to_point(pt), c, l, lp)), "reflection → point");
  require_constant(o, lp, z, [&](int k) { return lp.boxes[static_cast<std::size_t>(k)].insertion(0); }, "L_pt(Z^c)");
}

void unit_box_corollary(Outcome& o) {
  const int D = 3;
  SimplicialTambara l = loday(reflection_circle(), zmod(4, 2), D);
  SimplicialTambara zl = box_simplicial({constant_simplicial(zc(2), D), l}, 2);
  SimplicialMorphism m;
  for (int k = 0; k <= D; ++k) m.levels.push_back(zl.boxes[static_cast<std::size_t>(k)].insertion(1));
  require_empty(o, check_simplicial_isomorphism(l, zl, m), "L ≇ Z^c □ L");
}

void solid_rings(Outcome& o) {
  for (long m : {3, 5}) {
    TambaraPtr r = zmod(m, 2);
    Coefficient c = make_coefficient(r);
    SimplicialTambara l = loday(reflection_circle(), c, 4);
    require_zero_above(o, l, 1, 3, "Z/" + std::to_string(m));
    BoxOver bo = box_over(r, c.norm.t, r, c.counit, c.counit);
    QuotientTambara q = pi_0_quotient(l);
    const BoxTambara& b0 = l.boxes[0];
    TambaraMorphism f =
        descend_to_quotient(bo.quotient, compose(q.projection, box_universal(bo.box, b0.t, {b0.insertion(0), b0.insertion(1)})));
    require_empty(o, check_tambara_isomorphism(f), "box_over ≇ π_0 for Z/" + std::to_string(m));
  }
}

void rotation_hc(Outcome& o) {
  for (int p : {2, 3}) {
    rotation_hc_iso(zmod(4, p), 3);
    rotation_quotient_hc_iso(zmod(4, p), 3);
  }
  (void)o;
}

void subdivision(Outcome& o) {
  for (int n : {2, 3})
    for (long m : {4, 2}) subdivision_iso(integers_mod(m), n, 4);
  (void)o;
}

void reflection_bar(Outcome& o) {
  reflection_bar_iso(zmod(4, 2), 3);
  reflection_bar_iso(burnside_tambara(2), 3);
  (void)o;
}

void suspensions(Outcome& o) {
  suspension_bar_iso(disjoint_union(point(2), point(2)), zmod(3, 2), 3, false);
  suspension_bar_iso(free_orbit(2), zmod(3, 2), 3, true);
  (void)o;
}

void properties(Outcome& o) {
  const int D = 2;
  TambaraPtr r = zmod(4, 2);
  SimplicialGSet s0 = disjoint_union(point(2), point(2));
  disjoint_union_iso(rotation_circle(2), reflection_circle(), r, D);
  box_distributivity_iso(reflection_circle(), r, burnside_tambara(2), D);
  diagonal_product_iso(s0, s0, r, D);
  SimplicialGSet i = interval_sigma(), z = free_orbit(2);
  const std::size_t apex = free_apex(i);
  pushout_iso(i, z, i, CellInclusion{{{apex, 0}}}, CellInclusion{{{apex, 1}}}, r, D);
  (void)o;
}

void restriction(Outcome& o) {
  for (const SimplicialGSet& x : {rotation_circle(2), reflection_circle()}) restriction_iso(x, zmod(4, 2), 4);
  (void)o;
}

void norm_induction(Outcome& o) {
  norm_induction_iso(rotation_quotient_circle(2), integers_mod(3), 2);
  (void)o;
}

void homotopy_invariance(Outcome& o) {
  TambaraPtr r = zmod(4, 2);
  Coefficient c = make_coefficient(r);
  ModelSimplicialGSet<ConeElement> cm = cone_model(reflection_circle());
  SimplicialTambara l = loday(cm.sset(), c, 3);
  std::size_t apex = 0;
  for (std::size_t v = 0; v < cm.sset().orbits(0).size(); ++v)
    if (!cm.to_element(cm.sset().orbits(0)[v]).has_x) apex = v;
  require_empty(o, check_tambara_isomorphism(compose(pi_0_quotient(l).projection, l.boxes[0].insertion(apex))), "π_0 of cone ≇ (Z/4)^c");
  require_zero_above(o, l, 1, 2, "cone");
  // Property: endpoint maps of cone contractions agree on π_n, random bases and coefficients.
  std::mt19937 rng(20240517);
  const std::vector<SimplicialGSet> bases = {reflection_circle(), rotation_circle(2), interval_sigma(), free_orbit(2),
                                             disjoint_union(point(2), point(2)), rotation_quotient_circle(2)};
  const std::vector<long> mods = {2, 3, 4, 5, 6};
  for (int trial = 0; trial < 6; ++trial) {
    const SimplicialGSet& base = bases[rng() % bases.size()];
    const long m = mods[rng() % mods.size()];
    Coefficient cc = make_coefficient(zmod(m, 2));
    ModelSimplicialGSet<ConeElement> cb = cone_model(base);
    SimplicialTambara lb = loday(cb.sset(), cc, 3);
    SimplicialHomotopy h = loday_simplicial_homotopy(cb.sset(), cb.sset(), cone_contraction(cb, base), cc, lb, lb);
    for (int n = 0; n <= 2; ++n)
      require(o, equal_maps(induced_on_pi(lb, lb, h.at0, n), induced_on_pi(lb, lb, h.at1, n)),
              "endpoints differ on π_" + std::to_string(n) + " for cone(" + base.name() + "), Z/" + std::to_string(m));
  }
}

void relative(Outcome& o) {
  RelativeLoday rl = relative_loday(unit_map(zc(2), zmod(4, 2)), reflection_circle(), 2);
  require_empty(o, check_simplicial_isomorphism(rl.lt, rl.s, relative_insertion(rl)), "relative over Z^c ≇ plain");
  relative_constant_iso(reduction(4, 2), rotation_quotient_circle(2), 3);
}

void axiom_suite(Outcome& o) {
  std::vector<RingObject> rings = {integers(), integers_mod(4), dual_numbers(), cyclic_tensor_power(integers_mod(3), 3),
                                   tensor_rings(integers_mod(4), dual_numbers())};
  for (auto& r : rings) require_empty(o, check_ring_axioms(r), "ring");
  std::vector<TambaraPtr> ts = {zc(2), zc(3), zmod(4, 2), zmod(3, 3), burnside_tambara(2), burnside_tambara(3), burnside_tambara(5)};
  for (auto [m, p] : std::vector<std::pair<long, int>>{{0, 2}, {2, 2}, {3, 2}, {4, 2}, {2, 3}, {0, 5}}) ts.push_back(norm_construction(integers_mod(m), p).t);
  ts.push_back(norm_construction(dual_numbers(), 2).t);
  ts.push_back(box_tambara(zmod(4, 2), burnside_tambara(2)).t);
  ts.push_back(box_tambara({zmod(4, 2), norm_construction(integers_mod(2), 2).t, zc(2)}, 2).t);
  Coefficient c3 = make_coefficient(zmod(3, 2));
  ts.push_back(box_over(c3.r, c3.norm.t, c3.r, c3.counit, c3.counit).t());
  for (auto& t : ts) require_empty(o, check_tambara_axioms(*t), "Tambara functor " + t->name);
  for (const SimplicialGSet& x : {reflection_circle(), rotation_circle(3), interval_sigma(), cone(rotation_circle(2)),
                                  suspension(free_orbit(2)), product(rotation_circle(2), reflection_circle())}) {
    auto bad = x.validate(3);
    require(o, bad.empty(), x.name() + ": " + (bad.empty() ? "" : bad.front()));
    if (is_prime(x.group_order())) {
      SimplicialTambara l = loday(x, zmod(2, x.group_order()), 2);
      require_empty(o, check_simplicial_tambara(l), "loday on " + x.name());
      for (int n = 0; n <= 1; ++n) require_empty(o, check_mackey_axioms(pi_n(l, n).mackey), "π_n Mackey axioms");
      require_empty(o, check_tambara_axioms(*pi_0_tambara(l)), "π_0 Tambara axioms");
    }
  }
  require_empty(o, check_simplicial_ring(cyclic_bar(integers_mod(4), 3)), "cyclic bar");
  require_empty(o, check_simplicial_ring(twisted_cyclic_nerve(cyclic_tensor_power(integers_mod(2), 3), 3)), "twisted nerve");
  auto ms = mutation::mutations();
  require(o, ms.size() == 20, "expected 20 mutations, found " + std::to_string(ms.size()));
  for (auto& m : ms) {
    Report r = check_tambara_axioms(m.functor);
    require(o, !r.empty() && !r.front().witness.empty(), "mutation not rejected with a witness: " + m.name);
  }
}

void hochschild(Outcome& o) {
  for (long m : {2, 3, 4}) {
    std::vector<FgAbGroup> h = hochschild_homology(cyclic_bar(integers_mod(m), 5), 4);
    std::vector<FgAbGroup> expected = oracle::cyclic_bar_homology(m, 5);
    for (std::size_t n = 0; n <= 4; ++n) {
      require(o, h[n].orders() == expected[n].orders(), "HH_" + std::to_string(n) + "(Z/" + std::to_string(m) + ") disagrees with the oracle");
      require(o, n == 0 ? h[n].describe() == "Z/" + std::to_string(m) : h[n].is_trivial(),
              "HH_" + std::to_string(n) + "(Z/" + std::to_string(m) + ") = " + h[n].describe());
    }
  }
}

}  // namespace

int main() {
  std::vector<Criterion> cs = {
      {1, "norm of Z is the Burnside functor (p = 2, 3)", 1, norm_is_burnside},
      {2, "norm fixed levels match the universal oracle", 10, norm_oracle},
      {3, "constant coefficients: rotation gives A, reflection gives Z^c", 120, constant_dichotomy},
      {4, "L ≅ Z^c □ L on the reflection circle with (Z/4)^c", kNoLimit, unit_box_corollary},
      {5, "solid rings Z/3, Z/5 concentrated in degree zero", 300, solid_rings},
      {6, "rotation circle vs twisted cyclic nerve", kNoLimit, rotation_hc},
      {7, "edgewise subdivision vs cyclic bar", kNoLimit, subdivision},
      {8, "reflection circle vs two-sided bar", kNoLimit, reflection_bar},
      {9, "suspensions vs diagonal bar", kNoLimit, suspensions},
      {10, "disjoint union, box distributivity, diagonal, pushout", kNoLimit, properties},
      {11, "restriction to the free level", kNoLimit, restriction},
      {12, "norm induction on product with a free orbit", kNoLimit, norm_induction},
      {13, "homotopy invariance: cone contractible, endpoints agree on π", kNoLimit, homotopy_invariance},
      {14, "relative Loday constructions", kNoLimit, relative},
      {15, "axiom checkers accept outputs and reject 20 mutations", kNoLimit, axiom_suite},
      {16, "Hochschild homology of the cyclic bar", kNoLimit, hochschild},
  };
  int failed = 0;
  for (auto& c : cs) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.pass && c.limit_seconds > 0 && secs >= c.limit_seconds) {
      o.pass = false;
      o.detail = "runtime " + std::to_string(secs) + " s exceeds " + std::to_string(c.limit_seconds) + " s";
    }
    char time[32];
    std::snprintf(time, sizeof time, "%.2fs", secs);
    std::cout << "criterion " << (c.id < 10 ? " " : "") << c.id << ": " << (o.pass ? "PASS" : "FAIL") << " [" << time << "] " << c.what
              << (o.pass ? "" : " | " + o.detail) << std::endl;
    failed += !o.pass;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all 16 criteria pass")) << std::endl;
  return failed ? 1 : 0;
}
