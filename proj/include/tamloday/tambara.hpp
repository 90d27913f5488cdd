#pragma once

#include <memory>

#include "tamloday/gsimp.hpp"
#include "tamloday/mackey.hpp"

namespace tamloday {

/// One summand c·x of a free-level element, with the fixed-level value N(x)
/// in whatever coordinates the caller accumulates in.
struct NormTerm {
  Integer coef;
  Vec x;
  Vec norm;
};

/// Word-orbit expansion of N(Σ c_t x_t): constant words give c N(x) plus the
/// scalar correction, free orbits of nonconstant words f give
/// tr(Π_i w^i x_{f(i)}) times Π_i c_{f(i)}. The transfer is applied once to
/// the accumulated free-level sum. `acc` carries the output coordinates.
template <class Transfer>
Vec expand_norm(int p, const RingObject& free_ring, Transfer&& transfer, const std::vector<NormTerm>& terms, Vec acc) {
  std::vector<const NormTerm*> ts;
  for (auto& t : terms)
    if (t.coef != 0) ts.push_back(&t);
  const std::size_t m = ts.size();
  std::vector<std::vector<Vec>> w(m);
  for (std::size_t t = 0; t < m; ++t)
    for (int i = 0; i < p; ++i) w[t].push_back(free_ring.act(ts[t]->x, i));
  Vec s = free_ring.zero();
  for (std::size_t t = 0; t < m; ++t) {
    const Integer& c = ts[t]->coef;
    axpy(acc, c, ts[t]->norm);
    Integer q = (ipow(c, static_cast<unsigned long>(p)) - c) / p;
    if (q != 0) {
      Vec prod = free_ring.one();
      for (int i = 0; i < p; ++i) prod = free_ring.mul(prod, w[t][static_cast<std::size_t>(i)]);
      axpy(s, q, prod);
    }
  }
  if (m >= 2) {
    std::vector<std::size_t> f(static_cast<std::size_t>(p), 0);
    for (;;) {
      bool constant = std::all_of(f.begin(), f.end(), [&](std::size_t v) { return v == f[0]; });
      bool minimal = !constant;
      for (int r = 1; r < p && minimal; ++r)
        for (int i = 0; i < p; ++i) {
          std::size_t a = f[static_cast<std::size_t>((i + r) % p)], b = f[static_cast<std::size_t>(i)];
          if (a != b) {
            if (a < b) minimal = false;
            break;
          }
        }
      if (minimal) {
        Vec prod = free_ring.one();
        Integer c = 1;
        for (int i = 0; i < p; ++i) {
          prod = free_ring.mul(prod, w[f[static_cast<std::size_t>(i)]][static_cast<std::size_t>(i)]);
          c *= ts[f[static_cast<std::size_t>(i)]]->coef;
        }
        axpy(s, c, prod);
      }
      std::size_t i = 0;
      for (; i < f.size(); ++i) {
        if (++f[i] < m) break;
        f[i] = 0;
      }
      if (i == f.size()) break;
    }
  }
  s = free_ring.additive().reduce(s);
  if (!tamloday::is_zero(s)) acc = acc + transfer(s);
  return acc;
}

/// C_p-Tambara functor: a Mackey functor with ring structures on both levels
/// (the Weyl action is the free ring's automorphism) and norms of the
/// canonical free-level generators.
struct TambaraFunctor {
  MackeyFunctor mackey;
  RingObject free_ring, fixed_ring;
  std::vector<Vec> norm_gen;
  std::function<Vec(const Vec&)> norm_override;
  std::string name;

  int p() const { return mackey.p; }
  const FgAbGroup& free() const { return mackey.free; }
  const FgAbGroup& fixed() const { return mackey.fixed; }
  Vec res(const Vec& a) const { return mackey.res(a); }
  Vec tr(const Vec& x) const { return mackey.tr(x); }
  Vec weyl(const Vec& x, long k = 1) const { return free_ring.act(x, k); }

  Vec norm(const Vec& x) const {
    if (norm_override) return fixed().reduce(norm_override(x));
    Vec y = free().reduce(x);
    std::vector<NormTerm> terms;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (y[j] != 0) terms.push_back({y[j], free().gen(j), norm_gen[j]});
    return fixed().reduce(expand_norm(p(), free_ring, [&](const Vec& v) { return tr(v); }, terms, fixed().zero()));
  }
};

using TambaraPtr = std::shared_ptr<const TambaraFunctor>;

/// N(Σ c_t x_t) expanded over the given terms using t's own norm on each x_t.
inline Vec multiplicative_extension(const TambaraFunctor& t, const std::vector<std::pair<Integer, Vec>>& terms) {
  std::vector<NormTerm> nt;
  for (auto& [c, x] : terms) nt.push_back({c, t.free().reduce(x), t.norm(x)});
  return t.fixed().reduce(expand_norm(t.p(), t.free_ring, [&](const Vec& v) { return t.tr(v); }, nt, t.fixed().zero()));
}

inline std::string element_string(const Vec& v) { return v.size() == 1 ? v[0].get_str() : to_string(v); }

namespace detail {

inline void prefix(Report& into, const Report& from, const std::string& pre) {
  for (auto& v : from) into.push_back({pre + v.axiom, v.witness});
}

// Free-level elements used for reciprocity checks: every element when the
// level is small and finite, otherwise the generators and their pairwise sums.
inline std::vector<Vec> sample_elements(const FgAbGroup& g) {
  if (g.is_finite() && g.cardinality() <= 16) return g.elements();
  std::vector<Vec> out;
  for (std::size_t i = 0; i < g.dim(); ++i) out.push_back(g.gen(i));
  return out;
}

}  // namespace detail

inline Report check_tambara_axioms(const TambaraFunctor& t) {
  Report rep;
  const int p = t.p();
  const FgAbGroup& e = t.free();
  const FgAbGroup& g = t.fixed();
  detail::prefix(rep, check_mackey_axioms(t.mackey), "");
  if (!rep.empty()) return rep;
  if (t.free_ring.additive().orders() != e.orders() || t.fixed_ring.additive().orders() != g.orders() ||
      t.norm_gen.size() != e.dim()) {
    rep.push_back({"shape", "ring data does not match the Mackey functor"});
    return rep;
  }
  detail::prefix(rep, check_ring_axioms(t.free_ring), "free level ");
  detail::prefix(rep, check_ring_axioms(t.fixed_ring), "fixed level ");
  if (!t.free_ring.has_automorphism() || !t.free_ring.automorphism().equals(t.mackey.weyl))
    rep.push_back({"weyl", "free ring automorphism differs from the Weyl action"});
  detail::prefix(rep, check_ring_map({t.fixed_ring, t.free_ring, t.mackey.res}), "restriction ");
  for (std::size_t a = 0; a < g.dim(); ++a)
    for (std::size_t x = 0; x < e.dim(); ++x) {
      Vec lhs = t.fixed_ring.mul(g.gen(a), t.tr(e.gen(x)));
      Vec rhs = t.tr(t.free_ring.mul(t.res(g.gen(a)), e.gen(x)));
      if (!g.equal(lhs, rhs)) rep.push_back({"frobenius", "(" + gen_name(a) + "," + gen_name(x) + ")"});
    }
  if (!rep.empty()) return rep;

  auto orbit_product = [&](const Vec& x) {
    Vec r = t.free_ring.one();
    for (int i = 0; i < p; ++i) r = t.free_ring.mul(r, t.weyl(x, i));
    return r;
  };
  if (!g.equal(t.norm(t.free_ring.one()), t.fixed_ring.one()))
    rep.push_back({"norm unit", "norm(1) = " + element_string(t.norm(t.free_ring.one()))});
  if (!g.is_zero(t.norm(e.zero()))) rep.push_back({"norm zero", "norm(0) = " + element_string(t.norm(e.zero()))});
  std::vector<Vec> xs = detail::sample_elements(e);
  for (auto& x : xs) {
    if (!e.equal(t.res(t.norm(x)), orbit_product(x)))
      rep.push_back({"restricted norm", "res(norm(" + element_string(x) + ")) = " + element_string(t.res(t.norm(x))) +
                                            " != " + element_string(orbit_product(x))});
    if (!g.equal(t.norm(t.weyl(x)), t.norm(x))) rep.push_back({"norm invariance", element_string(x)});
  }
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i; j < xs.size(); ++j) {
      const Vec &a = xs[i], &b = xs[j];
      Vec lhs = t.norm(a + b);
      Vec rhs = t.fixed().reduce(expand_norm(p, t.free_ring, [&](const Vec& v) { return t.tr(v); },
                                             {{1, a, t.norm(a)}, {1, b, t.norm(b)}}, g.zero()));
      if (!g.equal(lhs, rhs))
        rep.push_back({"tambara reciprocity", "(" + element_string(a) + "," + element_string(b) + "): " +
                                                  element_string(lhs) + " != " + element_string(rhs)});
      Vec prod = t.norm(t.free_ring.mul(a, b));
      Vec nn = t.fixed_ring.mul(t.norm(a), t.norm(b));
      if (!g.equal(prod, nn))
        rep.push_back({"norm multiplicativity", "(" + element_string(a) + "," + element_string(b) + "): " +
                                                    element_string(prod) + " != " + element_string(nn)});
    }
  for (std::size_t j = 0; j < e.dim(); ++j) {
    std::vector<Integer> cs = {-1, 2, 3};
    if (e.order(j) != 0) cs.push_back(e.order(j));
    Vec a = e.gen(j);
    for (auto& c : cs) {
      Vec lhs = t.norm(c * a);
      Vec rhs = c * t.norm(a) + ((ipow(c, static_cast<unsigned long>(p)) - c) / p) * t.tr(orbit_product(a));
      if (!g.equal(lhs, rhs))
        rep.push_back({"scalar rule", "c = " + c.get_str() + " on " + gen_name(j) + ": " + element_string(g.reduce(lhs)) +
                                          " != " + element_string(g.reduce(rhs))});
    }
  }
  return rep;
}

struct TambaraMorphism {
  TambaraPtr source, target;
  GroupMap free, fixed;
};

inline Report check_tambara_morphism(const TambaraMorphism& f) {
  Report rep;
  const TambaraFunctor &s = *f.source, &t = *f.target;
  if (f.free.source().orders() != s.free().orders() || f.free.target().orders() != t.free().orders() ||
      f.fixed.source().orders() != s.fixed().orders() || f.fixed.target().orders() != t.fixed().orders()) {
    rep.push_back({"shape", "level maps have wrong domains"});
    return rep;
  }
  detail::prefix(rep, check_mackey_morphism({s.mackey, t.mackey, f.free, f.fixed}), "");
  detail::prefix(rep, check_ring_map({s.free_ring, t.free_ring, f.free}), "free level ");
  detail::prefix(rep, check_ring_map({s.fixed_ring, t.fixed_ring, f.fixed}), "fixed level ");
  for (std::size_t j = 0; j < s.free().dim(); ++j) {
    Vec a = f.fixed(s.norm(s.free().gen(j)));
    Vec b = t.norm(f.free.image_of_gen(j));
    if (!t.fixed().equal(a, b))
      rep.push_back({"norm", gen_name(j) + ": " + element_string(a) + " != " + element_string(b)});
  }
  return rep;
}

inline bool is_isomorphism(const TambaraMorphism& f) { return f.free.is_isomorphism() && f.fixed.is_isomorphism(); }

/// Morphism checks plus bijectivity on both levels.
inline Report check_tambara_isomorphism(const TambaraMorphism& f) {
  Report rep = check_tambara_morphism(f);
  if (!rep.empty()) return rep;
  if (!f.free.is_isomorphism()) rep.push_back({"bijectivity", "free level map is not bijective"});
  if (!f.fixed.is_isomorphism()) rep.push_back({"bijectivity", "fixed level map is not bijective"});
  return rep;
}

inline TambaraMorphism identity_morphism(const TambaraPtr& t) {
  return {t, t, GroupMap::identity(t->free()), GroupMap::identity(t->fixed())};
}

inline TambaraMorphism compose(const TambaraMorphism& g, const TambaraMorphism& f) {
  return {f.source, g.target, compose(g.free, f.free), compose(g.fixed, f.fixed)};
}

inline bool equal_morphisms(const TambaraMorphism& a, const TambaraMorphism& b) {
  return a.free.equals(b.free) && a.fixed.equals(b.fixed);
}

/// Inverse of a bijective morphism.
inline TambaraMorphism inverse(const TambaraMorphism& f) {
  return {f.target, f.source, inverse(f.free), inverse(f.fixed)};
}

inline TambaraPtr make_tambara(TambaraFunctor t) { return std::make_shared<const TambaraFunctor>(std::move(t)); }

/// R^c: both levels R, res = id, tr = p, trivial Weyl action, norm(a) = a^p.
inline TambaraPtr constant_tambara(const RingObject& r, int p, std::string name = "") {
  if (p < 1) throw AlgebraError("group order must be positive");
  RingObject base = r.without_automorphism();
  const FgAbGroup& g = base.additive();
  GroupMap id = GroupMap::identity(g);
  TambaraFunctor t;
  t.mackey = {p, g, g, id, Integer(p) * id, id};
  t.free_ring = base.with_automorphism(id, p);
  t.fixed_ring = base;
  for (std::size_t j = 0; j < g.dim(); ++j) t.norm_gen.push_back(base.pow(g.gen(j), static_cast<unsigned long>(p)));
  t.name = name.empty() ? "constant" : name;
  return make_tambara(std::move(t));
}

/// Burnside Tambara functor: fixed level Z{1,t} with t^2 = p t, free level Z.
inline TambaraPtr burnside_tambara(int p) {
  if (!is_prime(p)) throw AlgebraError("Burnside Tambara functor needs a prime group order");
  RingObject fixed = RingObject::from_presentation(2, {}, {1, 0}, {{{1, 1}, {0, p}}});
  const FgAbGroup& g = fixed.additive();
  RingObject z = integers();
  const FgAbGroup& e = z.additive();
  GroupMap id = GroupMap::identity(e);
  TambaraFunctor t;
  GroupMap res = map_from_presentation(g, e, [&](std::size_t j) { return j == 0 ? Vec{1} : Vec{p}; });
  GroupMap tr = GroupMap::from_images(e, g, {g.from_generators({0, 1})});
  t.mackey = {p, e, g, res, tr, id};
  t.free_ring = z.with_automorphism(id, p);
  t.fixed_ring = fixed;
  t.norm_gen = {fixed.one()};
  t.name = "A";
  return make_tambara(std::move(t));
}

/// Morphism of constant Tambara functors induced by a ring map.
inline TambaraMorphism constant_morphism(const TambaraPtr& s, const TambaraPtr& t, const GroupMap& f) { return {s, t, f, f}; }

/// The unique morphism from the Burnside functor: 1 ↦ 1, t ↦ tr(1).
inline TambaraMorphism unit_map(const TambaraPtr& a, const TambaraPtr& t) {
  GroupMap fe = GroupMap::from_images(a->free(), t->free(), {t->free_ring.one()});
  GroupMap fg = map_from_presentation(a->fixed(), t->fixed(), [&](std::size_t j) {
    return j == 0 ? t->fixed_ring.one() : t->tr(t->free_ring.one());
  });
  return {a, t, fe, fg};
}

/// Burnside element c + d t.
inline Vec burnside_element(const TambaraFunctor& a, const Integer& c, const Integer& d) {
  return a.fixed().from_generators({c, d});
}

/// N_e^{C_p} of a plain ring. Fixed-level presentation generators: N(e_j)
/// for canonical generators e_j of the base, then classes [u] of canonical
/// generators of the p-fold tensor power.
struct NormConstruction {
  int p = 2;
  RingObject base;
  TensorRing power;
  TambaraPtr t;

  std::size_t num_symbols() const { return base.dim(); }
  /// s ↦ s⊗1⊗…⊗1.
  Vec inject(const Vec& s) const { return power.insert(0, s); }
  GroupMap injection() const {
    return GroupMap::from_function(base.additive(), t->free(), [&](std::size_t j) { return inject(base.additive().gen(j)); });
  }
  Vec norm_symbol(std::size_t j) const {
    return t->fixed().from_generators(unit_vec(t->fixed().num_generators(), j));
  }
};

inline NormConstruction norm_construction(const RingObject& s, int p) {
  if (!is_prime(p)) throw AlgebraError("norm construction needs a prime group order");
  NormConstruction nc;
  nc.p = p;
  nc.base = s.without_automorphism();
  nc.power = cyclic_tensor_power_data(nc.base, p);
  const RingObject& b = nc.base;
  const FgAbGroup& sg = b.additive();
  const FgAbGroup& e = nc.power.ring().additive();
  GroupMap shift = cyclic_shift(nc.power.tensor());
  RingObject er = nc.power.ring().with_automorphism(shift, p);
  GroupMap sum = orbit_sum(shift, p);
  const std::size_t c = sg.dim(), ne = e.dim(), n = c + ne;
  auto embed = [&](const Vec& x) {
    Vec v = zero_vec(n);
    for (std::size_t u = 0; u < ne; ++u) v[c + u] = x[u];
    return v;
  };
  std::vector<Vec> diag;
  for (std::size_t j = 0; j < c; ++j) diag.push_back(nc.power.pure(std::vector<Vec>(static_cast<std::size_t>(p), sg.gen(j))));
  std::vector<Vec> rels;
  for (std::size_t u = 0; u < ne; ++u) {
    if (e.order(u) != 0) rels.push_back(e.order(u) * unit_vec(n, c + u));
    rels.push_back(unit_vec(n, c + u) - embed(shift.image_of_gen(u)));
  }
  for (std::size_t j = 0; j < c; ++j) {
    const Integer& d = sg.order(j);
    if (d != 0) rels.push_back(d * unit_vec(n, j) + ((ipow(d, static_cast<unsigned long>(p)) - d) / p) * embed(diag[j]));
  }
  auto nexp = [&](const Vec& y, auto&& transfer, auto&& symbol, Vec acc) {
    std::vector<NormTerm> terms;
    for (std::size_t k = 0; k < c; ++k)
      if (y[k] != 0) terms.push_back({y[k], nc.inject(sg.gen(k)), symbol(k)});
    return expand_norm(p, er, transfer, terms, std::move(acc));
  };
  auto nexp_pres = [&](const Vec& y) {
    return nexp(y, embed, [&](std::size_t k) { return unit_vec(n, k); }, zero_vec(n));
  };
  std::map<std::pair<std::size_t, std::size_t>, Vec> products;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Vec v;
      if (j < c) {
        v = nexp_pres(b.product_of_gens(i, j));
      } else if (i < c) {
        v = embed(er.mul(diag[i], e.gen(j - c)));
      } else {
        v = embed(er.mul(e.gen(i - c), sum.image_of_gen(j - c)));
      }
      products[{i, j}] = std::move(v);
    }
  RingObject fixed = RingObject::from_presentation(n, rels, nexp_pres(b.one()), products);
  const FgAbGroup& fg = fixed.additive();
  GroupMap res = map_from_presentation(fg, e, [&](std::size_t g) {
    return g < c ? diag[g] : sum.image_of_gen(g - c);
  });
  GroupMap tr = GroupMap::from_function(e, fg, [&](std::size_t u) { return fg.from_generators(unit_vec(n, c + u)); });
  auto tr_can = [&](const Vec& x) { return tr(x); };
  auto sym_can = [&](std::size_t k) { return fg.from_generators(unit_vec(n, k)); };
  std::vector<Vec> norm_gen;
  const TensorGroup& tg = nc.power.tensor();
  for (std::size_t u = 0; u < ne; ++u) {
    Vec lift = e.from_canonical().column(u);
    std::vector<NormTerm> terms;
    for (std::size_t m = 0; m < lift.size(); ++m) {
      if (lift[m] == 0) continue;
      std::vector<std::size_t> idx = tg.decode(m);
      std::vector<Vec> gens;
      Vec prod = b.one();
      for (auto k : idx) {
        gens.push_back(sg.gen(k));
        prod = b.mul(prod, sg.gen(k));
      }
      terms.push_back({lift[m], tg.pure(gens), fg.reduce(nexp(prod, tr_can, sym_can, fg.zero()))});
    }
    norm_gen.push_back(fg.reduce(expand_norm(p, er, tr_can, terms, fg.zero())));
  }
  TambaraFunctor t;
  t.mackey = {p, e, fg, res, tr, shift};
  t.free_ring = er;
  t.fixed_ring = fixed;
  t.norm_gen = std::move(norm_gen);
  t.name = "N";
  nc.t = make_tambara(std::move(t));
  return nc;
}

/// Adjunct of a ring map phi: base → t-free level. Free level
/// x_0⊗…⊗x_{p-1} ↦ Π_i w^{-i} phi(x_i); fixed level N(e_j) ↦ norm(phi e_j),
/// [u] ↦ tr(free image of u).
inline TambaraMorphism norm_adjunct(const NormConstruction& nc, const TambaraPtr& t, const GroupMap& phi) {
  GroupMap free = nc.power.map_by_slots(t->free_ring, [&](std::size_t i, std::size_t j) {
    return t->weyl(phi.image_of_gen(j), -static_cast<long>(i));
  });
  const std::size_t c = nc.num_symbols();
  GroupMap fixed = map_from_presentation(nc.t->fixed(), t->fixed(), [&](std::size_t g) {
    return g < c ? t->norm(phi.image_of_gen(g)) : t->tr(free.image_of_gen(g - c));
  });
  return {nc.t, t, free, fixed};
}

/// Counit N_e^{C_p}(free level of r) → r.
inline TambaraMorphism counit(const NormConstruction& nc, const TambaraPtr& r) {
  return norm_adjunct(nc, r, GroupMap::identity(r->free()));
}

inline TambaraMorphism counit(const TambaraPtr& r) { return counit(norm_construction(r->free_ring, r->p()), r); }

/// N(f) for a ring map f between the bases of two norm constructions.
inline TambaraMorphism norm_of_ring_map(const NormConstruction& a, const NormConstruction& b, const GroupMap& f) {
  return norm_adjunct(a, b.t, compose(b.injection(), f));
}

/// Box product of Tambara functors. Boxes of three or more factors are built as
/// left-nested binary boxes, kept in `chain`; `layout` is set for flat boxes only.
struct BoxTambara {
  std::vector<TambaraPtr> factors;
  std::shared_ptr<const BoxLayout> layout;
  std::shared_ptr<const std::vector<BoxTambara>> chain;
  TambaraPtr t;

  /// Fixed-level element a_1⊗…⊗a_n.
  Vec symbol(const std::vector<Vec>& as) const {
    if (!chain) return layout->symbol(as);
    const auto& c = *chain;
    Vec s = c[0].symbol({as.at(0), as.at(1)});
    for (std::size_t j = 1; j < c.size(); ++j) s = c[j].symbol({s, as.at(j + 1)});
    return s;
  }
  /// Free-level pure tensor.
  Vec pure(const std::vector<Vec>& xs) const {
    if (!chain) return layout->pure(xs);
    const auto& c = *chain;
    Vec s = c[0].pure({xs.at(0), xs.at(1)});
    for (std::size_t j = 1; j < c.size(); ++j) s = c[j].pure({s, xs.at(j + 1)});
    return s;
  }

  TambaraMorphism insertion(std::size_t i) const {
    const TambaraFunctor& f = *factors.at(i);
    std::vector<Vec> fo, go;
    for (auto& x : factors) {
      fo.push_back(x->free_ring.one());
      go.push_back(x->fixed_ring.one());
    }
    GroupMap fe = GroupMap::from_function(f.free(), t->free(), [&](std::size_t j) {
      std::vector<Vec> xs = fo;
      xs[i] = f.free().gen(j);
      return pure(xs);
    });
    GroupMap fg = GroupMap::from_function(f.fixed(), t->fixed(), [&](std::size_t j) {
      std::vector<Vec> as = go;
      as[i] = f.fixed().gen(j);
      return symbol(as);
    });
    return {factors[i], t, fe, fg};
  }
};

namespace detail {
inline BoxTambara flat_box_tambara(std::vector<TambaraPtr> factors, int p);
}

inline BoxTambara box_tambara(std::vector<TambaraPtr> factors, int p) {
  if (factors.size() <= 2) return detail::flat_box_tambara(std::move(factors), p);
  auto chain = std::make_shared<std::vector<BoxTambara>>();
  chain->push_back(detail::flat_box_tambara({factors[0], factors[1]}, p));
  for (std::size_t j = 2; j < factors.size(); ++j) chain->push_back(detail::flat_box_tambara({chain->back().t, factors[j]}, p));
  BoxTambara b;
  TambaraFunctor named = *chain->back().t;
  named.name.clear();
  for (auto& f : factors) named.name += (named.name.empty() ? "" : " □ ") + f->name;
  b.t = make_tambara(std::move(named));
  b.factors = std::move(factors);
  b.chain = std::move(chain);
  return b;
}

inline BoxTambara detail::flat_box_tambara(std::vector<TambaraPtr> factors, int p) {
  BoxTambara b;
  b.factors = std::move(factors);
  std::vector<MackeyFunctor> ms;
  std::vector<RingObject> frees;
  std::string name;
  for (auto& f : b.factors) {
    if (f->p() != p) throw AlgebraError("box product: mismatched group orders");
    ms.push_back(f->mackey);
    frees.push_back(f->free_ring);
    name += (name.empty() ? "" : " □ ") + f->name;
  }
  auto layout = std::make_shared<const BoxLayout>(p, ms);
  b.layout = layout;
  const BoxLayout& l = *layout;
  const FgAbGroup& e = l.free();
  TensorRing tr(frees, true);
  RingObject er(e, tr.ring().one(), tr.ring().table(), l.weyl(), p);
  const std::size_t ns = l.num_symbols(), ne = e.dim(), n = ns + ne;
  const TensorGroup& st = l.symbol_tensor();
  GroupMap sum = orbit_sum(l.weyl(), p);
  std::vector<Vec> sym_res(ns);
  std::vector<std::vector<std::size_t>> sym_idx(ns);
  for (std::size_t m = 0; m < ns; ++m) {
    sym_idx[m] = st.decode(m);
    std::vector<Vec> xs;
    for (std::size_t i = 0; i < b.factors.size(); ++i) xs.push_back(b.factors[i]->res(b.factors[i]->fixed().gen(sym_idx[m][i])));
    sym_res[m] = l.pure(xs);
  }
  std::map<std::pair<std::size_t, std::size_t>, Vec> products;
  std::vector<Vec> as(b.factors.size());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Vec v;
      if (j < ns) {
        for (std::size_t k = 0; k < b.factors.size(); ++k)
          as[k] = b.factors[k]->fixed_ring.product_of_gens(sym_idx[i][k], sym_idx[j][k]);
        v = l.symbol_generators(as);
      } else if (i < ns) {
        v = l.embed_class(er.mul(sym_res[i], e.gen(j - ns)));
      } else {
        v = l.embed_class(er.mul(e.gen(i - ns), sum.image_of_gen(j - ns)));
      }
      products[{i, j}] = std::move(v);
    }
  std::vector<Vec> ones;
  for (auto& f : b.factors) ones.push_back(f->fixed_ring.one());
  RingObject fixed = RingObject::from_presentation(n, l.fixed().relations(), l.symbol_generators(ones), products);
  const FgAbGroup& fg = l.fixed();
  std::vector<Vec> norm_gen;
  const TensorGroup& ft = l.free_tensor();
  for (std::size_t u = 0; u < ne; ++u) {
    Vec lift = e.from_canonical().column(u);
    std::vector<NormTerm> terms;
    for (std::size_t m = 0; m < lift.size(); ++m) {
      if (lift[m] == 0) continue;
      std::vector<std::size_t> idx = ft.decode(m);
      std::vector<Vec> xs, ns_;
      for (std::size_t k = 0; k < idx.size(); ++k) {
        xs.push_back(b.factors[k]->free().gen(idx[k]));
        ns_.push_back(b.factors[k]->norm_gen[idx[k]]);
      }
      terms.push_back({lift[m], l.pure(xs), l.symbol(ns_)});
    }
    norm_gen.push_back(fg.reduce(expand_norm(p, er, [&](const Vec& x) { return l.tr()(x); }, terms, fg.zero())));
  }
  TambaraFunctor t;
  t.mackey = l.mackey();
  t.free_ring = er;
  t.fixed_ring = fixed;
  t.norm_gen = std::move(norm_gen);
  t.name = b.factors.empty() ? "A" : name;
  b.t = make_tambara(std::move(t));
  return b;
}

inline BoxTambara box_tambara(const TambaraPtr& a, const TambaraPtr& b) { return box_tambara({a, b}, a->p()); }

/// Morphism out of a box determined by morphisms from each factor into a
/// common target: a_1⊗…⊗a_n ↦ Π phi_i(a_i), [u] ↦ tr(free image of u).
inline TambaraMorphism box_universal(const BoxTambara& b, const TambaraPtr& target, const std::vector<TambaraMorphism>& phis) {
  if (phis.size() != b.factors.size()) throw AlgebraError("box_universal: need one morphism per factor");
  if (b.chain) {
    const auto& c = *b.chain;
    TambaraMorphism u = box_universal(c[0], target, {phis[0], phis[1]});
    for (std::size_t j = 1; j < c.size(); ++j) u = box_universal(c[j], target, {u, phis[j + 1]});
    return {b.t, target, u.free, u.fixed};
  }
  const TambaraFunctor& t = *target;
  MackeyMorphism m = box_map(
      *b.layout, t.mackey,
      [&](const std::vector<std::size_t>& idx) {
        Vec acc = t.free_ring.one();
        for (std::size_t i = 0; i < idx.size(); ++i) acc = t.free_ring.mul(acc, phis[i].free.image_of_gen(idx[i]));
        return acc;
      },
      [&](const std::vector<std::size_t>& idx) {
        Vec acc = t.fixed_ring.one();
        for (std::size_t i = 0; i < idx.size(); ++i) acc = t.fixed_ring.mul(acc, phis[i].fixed.image_of_gen(idx[i]));
        return acc;
      });
  return {b.t, target, m.free, m.fixed};
}

/// f_1 □ … □ f_n between boxes of equal arity.
inline TambaraMorphism box_of_morphisms(const BoxTambara& s, const BoxTambara& t, const std::vector<TambaraMorphism>& fs) {
  std::vector<TambaraMorphism> phis;
  for (std::size_t i = 0; i < fs.size(); ++i) phis.push_back(compose(t.insertion(i), fs[i]));
  return box_universal(s, t.t, phis);
}

/// Quotient of a Tambara functor by level subgroups that must form a Tambara
/// ideal; every closure condition is checked.
struct QuotientTambara {
  TambaraPtr t;
  TambaraMorphism projection;
};

inline QuotientTambara quotient_tambara(const TambaraPtr& src, const std::vector<Vec>& free_gens, const std::vector<Vec>& fixed_gens) {
  const TambaraFunctor& s = *src;
  Quotient qe = quotient_by(s.free(), free_gens);
  Quotient qg = quotient_by(s.fixed(), fixed_gens);
  const FgAbGroup &e = qe.group, &g = qg.group;
  for (auto& i : free_gens)
    if (!g.is_zero(qg.projection(s.norm(i))))
      throw AlgebraError("quotient is not a Tambara ideal: norm(" + element_string(i) + ") survives");
  GroupMap res = map_from_presentation(g, e, [&](std::size_t j) { return qe.projection(s.mackey.res.image_of_gen(j)); });
  GroupMap tr = map_from_presentation(e, g, [&](std::size_t j) { return qg.projection(s.mackey.tr.image_of_gen(j)); });
  GroupMap w = map_from_presentation(e, e, [&](std::size_t j) { return qe.projection(s.mackey.weyl.image_of_gen(j)); });
  auto ring_quotient = [](const RingObject& r, const Quotient& q, std::optional<std::vector<Vec>> action, int order) {
    std::map<std::pair<std::size_t, std::size_t>, Vec> products;
    for (std::size_t i = 0; i < r.dim(); ++i)
      for (std::size_t j = i; j < r.dim(); ++j) products[{i, j}] = r.product_of_gens(i, j);
    return RingObject::from_presentation(r.dim(), q.group.relations(), r.one(), products, action, order);
  };
  std::vector<Vec> act;
  for (std::size_t j = 0; j < s.free().dim(); ++j) act.push_back(s.mackey.weyl.image_of_gen(j));
  TambaraFunctor t;
  t.mackey = {s.p(), e, g, res, tr, w};
  try {
    t.free_ring = ring_quotient(s.free_ring, qe, act, s.p());
    t.fixed_ring = ring_quotient(s.fixed_ring, qg, {}, 1);
  } catch (const AlgebraError& err) {
    throw AlgebraError(std::string("quotient is not a Tambara ideal: ") + err.what());
  }
  for (std::size_t u = 0; u < e.dim(); ++u) t.norm_gen.push_back(qg.projection(s.norm(e.to_generators(e.gen(u)))));
  t.name = s.name + " / I";
  QuotientTambara q;
  q.t = make_tambara(std::move(t));
  q.projection = {src, q.t, qe.projection, qg.projection};
  return q;
}

/// Morphism q → target induced by phi: src → target vanishing on the ideal.
inline TambaraMorphism descend_to_quotient(const QuotientTambara& q, const TambaraMorphism& phi) {
  const FgAbGroup &e = q.t->free(), &g = q.t->fixed();
  GroupMap fe = map_from_presentation(e, phi.target->free(), [&](std::size_t j) { return phi.free.image_of_gen(j); });
  GroupMap fg = map_from_presentation(g, phi.target->fixed(), [&](std::size_t j) { return phi.fixed.image_of_gen(j); });
  return {q.t, phi.target, fe, fg};
}

/// t □_r t' as the coequalizer of t □ r □ t' ⇉ t □ t'.
struct BoxOver {
  BoxTambara box;
  QuotientTambara quotient;
  const TambaraPtr& t() const { return quotient.t; }
};

inline BoxOver box_over(const TambaraPtr& t, const TambaraPtr& r, const TambaraPtr& t2, const TambaraMorphism& f,
                        const TambaraMorphism& g) {
  if (f.source != r || g.source != r || f.target != t || g.target != t2)
    throw AlgebraError("box_over: morphisms do not match the given functors");
  for (auto* m : {&f, &g}) {
    Report rep = check_tambara_morphism(*m);
    if (!rep.empty()) throw VerificationError("box_over: invalid morphism: " + format_report(rep));
  }
  const int p = t->p();
  BoxTambara b3 = box_tambara({t, r, t2}, p);
  BoxTambara b2 = box_tambara({t, t2}, p);
  TambaraMorphism i0 = b2.insertion(0), i1 = b2.insertion(1);
  TambaraMorphism alpha = box_universal(b3, b2.t, {i0, compose(i0, f), i1});
  TambaraMorphism beta = box_universal(b3, b2.t, {i0, compose(i1, g), i1});
  std::vector<Vec> fe, fg;
  for (std::size_t j = 0; j < b3.t->free().dim(); ++j) fe.push_back(alpha.free.image_of_gen(j) - beta.free.image_of_gen(j));
  for (std::size_t j = 0; j < b3.t->fixed().dim(); ++j) fg.push_back(alpha.fixed.image_of_gen(j) - beta.fixed.image_of_gen(j));
  return {b2, quotient_tambara(b2.t, fe, fg)};
}

/// A coefficient Tambara functor with the data used to tensor it with G-sets.
struct Coefficient {
  TambaraPtr r;
  NormConstruction norm;
  TambaraMorphism counit;
  /// translation[k]: the map on N(r_e) induced by b ↦ γ^k b on C_p/e.
  std::vector<TambaraMorphism> translation;

  int p() const { return r->p(); }
};

inline Coefficient make_coefficient(const TambaraPtr& r) {
  Coefficient c;
  c.r = r;
  c.norm = norm_construction(r->free_ring, r->p());
  c.counit = counit(c.norm, r);
  const TambaraPtr& n = c.norm.t;
  for (int k = 0; k < r->p(); ++k) {
    GroupMap wk = GroupMap::from_function(r->free(), r->free(), [&](std::size_t j) { return r->weyl(r->free().gen(j), -k); });
    TambaraMorphism nu = norm_of_ring_map(c.norm, c.norm, wk);
    c.translation.push_back({n, n, compose(nu.free, power_of(n->mackey.weyl, k)), nu.fixed});
  }
  return c;
}

/// X ⊗ r: box over orbits of r (trivial orbits) or N_e^{C_p}(r_e) (free orbits).
inline BoxTambara tensor_gset(const FinGSet& x, const Coefficient& c) {
  if (x.n != c.p()) throw AlgebraError("tensor_gset: group order mismatch");
  std::vector<TambaraPtr> fs;
  for (std::size_t o = 0; o < x.num_orbits(); ++o) fs.push_back(x.is_free(o) ? c.norm.t : c.r);
  return box_tambara(fs, c.p());
}

/// Morphism X ⊗ r → Y ⊗ r induced by a G-map, given the two boxes.
inline TambaraMorphism induced_map(const GMap& f, const Coefficient& c, const BoxTambara& src, const BoxTambara& tgt) {
  const FinGSet &x = f.source, &y = f.target;
  std::vector<TambaraMorphism> phis;
  for (std::size_t o = 0; o < x.num_orbits(); ++o) {
    GElement im = f({o, 0});
    TambaraMorphism inc = tgt.insertion(im.orbit);
    bool sf = x.is_free(o), tf = y.is_free(im.orbit);
    if (!sf && tf) throw AlgebraError("induced_map: a fixed orbit cannot map to a free orbit");
    if (!sf) {
      phis.push_back(inc);
    } else if (tf) {
      phis.push_back(compose(inc, c.translation[static_cast<std::size_t>(mod_int(im.power, c.p()))]));
    } else {
      phis.push_back(compose(inc, c.counit));
    }
  }
  return box_universal(src, tgt.t, phis);
}

}  // namespace tamloday
