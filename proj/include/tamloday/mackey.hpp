#pragma once

#include "tamloday/ringobj.hpp"

namespace tamloday {

/// Two-level C_p-Mackey functor: free level with Weyl action, fixed level,
/// restriction and transfer.
struct MackeyFunctor {
  int p = 2;
  FgAbGroup free, fixed;
  GroupMap res, tr, weyl;
};

inline GroupMap power_of(const GroupMap& f, long k) {
  GroupMap r = GroupMap::identity(f.source());
  for (long i = 0; i < k; ++i) r = compose(f, r);
  return r;
}

/// Σ_{i<p} w^i.
inline GroupMap orbit_sum(const GroupMap& w, int p) {
  GroupMap acc = GroupMap::zero(w.source(), w.target());
  GroupMap pw = GroupMap::identity(w.source());
  for (int i = 0; i < p; ++i) {
    acc = acc + pw;
    pw = compose(w, pw);
  }
  return acc;
}

inline Report check_mackey_axioms(const MackeyFunctor& m) {
  Report rep;
  auto same = [](const FgAbGroup& a, const FgAbGroup& b) { return a.orders() == b.orders(); };
  if (!same(m.res.source(), m.fixed) || !same(m.res.target(), m.free) || !same(m.tr.source(), m.free) ||
      !same(m.tr.target(), m.fixed) || !same(m.weyl.source(), m.free) || !same(m.weyl.target(), m.free)) {
    rep.push_back({"shape", "structure maps have wrong domains"});
    return rep;
  }
  GroupMap wp = power_of(m.weyl, m.p);
  for (std::size_t j = 0; j < m.free.dim(); ++j)
    if (!m.free.equal(wp.image_of_gen(j), m.free.gen(j))) rep.push_back({"weyl order", "w^p(" + gen_name(j) + ") != " + gen_name(j)});
  for (std::size_t j = 0; j < m.fixed.dim(); ++j) {
    Vec r = m.res.image_of_gen(j);
    if (!m.free.equal(m.weyl(r), r)) rep.push_back({"restriction invariance", "w(res " + gen_name(j) + ") != res " + gen_name(j)});
  }
  GroupMap sum = orbit_sum(m.weyl, m.p);
  for (std::size_t j = 0; j < m.free.dim(); ++j) {
    Vec x = m.free.gen(j);
    if (!m.fixed.equal(m.tr(m.weyl(x)), m.tr(x))) rep.push_back({"transfer invariance", "tr(w " + gen_name(j) + ") != tr " + gen_name(j)});
    if (!m.free.equal(m.res(m.tr(x)), sum(x)))
      rep.push_back({"double coset", "res(tr " + gen_name(j) + ") = " + to_string(m.res(m.tr(x))) + " != sum w^i = " +
                                         to_string(sum(x))});
  }
  return rep;
}

struct MackeyMorphism {
  MackeyFunctor source, target;
  GroupMap free, fixed;
};

inline Report check_mackey_morphism(const MackeyMorphism& f) {
  Report rep;
  const MackeyFunctor &s = f.source, &t = f.target;
  for (std::size_t j = 0; j < s.fixed.dim(); ++j)
    if (!t.free.equal(f.free(s.res.image_of_gen(j)), t.res(f.fixed.image_of_gen(j))))
      rep.push_back({"restriction square", gen_name(j)});
  for (std::size_t j = 0; j < s.free.dim(); ++j) {
    if (!t.fixed.equal(f.fixed(s.tr.image_of_gen(j)), t.tr(f.free.image_of_gen(j))))
      rep.push_back({"transfer square", gen_name(j)});
    if (!t.free.equal(f.free(s.weyl.image_of_gen(j)), t.weyl(f.free.image_of_gen(j))))
      rep.push_back({"weyl square", gen_name(j)});
  }
  return rep;
}

inline bool is_isomorphism(const MackeyMorphism& f) { return f.free.is_isomorphism() && f.fixed.is_isomorphism(); }

/// Presentation of the n-fold box product. Free level is the tensor product of
/// free levels with diagonal Weyl action; fixed level is generated by symbols
/// a_1⊗…⊗a_n (multi-indices of fixed-level generators) followed by transfer
/// classes [u] of canonical free-level generators, modulo Frobenius relations.
class BoxLayout {
 public:
  BoxLayout() = default;
  BoxLayout(int p, std::vector<MackeyFunctor> factors) : p_(p), factors_(std::move(factors)) {
    std::vector<FgAbGroup> frees, fixeds;
    for (auto& f : factors_) {
      if (f.p != p_) throw AlgebraError("box product: mismatched group orders");
      frees.push_back(f.free);
      fixeds.push_back(f.fixed);
    }
    free_ = TensorGroup(frees);
    symbols_ = TensorGroup(fixeds);
    const FgAbGroup& e = free_.group();
    weyl_ = map_from_presentation(e, e, [&](std::size_t m) {
      std::vector<std::size_t> idx = free_.decode(m);
      std::vector<Vec> xs;
      for (std::size_t i = 0; i < idx.size(); ++i) xs.push_back(factors_[i].weyl.image_of_gen(idx[i]));
      return free_.pure(xs);
    }, false);
    const std::size_t ns = symbols_.num_indices(), ne = e.dim(), n = ns + ne;
    std::vector<Vec> rels;
    std::vector<std::size_t> idx;
    for (std::size_t m = 0; m < ns; ++m) {
      symbols_.decode(m, idx);
      Integer g = 0;
      for (std::size_t i = 0; i < idx.size(); ++i) g = gcd(g, factors_[i].fixed.order(idx[i]));
      if (g != 0) rels.push_back(g * unit_vec(n, m));
    }
    for (std::size_t u = 0; u < ne; ++u) {
      if (e.order(u) != 0) rels.push_back(e.order(u) * unit_vec(n, ns + u));
      rels.push_back(unit_vec(n, ns + u) - embed_class(weyl_.image_of_gen(u)));
    }
    // Frobenius: a_1⊗…⊗tr(x)⊗…⊗a_n = [res a_1⊗…⊗x⊗…⊗res a_n]
    const std::size_t k = factors_.size();
    for (std::size_t slot = 0; slot < k; ++slot) {
      std::vector<FgAbGroup> others;
      for (std::size_t i = 0; i < k; ++i)
        if (i != slot) others.push_back(factors_[i].fixed);
      TensorGroup rest(others);
      std::vector<std::size_t> ridx;
      for (std::size_t x = 0; x < factors_[slot].free.dim(); ++x)
        for (std::size_t m = 0; m < rest.num_indices(); ++m) {
          rest.decode(m, ridx);
          std::vector<Vec> fixed_parts, free_parts;
          for (std::size_t i = 0, r = 0; i < k; ++i) {
            if (i == slot) {
              fixed_parts.push_back(factors_[i].tr.image_of_gen(x));
              free_parts.push_back(factors_[i].free.gen(x));
            } else {
              fixed_parts.push_back(factors_[i].fixed.gen(ridx[r]));
              free_parts.push_back(factors_[i].res.image_of_gen(ridx[r]));
              ++r;
            }
          }
          Vec rel = zero_vec(n);
          Vec s = symbols_.pure_generators(fixed_parts);
          for (std::size_t j = 0; j < ns; ++j) rel[j] = s[j];
          rel = rel - embed_class(free_.pure(free_parts));
          rels.push_back(std::move(rel));
        }
    }
    fixed_ = FgAbGroup(n, rels);
    tr_ = GroupMap::from_function(e, fixed_, [&](std::size_t u) { return fixed_.from_generators(unit_vec(n, ns + u)); });
    GroupMap sum = orbit_sum(weyl_, p_);
    res_ = map_from_presentation(fixed_, e, [&](std::size_t g) {
      if (g >= ns) return sum.image_of_gen(g - ns);
      symbols_.decode(g, idx);
      std::vector<Vec> xs;
      for (std::size_t i = 0; i < idx.size(); ++i) xs.push_back(factors_[i].res.image_of_gen(idx[i]));
      return free_.pure(xs);
    });
  }

  int p() const { return p_; }
  const std::vector<MackeyFunctor>& factors() const { return factors_; }
  std::size_t arity() const { return factors_.size(); }
  const TensorGroup& free_tensor() const { return free_; }
  const TensorGroup& symbol_tensor() const { return symbols_; }
  std::size_t num_symbols() const { return symbols_.num_indices(); }
  const FgAbGroup& free() const { return free_.group(); }
  const FgAbGroup& fixed() const { return fixed_; }
  const GroupMap& weyl() const { return weyl_; }
  const GroupMap& res() const { return res_; }
  const GroupMap& tr() const { return tr_; }
  MackeyFunctor mackey() const { return {p_, free(), fixed_, res_, tr_, weyl_}; }

  /// Presentation coordinates of the class [e] of a canonical free element.
  Vec embed_class(const Vec& e) const {
    Vec v = zero_vec(num_symbols() + e.size());
    for (std::size_t u = 0; u < e.size(); ++u) v[num_symbols() + u] = e[u];
    return v;
  }
  /// Presentation coordinates of a symbol a_1⊗…⊗a_n of fixed-level elements.
  Vec symbol_generators(const std::vector<Vec>& as) const {
    Vec s = symbols_.pure_generators(as);
    s.resize(num_symbols() + free().dim());
    return s;
  }
  Vec symbol(const std::vector<Vec>& as) const { return fixed_.from_generators(symbol_generators(as)); }
  Vec pure(const std::vector<Vec>& xs) const { return free_.pure(xs); }

 private:
  int p_ = 2;
  std::vector<MackeyFunctor> factors_;
  TensorGroup free_, symbols_;
  FgAbGroup fixed_;
  GroupMap weyl_, res_, tr_;
};

inline MackeyFunctor box_mackey(const MackeyFunctor& m, const MackeyFunctor& n) {
  if (m.p != n.p) throw AlgebraError("box product: mismatched group orders");
  return BoxLayout(m.p, {m, n}).mackey();
}

/// Map out of a box defined on free multi-indices and on symbols; transfer
/// classes go to tr of the free image. Relations are checked.
template <class FreeImg, class SymImg>
MackeyMorphism box_map(const BoxLayout& src, const MackeyFunctor& target, FreeImg&& free_img, SymImg&& sym_img) {
  GroupMap fe = map_from_presentation(src.free(), target.free, [&](std::size_t m) {
    return free_img(src.free_tensor().decode(m));
  });
  const std::size_t ns = src.num_symbols();
  GroupMap fg = map_from_presentation(src.fixed(), target.fixed, [&](std::size_t g) {
    if (g >= ns) return target.tr(fe.image_of_gen(g - ns));
    return sym_img(src.symbol_tensor().decode(g));
  });
  return {src.mackey(), target, fe, fg};
}

}  // namespace tamloday
