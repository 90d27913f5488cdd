#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tamloday/gsimp.hpp"
#include "tamloday/tambara.hpp"

namespace tamloday {

// ---------------------------------------------------------------------------
// Simplicial identities for abstract structure maps.

/// Violations of the simplicial identities up to level `top`. d(k, i): level k → k-1,
/// s(k, i): level k → k+1, id(k): identity of level k, eq compares parallel maps.
template <class Face, class Degen, class Ident, class Eq>
std::vector<std::string> simplicial_identity_violations(int top, Face&& d, Degen&& s, Ident&& id, Eq&& eq) {
  std::vector<std::string> bad;
  auto at = [](const std::string& what, int k, int i, int j) {
    return what + " at level " + std::to_string(k) + " (i=" + std::to_string(i) + ", j=" + std::to_string(j) + ")";
  };
  for (int k = 2; k <= top; ++k)
    for (int j = 1; j <= k; ++j)
      for (int i = 0; i < j; ++i)
        if (!eq(compose(d(k - 1, i), d(k, j)), compose(d(k - 1, j - 1), d(k, i)))) bad.push_back(at("d_i d_j", k, i, j));
  for (int k = 0; k < top; ++k)
    for (int j = 0; j <= k; ++j)
      for (int i = 0; i <= k + 1; ++i) {
        auto lhs = compose(d(k + 1, i), s(k, j));
        bool ok;
        if (i < j) ok = eq(lhs, compose(s(k - 1, j - 1), d(k, i)));
        else if (i == j || i == j + 1) ok = eq(lhs, id(k));
        else ok = eq(lhs, compose(s(k - 1, j), d(k, i - 1)));
        if (!ok) bad.push_back(at("d_i s_j", k, i, j));
      }
  for (int k = 0; k + 1 < top; ++k)
    for (int j = 0; j <= k; ++j)
      for (int i = 0; i <= j; ++i)
        if (!eq(compose(s(k + 1, i), s(k, j)), compose(s(k + 1, j + 1), s(k, i)))) bad.push_back(at("s_i s_j", k, i, j));
  return bad;
}

// ---------------------------------------------------------------------------
// Simplicial Tambara functors.

struct SimplicialTambara {
  int p = 2;
  int top = 0;
  std::vector<TambaraPtr> levels;
  std::vector<std::vector<TambaraMorphism>> faces;         // faces[k][i] : k → k-1
  std::vector<std::vector<TambaraMorphism>> degeneracies;  // degeneracies[k][i] : k → k+1, k < top
  std::vector<BoxTambara> boxes;                           // levels as boxes, when built that way
  std::vector<BoxOver> over;                               // levels as relative boxes, when built that way
  std::string name;

  const TambaraFunctor& level(int k) const { return *levels.at(static_cast<std::size_t>(k)); }
  const TambaraMorphism& face(int k, int i) const { return faces.at(static_cast<std::size_t>(k)).at(static_cast<std::size_t>(i)); }
  const TambaraMorphism& degeneracy(int k, int i) const {
    return degeneracies.at(static_cast<std::size_t>(k)).at(static_cast<std::size_t>(i));
  }
};

/// Assembles a simplicial Tambara functor from level data and structure-map builders.
template <class FaceFn, class DegenFn>
SimplicialTambara assemble(int p, std::vector<TambaraPtr> levels, FaceFn&& face, DegenFn&& degen, std::string name) {
  SimplicialTambara s;
  s.p = p;
  s.top = static_cast<int>(levels.size()) - 1;
  s.levels = std::move(levels);
  s.name = std::move(name);
  s.faces.resize(s.levels.size());
  s.degeneracies.resize(s.levels.size());
  for (int k = 1; k <= s.top; ++k)
    for (int i = 0; i <= k; ++i) s.faces[static_cast<std::size_t>(k)].push_back(face(k, i));
  for (int k = 0; k < s.top; ++k)
    for (int i = 0; i <= k; ++i) s.degeneracies[static_cast<std::size_t>(k)].push_back(degen(k, i));
  return s;
}

/// Every structure map is a valid morphism and the simplicial identities hold.
inline Report check_simplicial_tambara(const SimplicialTambara& s) {
  Report rep;
  auto tag = [](const std::string& what, int k, int i) { return what + " " + std::to_string(i) + " at level " + std::to_string(k); };
  for (int k = 1; k <= s.top; ++k)
    for (int i = 0; i <= k; ++i) {
      const TambaraMorphism& f = s.face(k, i);
      if (f.source != s.levels[static_cast<std::size_t>(k)] || f.target != s.levels[static_cast<std::size_t>(k - 1)])
        rep.push_back({"shape", tag("face", k, i) + " has wrong endpoints"});
      else detail::prefix(rep, check_tambara_morphism(f), tag("face", k, i) + ": ");
    }
  for (int k = 0; k < s.top; ++k)
    for (int i = 0; i <= k; ++i) {
      const TambaraMorphism& f = s.degeneracy(k, i);
      if (f.source != s.levels[static_cast<std::size_t>(k)] || f.target != s.levels[static_cast<std::size_t>(k + 1)])
        rep.push_back({"shape", tag("degeneracy", k, i) + " has wrong endpoints"});
      else detail::prefix(rep, check_tambara_morphism(f), tag("degeneracy", k, i) + ": ");
    }
  if (!rep.empty()) return rep;
  for (auto& v : simplicial_identity_violations(
           s.top, [&](int k, int i) { return s.face(k, i); }, [&](int k, int i) { return s.degeneracy(k, i); },
           [&](int k) { return identity_morphism(s.levels[static_cast<std::size_t>(k)]); }, equal_morphisms))
    rep.push_back({"simplicial identity", v});
  return rep;
}

/// Levelwise morphism of simplicial Tambara functors.
struct SimplicialMorphism {
  std::vector<TambaraMorphism> levels;
};

/// Validity of each level map and commutation with all faces and degeneracies.
inline Report check_simplicial_morphism(const SimplicialTambara& s, const SimplicialTambara& t, const SimplicialMorphism& f) {
  Report rep;
  const int top = std::min(s.top, t.top);
  if (static_cast<int>(f.levels.size()) <= top) return {{"shape", "missing level maps"}};
  auto at = [](const std::string& what, int k, int i) { return what + " " + std::to_string(i) + " at level " + std::to_string(k); };
  for (int k = 0; k <= top; ++k) {
    const TambaraMorphism& m = f.levels[static_cast<std::size_t>(k)];
    if (m.source != s.levels[static_cast<std::size_t>(k)] || m.target != t.levels[static_cast<std::size_t>(k)]) {
      rep.push_back({"shape", "level map " + std::to_string(k) + " has wrong endpoints"});
      continue;
    }
    detail::prefix(rep, check_tambara_morphism(m), "level " + std::to_string(k) + ": ");
  }
  if (!rep.empty()) return rep;
  for (int k = 1; k <= top; ++k)
    for (int i = 0; i <= k; ++i)
      if (!equal_morphisms(compose(t.face(k, i), f.levels[static_cast<std::size_t>(k)]),
                           compose(f.levels[static_cast<std::size_t>(k - 1)], s.face(k, i))))
        rep.push_back({"face", at("face", k, i) + " does not commute"});
  for (int k = 0; k < top; ++k)
    for (int i = 0; i <= k; ++i)
      if (!equal_morphisms(compose(t.degeneracy(k, i), f.levels[static_cast<std::size_t>(k)]),
                           compose(f.levels[static_cast<std::size_t>(k + 1)], s.degeneracy(k, i))))
        rep.push_back({"degeneracy", at("degeneracy", k, i) + " does not commute"});
  return rep;
}

/// A levelwise isomorphism of simplicial Tambara functors, checked on construction.
struct VerifiedIso {
  SimplicialTambara source, target;
  SimplicialMorphism map;
};

inline Report check_simplicial_isomorphism(const SimplicialTambara& s, const SimplicialTambara& t, const SimplicialMorphism& f) {
  Report rep = check_simplicial_morphism(s, t, f);
  for (std::size_t k = 0; k < f.levels.size() && rep.empty(); ++k)
    if (!is_isomorphism(f.levels[k])) rep.push_back({"bijectivity", "level " + std::to_string(k) + " map is not bijective"});
  return rep;
}

inline VerifiedIso verified_iso(SimplicialTambara s, SimplicialTambara t, SimplicialMorphism f, const std::string& what) {
  Report rep = check_simplicial_isomorphism(s, t, f);
  if (!rep.empty()) throw VerificationError(what + ": " + format_report(rep));
  return {std::move(s), std::move(t), std::move(f)};
}

inline void require_valid(const SimplicialTambara& s) {
  Report rep = check_simplicial_tambara(s);
  if (!rep.empty()) throw VerificationError(s.name + ": " + format_report(rep));
}

/// Constant simplicial object at t.
inline SimplicialTambara constant_simplicial(const TambaraPtr& t, int top) {
  return assemble(
      t->p(), std::vector<TambaraPtr>(static_cast<std::size_t>(top + 1), t), [&](int, int) { return identity_morphism(t); },
      [&](int, int) { return identity_morphism(t); }, "const(" + t->name + ")");
}

/// Levelwise box product of simplicial Tambara functors.
inline SimplicialTambara box_simplicial(const std::vector<SimplicialTambara>& parts, int p) {
  int top = parts.empty() ? 0 : parts[0].top;
  for (auto& s : parts) top = std::min(top, s.top);
  std::vector<BoxTambara> boxes;
  std::vector<TambaraPtr> levels;
  for (int k = 0; k <= top; ++k) {
    std::vector<TambaraPtr> fs;
    for (auto& s : parts) fs.push_back(s.levels[static_cast<std::size_t>(k)]);
    boxes.push_back(box_tambara(fs, p));
    levels.push_back(boxes.back().t);
  }
  auto over = [&](int k, int kk, auto&& pick) {
    std::vector<TambaraMorphism> fs;
    for (auto& s : parts) fs.push_back(pick(s));
    return box_of_morphisms(boxes[static_cast<std::size_t>(k)], boxes[static_cast<std::size_t>(kk)], fs);
  };
  std::string name;
  for (auto& s : parts) name += (name.empty() ? "" : " □ ") + s.name;
  SimplicialTambara out = assemble(
      p, levels, [&](int k, int i) { return over(k, k - 1, [&](const SimplicialTambara& s) { return s.face(k, i); }); },
      [&](int k, int i) { return over(k, k + 1, [&](const SimplicialTambara& s) { return s.degeneracy(k, i); }); }, name);
  out.boxes = std::move(boxes);
  return out;
}

/// Levelwise t □_r t2 for simplicial t, r, t2 and levelwise maps f: r → t, g: r → t2.
inline SimplicialTambara levelwise_box_over(const SimplicialTambara& t, const SimplicialTambara& r, const SimplicialTambara& t2,
                                            const SimplicialMorphism& f, const SimplicialMorphism& g) {
  const int top = std::min({t.top, r.top, t2.top});
  std::vector<BoxOver> bo;
  std::vector<TambaraPtr> levels;
  for (int k = 0; k <= top; ++k) {
    const std::size_t uk = static_cast<std::size_t>(k);
    bo.push_back(box_over(t.levels[uk], r.levels[uk], t2.levels[uk], f.levels[uk], g.levels[uk]));
    levels.push_back(bo.back().t());
  }
  auto descend = [&](int k, int kk, const TambaraMorphism& a, const TambaraMorphism& b) {
    const BoxOver &s = bo[static_cast<std::size_t>(k)], &d = bo[static_cast<std::size_t>(kk)];
    return descend_to_quotient(s.quotient, compose(d.quotient.projection, box_of_morphisms(s.box, d.box, {a, b})));
  };
  SimplicialTambara out = assemble(
      t.p, levels, [&](int k, int i) { return descend(k, k - 1, t.face(k, i), t2.face(k, i)); },
      [&](int k, int i) { return descend(k, k + 1, t.degeneracy(k, i), t2.degeneracy(k, i)); },
      t.name + " □_{" + r.name + "} " + t2.name);
  out.over = std::move(bo);
  return out;
}

// ---------------------------------------------------------------------------
// The equivariant Loday construction.

inline void require_prime_order(int n) {
  if (!is_prime(n)) throw AlgebraError("Tambara-level construction needs a prime group order, got " + std::to_string(n));
}

/// The morphism from the coefficient of an orbit to that of its image under a G-map.
inline TambaraMorphism coefficient_morphism(const Coefficient& c, bool src_free, bool tgt_free, int power) {
  if (!src_free && tgt_free) throw AlgebraError("a fixed orbit cannot map to a free orbit");
  if (!src_free) return identity_morphism(c.r);
  if (tgt_free) return c.translation[static_cast<std::size_t>(mod_int(power, c.p()))];
  return c.counit;
}

/// Loday construction of x with coefficients c, levels 0..D.
inline SimplicialTambara loday(const SimplicialGSet& x, const Coefficient& c, int D, bool verify = true) {
  require_prime_order(x.group_order());
  if (x.group_order() != c.p()) throw AlgebraError("loday: group order mismatch");
  if (D < 0) throw AlgebraError("loday: negative truncation");
  std::vector<BoxTambara> boxes;
  std::vector<TambaraPtr> levels;
  for (int k = 0; k <= D; ++k) {
    boxes.push_back(tensor_gset(x.level_gset(k), c));
    levels.push_back(boxes.back().t);
  }
  auto b = [&](int k) -> const BoxTambara& { return boxes[static_cast<std::size_t>(k)]; };
  SimplicialTambara s = assemble(
      c.p(), levels, [&](int k, int i) { return induced_map(x.face_map(k, i), c, b(k), b(k - 1)); },
      [&](int k, int i) { return induced_map(x.degeneracy_map(k, i), c, b(k), b(k + 1)); },
      "L_{" + x.name() + "}(" + c.r->name + ")");
  s.boxes = std::move(boxes);
  if (verify) require_valid(s);
  return s;
}

inline SimplicialTambara loday(const SimplicialGSet& x, const TambaraPtr& r, int D, bool verify = true) {
  require_prime_order(r->p());
  return loday(x, make_coefficient(r), D, verify);
}

/// Morphism induced by a simplicial G-map f: x → y between Loday constructions.
inline SimplicialMorphism loday_map(const SimplicialGSet& x, const SimplicialGSet& y, const SimplexMap& f, const Coefficient& c,
                                    const SimplicialTambara& lx, const SimplicialTambara& ly) {
  auto bad = validate_simplicial_map(x, y, f, std::min(lx.top, ly.top));
  if (!bad.empty()) throw AlgebraError("loday_map: " + bad.front());
  SimplicialMorphism m;
  for (int k = 0; k <= std::min(lx.top, ly.top); ++k)
    m.levels.push_back(induced_map(level_gmap(x, y, k, f), c, lx.boxes[static_cast<std::size_t>(k)], ly.boxes[static_cast<std::size_t>(k)]));
  return m;
}

/// Constant map to the point.
inline SimplexMap to_point(const SimplicialGSet& pt) {
  return [pt](const Simplex& s) { return pt.normalize({0, std::vector<int>(s.surj.size(), 0), 0}); };
}

/// Map L_x(r) → L_x(t) induced by a coefficient morphism f: r → t.
inline SimplicialMorphism loday_coefficient_map(const SimplicialGSet& x, const TambaraMorphism& f, const Coefficient& cr,
                                                const Coefficient& ct, const SimplicialTambara& lr, const SimplicialTambara& lt) {
  if (f.source != cr.r || f.target != ct.r) throw AlgebraError("loday_coefficient_map: morphism does not match coefficients");
  TambaraMorphism nf = norm_of_ring_map(cr.norm, ct.norm, f.free);
  SimplicialMorphism m;
  for (int k = 0; k <= std::min(lr.top, lt.top); ++k) {
    FinGSet g = x.level_gset(k);
    const BoxTambara &s = lr.boxes[static_cast<std::size_t>(k)], &t = lt.boxes[static_cast<std::size_t>(k)];
    std::vector<TambaraMorphism> fs;
    for (std::size_t o = 0; o < g.num_orbits(); ++o) fs.push_back(compose(t.insertion(o), g.is_free(o) ? nf : f));
    m.levels.push_back(box_universal(s, t.t, fs));
  }
  return m;
}

// ---------------------------------------------------------------------------
// Ring-level simplicial objects.

struct SimplicialRing {
  int top = 0;
  std::vector<RingObject> levels;
  std::vector<std::vector<GroupMap>> faces;
  std::vector<std::vector<GroupMap>> degeneracies;
  std::vector<GroupMap> actions;     // generator action per level, when present
  std::vector<TensorRing> tensors;   // levels as tensor powers, when built that way
  std::string name;

  const RingObject& level(int k) const { return levels.at(static_cast<std::size_t>(k)); }
  const GroupMap& face(int k, int i) const { return faces.at(static_cast<std::size_t>(k)).at(static_cast<std::size_t>(i)); }
  const GroupMap& degeneracy(int k, int i) const {
    return degeneracies.at(static_cast<std::size_t>(k)).at(static_cast<std::size_t>(i));
  }

  /// Alternating-sum complex of the underlying abelian groups.
  ChainComplex chains() const {
    std::vector<FgAbGroup> groups;
    std::vector<GroupMap> d;
    for (int k = 0; k <= top; ++k) groups.push_back(level(k).additive());
    for (int k = 1; k <= top; ++k) {
      GroupMap m = GroupMap::zero(level(k).additive(), level(k - 1).additive());
      for (int i = 0; i <= k; ++i) m = i % 2 ? m - face(k, i) : m + face(k, i);
      d.push_back(m);
    }
    return ChainComplex(groups, d);
  }
};

inline Report check_simplicial_ring(const SimplicialRing& s) {
  Report rep;
  for (int k = 1; k <= s.top; ++k)
    for (int i = 0; i <= k; ++i)
      detail::prefix(rep, check_ring_map({s.level(k), s.level(k - 1), s.face(k, i)}),
                     "face " + std::to_string(i) + " at level " + std::to_string(k) + ": ");
  for (int k = 0; k < s.top; ++k)
    for (int i = 0; i <= k; ++i)
      detail::prefix(rep, check_ring_map({s.level(k), s.level(k + 1), s.degeneracy(k, i)}),
                     "degeneracy " + std::to_string(i) + " at level " + std::to_string(k) + ": ");
  if (!rep.empty()) return rep;
  for (auto& v : simplicial_identity_violations(
           s.top, [&](int k, int i) { return s.face(k, i); }, [&](int k, int i) { return s.degeneracy(k, i); },
           [&](int k) { return GroupMap::identity(s.level(k).additive()); }, [](const GroupMap& a, const GroupMap& b) { return a.equals(b); }))
    rep.push_back({"simplicial identity", v});
  for (std::size_t k = 0; k < s.actions.size(); ++k) {
    const int kk = static_cast<int>(k);
    for (int i = 0; kk > 0 && i <= kk; ++i)
      if (!compose(s.face(kk, i), s.actions[k]).equals(compose(s.actions[k - 1], s.face(kk, i))))
        rep.push_back({"equivariance", "face " + std::to_string(i) + " at level " + std::to_string(k)});
  }
  return rep;
}

/// Ring map s^{⊗X} → s^{⊗Y} of a map of finite sets: b_y = Π_{f(x)=y} r_x.
inline GroupMap tensor_pushforward(const TensorRing& src, const TensorRing& tgt, const std::vector<std::size_t>& f) {
  return src.map_by_slots(tgt.ring(), [&](std::size_t i, std::size_t j) {
    return tgt.insert(f[i], src.factors()[i].additive().gen(j));
  });
}

/// Nonequivariant Loday construction of a plain simplicial set with coefficients in s.
inline SimplicialRing nonequiv_loday(const LevelwiseSimplicialSet& x, const RingObject& s, std::string name = "") {
  if (auto bad = x.validate(); !bad.empty()) throw AlgebraError("nonequiv_loday: " + bad.front());
  SimplicialRing out;
  out.top = x.top();
  out.name = name.empty() ? "L(" + std::string("X") + ")" : std::move(name);
  RingObject base = s.without_automorphism();
  for (int k = 0; k <= x.top(); ++k) {
    out.tensors.emplace_back(std::vector<RingObject>(x.sizes[static_cast<std::size_t>(k)], base), false);
    out.levels.push_back(out.tensors.back().ring());
  }
  out.faces.resize(out.levels.size());
  out.degeneracies.resize(out.levels.size());
  for (int k = 1; k <= x.top(); ++k)
    for (int i = 0; i <= k; ++i)
      out.faces[static_cast<std::size_t>(k)].push_back(
          tensor_pushforward(out.tensors[static_cast<std::size_t>(k)], out.tensors[static_cast<std::size_t>(k - 1)],
                             x.faces[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]));
  for (int k = 0; k < x.top(); ++k)
    for (int i = 0; i <= k; ++i)
      out.degeneracies[static_cast<std::size_t>(k)].push_back(
          tensor_pushforward(out.tensors[static_cast<std::size_t>(k)], out.tensors[static_cast<std::size_t>(k + 1)],
                             x.degens[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]));
  if (x.action.size() == x.sizes.size())
    for (int k = 0; k <= x.top(); ++k)
      out.actions.push_back(tensor_pushforward(out.tensors[static_cast<std::size_t>(k)], out.tensors[static_cast<std::size_t>(k)],
                                               x.action[static_cast<std::size_t>(k)]));
  return out;
}

inline SimplicialRing nonequiv_loday(const SimplicialGSet& x, const RingObject& s, int D) {
  return nonequiv_loday(levelwise(x, D), s, "L_{" + x.name() + "}");
}

/// Cyclic bar construction: the Loday construction of the one-vertex circle.
inline SimplicialRing cyclic_bar(const RingObject& s, int D) {
  SimplicialRing b = nonequiv_loday(one_vertex_circle(), s, D);
  b.name = "cyclic_bar";
  return b;
}

// ---------------------------------------------------------------------------
// Twisted cyclic nerves and bar constructions.

/// Cyclic-bar slot of a simplex of a one-edge circle: 0 for the vertex, else
/// the number of zeros of its surjection onto [1].
inline std::size_t circle_slot(const SimplicialGSet& x, const Simplex& s) {
  if (x.cells().at(s.cell).dim == 0) return 0;
  return static_cast<std::size_t>(std::count(s.surj.begin(), s.surj.end(), 0));
}

/// Target slot of source slot j under the cyclic face d_i (i < k merges i and i+1;
/// i = k moves slot k to the front).
inline std::size_t cyclic_face_slot(std::size_t j, int k, int i) {
  if (i == k) return j == static_cast<std::size_t>(k) ? 0 : j;
  return j <= static_cast<std::size_t>(i) ? j : j - 1;
}
inline std::size_t degeneracy_slot(std::size_t j, int i) { return j <= static_cast<std::size_t>(i) ? j : j + 1; }

/// Ring-level twisted cyclic nerve of s, twisted by the inverse of its automorphism
/// (identity when s has none).
inline SimplicialRing twisted_cyclic_nerve(const RingObject& s, int D) {
  SimplicialRing out;
  out.top = D;
  out.name = "HC(twisted)";
  RingObject base = s.without_automorphism();
  for (int k = 0; k <= D; ++k) {
    out.tensors.emplace_back(std::vector<RingObject>(static_cast<std::size_t>(k + 1), base), false);
    out.levels.push_back(out.tensors.back().ring());
  }
  auto twist = [&](const Vec& x) { return s.has_automorphism() ? s.act(x, -1) : x; };
  out.faces.resize(out.levels.size());
  out.degeneracies.resize(out.levels.size());
  for (int k = 1; k <= D; ++k)
    for (int i = 0; i <= k; ++i) {
      const TensorRing &src = out.tensors[static_cast<std::size_t>(k)], &tgt = out.tensors[static_cast<std::size_t>(k - 1)];
      out.faces[static_cast<std::size_t>(k)].push_back(src.map_by_slots(tgt.ring(), [&](std::size_t j, std::size_t g) {
        Vec x = base.additive().gen(g);
        if (i == k && j == static_cast<std::size_t>(k)) x = twist(x);
        return tgt.insert(cyclic_face_slot(j, k, i), x);
      }));
    }
  for (int k = 0; k < D; ++k)
    for (int i = 0; i <= k; ++i) {
      const TensorRing &src = out.tensors[static_cast<std::size_t>(k)], &tgt = out.tensors[static_cast<std::size_t>(k + 1)];
      out.degeneracies[static_cast<std::size_t>(k)].push_back(src.map_by_slots(
          tgt.ring(), [&](std::size_t j, std::size_t g) { return tgt.insert(degeneracy_slot(j, i), base.additive().gen(g)); }));
    }
  return out;
}

/// Morphism between boxes sending factor j into target factor slot[j] through via[j].
inline TambaraMorphism slot_map(const BoxTambara& src, const BoxTambara& tgt, const std::function<std::size_t(std::size_t)>& slot,
                                const std::function<std::optional<TambaraMorphism>(std::size_t)>& via = {}) {
  std::vector<TambaraMorphism> fs;
  for (std::size_t j = 0; j < src.factors.size(); ++j) {
    TambaraMorphism ins = tgt.insertion(slot(j));
    std::optional<TambaraMorphism> v = via ? via(j) : std::nullopt;
    fs.push_back(v ? compose(ins, *v) : ins);
  }
  return box_universal(src, tgt.t, fs);
}

/// Tambara-level twisted cyclic nerve: level k is the (k+1)-fold box power of t,
/// d_k = (μ □ id) ∘ (twist □ id) ∘ τ.
inline SimplicialTambara twisted_cyclic_nerve(const TambaraPtr& t, const TambaraMorphism& twist, int D, bool verify = true) {
  if (twist.source != t || twist.target != t) throw AlgebraError("twisted_cyclic_nerve: twist must be an endomorphism of t");
  std::vector<BoxTambara> boxes;
  std::vector<TambaraPtr> levels;
  for (int k = 0; k <= D; ++k) {
    boxes.push_back(box_tambara(std::vector<TambaraPtr>(static_cast<std::size_t>(k + 1), t), t->p()));
    levels.push_back(boxes.back().t);
  }
  auto b = [&](int k) -> const BoxTambara& { return boxes[static_cast<std::size_t>(k)]; };
  SimplicialTambara s = assemble(
      t->p(), levels,
      [&](int k, int i) {
        return slot_map(
            b(k), b(k - 1), [&](std::size_t j) { return cyclic_face_slot(j, k, i); },
            [&](std::size_t j) -> std::optional<TambaraMorphism> {
              if (i == k && j == static_cast<std::size_t>(k)) return twist;
              return std::nullopt;
            });
      },
      [&](int k, int i) { return slot_map(b(k), b(k + 1), [&](std::size_t j) { return degeneracy_slot(j, i); }); },
      "HC(" + t->name + ")");
  s.boxes = std::move(boxes);
  if (verify) require_valid(s);
  return s;
}

/// Two-sided bar construction B(a, n, b) for algebra maps f: n → a and g: n → b.
inline SimplicialTambara two_sided_bar(const TambaraPtr& a, const TambaraPtr& n, const TambaraPtr& b, const TambaraMorphism& f,
                                       const TambaraMorphism& g, int D, bool verify = true) {
  if (f.source != n || f.target != a || g.source != n || g.target != b)
    throw AlgebraError("two_sided_bar: module maps do not match the given functors");
  for (auto* m : {&f, &g}) {
    Report rep = check_tambara_morphism(*m);
    if (!rep.empty()) throw VerificationError("two_sided_bar: invalid module map: " + format_report(rep));
  }
  std::vector<BoxTambara> boxes;
  std::vector<TambaraPtr> levels;
  for (int k = 0; k <= D; ++k) {
    std::vector<TambaraPtr> fs{a};
    for (int j = 0; j < k; ++j) fs.push_back(n);
    fs.push_back(b);
    boxes.push_back(box_tambara(fs, a->p()));
    levels.push_back(boxes.back().t);
  }
  auto bx = [&](int k) -> const BoxTambara& { return boxes[static_cast<std::size_t>(k)]; };
  SimplicialTambara s = assemble(
      a->p(), levels,
      [&](int k, int i) {
        return slot_map(
            bx(k), bx(k - 1), [&](std::size_t j) { return j <= static_cast<std::size_t>(i) ? j : j - 1; },
            [&](std::size_t j) -> std::optional<TambaraMorphism> {
              if (i == 0 && j == 1) return f;
              if (i == k && j == static_cast<std::size_t>(k)) return g;
              return std::nullopt;
            });
      },
      [&](int k, int i) { return slot_map(bx(k), bx(k + 1), [&](std::size_t j) { return degeneracy_slot(j, i); }); },
      "B(" + a->name + ", " + n->name + ", " + b->name + ")");
  s.boxes = std::move(boxes);
  if (verify) require_valid(s);
  return s;
}

// ---------------------------------------------------------------------------
// Comparison isomorphisms.

namespace detail {

/// Map out of a Loday level given, per orbit, the target morphism of its
/// coefficient-shaped factor and the group power of the orbit representative's image.
struct Route {
  TambaraMorphism into;  // from r (fixed target orbit) or N (free target orbit) to the target
  bool target_free = false;
  int power = 0;
};

inline TambaraMorphism routed_map(const Coefficient& c, const FinGSet& g, const BoxTambara& src, const TambaraPtr& target,
                                  const std::function<Route(std::size_t)>& route) {
  std::vector<TambaraMorphism> fs;
  for (std::size_t o = 0; o < g.num_orbits(); ++o) {
    Route r = route(o);
    fs.push_back(compose(r.into, coefficient_morphism(c, g.is_free(o), r.target_free, r.power)));
  }
  return box_universal(src, target, fs);
}

}  // namespace detail

/// L_{S^1_rot}(r) ≅ HC(N(r_e)) with twist γ^{-1}, for r over C_p.
inline VerifiedIso rotation_hc_iso(const TambaraPtr& r, int D) {
  const int p = r->p();
  require_prime_order(p);
  Coefficient c = make_coefficient(r);
  SimplicialGSet x = rotation_circle(p);
  SimplicialTambara l = loday(x, c, D);
  SimplicialTambara h = twisted_cyclic_nerve(c.norm.t, c.translation[static_cast<std::size_t>(p - 1)], D);
  SimplicialMorphism m;
  for (int k = 0; k <= D; ++k) {
    const auto& orbits = x.orbits(k);
    const BoxTambara& tgt = h.boxes[static_cast<std::size_t>(k)];
    m.levels.push_back(detail::routed_map(c, x.level_gset(k), l.boxes[static_cast<std::size_t>(k)], tgt.t, [&](std::size_t o) {
      return detail::Route{tgt.insertion(circle_slot(x, orbits[o])), true, 0};
    }));
  }
  return verified_iso(std::move(l), std::move(h), std::move(m), "rotation_hc_iso");
}

/// Quotient version K = C_p: L_{S^1/C_p}(r) ≅ HC(r) with trivial twist.
inline VerifiedIso rotation_quotient_hc_iso(const TambaraPtr& r, int D) {
  const int p = r->p();
  require_prime_order(p);
  Coefficient c = make_coefficient(r);
  SimplicialGSet x = rotation_quotient_circle(p);
  SimplicialTambara l = loday(x, c, D);
  SimplicialTambara h = twisted_cyclic_nerve(r, identity_morphism(r), D);
  SimplicialMorphism m;
  for (int k = 0; k <= D; ++k) {
    const auto& orbits = x.orbits(k);
    const BoxTambara& tgt = h.boxes[static_cast<std::size_t>(k)];
    m.levels.push_back(detail::routed_map(c, x.level_gset(k), l.boxes[static_cast<std::size_t>(k)], tgt.t, [&](std::size_t o) {
      return detail::Route{tgt.insertion(circle_slot(x, orbits[o])), false, 0};
    }));
  }
  return verified_iso(std::move(l), std::move(h), std::move(m), "rotation_quotient_hc_iso");
}

/// A levelwise ring isomorphism between simplicial rings, checked on construction.
struct VerifiedRingIso {
  SimplicialRing source, target;
  std::vector<GroupMap> maps;
};

inline Report check_simplicial_ring_isomorphism(const SimplicialRing& s, const SimplicialRing& t, const std::vector<GroupMap>& f) {
  Report rep;
  const int top = std::min(s.top, t.top);
  if (static_cast<int>(f.size()) <= top) return {{"shape", "missing level maps"}};
  for (int k = 0; k <= top; ++k) {
    const GroupMap& m = f[static_cast<std::size_t>(k)];
    detail::prefix(rep, check_ring_map({s.level(k), t.level(k), m}), "level " + std::to_string(k) + ": ");
    if (rep.empty() && !m.is_isomorphism()) rep.push_back({"bijectivity", "level " + std::to_string(k) + " map is not bijective"});
  }
  if (!rep.empty()) return rep;
  for (int k = 1; k <= top; ++k)
    for (int i = 0; i <= k; ++i)
      if (!compose(t.face(k, i), f[static_cast<std::size_t>(k)]).equals(compose(f[static_cast<std::size_t>(k - 1)], s.face(k, i))))
        rep.push_back({"face", "face " + std::to_string(i) + " at level " + std::to_string(k) + " does not commute"});
  for (int k = 0; k < top; ++k)
    for (int i = 0; i <= k; ++i)
      if (!compose(t.degeneracy(k, i), f[static_cast<std::size_t>(k)])
               .equals(compose(f[static_cast<std::size_t>(k + 1)], s.degeneracy(k, i))))
        rep.push_back({"degeneracy", "degeneracy " + std::to_string(i) + " at level " + std::to_string(k) + " does not commute"});
  return rep;
}

/// Ring-level HC identification for C_n, any n ≥ 1: the underlying Loday construction of
/// the rotation circle against the twisted cyclic nerve of s^{⊗n} with the shift.
/// Element (orbit j, γ^g) goes to slot j, tensor coordinate -g mod n.
inline VerifiedRingIso rotation_hc_ring_iso(const RingObject& s, int n, int D) {
  SimplicialGSet x = rotation_circle(n);
  SimplicialRing l = nonequiv_loday(x, s, D);
  TensorRing inner = cyclic_tensor_power_data(s, n);
  SimplicialRing h = twisted_cyclic_nerve(cyclic_tensor_power(s, n), D);
  std::vector<GroupMap> maps;
  for (int k = 0; k <= D; ++k) {
    FinGSet g = x.level_gset(k);
    const auto& orbits = x.orbits(k);
    std::vector<std::pair<std::size_t, int>> where(g.size());
    for (std::size_t o = 0; o < g.num_orbits(); ++o)
      for (int e = 0; e < g.orbit_size(o); ++e) where[g.offset(o) + static_cast<std::size_t>(e)] = {circle_slot(x, orbits[o]), mod_int(-e, n)};
    const TensorRing &src = l.tensors[static_cast<std::size_t>(k)], &tgt = h.tensors[static_cast<std::size_t>(k)];
    maps.push_back(src.map_by_slots(tgt.ring(), [&](std::size_t e, std::size_t j) {
      auto [slot, coord] = where[e];
      return tgt.insert(slot, inner.insert(static_cast<std::size_t>(coord), s.additive().gen(j)));
    }));
  }
  Report rep = check_simplicial_ring_isomorphism(l, h, maps);
  if (!rep.empty()) throw VerificationError("rotation_hc_ring_iso: " + format_report(rep));
  return {std::move(l), std::move(h), std::move(maps)};
}

/// Edgewise subdivision: free level of L_{S^1_rot}(r) for C_n against sd_n of the
/// cyclic bar of s, by interleaving (r_{j,c}) ↦ position c(k+1)+j.
inline VerifiedRingIso subdivision_iso(const RingObject& s, int n, int D) {
  if (n < 1) throw AlgebraError("subdivision_iso: n must be positive");
  SimplicialGSet x = rotation_circle(n);
  SimplicialRing l = nonequiv_loday(x, s, D);
  SimplicialGSet c = one_vertex_circle();
  const int big = n * (D + 1) - 1;
  SimplicialRing sd = nonequiv_loday(subdivide(levelwise(c, big), n), s, "sd_n(cyclic_bar)");
  std::vector<GroupMap> maps;
  for (int k = 0; k <= D; ++k) {
    const int L = n * (k + 1) - 1;
    std::vector<std::size_t> by_position(static_cast<std::size_t>(L + 1));
    const auto& corbits = c.orbits(L);
    for (std::size_t o = 0; o < corbits.size(); ++o) by_position[circle_slot(c, corbits[o])] = o;
    FinGSet g = x.level_gset(k);
    const auto& orbits = x.orbits(k);
    std::vector<std::size_t> where(g.size());
    for (std::size_t o = 0; o < g.num_orbits(); ++o)
      for (int e = 0; e < g.orbit_size(o); ++e) {
        const std::size_t pos = static_cast<std::size_t>(mod_int(-e, n)) * static_cast<std::size_t>(k + 1) + circle_slot(x, orbits[o]);
        where[g.offset(o) + static_cast<std::size_t>(e)] = by_position.at(pos);
      }
    maps.push_back(tensor_pushforward(l.tensors[static_cast<std::size_t>(k)], sd.tensors[static_cast<std::size_t>(k)], where));
  }
  Report rep = check_simplicial_ring_isomorphism(l, sd, maps);
  if (!rep.empty()) throw VerificationError("subdivision_iso: " + format_report(rep));
  return {std::move(l), std::move(sd), std::move(maps)};
}

/// L_{S^σ}(r) ≅ B(r, N(r_e), r) for r over C_2, with the counit as both module maps.
inline VerifiedIso reflection_bar_iso(const TambaraPtr& r, int D) {
  if (r->p() != 2) throw AlgebraError("reflection_bar_iso needs the group C_2");
  Coefficient c = make_coefficient(r);
  SimplicialGSet x = reflection_circle();
  SimplicialTambara l = loday(x, c, D);
  SimplicialTambara b = two_sided_bar(r, c.norm.t, r, c.counit, c.counit, D);
  SimplicialMorphism m;
  for (int k = 0; k <= D; ++k) {
    const auto& orbits = x.orbits(k);
    const BoxTambara& tgt = b.boxes[static_cast<std::size_t>(k)];
    FinGSet g = x.level_gset(k);
    m.levels.push_back(detail::routed_map(c, g, l.boxes[static_cast<std::size_t>(k)], tgt.t, [&](std::size_t o) {
      const Simplex& s = orbits[o];
      std::size_t slot = g.is_free(o) ? circle_slot(x, s) : (s.cell == 0 ? 0 : static_cast<std::size_t>(k + 1));
      return detail::Route{tgt.insertion(slot), g.is_free(o), 0};
    }));
  }
  return verified_iso(std::move(l), std::move(b), std::move(m), "reflection_bar_iso");
}

/// Diagonal of the bisimplicial bar construction B(L_a, L_m, L_b) along simplicial
/// G-maps m → a and m → b.
struct DiagonalBar {
  SimplicialTambara la, lm, lb, diagonal;
  SimplicialMorphism alpha, beta;
};

inline DiagonalBar diagonal_bar(const SimplicialGSet& a, const SimplicialGSet& m, const SimplicialGSet& b, const SimplexMap& ma,
                                const SimplexMap& mb, const Coefficient& c, int D) {
  DiagonalBar d;
  d.la = loday(a, c, D);
  d.lm = loday(m, c, D);
  d.lb = loday(b, c, D);
  d.alpha = loday_map(m, a, ma, c, d.lm, d.la);
  d.beta = loday_map(m, b, mb, c, d.lm, d.lb);
  std::vector<BoxTambara> boxes;
  std::vector<TambaraPtr> levels;
  for (int k = 0; k <= D; ++k) {
    const std::size_t uk = static_cast<std::size_t>(k);
    std::vector<TambaraPtr> fs{d.la.levels[uk]};
    for (int j = 0; j < k; ++j) fs.push_back(d.lm.levels[uk]);
    fs.push_back(d.lb.levels[uk]);
    boxes.push_back(box_tambara(fs, c.p()));
    levels.push_back(boxes.back().t);
  }
  auto piece = [&](std::size_t j, int k) -> const SimplicialTambara& {
    if (j == 0) return d.la;
    if (j == static_cast<std::size_t>(k + 1)) return d.lb;
    return d.lm;
  };
  auto bx = [&](int k) -> const BoxTambara& { return boxes[static_cast<std::size_t>(k)]; };
  d.diagonal = assemble(
      c.p(), levels,
      [&](int k, int i) {
        return slot_map(
            bx(k), bx(k - 1), [&](std::size_t j) { return j <= static_cast<std::size_t>(i) ? j : j - 1; },
            [&](std::size_t j) -> std::optional<TambaraMorphism> {
              TambaraMorphism f = piece(j, k).face(k, i);
              if (i == 0 && j == 1) return compose(d.alpha.levels[static_cast<std::size_t>(k - 1)], f);
              if (i == k && j == static_cast<std::size_t>(k)) return compose(d.beta.levels[static_cast<std::size_t>(k - 1)], f);
              return f;
            });
      },
      [&](int k, int i) {
        return slot_map(
            bx(k), bx(k + 1), [&](std::size_t j) { return degeneracy_slot(j, i); },
            [&](std::size_t j) -> std::optional<TambaraMorphism> { return piece(j, k).degeneracy(k, i); });
      },
      "diag B(" + d.la.name + ", " + d.lm.name + ", " + d.lb.name + ")");
  d.diagonal.boxes = std::move(boxes);
  require_valid(d.diagonal);
  return d;
}

/// L_{SY}(r) (or L_{S^σ Y}(r) when flipped, p = 2) against the diagonal bar construction.
inline VerifiedIso suspension_bar_iso(const SimplicialGSet& y, const TambaraPtr& r, int D, bool flipped) {
  const int p = r->p();
  require_prime_order(p);
  if (flipped && p != 2) throw AlgebraError("suspension_bar_iso: flipped suspension needs the group C_2");
  Coefficient c = make_coefficient(r);
  ModelSimplicialGSet<JoinElement> js = join_model(y, flipped);
  const SimplicialGSet& sx = js.sset();
  SimplicialTambara l = loday(sx, c, D);
  SimplicialGSet pt = point(p), c2 = free_orbit(p);
  std::optional<ModelSimplicialGSet<ProductElement>> pm;
  SimplicialGSet a, m, b;
  SimplexMap ma, mb;
  if (!flipped) {
    a = pt, m = y, b = pt;
    ma = mb = to_point(pt);
  } else {
    pm = product_model(c2, y);
    a = y, m = pm->sset(), b = c2;
    ma = [pm](const Simplex& s) { return pm->to_element(s).second; };
    mb = [pm](const Simplex& s) { return pm->to_element(s).first; };
  }
  DiagonalBar d = diagonal_bar(a, m, b, ma, mb, c, D);
  SimplicialMorphism iso;
  for (int k = 0; k <= D; ++k) {
    const std::size_t uk = static_cast<std::size_t>(k);
    FinGSet g = sx.level_gset(k);
    const auto& orbits = sx.orbits(k);
    const BoxTambara& tgt = d.diagonal.boxes[uk];
    iso.levels.push_back(detail::routed_map(c, g, l.boxes[uk], tgt.t, [&](std::size_t o) {
      JoinElement e = js.to_element(orbits[o]);
      std::size_t slot = static_cast<std::size_t>(e.j);
      const SimplicialGSet* piece;
      const SimplicialTambara* lp;
      Simplex ps;
      std::vector<int> zeros(static_cast<std::size_t>(k + 1), 0);
      if (e.j == 0) {
        piece = &a, lp = &d.la;
        ps = flipped ? e.y : Simplex{0, zeros, 0};
      } else if (e.j == k + 1) {
        piece = &b, lp = &d.lb;
        ps = flipped ? c2.normalize({0, zeros, e.sign}) : Simplex{0, zeros, 0};
      } else {
        piece = &m, lp = &d.lm;
        ps = flipped ? pm->to_simplex(k, {c2.normalize({0, zeros, e.sign}), e.y}) : e.y;
      }
      GElement at = piece->address(ps);
      FinGSet pg = piece->level_gset(k);
      return detail::Route{compose(tgt.insertion(slot), lp->boxes[uk].insertion(at.orbit)), pg.is_free(at.orbit), at.power};
    }));
  }
  return verified_iso(std::move(l), std::move(d.diagonal), std::move(iso), "suspension_bar_iso");
}

// ---------------------------------------------------------------------------
// Structural properties.

/// L_{x ⊔ y}(r) ≅ L_x(r) □ L_y(r).
inline VerifiedIso disjoint_union_iso(const SimplicialGSet& x, const SimplicialGSet& y, const TambaraPtr& r, int D) {
  Coefficient c = make_coefficient(r);
  SimplicialGSet u = disjoint_union(x, y);
  SimplicialTambara lu = loday(u, c, D), lx = loday(x, c, D), ly = loday(y, c, D);
  SimplicialTambara bx = box_simplicial({lx, ly}, c.p());
  const std::size_t off = x.cells().size();
  SimplicialMorphism m;
  for (int k = 0; k <= D; ++k) {
    const std::size_t uk = static_cast<std::size_t>(k);
    FinGSet g = u.level_gset(k);
    const auto& orbits = u.orbits(k);
    const BoxTambara& tgt = bx.boxes[uk];
    m.levels.push_back(detail::routed_map(c, g, lu.boxes[uk], tgt.t, [&](std::size_t o) {
      Simplex s = orbits[o];
      const bool left = s.cell < off;
      if (!left) s.cell -= off;
      const SimplicialGSet& piece = left ? x : y;
      GElement at = piece.address(s);
      const BoxTambara& pb = (left ? lx : ly).boxes[uk];
      return detail::Route{compose(tgt.insertion(left ? 0 : 1), pb.insertion(at.orbit)), piece.level_gset(k).is_free(at.orbit),
                           at.power};
    }));
  }
  return verified_iso(std::move(lu), std::move(bx), std::move(m), "disjoint_union_iso");
}

/// L_x(r □ t) ≅ L_x(r) □ L_x(t).
inline VerifiedIso box_distributivity_iso(const SimplicialGSet& x, const TambaraPtr& r, const TambaraPtr& t, int D) {
  const int p = r->p();
  BoxTambara rt = box_tambara(r, t);
  Coefficient c = make_coefficient(rt.t), cr = make_coefficient(r), ct = make_coefficient(t);
  SimplicialTambara l = loday(x, c, D), lr = loday(x, cr, D), lt = loday(x, ct, D);
  SimplicialTambara bx = box_simplicial({lr, lt}, p);
  SimplicialMorphism m;
  for (int k = 0; k <= D; ++k) {
    const std::size_t uk = static_cast<std::size_t>(k);
    FinGSet g = x.level_gset(k);
    const BoxTambara& tgt = bx.boxes[uk];
    std::vector<TambaraMorphism> fs;
    for (std::size_t o = 0; o < g.num_orbits(); ++o) {
      TambaraMorphism a = compose(tgt.insertion(0), lr.boxes[uk].insertion(o));
      TambaraMorphism b = compose(tgt.insertion(1), lt.boxes[uk].insertion(o));
      if (!g.is_free(o)) {
        fs.push_back(box_universal(rt, tgt.t, {a, b}));
        continue;
      }
      // (r □ t)_e = r_e ⊗ t_e → free level of the target, through slot 0 of each norm.
      const TensorGroup& ft = rt.layout->free_tensor();
      const TambaraFunctor& T = *tgt.t;
      GroupMap phi = map_from_presentation(rt.t->free(), T.free(), [&](std::size_t mm) {
        std::vector<std::size_t> idx = ft.decode(mm);
        Vec xa = a.free(cr.norm.inject(r->free().gen(idx[0])));
        Vec xb = b.free(ct.norm.inject(t->free().gen(idx[1])));
        return T.free_ring.mul(xa, xb);
      });
      fs.push_back(norm_adjunct(c.norm, tgt.t, phi));
    }
    m.levels.push_back(box_universal(l.boxes[uk], tgt.t, fs));
  }
  return verified_iso(std::move(l), std::move(bx), std::move(m), "box_distributivity_iso");
}

/// diag L_x(L_y(r)) ≅ L_{x × y}(r) for x with trivial action.
inline VerifiedIso diagonal_product_iso(const SimplicialGSet& x, const SimplicialGSet& y, const TambaraPtr& r, int D) {
  for (std::size_t cc = 0; cc < x.cells().size(); ++cc)
    if (x.cells()[cc].stabilizer != x.group_order())
      throw AlgebraError("diagonal_product_iso: the outer simplicial set must have trivial action");
  Coefficient c = make_coefficient(r);
  ModelSimplicialGSet<ProductElement> pm = product_model(x, y);
  const SimplicialGSet& xy = pm.sset();
  SimplicialTambara l = loday(xy, c, D), ly = loday(y, c, D);
  std::vector<BoxTambara> boxes;
  std::vector<TambaraPtr> levels;
  for (int k = 0; k <= D; ++k) {
    boxes.push_back(box_tambara(std::vector<TambaraPtr>(x.level_gset(k).num_orbits(), ly.levels[static_cast<std::size_t>(k)]), c.p()));
    levels.push_back(boxes.back().t);
  }
  auto bx = [&](int k) -> const BoxTambara& { return boxes[static_cast<std::size_t>(k)]; };
  SimplicialTambara diag = assemble(
      c.p(), levels,
      [&](int k, int i) {
        GMap f = x.face_map(k, i);
        return slot_map(
            bx(k), bx(k - 1), [&](std::size_t o) { return f.images[o].orbit; },
            [&](std::size_t) -> std::optional<TambaraMorphism> { return ly.face(k, i); });
      },
      [&](int k, int i) {
        GMap f = x.degeneracy_map(k, i);
        return slot_map(
            bx(k), bx(k + 1), [&](std::size_t o) { return f.images[o].orbit; },
            [&](std::size_t) -> std::optional<TambaraMorphism> { return ly.degeneracy(k, i); });
      },
      "diag L_{" + x.name() + "}(" + ly.name + ")");
  diag.boxes = std::move(boxes);
  require_valid(diag);
  SimplicialMorphism m;
  for (int k = 0; k <= D; ++k) {
    const std::size_t uk = static_cast<std::size_t>(k);
    FinGSet g = xy.level_gset(k);
    const auto& orbits = xy.orbits(k);
    const BoxTambara& tgt = diag.boxes[uk];
    m.levels.push_back(detail::routed_map(c, g, l.boxes[uk], tgt.t, [&](std::size_t o) {
      ProductElement e = pm.to_element(orbits[o]);
      GElement ax = x.address(e.first), ay = y.address(e.second);
      return detail::Route{compose(tgt.insertion(ax.orbit), ly.boxes[uk].insertion(ay.orbit)), y.level_gset(k).is_free(ay.orbit),
                           ay.power};
    }));
  }
  return verified_iso(std::move(l), std::move(diag), std::move(m), "diagonal_product_iso");
}

/// L_{x ⊔_z y}(r) ≅ L_x(r) □_{L_z(r)} L_y(r) for orbit-closed z.
inline VerifiedIso pushout_iso(const SimplicialGSet& x, const SimplicialGSet& z, const SimplicialGSet& y, const CellInclusion& zx,
                               const CellInclusion& zy, const TambaraPtr& r, int D) {
  Coefficient c = make_coefficient(r);
  ModelSimplicialGSet<PushoutElement> pm = pushout_model(x, z, y, zx, zy);
  const SimplicialGSet& po = pm.sset();
  SimplicialTambara l = loday(po, c, D), lx = loday(x, c, D), lz = loday(z, c, D), ly = loday(y, c, D);
  SimplicialMorphism fx = loday_map(z, x, inclusion_map(x, zx), c, lz, lx);
  SimplicialMorphism fy = loday_map(z, y, inclusion_map(y, zy), c, lz, ly);
  SimplicialTambara rel = levelwise_box_over(lx, lz, ly, fx, fy);
  require_valid(rel);
  SimplicialMorphism m;
  for (int k = 0; k <= D; ++k) {
    const std::size_t uk = static_cast<std::size_t>(k);
    FinGSet g = po.level_gset(k);
    const auto& orbits = po.orbits(k);
    const BoxOver& tgt = rel.over[uk];
    m.levels.push_back(detail::routed_map(c, g, l.boxes[uk], tgt.t(), [&](std::size_t o) {
      PushoutElement e = pm.to_element(orbits[o]);
      const bool left = e.side == 0;
      const SimplicialGSet& piece = left ? x : y;
      GElement at = piece.address(e.s);
      TambaraMorphism into = compose(tgt.quotient.projection,
                                     compose(tgt.box.insertion(left ? 0 : 1), (left ? lx : ly).boxes[uk].insertion(at.orbit)));
      return detail::Route{into, piece.level_gset(k).is_free(at.orbit), at.power};
    }));
  }
  return verified_iso(std::move(l), std::move(rel), std::move(m), "pushout_iso");
}

// ---------------------------------------------------------------------------
// Restriction to the free level and norm induction.

/// Free level of L_x(r) against the nonequivariant Loday construction of the
/// underlying simplicial set with coefficients r_e. Element (orbit o, γ^g) of a
/// free orbit sits in tensor coordinate i = -g mod p with the twist w^i.
struct RestrictionIso {
  SimplicialTambara loday;
  SimplicialRing underlying;
  std::vector<GroupMap> maps;
};

inline RestrictionIso restriction_iso(const SimplicialGSet& x, const TambaraPtr& r, int D) {
  const int p = r->p();
  Coefficient c = make_coefficient(r);
  SimplicialTambara l = loday(x, c, D);
  SimplicialGSet u = underlying(x);
  SimplicialRing nl = nonequiv_loday(u, r->free_ring, D);
  std::vector<GroupMap> maps;
  for (int k = 0; k <= D; ++k) {
    const std::size_t uk = static_cast<std::size_t>(k);
    FinGSet g = x.level_gset(k), ug = u.level_gset(k);
    const BoxTambara& bx = l.boxes[uk];
    const TambaraFunctor& t = *bx.t;
    std::vector<std::pair<std::size_t, int>> where(ug.size());  // underlying flat index → (orbit, g)
    for (auto& s : x.simplices(k)) {
      GElement a = x.address(s);
      GElement ua = u.address({underlying_cell(x, s.cell, s.g), s.surj, 0});
      where[ug.offset(ua.orbit)] = {a.orbit, a.power};
    }
    const TensorRing& src = nl.tensors[uk];
    maps.push_back(src.map_by_slots(t.free_ring, [&](std::size_t e, std::size_t j) {
      auto [o, gp] = where[e];
      Vec rho = r->free().gen(j);
      if (!g.is_free(o)) return bx.insertion(o).free(rho);
      const int i = mod_int(-gp, p);
      return bx.insertion(o).free(c.norm.power.insert(static_cast<std::size_t>(i), r->weyl(rho, i)));
    }));
  }
  for (int k = 0; k <= D; ++k)
    if (!maps[static_cast<std::size_t>(k)].is_isomorphism())
      throw VerificationError("restriction_iso: level " + std::to_string(k) + " is not bijective");
  for (int k = 1; k <= D; ++k)
    for (int i = 0; i <= k; ++i)
      if (!compose(l.face(k, i).free, maps[static_cast<std::size_t>(k)]).equals(compose(maps[static_cast<std::size_t>(k - 1)], nl.face(k, i))))
        throw VerificationError("restriction_iso: face " + std::to_string(i) + " at level " + std::to_string(k) + " differs");
  for (int k = 0; k < D; ++k)
    for (int i = 0; i <= k; ++i)
      if (!compose(l.degeneracy(k, i).free, maps[static_cast<std::size_t>(k)])
               .equals(compose(maps[static_cast<std::size_t>(k + 1)], nl.degeneracy(k, i))))
        throw VerificationError("restriction_iso: degeneracy " + std::to_string(i) + " at level " + std::to_string(k) + " differs");
  return {std::move(l), std::move(nl), std::move(maps)};
}

/// Levelwise N_e^{C_p} of a simplicial ring.
struct NormedSimplicial {
  std::vector<NormConstruction> norms;
  SimplicialTambara s;
};

inline NormedSimplicial norm_simplicial(const SimplicialRing& sr, int p) {
  NormedSimplicial out;
  std::vector<TambaraPtr> levels;
  for (int k = 0; k <= sr.top; ++k) {
    out.norms.push_back(norm_construction(sr.level(k), p));
    levels.push_back(out.norms.back().t);
  }
  auto n = [&](int k) -> const NormConstruction& { return out.norms[static_cast<std::size_t>(k)]; };
  out.s = assemble(
      p, levels, [&](int k, int i) { return norm_of_ring_map(n(k), n(k - 1), sr.face(k, i)); },
      [&](int k, int i) { return norm_of_ring_map(n(k), n(k + 1), sr.degeneracy(k, i)); }, "N(" + sr.name + ")");
  require_valid(out.s);
  return out;
}

/// N_e^{C_p}(L_x(s)) ≅ L_{x × C_p}(s^c) for x with trivial action.
inline VerifiedIso norm_induction_iso(const SimplicialGSet& x, const RingObject& s, int D) {
  const int p = x.group_order();
  require_prime_order(p);
  for (auto& cell : x.cells())
    if (cell.stabilizer != p) throw AlgebraError("norm_induction_iso: x must have trivial action");
  TambaraPtr r = constant_tambara(s, p);
  Coefficient c = make_coefficient(r);
  ModelSimplicialGSet<ProductElement> pm = product_model(x, free_orbit(p));
  const SimplicialGSet& xc = pm.sset();
  SimplicialTambara l = loday(xc, c, D);
  SimplicialRing nl = nonequiv_loday(x, s, D);
  NormedSimplicial ns = norm_simplicial(nl, p);
  SimplicialGSet orbit = free_orbit(p);
  SimplicialMorphism m;
  for (int k = 0; k <= D; ++k) {
    const std::size_t uk = static_cast<std::size_t>(k);
    const BoxTambara& bx = l.boxes[uk];
    const auto& xs = x.orbits(k);
    GroupMap phi = nl.tensors[uk].map_by_slots(bx.t->free_ring, [&](std::size_t e, std::size_t j) {
      Simplex at_b = orbit.normalize({0, std::vector<int>(static_cast<std::size_t>(k + 1), 0), 0});
      GElement a = xc.address(pm.to_simplex(k, {xs[e], at_b}));
      TambaraMorphism route = compose(bx.insertion(a.orbit), c.translation[static_cast<std::size_t>(a.power)]);
      return route.free(c.norm.inject(s.additive().gen(j)));
    });
    m.levels.push_back(norm_adjunct(ns.norms[uk], bx.t, phi));
  }
  return verified_iso(std::move(ns.s), std::move(l), std::move(m), "norm_induction_iso");
}

// ---------------------------------------------------------------------------
// Relative Loday construction.

/// L_x(t) □_{L_x(r)} r along f: r → t and the collapse of x to a point.
struct RelativeLoday {
  SimplicialTambara lt, lr, lp, s;
};

inline RelativeLoday relative_loday(const TambaraMorphism& f, const SimplicialGSet& x, int D) {
  Report rep = check_tambara_morphism(f);
  if (!rep.empty()) throw VerificationError("relative_loday: invalid morphism: " + format_report(rep));
  Coefficient cr = make_coefficient(f.source), ct = make_coefficient(f.target);
  RelativeLoday out;
  out.lt = loday(x, ct, D);
  out.lr = loday(x, cr, D);
  SimplicialGSet pt = point(x.group_order());
  out.lp = loday(pt, cr, D);
  SimplicialMorphism fm = loday_coefficient_map(x, f, cr, ct, out.lr, out.lt);
  SimplicialMorphism aug = loday_map(x, pt, to_point(pt), cr, out.lr, out.lp);
  out.s = levelwise_box_over(out.lt, out.lr, out.lp, fm, aug);
  out.s.name = "L^{" + f.source->name + "}_{" + x.name() + "}(" + f.target->name + ")";
  require_valid(out.s);
  return out;
}

/// Levelwise insertion L_x(t) → L_x(t) □_{L_x(r)} L_pt(r) of the relative Loday construction.
inline SimplicialMorphism relative_insertion(const RelativeLoday& rl) {
  SimplicialMorphism m;
  for (std::size_t k = 0; k < rl.s.over.size(); ++k) {
    const BoxOver& bo = rl.s.over[k];
    m.levels.push_back(compose(bo.quotient.projection, bo.box.insertion(0)));
  }
  return m;
}

/// A ⊗_B C along ring maps f: B → A and g: B → C, as a quotient of A ⊗ C.
struct RelativeTensor {
  TensorRing ac;
  Quotient quotient;
  RingObject ring;
};

inline RelativeTensor relative_tensor(const RingObject& a, const RingObject& b, const RingObject& c, const GroupMap& f, const GroupMap& g) {
  RelativeTensor out;
  out.ac = TensorRing({a.without_automorphism(), c.without_automorphism()}, false);
  std::vector<Vec> rel;
  for (std::size_t j = 0; j < b.dim(); ++j)
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t l = 0; l < c.dim(); ++l) {
        Vec ai = a.additive().gen(i), cl = c.additive().gen(l);
        rel.push_back(out.ac.pure({a.mul(f.image_of_gen(j), ai), cl}) - out.ac.pure({ai, c.mul(g.image_of_gen(j), cl)}));
      }
  out.quotient = quotient_by(out.ac.ring().additive(), rel);
  const RingObject& r = out.ac.ring();
  std::map<std::pair<std::size_t, std::size_t>, Vec> products;
  for (std::size_t i = 0; i < r.dim(); ++i)
    for (std::size_t j = i; j < r.dim(); ++j) products[{i, j}] = r.product_of_gens(i, j);
  out.ring = RingObject::from_presentation(r.dim(), out.quotient.group.relations(), r.one(), products);
  return out;
}

/// Nonequivariant relative Loday construction L_x(t) ⊗_{L_x(s)} s along f: s → t.
struct RelativeRingLoday {
  SimplicialRing lt, ls;
  std::vector<RelativeTensor> tensors;
  SimplicialRing s;
};

inline RelativeRingLoday relative_nonequiv_loday(const LevelwiseSimplicialSet& x, const RingMap& f) {
  RelativeRingLoday out;
  out.lt = nonequiv_loday(x, f.target);
  out.ls = nonequiv_loday(x, f.source);
  const RingObject s = f.source.without_automorphism();
  for (int k = 0; k <= x.top(); ++k) {
    const std::size_t uk = static_cast<std::size_t>(k);
    const TensorRing &ts = out.ls.tensors[uk], &tt = out.lt.tensors[uk];
    GroupMap fk = ts.map_by_slots(tt.ring(), [&](std::size_t e, std::size_t j) { return tt.insert(e, f.map.image_of_gen(j)); });
    GroupMap mult = ts.map_by_slots(s, [&](std::size_t, std::size_t j) { return s.additive().gen(j); });
    out.tensors.push_back(relative_tensor(tt.ring(), ts.ring(), s, fk, mult));
    out.s.levels.push_back(out.tensors.back().ring);
  }
  out.s.top = x.top();
  out.s.name = "relative L";
  out.s.faces.resize(out.s.levels.size());
  out.s.degeneracies.resize(out.s.levels.size());
  auto descend = [&](int k, int kk, const GroupMap& d) {
    const RelativeTensor &a = out.tensors[static_cast<std::size_t>(k)], &b = out.tensors[static_cast<std::size_t>(kk)];
    const TensorGroup& tg = a.ac.tensor();
    GroupMap lifted = map_from_presentation(a.ac.ring().additive(), b.ac.ring().additive(), [&](std::size_t m) {
      std::vector<std::size_t> idx = tg.decode(m);
      return b.ac.pure({d.image_of_gen(idx[0]), s.additive().gen(idx[1])});
    });
    return map_from_presentation(a.quotient.group, b.quotient.group,
                                 [&](std::size_t j) { return b.quotient.projection(lifted.image_of_gen(j)); });
  };
  for (int k = 1; k <= x.top(); ++k)
    for (int i = 0; i <= k; ++i) out.s.faces[static_cast<std::size_t>(k)].push_back(descend(k, k - 1, out.lt.face(k, i)));
  for (int k = 0; k < x.top(); ++k)
    for (int i = 0; i <= k; ++i) out.s.degeneracies[static_cast<std::size_t>(k)].push_back(descend(k, k + 1, out.lt.degeneracy(k, i)));
  return out;
}

/// Constant Tambara functors on the levels of a simplicial ring.
inline SimplicialTambara constant_of_simplicial(const SimplicialRing& sr, int p) {
  std::vector<TambaraPtr> levels;
  for (int k = 0; k <= sr.top; ++k) levels.push_back(constant_tambara(sr.level(k), p, "c(" + std::to_string(k) + ")"));
  auto lv = [&](int k) { return levels[static_cast<std::size_t>(k)]; };
  SimplicialTambara s = assemble(
      p, levels, [&](int k, int i) { return constant_morphism(lv(k), lv(k - 1), sr.face(k, i)); },
      [&](int k, int i) { return constant_morphism(lv(k), lv(k + 1), sr.degeneracy(k, i)); }, "c(" + sr.name + ")");
  require_valid(s);
  return s;
}

/// For x with trivial action and constant coefficients f: s^c → t^c, the relative
/// Loday construction against constant functors on the relative ring-level construction.
inline VerifiedIso relative_constant_iso(const RingMap& f, const SimplicialGSet& x, int D) {
  const int p = x.group_order();
  for (auto& cell : x.cells())
    if (cell.stabilizer != p) throw AlgebraError("relative_constant_iso: x must have trivial action");
  TambaraPtr s = constant_tambara(f.source, p), t = constant_tambara(f.target, p);
  RelativeLoday rl = relative_loday(constant_morphism(s, t, f.map), x, D);
  SimplicialTambara& rel = rl.s;
  RelativeRingLoday rr = relative_nonequiv_loday(levelwise(x, D), f);
  SimplicialTambara cs = constant_of_simplicial(rr.s, p);
  SimplicialMorphism m;
  for (int k = 0; k <= D; ++k) {
    const std::size_t uk = static_cast<std::size_t>(k);
    const BoxOver& bo = rel.over[uk];
    const RelativeTensor& rt = rr.tensors[uk];
    const TensorRing& tk = rr.lt.tensors[uk];
    const TambaraPtr& target = cs.levels[uk];
    const FgAbGroup& q = rt.ring.additive();
    const BoxTambara& lt = rl.lt.boxes[uk];
    std::vector<TambaraMorphism> slots;
    for (std::size_t o = 0; o < lt.factors.size(); ++o)
      slots.push_back(constant_morphism(lt.factors[o], target, GroupMap::from_function(lt.factors[o]->free(), q, [&](std::size_t j) {
        return rt.quotient.projection(rt.ac.pure({tk.insert(o, f.target.additive().gen(j)), f.source.one()}));
      })));
    TambaraMorphism from_t = box_universal(lt, target, slots);
    const BoxTambara& lp = rl.lp.boxes[uk];
    TambaraMorphism from_s = box_universal(
        lp, target, {constant_morphism(lp.factors[0], target, GroupMap::from_function(lp.factors[0]->free(), q, [&](std::size_t j) {
          return rt.quotient.projection(rt.ac.pure({tk.ring().one(), f.source.additive().gen(j)}));
        }))});
    m.levels.push_back(descend_to_quotient(bo.quotient, box_universal(bo.box, target, {from_t, from_s})));
  }
  return verified_iso(std::move(rel), std::move(cs), std::move(m), "relative_constant_iso");
}

// ---------------------------------------------------------------------------
// Simplicial homotopies.

/// h(s, j): the image of (s, t_j) where t_j = 0^j 1^{k+1-j} is a k-simplex of Δ^1.
using HomotopyMap = std::function<Simplex(const Simplex&, int)>;

struct SimplicialHomotopy {
  /// slices[k][j]: level k map for t_j; slices[k][k+1] is the map at vertex 0.
  std::vector<std::vector<TambaraMorphism>> slices;
  SimplicialMorphism at0, at1;
};

inline SimplicialHomotopy loday_simplicial_homotopy(const SimplicialGSet& x, const SimplicialGSet& y, const HomotopyMap& h,
                                                    const Coefficient& c, const SimplicialTambara& lx, const SimplicialTambara& ly) {
  const int top = std::min(lx.top, ly.top);
  for (int k = 0; k <= top; ++k)
    for (auto& s : x.simplices(k))
      for (int j = 0; j <= k + 1; ++j) {
        Simplex im = h(s, j);
        if (im.level() != k) throw AlgebraError("homotopy changes level");
        if (!(h(x.act(s, 1), j) == y.act(im, 1))) throw AlgebraError("homotopy is not equivariant");
        if (k > 0)
          for (int i = 0; i <= k; ++i)
            if (!(h(x.face(s, i), i < j ? j - 1 : j) == y.face(im, i))) throw AlgebraError("homotopy is not simplicial (faces)");
        if (k < top)
          for (int i = 0; i <= k; ++i)
            if (!(h(x.degeneracy(s, i), i < j ? j + 1 : j) == y.degeneracy(im, i)))
              throw AlgebraError("homotopy is not simplicial (degeneracies)");
      }
  SimplicialHomotopy out;
  for (int k = 0; k <= top; ++k) {
    const std::size_t uk = static_cast<std::size_t>(k);
    std::vector<TambaraMorphism> row;
    for (int j = 0; j <= k + 1; ++j)
      row.push_back(induced_map(level_gmap(x, y, k, [&](const Simplex& s) { return h(s, j); }), c, lx.boxes[uk], ly.boxes[uk]));
    out.slices.push_back(std::move(row));
  }
  for (int k = 1; k <= top; ++k)
    for (int j = 0; j <= k + 1; ++j)
      for (int i = 0; i <= k; ++i)
        if (!equal_morphisms(compose(ly.face(k, i), out.slices[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]),
                             compose(out.slices[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(i < j ? j - 1 : j)], lx.face(k, i))))
          throw VerificationError("homotopy prism fails for face " + std::to_string(i) + " at level " + std::to_string(k));
  for (int k = 0; k < top; ++k)
    for (int j = 0; j <= k + 1; ++j)
      for (int i = 0; i <= k; ++i)
        if (!equal_morphisms(compose(ly.degeneracy(k, i), out.slices[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]),
                             compose(out.slices[static_cast<std::size_t>(k + 1)][static_cast<std::size_t>(i < j ? j + 1 : j)],
                                     lx.degeneracy(k, i))))
          throw VerificationError("homotopy prism fails for degeneracy " + std::to_string(i) + " at level " + std::to_string(k));
  for (int k = 0; k <= top; ++k) {
    out.at0.levels.push_back(out.slices[static_cast<std::size_t>(k)][static_cast<std::size_t>(k + 1)]);
    out.at1.levels.push_back(out.slices[static_cast<std::size_t>(k)][0]);
  }
  return out;
}

/// Contraction of a cone onto its apex: vertices with t = 1 go to the apex.
inline HomotopyMap cone_contraction(const ModelSimplicialGSet<ConeElement>& cm, const SimplicialGSet& base) {
  return [cm, base](const Simplex& s, int j) {
    ConeElement e = cm.to_element(s);
    const int k = e.level;
    if (!e.has_x || j > e.x.level()) return s;
    if (j == 0) return cm.to_simplex(k, ConeElement{k, false, {}, k + 1});
    Simplex front = e.x;
    for (int t = e.x.level(); t >= j; --t) front = base.face(front, t);
    return cm.to_simplex(k, ConeElement{k, true, front, k + 1 - j});
  };
}

}  // namespace tamloday
