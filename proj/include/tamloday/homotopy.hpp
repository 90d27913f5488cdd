#pragma once

#include <optional>
#include <string>

#include "tamloday/loday.hpp"

namespace tamloday {

/// Homotopy Mackey functor π_n of a simplicial Tambara functor; π_0 also as a Tambara functor.
struct PiResult {
  int degree = 0;
  MackeyFunctor mackey;
  TambaraPtr tambara;  // set for degree 0
  int truncation = 0;
  std::string input_hash;
};

namespace detail {

inline GroupMap alternating_face_sum(const SimplicialTambara& s, int k, bool fixed) {
  const TambaraFunctor &src = s.level(k), &tgt = s.level(k - 1);
  GroupMap acc = fixed ? GroupMap::zero(src.fixed(), tgt.fixed()) : GroupMap::zero(src.free(), tgt.free());
  for (int i = 0; i <= k; ++i) {
    const GroupMap& f = fixed ? s.face(k, i).fixed : s.face(k, i).free;
    acc = i % 2 ? acc - f : acc + f;
  }
  return acc;
}

inline void require_degree(const SimplicialTambara& s, int n) {
  if (n < 0) throw AlgebraError("negative homotopy degree");
  if (n + 1 > s.top)
    throw AlgebraError("π_" + std::to_string(n) + " needs levels up to " + std::to_string(n + 1) + ", truncation is " +
                       std::to_string(s.top));
}

/// Subquotients ker d_n / im d_{n+1} at both levels.
struct HomologyData {
  Subquotient free, fixed;
};

inline HomologyData homology_data(const SimplicialTambara& s, int n) {
  auto level = [&](bool fixed) {
    std::vector<FgAbGroup> groups;
    std::vector<GroupMap> d;
    for (int k = 0; k <= n + 1; ++k) groups.push_back(fixed ? s.level(k).fixed() : s.level(k).free());
    for (int k = 1; k <= n + 1; ++k) d.push_back(alternating_face_sum(s, k, fixed));
    return ChainComplex(groups, d).homology_data(static_cast<std::size_t>(n));
  };
  return {level(false), level(true)};
}

}  // namespace detail

/// π_0 as the coequalizer of d_0, d_1 with the induced Tambara structure.
inline QuotientTambara pi_0_quotient(const SimplicialTambara& s) {
  if (s.top < 1) throw AlgebraError("π_0 needs level 1");
  const TambaraMorphism &d0 = s.face(1, 0), &d1 = s.face(1, 1);
  std::vector<Vec> fe, fg;
  for (std::size_t j = 0; j < s.level(1).free().dim(); ++j) fe.push_back(d0.free.image_of_gen(j) - d1.free.image_of_gen(j));
  for (std::size_t j = 0; j < s.level(1).fixed().dim(); ++j) fg.push_back(d0.fixed.image_of_gen(j) - d1.fixed.image_of_gen(j));
  QuotientTambara q = quotient_tambara(s.levels[0], fe, fg);
  Report rep = check_tambara_axioms(*q.t);
  if (!rep.empty()) throw VerificationError("π_0 is not a Tambara functor: " + format_report(rep));
  return q;
}

inline TambaraPtr pi_0_tambara(const SimplicialTambara& s) { return pi_0_quotient(s).t; }

/// π_n with restriction, transfer and Weyl action induced from the levelwise structure maps.
inline PiResult pi_n(const SimplicialTambara& s, int n, std::string input_hash = "") {
  detail::require_degree(s, n);
  detail::HomologyData h = detail::homology_data(s, n);
  const MackeyFunctor& m = s.level(n).mackey;
  PiResult out;
  out.degree = n;
  out.truncation = s.top;
  out.input_hash = std::move(input_hash);
  out.mackey = {s.p,
                h.free.group(),
                h.fixed.group(),
                induced_on_subquotients(m.res, h.fixed, h.free),
                induced_on_subquotients(m.tr, h.free, h.fixed),
                induced_on_subquotients(m.weyl, h.free, h.free)};
  Report rep = check_mackey_axioms(out.mackey);
  if (!rep.empty()) throw VerificationError("π_" + std::to_string(n) + " is not a Mackey functor: " + format_report(rep));
  if (n == 0) {
    out.tambara = pi_0_tambara(s);
    if (out.tambara->free().orders() != out.mackey.free.orders() || out.tambara->fixed().orders() != out.mackey.fixed.orders())
      throw VerificationError("π_0 as a Tambara functor disagrees with the homology computation");
  }
  return out;
}

inline std::vector<PiResult> homotopy_groups(const SimplicialTambara& s, int max_degree, const std::string& input_hash = "") {
  std::vector<PiResult> out;
  for (int n = 0; n <= max_degree; ++n) out.push_back(pi_n(s, n, input_hash));
  return out;
}

inline bool is_zero(const MackeyFunctor& m) { return m.free.is_trivial() && m.fixed.is_trivial(); }

/// Map on π_n induced by a simplicial morphism.
inline MackeyMorphism induced_on_pi(const SimplicialTambara& s, const SimplicialTambara& t, const SimplicialMorphism& f, int n) {
  detail::require_degree(s, n);
  detail::require_degree(t, n);
  detail::HomologyData hs = detail::homology_data(s, n), ht = detail::homology_data(t, n);
  const TambaraMorphism& fn = f.levels.at(static_cast<std::size_t>(n));
  MackeyMorphism out;
  out.source = pi_n(s, n).mackey;
  out.target = pi_n(t, n).mackey;
  out.free = induced_on_subquotients(fn.free, hs.free, ht.free);
  out.fixed = induced_on_subquotients(fn.fixed, hs.fixed, ht.fixed);
  return out;
}

inline bool equal_maps(const MackeyMorphism& a, const MackeyMorphism& b) { return a.free.equals(b.free) && a.fixed.equals(b.fixed); }

/// Homology of a simplicial ring's alternating complex in degrees 0..max_degree.
inline std::vector<FgAbGroup> hochschild_homology(const SimplicialRing& s, int max_degree) {
  if (max_degree + 1 > s.top) throw AlgebraError("homology needs one level beyond the top degree");
  ChainComplex c = s.chains();
  std::vector<FgAbGroup> out;
  for (int n = 0; n <= max_degree; ++n) out.push_back(c.homology(static_cast<std::size_t>(n)));
  return out;
}

}  // namespace tamloday
