#pragma once

#include <map>
#include <optional>

#include "tamloday/fgab.hpp"

namespace tamloday {

/// One violated axiom with a witness description.
struct Violation {
  std::string axiom;
  std::string witness;
};

using Report = std::vector<Violation>;

inline std::string format_report(const Report& r) {
  std::string s;
  for (auto& v : r) s += v.axiom + ": " + v.witness + "\n";
  return s;
}

/// Homomorphism defined on the presentation generators of `source`; f(j)
/// returns the canonical image in `target` of presentation generator j.
/// Every relation of `source` must map to zero.
template <class F>
GroupMap map_from_presentation(const FgAbGroup& source, const FgAbGroup& target, F&& f, bool check_relations = true) {
  const std::size_t n = source.num_generators();
  std::vector<std::optional<Vec>> memo(n);
  auto img = [&](std::size_t j) -> const Vec& {
    if (!memo[j]) {
      memo[j] = f(j);
      if (memo[j]->size() != target.dim()) throw AlgebraError("presentation image has wrong length");
    }
    return *memo[j];
  };
  auto eval = [&](const Vec& x) {
    Vec y = target.zero();
    for (std::size_t j = 0; j < n; ++j)
      if (x[j] != 0) axpy(y, x[j], img(j));
    return target.reduce(y);
  };
  if (check_relations)
    for (auto& r : source.relations())
      if (!target.is_zero(eval(r))) throw AlgebraError("map does not respect relation " + to_string(r));
  std::vector<Vec> images;
  for (std::size_t c = 0; c < source.dim(); ++c) images.push_back(eval(source.from_canonical().column(c)));
  return GroupMap::from_images(source, target, images);
}

/// Commutative ring on a finitely generated abelian group, in the canonical basis.
class RingObject {
 public:
  RingObject() = default;
  RingObject(FgAbGroup additive, Vec unit, std::vector<std::vector<Vec>> table, std::optional<GroupMap> automorphism = {},
             int automorphism_order = 1)
      : add_(std::move(additive)), unit_(std::move(unit)), table_(std::move(table)), aut_(std::move(automorphism)),
        aut_order_(automorphism_order) {
    const std::size_t c = add_.dim();
    if (unit_.size() != c || table_.size() != c) throw AlgebraError("ring data has wrong size");
    unit_ = add_.reduce(unit_);
    for (auto& row : table_) {
      if (row.size() != c) throw AlgebraError("ring data has wrong size");
      for (auto& v : row) v = add_.reduce(v);
    }
    if (aut_ && (aut_->source().orders() != add_.orders() || aut_->target().orders() != add_.orders()))
      throw AlgebraError("automorphism has wrong domain");
    if (automorphism_order < 1) throw AlgebraError("automorphism order must be positive");
  }

  /// Ring from a presentation: products[(i,j)] gives e_i*e_j in generator coordinates
  /// (i <= j). Products with the unit generator may be omitted when the unit is a generator.
  static RingObject from_presentation(std::size_t ngens, const std::vector<Vec>& relations, const Vec& unit,
                                      const std::map<std::pair<std::size_t, std::size_t>, Vec>& products,
                                      const std::optional<std::vector<Vec>>& action = {}, int action_order = 1) {
    FgAbGroup g(ngens, relations);
    std::optional<std::size_t> unit_gen;
    for (std::size_t i = 0; i < ngens; ++i)
      if (unit == unit_vec(ngens, i)) unit_gen = i;
    auto prod = [&](std::size_t i, std::size_t j) -> Vec {
      auto it = products.find({std::min(i, j), std::max(i, j)});
      if (it != products.end()) return it->second;
      if (unit_gen && i == *unit_gen) return unit_vec(ngens, j);
      if (unit_gen && j == *unit_gen) return unit_vec(ngens, i);
      throw AlgebraError("missing product of generators " + std::to_string(i) + " and " + std::to_string(j));
    };
    const std::size_t c = g.dim();
    std::vector<Vec> lifts;
    for (std::size_t u = 0; u < c; ++u) lifts.push_back(g.from_canonical().column(u));
    std::vector<std::vector<Vec>> table(c, std::vector<Vec>(c));
    for (std::size_t u = 0; u < c; ++u)
      for (std::size_t v = 0; v < c; ++v) {
        Vec acc = zero_vec(ngens);
        for (std::size_t i = 0; i < ngens; ++i) {
          if (lifts[u][i] == 0) continue;
          for (std::size_t j = 0; j < ngens; ++j)
            if (lifts[v][j] != 0) axpy(acc, lifts[u][i] * lifts[v][j], prod(i, j));
        }
        table[u][v] = g.from_generators(acc);
      }
    // bilinearity must respect relations on the presentation
    for (auto& r : g.relations())
      for (std::size_t j = 0; j < ngens; ++j) {
        Vec acc = zero_vec(ngens);
        for (std::size_t i = 0; i < ngens; ++i)
          if (r[i] != 0) axpy(acc, r[i], prod(i, j));
        if (!g.is_zero(g.from_generators(acc)))
          throw AlgebraError("multiplication does not respect relation " + to_string(r));
      }
    std::optional<GroupMap> aut;
    if (action) {
      if (action->size() != ngens) throw AlgebraError("action must give an image for every generator");
      aut = map_from_presentation(g, g, [&](std::size_t j) { return g.from_generators((*action)[j]); });
    }
    return RingObject(g, g.from_generators(unit), table, aut, action_order);
  }

  const FgAbGroup& additive() const { return add_; }
  std::size_t dim() const { return add_.dim(); }
  const Vec& one() const { return unit_; }
  Vec zero() const { return add_.zero(); }
  const std::vector<std::vector<Vec>>& table() const { return table_; }
  const Vec& product_of_gens(std::size_t i, std::size_t j) const { return table_[i][j]; }

  Vec mul(const Vec& x, const Vec& y) const {
    const std::size_t c = dim();
    Vec acc = zero_vec(c);
    for (std::size_t i = 0; i < c; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < c; ++j)
        if (y[j] != 0) axpy(acc, x[i] * y[j], table_[i][j]);
    }
    return add_.reduce(acc);
  }
  Vec pow(const Vec& x, unsigned long k) const {
    Vec r = unit_;
    for (unsigned long i = 0; i < k; ++i) r = mul(r, x);
    return r;
  }

  bool has_automorphism() const { return aut_.has_value(); }
  const GroupMap& automorphism() const {
    if (!aut_) throw AlgebraError("ring has no automorphism");
    return *aut_;
  }
  int automorphism_order() const { return aut_order_; }
  /// gamma^k (x); identity when there is no automorphism.
  Vec act(const Vec& x, long k) const {
    if (!aut_) return add_.reduce(x);
    long e = ((k % aut_order_) + aut_order_) % aut_order_;
    Vec y = add_.reduce(x);
    for (long i = 0; i < e; ++i) y = (*aut_)(y);
    return y;
  }
  RingObject with_automorphism(std::optional<GroupMap> a, int order) const {
    return RingObject(add_, unit_, table_, std::move(a), order);
  }
  RingObject without_automorphism() const { return RingObject(add_, unit_, table_); }

 private:
  FgAbGroup add_;
  Vec unit_;
  std::vector<std::vector<Vec>> table_;
  std::optional<GroupMap> aut_;
  int aut_order_ = 1;
};

inline std::string gen_name(std::size_t i) { return "e" + std::to_string(i); }

inline Report check_ring_axioms(const RingObject& r) {
  Report rep;
  const FgAbGroup& g = r.additive();
  const std::size_t c = r.dim();
  for (std::size_t i = 0; i < c; ++i)
    if (g.order(i) != 0)
      for (std::size_t j = 0; j < c; ++j)
        if (!g.is_zero(g.order(i) * r.product_of_gens(i, j)))
          rep.push_back({"well-definedness", "(" + gen_name(i) + "," + gen_name(j) + ")"});
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t j = i + 1; j < c; ++j)
      if (!g.equal(r.product_of_gens(i, j), r.product_of_gens(j, i)))
        rep.push_back({"commutativity", "(" + gen_name(i) + "," + gen_name(j) + ")"});
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t j = 0; j < c; ++j)
      for (std::size_t k = 0; k < c; ++k) {
        Vec a = r.mul(r.product_of_gens(i, j), g.gen(k));
        Vec b = r.mul(g.gen(i), r.product_of_gens(j, k));
        if (!g.equal(a, b))
          rep.push_back({"associativity", "(" + gen_name(i) + "," + gen_name(j) + "," + gen_name(k) + ")"});
      }
  for (std::size_t i = 0; i < c; ++i)
    if (!g.equal(r.mul(r.one(), g.gen(i)), g.gen(i)))
      rep.push_back({"unit", "(1," + gen_name(i) + ")"});
  if (r.has_automorphism()) {
    const GroupMap& a = r.automorphism();
    if (!g.equal(a(r.one()), r.one())) rep.push_back({"automorphism unit", "gamma(1) != 1"});
    for (std::size_t i = 0; i < c; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (!g.equal(a(r.product_of_gens(i, j)), r.mul(a(g.gen(i)), a(g.gen(j)))))
          rep.push_back({"automorphism multiplicativity", "(" + gen_name(i) + "," + gen_name(j) + ")"});
    for (std::size_t i = 0; i < c; ++i)
      if (!g.equal(r.act(g.gen(i), r.automorphism_order()), g.gen(i)) ||
          !g.equal(r.act(g.gen(i), 0), g.gen(i))) {
        rep.push_back({"automorphism order", gen_name(i)});
      }
    GroupMap pw = GroupMap::identity(g);
    for (int k = 0; k < r.automorphism_order(); ++k) pw = compose(a, pw);
    if (!pw.equals(GroupMap::identity(g))) rep.push_back({"automorphism order", "gamma^n != id"});
  }
  return rep;
}

/// A group map between rings that should preserve unit and multiplication.
struct RingMap {
  RingObject source, target;
  GroupMap map;
  Vec operator()(const Vec& x) const { return map(x); }
};

inline Report check_ring_map(const RingMap& f) {
  Report rep;
  const FgAbGroup& s = f.source.additive();
  const FgAbGroup& t = f.target.additive();
  if (!t.equal(f(f.source.one()), f.target.one())) rep.push_back({"unit", "f(1) != 1"});
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = 0; j < s.dim(); ++j)
      if (!t.equal(f(f.source.product_of_gens(i, j)), f.target.mul(f(s.gen(i)), f(s.gen(j)))))
        rep.push_back({"multiplicativity", "(" + gen_name(i) + "," + gen_name(j) + ")"});
  return rep;
}

inline RingMap identity_ring_map(const RingObject& r) { return {r, r, GroupMap::identity(r.additive())}; }

inline RingMap compose(const RingMap& g, const RingMap& f) { return {f.source, g.target, compose(g.map, f.map)}; }

/// Tensor product of several rings, presented on multi-indices of canonical generators.
class TensorRing {
 public:
  TensorRing() = default;
  explicit TensorRing(std::vector<RingObject> factors, bool diagonal_action = true) : factors_(std::move(factors)) {
    std::vector<FgAbGroup> groups;
    for (auto& f : factors_) groups.push_back(f.additive());
    tg_ = TensorGroup(groups);
    const FgAbGroup& g = tg_.group();
    const std::size_t c = g.dim();
    std::vector<std::vector<std::pair<std::size_t, Integer>>> lifts(c);
    for (std::size_t u = 0; u < c; ++u) {
      Vec col = g.from_canonical().column(u);
      for (std::size_t m = 0; m < col.size(); ++m)
        if (col[m] != 0) lifts[u].push_back({m, col[m]});
    }
    std::vector<std::vector<Vec>> table(c, std::vector<Vec>(c));
    std::vector<std::size_t> a, b;
    std::vector<Vec> prods(factors_.size());
    for (std::size_t u = 0; u < c; ++u)
      for (std::size_t v = u; v < c; ++v) {
        Vec acc = zero_vec(tg_.num_indices());
        for (auto& [m1, c1] : lifts[u])
          for (auto& [m2, c2] : lifts[v]) {
            tg_.decode(m1, a);
            tg_.decode(m2, b);
            for (std::size_t i = 0; i < factors_.size(); ++i) prods[i] = factors_[i].product_of_gens(a[i], b[i]);
            axpy(acc, c1 * c2, tg_.pure_generators(prods));
          }
        table[u][v] = g.from_generators(acc);
        table[v][u] = table[u][v];
      }
    std::vector<Vec> ones;
    for (auto& f : factors_) ones.push_back(f.one());
    std::optional<GroupMap> aut;
    int order = 1;
    bool all = !factors_.empty() && diagonal_action;
    for (auto& f : factors_) all = all && f.has_automorphism();
    if (all) {
      for (auto& f : factors_) order = std::lcm(order, f.automorphism_order());
      aut = map_from_presentation(g, g, [&](std::size_t m) {
        std::vector<std::size_t> idx = tg_.decode(m);
        std::vector<Vec> xs;
        for (std::size_t i = 0; i < factors_.size(); ++i) xs.push_back(factors_[i].automorphism().image_of_gen(idx[i]));
        return tg_.pure(xs);
      }, false);
    }
    ring_ = RingObject(g, tg_.pure(ones), table, aut, order);
  }

  const RingObject& ring() const { return ring_; }
  const TensorGroup& tensor() const { return tg_; }
  const std::vector<RingObject>& factors() const { return factors_; }
  std::size_t arity() const { return factors_.size(); }

  Vec pure(const std::vector<Vec>& xs) const { return tg_.pure(xs); }
  /// x placed in slot i, units elsewhere.
  Vec insert(std::size_t i, const Vec& x) const {
    std::vector<Vec> xs;
    for (auto& f : factors_) xs.push_back(f.one());
    xs[i] = x;
    return tg_.pure(xs);
  }
  /// Ring map of the tensor product determined by multiplicative images of slot generators:
  /// slot_image(i, j) is the image of generator j of factor i placed in slot i.
  template <class F>
  GroupMap map_by_slots(const RingObject& target, F&& slot_image) const {
    std::vector<std::vector<Vec>> imgs(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i)
      for (std::size_t j = 0; j < factors_[i].dim(); ++j) imgs[i].push_back(slot_image(i, j));
    return map_from_presentation(tg_.group(), target.additive(), [&](std::size_t m) {
      std::vector<std::size_t> idx = tg_.decode(m);
      Vec acc = target.one();
      for (std::size_t i = 0; i < idx.size(); ++i) acc = target.mul(acc, imgs[i][idx[i]]);
      return acc;
    });
  }

 private:
  std::vector<RingObject> factors_;
  TensorGroup tg_;
  RingObject ring_;
};

inline RingObject tensor_rings(const RingObject& a, const RingObject& b) { return TensorRing({a, b}).ring(); }

/// Cyclic-shift automorphism on a p-fold tensor power: x_0⊗…⊗x_{p-1} ↦ x_1⊗…⊗x_{p-1}⊗x_0.
inline GroupMap cyclic_shift(const TensorGroup& tg) {
  const FgAbGroup& g = tg.group();
  const std::size_t p = tg.arity();
  return map_from_presentation(g, g, [&](std::size_t m) {
    std::vector<std::size_t> idx = tg.decode(m), out(p);
    for (std::size_t i = 0; i < p; ++i) out[i] = idx[(i + 1) % p];
    return g.from_generators(unit_vec(tg.num_indices(), tg.encode(out)));
  }, false);
}

/// S^{⊗p} with its shift automorphism; the factor's own automorphism is dropped.
inline TensorRing cyclic_tensor_power_data(const RingObject& s, int p) {
  if (p < 1) throw AlgebraError("tensor power must be positive");
  TensorRing tr(std::vector<RingObject>(static_cast<std::size_t>(p), s.without_automorphism()), false);
  return tr;
}

inline RingObject cyclic_tensor_power(const RingObject& s, int p) {
  TensorRing tr = cyclic_tensor_power_data(s, p);
  return tr.ring().with_automorphism(cyclic_shift(tr.tensor()), p);
}

/// Common small rings.
inline RingObject integers_mod(const Integer& m) {
  FgAbGroup g = m == 0 ? FgAbGroup::free(1) : FgAbGroup::cyclic(m);
  if (g.dim() == 0) return RingObject(g, {}, {});
  return RingObject(g, {1}, {{{1}}});
}

inline RingObject integers() { return integers_mod(0); }

}  // namespace tamloday
