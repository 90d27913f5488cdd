#pragma once

#include <functional>
#include <memory>
#include <numeric>

#include "tamloday/smith.hpp"

namespace tamloday {

/// Finitely generated abelian group given by generators and relation rows,
/// with its canonical invariant-factor form. Elements are coordinate vectors
/// in the canonical basis: torsion coordinates first (orders d_1 | d_2 | ...),
/// then free coordinates (order 0), torsion reduced to [0, d_i).
class FgAbGroup {
 public:
  FgAbGroup() : FgAbGroup(0, {}) {}

  FgAbGroup(std::size_t num_generators, std::vector<Vec> relations) {
    auto data = std::make_shared<Data>();
    Data& d = *data;
    d.num_generators = num_generators;
    for (auto& r : relations) {
      if (r.size() != num_generators) throw AlgebraError("relation length does not match generator count");
      if (!tamloday::is_zero(r)) d.relations.push_back(std::move(r));
    }
    const std::size_t n = num_generators;
    Matrix rel = Matrix::from_rows(d.relations, n);
    SmithForm s = smith_normal_form(rel, kTrackRight);
    // Lattice * R = rowspace(D): coordinates y = x R; generator of y-coordinate i is row i of R^{-1}.
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < n; ++i) {
      Integer f = i < s.rank ? s.diagonal(i, i) : Integer(0);
      if (f == 1) continue;
      kept.push_back(i);
      d.orders.push_back(f);
    }
    const std::size_t c = kept.size();
    d.to_canonical = Matrix(c, n);
    d.from_canonical = Matrix(n, c);
    for (std::size_t k = 0; k < c; ++k)
      for (std::size_t j = 0; j < n; ++j) {
        d.to_canonical(k, j) = s.right(j, kept[k]);
        d.from_canonical(j, k) = s.right_inv(kept[k], j);
      }
    d_ = std::move(data);
  }

  static FgAbGroup from_orders(const std::vector<Integer>& orders) {
    std::vector<Vec> rels;
    for (std::size_t i = 0; i < orders.size(); ++i)
      if (orders[i] != 0) rels.push_back(Integer(orders[i]) * unit_vec(orders.size(), i));
    return FgAbGroup(orders.size(), rels);
  }
  static FgAbGroup cyclic(const Integer& d) { return from_orders({d}); }
  static FgAbGroup free(std::size_t r) { return FgAbGroup(r, {}); }
  static FgAbGroup trivial() { return FgAbGroup(0, {}); }

  std::size_t num_generators() const { return d_->num_generators; }
  const std::vector<Vec>& relations() const { return d_->relations; }
  /// Number of canonical generators.
  std::size_t dim() const { return d_->orders.size(); }
  const std::vector<Integer>& orders() const { return d_->orders; }
  const Integer& order(std::size_t i) const { return d_->orders[i]; }
  const Matrix& to_canonical() const { return d_->to_canonical; }
  const Matrix& from_canonical() const { return d_->from_canonical; }

  std::size_t rank() const {
    return static_cast<std::size_t>(std::count(d_->orders.begin(), d_->orders.end(), Integer(0)));
  }
  std::vector<Integer> invariant_factors() const {
    std::vector<Integer> f;
    for (auto& o : d_->orders)
      if (o != 0) f.push_back(o);
    return f;
  }
  bool is_trivial() const { return dim() == 0; }
  bool is_finite() const { return rank() == 0; }
  /// Cardinality, or 0 when infinite.
  Integer cardinality() const {
    if (!is_finite()) return 0;
    Integer n = 1;
    for (auto& o : d_->orders) n *= o;
    return n;
  }

  Vec zero() const { return zero_vec(dim()); }
  Vec gen(std::size_t i) const { return reduce(unit_vec(dim(), i)); }

  Vec reduce(Vec x) const {
    if (x.size() != dim()) throw AlgebraError("element has wrong length");
    for (std::size_t i = 0; i < x.size(); ++i)
      if (d_->orders[i] != 0) x[i] = mod(x[i], d_->orders[i]);
    return x;
  }
  bool is_zero(const Vec& x) const { return tamloday::is_zero(reduce(x)); }
  bool equal(const Vec& x, const Vec& y) const { return is_zero(x - y); }

  /// Canonical element of a vector in presentation-generator coordinates.
  Vec from_generators(const Vec& x) const { return reduce(d_->to_canonical.apply(x)); }
  /// Presentation-generator coordinates of a canonical element.
  Vec to_generators(const Vec& x) const { return d_->from_canonical.apply(x); }

  /// All elements of a finite group, in mixed-radix order.
  std::vector<Vec> elements() const {
    if (!is_finite()) throw AlgebraError("cannot enumerate an infinite group");
    std::vector<Vec> out;
    Vec x = zero();
    for (;;) {
      out.push_back(x);
      std::size_t i = 0;
      for (; i < x.size(); ++i) {
        x[i] += 1;
        if (x[i] < d_->orders[i]) break;
        x[i] = 0;
      }
      if (i == x.size()) break;
    }
    return out;
  }

  /// Human-readable form, e.g. "Z/2 + Z/4 + Z".
  std::string describe() const {
    if (is_trivial()) return "0";
    std::string s;
    for (auto& o : d_->orders) {
      if (!s.empty()) s += " + ";
      s += o == 0 ? std::string("Z") : "Z/" + o.get_str();
    }
    return s;
  }

  /// Same canonical decomposition.
  bool isomorphic_to(const FgAbGroup& other) const { return orders() == other.orders(); }

 private:
  struct Data {
    std::size_t num_generators = 0;
    std::vector<Vec> relations;
    std::vector<Integer> orders;
    Matrix to_canonical;    // dim x num_generators
    Matrix from_canonical;  // num_generators x dim
  };
  std::shared_ptr<const Data> d_;
};

/// Rank and invariant factors.
struct CanonicalDecomposition {
  std::size_t rank = 0;
  std::vector<Integer> invariant_factors;
  bool operator==(const CanonicalDecomposition&) const = default;
};

inline CanonicalDecomposition canonical_decomposition(const FgAbGroup& g) {
  return {g.rank(), g.invariant_factors()};
}

/// Homomorphism between canonical bases: column j is the image of source generator j.
class GroupMap {
 public:
  GroupMap() = default;
  GroupMap(FgAbGroup source, FgAbGroup target, Matrix m)
      : source_(std::move(source)), target_(std::move(target)), m_(std::move(m)) {
    if (m_.rows() != target_.dim() || m_.cols() != source_.dim())
      throw AlgebraError("group map matrix has wrong shape");
    for (std::size_t j = 0; j < source_.dim(); ++j) {
      Vec col = target_.reduce(m_.column(j));
      if (source_.order(j) != 0 && !target_.is_zero(source_.order(j) * col))
        throw AlgebraError("group map is not well defined on generator " + std::to_string(j));
      m_.set_column(j, col);
    }
  }

  /// Map determined by images of the canonical generators.
  static GroupMap from_images(const FgAbGroup& source, const FgAbGroup& target, const std::vector<Vec>& images) {
    return GroupMap(source, target, Matrix::from_columns(images, target.dim()));
  }
  template <class F>
  static GroupMap from_function(const FgAbGroup& source, const FgAbGroup& target, F&& f) {
    std::vector<Vec> images;
    images.reserve(source.dim());
    for (std::size_t j = 0; j < source.dim(); ++j) images.push_back(f(j));
    return from_images(source, target, images);
  }
  static GroupMap identity(const FgAbGroup& g) { return GroupMap(g, g, Matrix::identity(g.dim())); }
  static GroupMap zero(const FgAbGroup& s, const FgAbGroup& t) { return GroupMap(s, t, Matrix(t.dim(), s.dim())); }

  const FgAbGroup& source() const { return source_; }
  const FgAbGroup& target() const { return target_; }
  const Matrix& matrix() const { return m_; }

  Vec operator()(const Vec& x) const { return target_.reduce(m_.apply(x)); }
  Vec image_of_gen(std::size_t j) const { return m_.column(j); }

  bool is_zero() const {
    for (std::size_t j = 0; j < source_.dim(); ++j)
      if (!target_.is_zero(m_.column(j))) return false;
    return true;
  }
  bool equals(const GroupMap& o) const {
    return source_.dim() == o.source_.dim() && target_.dim() == o.target_.dim() && (*this - o).is_zero();
  }

  friend GroupMap compose(const GroupMap& g, const GroupMap& f) {
    if (f.target_.dim() != g.source_.dim() || f.target_.orders() != g.source_.orders())
      throw AlgebraError("maps are not composable");
    return GroupMap(f.source_, g.target_, g.m_ * f.m_);
  }
  friend GroupMap operator+(const GroupMap& a, const GroupMap& b) {
    check_parallel(a, b);
    Matrix m = a.m_;
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) += b.m_(i, j);
    return GroupMap(a.source_, a.target_, m);
  }
  friend GroupMap operator-(const GroupMap& a, const GroupMap& b) {
    check_parallel(a, b);
    Matrix m = a.m_;
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= b.m_(i, j);
    return GroupMap(a.source_, a.target_, m);
  }
  friend GroupMap operator*(const Integer& c, const GroupMap& a) {
    Matrix m = a.m_;
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) *= c;
    return GroupMap(a.source_, a.target_, m);
  }

  bool is_injective() const;
  bool is_surjective() const;
  bool is_isomorphism() const { return is_injective() && is_surjective(); }

 private:
  static void check_parallel(const GroupMap& a, const GroupMap& b) {
    if (a.source_.orders() != b.source_.orders() || a.target_.orders() != b.target_.orders())
      throw AlgebraError("maps are not parallel");
  }
  FgAbGroup source_, target_;
  Matrix m_;
};

/// A subquotient Z/B of a canonical group A, where B ⊆ Z ⊆ Z^{dim A} contain
/// the relation lattice of A.
class Subquotient {
 public:
  Subquotient() = default;
  Subquotient(const FgAbGroup& ambient, const std::vector<Vec>& cycle_gens, const std::vector<Vec>& boundary_gens)
      : ambient_(ambient) {
    const std::size_t n = ambient.dim();
    std::vector<Vec> rel;
    for (std::size_t i = 0; i < n; ++i)
      if (ambient.order(i) != 0) rel.push_back(ambient.order(i) * unit_vec(n, i));
    std::vector<Vec> z = cycle_gens;
    z.insert(z.end(), rel.begin(), rel.end());
    cycles_ = LatticeSolver(lattice_basis(Matrix::from_columns(z, n)));
    std::vector<Vec> b = boundary_gens;
    b.insert(b.end(), rel.begin(), rel.end());
    std::vector<Vec> coords;
    for (auto& v : b) {
      Vec u;
      if (!cycles_.solve(v, u)) throw AlgebraError("boundary is not contained in cycles");
      coords.push_back(std::move(u));
    }
    group_ = FgAbGroup(cycles_.rank(), coords);
  }

  const FgAbGroup& ambient() const { return ambient_; }
  const FgAbGroup& group() const { return group_; }

  bool contains(const Vec& x) const { return cycles_.contains(x); }

  /// Class of an ambient element lying in the cycle lattice.
  Vec project(const Vec& x) const {
    Vec u;
    if (!cycles_.solve(x, u)) throw AlgebraError("element is not in the subgroup: " + to_string(x));
    return group_.from_generators(u);
  }
  /// Ambient representative of a canonical generator.
  Vec lift(std::size_t i) const { return ambient_.reduce(cycles_.basis().apply(group_.from_canonical().column(i))); }
  Vec lift_element(const Vec& x) const { return ambient_.reduce(cycles_.basis().apply(group_.to_generators(x))); }

  /// Inclusion of the subquotient's representatives as a map into the ambient
  /// group (only meaningful when there are no boundaries).
  GroupMap inclusion() const {
    return GroupMap::from_function(group_, ambient_, [&](std::size_t i) { return lift(i); });
  }

 private:
  FgAbGroup ambient_;
  LatticeSolver cycles_;
  FgAbGroup group_;
};

/// Map induced on subquotients by f : A -> A' sending cycles to cycles and boundaries to boundaries.
inline GroupMap induced_on_subquotients(const GroupMap& f, const Subquotient& s, const Subquotient& t) {
  return GroupMap::from_function(s.group(), t.group(), [&](std::size_t i) { return t.project(f(s.lift(i))); });
}

/// Lattice of x in Z^{dim A} with f(x) = 0, as generators.
inline std::vector<Vec> kernel_generators(const GroupMap& f) {
  const FgAbGroup& a = f.source();
  const FgAbGroup& b = f.target();
  const std::size_t n = a.dim();
  std::vector<std::size_t> torsion;
  for (std::size_t i = 0; i < b.dim(); ++i)
    if (b.order(i) != 0) torsion.push_back(i);
  Matrix big(b.dim(), n + torsion.size());
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < n; ++j) big(i, j) = f.matrix()(i, j);
  for (std::size_t k = 0; k < torsion.size(); ++k) big(torsion[k], n + k) = b.order(torsion[k]);
  Matrix k = integer_kernel(big);
  std::vector<Vec> gens;
  for (std::size_t c = 0; c < k.cols(); ++c) {
    Vec v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = k(i, c);
    gens.push_back(std::move(v));
  }
  return gens;
}

inline Subquotient kernel(const GroupMap& f) { return Subquotient(f.source(), kernel_generators(f), {}); }

inline Subquotient image(const GroupMap& f) {
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < f.source().dim(); ++j) cols.push_back(f.image_of_gen(j));
  return Subquotient(f.target(), cols, {});
}

/// Quotient of a group by a list of elements, with its projection.
struct Quotient {
  FgAbGroup group;
  GroupMap projection;
};

inline Quotient quotient_by(const FgAbGroup& g, const std::vector<Vec>& elements) {
  const std::size_t n = g.dim();
  std::vector<Vec> rels;
  for (std::size_t i = 0; i < n; ++i)
    if (g.order(i) != 0) rels.push_back(g.order(i) * unit_vec(n, i));
  rels.insert(rels.end(), elements.begin(), elements.end());
  FgAbGroup q(n, rels);
  return {q, GroupMap(g, q, q.to_canonical())};
}

inline Quotient cokernel(const GroupMap& f) {
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < f.source().dim(); ++j) cols.push_back(f.image_of_gen(j));
  return quotient_by(f.target(), cols);
}

inline bool GroupMap::is_injective() const { return kernel(*this).group().is_trivial(); }
inline bool GroupMap::is_surjective() const { return cokernel(*this).group.is_trivial(); }

/// Two-sided inverse of an isomorphism.
inline GroupMap inverse(const GroupMap& f) {
  if (!f.is_isomorphism()) throw AlgebraError("map is not an isomorphism");
  Subquotient im = image(f);
  // im.group() is identified with the target via lifts; solve generator images.
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < f.source().dim(); ++j) cols.push_back(f.image_of_gen(j));
  std::vector<Vec> rel;
  const FgAbGroup& t = f.target();
  for (std::size_t i = 0; i < t.dim(); ++i)
    if (t.order(i) != 0) rel.push_back(t.order(i) * unit_vec(t.dim(), i));
  std::vector<Vec> all = cols;
  all.insert(all.end(), rel.begin(), rel.end());
  // solve M * u = e_i over the integers: SNF of [cols | rel]
  Matrix big = Matrix::from_columns(all, t.dim());
  SmithForm s = smith_normal_form(big, kTrackAll);
  std::vector<Vec> images;
  for (std::size_t i = 0; i < t.dim(); ++i) {
    Vec y = s.left.apply(unit_vec(t.dim(), i));
    Vec z = zero_vec(all.size());
    for (std::size_t k = 0; k < s.rank; ++k) {
      if (mod(y[k], s.diagonal(k, k)) != 0) throw AlgebraError("inverse: not surjective");
      z[k] = y[k] / s.diagonal(k, k);
    }
    Vec u = s.right.apply(z);
    Vec x(cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) x[j] = u[j];
    images.push_back(f.source().reduce(x));
  }
  return GroupMap::from_images(t, f.source(), images);
}

struct DirectSum {
  FgAbGroup group;
  std::vector<GroupMap> inclusions;
  std::vector<GroupMap> projections;
};

inline DirectSum direct_sum(const std::vector<FgAbGroup>& parts) {
  std::size_t n = 0;
  for (auto& g : parts) n += g.dim();
  std::vector<Vec> rels;
  std::size_t off = 0;
  for (auto& g : parts) {
    for (std::size_t i = 0; i < g.dim(); ++i)
      if (g.order(i) != 0) rels.push_back(g.order(i) * unit_vec(n, off + i));
    off += g.dim();
  }
  DirectSum ds{FgAbGroup(n, rels), {}, {}};
  off = 0;
  for (auto& g : parts) {
    ds.inclusions.push_back(GroupMap::from_function(
        g, ds.group, [&](std::size_t i) { return ds.group.from_generators(unit_vec(n, off + i)); }));
    ds.projections.push_back(GroupMap::from_function(ds.group, g, [&](std::size_t k) {
      Vec x = ds.group.to_generators(ds.group.gen(k));
      return Vec(x.begin() + static_cast<long>(off), x.begin() + static_cast<long>(off + g.dim()));
    }));
    off += g.dim();
  }
  return ds;
}

/// n-fold tensor product presented on multi-indices of canonical generators.
class TensorGroup {
 public:
  TensorGroup() = default;
  explicit TensorGroup(std::vector<FgAbGroup> factors) : factors_(std::move(factors)) {
    std::size_t n = 1;
    for (auto& f : factors_) n *= f.dim();
    count_ = n;
    std::vector<Vec> rels;
    std::vector<std::size_t> idx(factors_.size());
    for (std::size_t k = 0; k < n; ++k) {
      decode(k, idx);
      Integer g = 0;
      for (std::size_t i = 0; i < factors_.size(); ++i) g = gcd(g, factors_[i].order(idx[i]));
      if (g != 0) {
        Vec r = zero_vec(n);
        r[k] = g;
        rels.push_back(std::move(r));
      }
    }
    group_ = FgAbGroup(n, rels);
  }

  const FgAbGroup& group() const { return group_; }
  const std::vector<FgAbGroup>& factors() const { return factors_; }
  std::size_t arity() const { return factors_.size(); }
  std::size_t num_indices() const { return count_; }

  std::size_t encode(const std::vector<std::size_t>& idx) const {
    std::size_t k = 0;
    for (std::size_t i = factors_.size(); i-- > 0;) k = k * factors_[i].dim() + idx[i];
    return k;
  }
  void decode(std::size_t k, std::vector<std::size_t>& idx) const {
    idx.resize(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      std::size_t d = factors_[i].dim();
      idx[i] = k % d;
      k /= d;
    }
  }
  std::vector<std::size_t> decode(std::size_t k) const {
    std::vector<std::size_t> idx;
    decode(k, idx);
    return idx;
  }

  /// Presentation coordinates (multi-index space) of a pure tensor, unreduced.
  Vec pure_generators(const std::vector<Vec>& xs) const {
    Vec out = zero_vec(count_);
    if (count_ == 0) return out;
    std::vector<std::vector<std::size_t>> nz(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (std::size_t j = 0; j < xs[i].size(); ++j)
        if (xs[i][j] != 0) nz[i].push_back(j);
      if (nz[i].empty()) return out;
    }
    std::vector<std::size_t> pos(xs.size(), 0), idx(xs.size());
    for (;;) {
      Integer c = 1;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        idx[i] = nz[i][pos[i]];
        c *= xs[i][idx[i]];
      }
      out[encode(idx)] += c;
      std::size_t i = 0;
      for (; i < xs.size(); ++i) {
        if (++pos[i] < nz[i].size()) break;
        pos[i] = 0;
      }
      if (i == xs.size()) break;
    }
    return out;
  }

  /// Canonical element of a pure tensor.
  Vec pure(const std::vector<Vec>& xs) const { return group_.from_generators(pure_generators(xs)); }

 private:
  std::vector<FgAbGroup> factors_;
  std::size_t count_ = 0;
  FgAbGroup group_;
};

/// Binary tensor with its pairing.
struct Tensor {
  FgAbGroup group;
  std::function<Vec(const Vec&, const Vec&)> pairing;
};

inline Tensor tensor(const FgAbGroup& a, const FgAbGroup& b) {
  auto t = std::make_shared<TensorGroup>(std::vector<FgAbGroup>{a, b});
  return {t->group(), [t](const Vec& x, const Vec& y) { return t->pure({x, y}); }};
}

/// Coinvariants g / (x - action(x)).
inline Quotient coinvariants(const GroupMap& action) {
  const FgAbGroup& g = action.source();
  if (g.orders() != action.target().orders()) throw AlgebraError("action is not an endomorphism");
  if (!action.is_isomorphism()) throw AlgebraError("action is not invertible");
  std::vector<Vec> rel;
  for (std::size_t j = 0; j < g.dim(); ++j) rel.push_back(g.gen(j) - action.image_of_gen(j));
  return quotient_by(g, rel);
}

/// Finite chain complex C_0 <- C_1 <- ... <- C_N; d[n-1] is the differential C_n -> C_{n-1}.
class ChainComplex {
 public:
  ChainComplex() = default;
  ChainComplex(std::vector<FgAbGroup> groups, std::vector<GroupMap> differentials)
      : groups_(std::move(groups)), d_(std::move(differentials)) {
    if (groups_.empty() ? !d_.empty() : d_.size() + 1 != groups_.size())
      throw AlgebraError("chain complex: need one differential per positive degree");
    for (std::size_t n = 1; n <= d_.size(); ++n) {
      const GroupMap& f = d_[n - 1];
      if (f.source().orders() != groups_[n].orders() || f.target().orders() != groups_[n - 1].orders())
        throw AlgebraError("chain complex: differential " + std::to_string(n) + " not composable");
    }
    for (std::size_t n = 2; n <= d_.size(); ++n)
      if (!compose(d_[n - 2], d_[n - 1]).is_zero())
        throw AlgebraError("chain complex: d∘d != 0 at degree " + std::to_string(n));
  }

  std::size_t top() const { return groups_.empty() ? 0 : groups_.size() - 1; }
  const FgAbGroup& group(std::size_t n) const { return groups_.at(n); }
  const GroupMap& differential(std::size_t n) const { return d_.at(n - 1); }

  /// ker d_n / im d_{n+1}; degrees above the top are treated as zero groups.
  Subquotient homology_data(std::size_t n) const {
    const FgAbGroup& c = groups_.at(n);
    std::vector<Vec> cycles;
    if (n == 0) {
      for (std::size_t i = 0; i < c.dim(); ++i) cycles.push_back(unit_vec(c.dim(), i));
    } else {
      cycles = kernel_generators(d_[n - 1]);
    }
    std::vector<Vec> bounds;
    if (n + 1 < groups_.size()) {
      const GroupMap& f = d_[n];
      for (std::size_t j = 0; j < f.source().dim(); ++j) bounds.push_back(f.image_of_gen(j));
    }
    return Subquotient(c, cycles, bounds);
  }

  FgAbGroup homology(std::size_t n) const { return homology_data(n).group(); }

 private:
  std::vector<FgAbGroup> groups_;
  std::vector<GroupMap> d_;
};

inline FgAbGroup homology(const ChainComplex& c, std::size_t n) { return c.homology(n); }

}  // namespace tamloday
