#pragma once

#include <algorithm>
#include <climits>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tamloday/fgab.hpp"

namespace tamloday {

inline int mod_int(long a, long m) { return static_cast<int>(((a % m) + m) % m); }

/// Finite C_n-set: orbits C_n/C_d listed by stabilizer order d, each with a basepoint.
struct FinGSet {
  int n = 1;
  std::vector<int> stabilizers;

  std::size_t num_orbits() const { return stabilizers.size(); }
  int orbit_size(std::size_t o) const { return n / stabilizers[o]; }
  bool is_free(std::size_t o) const { return stabilizers[o] == 1; }
  bool is_fixed(std::size_t o) const { return stabilizers[o] == n; }
  std::size_t size() const {
    std::size_t s = 0;
    for (std::size_t o = 0; o < num_orbits(); ++o) s += static_cast<std::size_t>(orbit_size(o));
    return s;
  }
  std::size_t offset(std::size_t o) const {
    std::size_t s = 0;
    for (std::size_t i = 0; i < o; ++i) s += static_cast<std::size_t>(orbit_size(i));
    return s;
  }
  bool operator==(const FinGSet&) const = default;
};

/// Element address: gamma^power applied to the basepoint of an orbit.
struct GElement {
  std::size_t orbit = 0;
  int power = 0;
  bool operator==(const GElement&) const = default;
  auto operator<=>(const GElement&) const = default;
};

/// Equivariant map: basepoint of source orbit i goes to gamma^k * basepoint of target orbit.
struct GMap {
  FinGSet source, target;
  std::vector<GElement> images;

  GMap() = default;
  GMap(FinGSet s, FinGSet t, std::vector<GElement> im) : source(std::move(s)), target(std::move(t)), images(std::move(im)) {
    if (source.n != target.n) throw AlgebraError("G-map between different groups");
    if (images.size() != source.num_orbits()) throw AlgebraError("G-map needs one image per orbit");
    for (std::size_t o = 0; o < images.size(); ++o) {
      auto& e = images[o];
      if (e.orbit >= target.num_orbits()) throw AlgebraError("G-map image orbit out of range");
      if (target.stabilizers[e.orbit] % source.stabilizers[o] != 0)
        throw AlgebraError("stabilizer of source orbit is not contained in that of its image");
      e.power = mod_int(e.power, target.orbit_size(e.orbit));
    }
  }

  GElement operator()(const GElement& x) const {
    const GElement& b = images[x.orbit];
    return {b.orbit, mod_int(b.power + x.power, target.orbit_size(b.orbit))};
  }

  static GMap identity(const FinGSet& s) {
    std::vector<GElement> im;
    for (std::size_t o = 0; o < s.num_orbits(); ++o) im.push_back({o, 0});
    return GMap(s, s, im);
  }

  bool operator==(const GMap& o) const { return source == o.source && target == o.target && images == o.images; }
};

inline GMap compose(const GMap& g, const GMap& f) {
  std::vector<GElement> im;
  for (auto& e : f.images) im.push_back(g(e));
  return GMap(f.source, g.target, im);
}

/// Simplex gamma^g * surj^*(cell); surj is an order-preserving surjection [k] -> [dim cell].
struct Simplex {
  std::size_t cell = 0;
  std::vector<int> surj;
  int g = 0;
  int level() const { return static_cast<int>(surj.size()) - 1; }
  bool operator==(const Simplex&) const = default;
  auto operator<=>(const Simplex&) const = default;
};

/// Face i of a nondegenerate cell: gamma^exponent * surj^*(cell).
struct FaceRef {
  std::size_t cell = 0;
  std::vector<int> surj;
  int exponent = 0;
};

struct Cell {
  int dim = 0;
  int stabilizer = 1;
  std::vector<FaceRef> faces;
  std::string name;
};

struct Level {
  FinGSet gset;
  std::vector<GMap> faces;         // d_i : X_k -> X_{k-1}
  std::vector<GMap> degeneracies;  // s_i : X_k -> X_{k+1}
};

inline std::vector<int> identity_surjection(int k) {
  std::vector<int> s(static_cast<std::size_t>(k + 1));
  for (int i = 0; i <= k; ++i) s[static_cast<std::size_t>(i)] = i;
  return s;
}

/// Surjections [k] -> [j] ordered lexicographically by their jump positions.
inline std::vector<std::vector<int>> surjections(int k, int j) {
  std::vector<std::vector<int>> out;
  if (j > k || j < 0) return out;
  std::vector<int> pos(static_cast<std::size_t>(j));
  for (int i = 0; i < j; ++i) pos[static_cast<std::size_t>(i)] = i + 1;
  for (;;) {
    std::vector<int> s(static_cast<std::size_t>(k + 1));
    int v = 0;
    std::size_t p = 0;
    for (int t = 0; t <= k; ++t) {
      if (p < pos.size() && pos[p] == t) v++, p++;
      s[static_cast<std::size_t>(t)] = v;
    }
    out.push_back(std::move(s));
    int i = j - 1;
    while (i >= 0 && pos[static_cast<std::size_t>(i)] == k - (j - 1 - i)) --i;
    if (i < 0) break;
    pos[static_cast<std::size_t>(i)]++;
    for (int t = i + 1; t < j; ++t) pos[static_cast<std::size_t>(t)] = pos[static_cast<std::size_t>(t - 1)] + 1;
  }
  return out;
}

/// Finite simplicial C_n-set presented by nondegenerate orbit cells.
class SimplicialGSet {
 public:
  SimplicialGSet() : SimplicialGSet(1, {}) {}
  SimplicialGSet(int n, std::vector<Cell> cells, std::string name = "") : d_(std::make_shared<Data>()) {
    d_->n = n;
    d_->cells = std::move(cells);
    d_->name = std::move(name);
    if (n < 1) throw AlgebraError("group order must be positive");
    validate_cells();
  }

  int group_order() const { return d_->n; }
  const std::vector<Cell>& cells() const { return d_->cells; }
  const std::string& name() const { return d_->name; }
  int max_dim() const {
    int m = -1;
    for (auto& c : d_->cells) m = std::max(m, c.dim);
    return m;
  }
  int orbit_size_of_cell(std::size_t c) const { return d_->n / d_->cells[c].stabilizer; }

  Simplex normalize(Simplex s) const {
    s.g = mod_int(s.g, orbit_size_of_cell(s.cell));
    return s;
  }

  Simplex face(const Simplex& x, int i) const {
    const int k = x.level();
    if (k < 1 || i < 0 || i > k) throw AlgebraError("face index out of range");
    std::vector<int> tau;
    tau.reserve(static_cast<std::size_t>(k));
    for (int t = 0; t <= k; ++t)
      if (t != i) tau.push_back(x.surj[static_cast<std::size_t>(t)]);
    const int dim = d_->cells[x.cell].dim;
    const int removed = x.surj[static_cast<std::size_t>(i)];
    bool still = std::find(tau.begin(), tau.end(), removed) != tau.end();
    if (still) return normalize({x.cell, tau, x.g});
    // value `removed` lost: collapse and apply the cell's face
    for (auto& v : tau)
      if (v > removed) --v;
    const FaceRef& f = d_->cells[x.cell].faces[static_cast<std::size_t>(removed)];
    std::vector<int> comp(tau.size());
    for (std::size_t t = 0; t < tau.size(); ++t) comp[t] = f.surj[static_cast<std::size_t>(tau[t])];
    (void)dim;
    return normalize({f.cell, comp, x.g + f.exponent});
  }

  Simplex degeneracy(const Simplex& x, int i) const {
    const int k = x.level();
    if (i < 0 || i > k) throw AlgebraError("degeneracy index out of range");
    std::vector<int> s = x.surj;
    s.insert(s.begin() + i, x.surj[static_cast<std::size_t>(i)]);
    return {x.cell, s, x.g};
  }

  Simplex act(const Simplex& x, int k) const { return normalize({x.cell, x.surj, x.g + k}); }

  /// Orbit representatives (g = 0) of level k, in canonical order.
  const std::vector<Simplex>& orbits(int k) const { return index(k).orbits; }

  GElement address(const Simplex& x) const {
    const LevelIndex& li = index(x.level());
    auto it = li.lookup.find({x.cell, x.surj});
    if (it == li.lookup.end()) throw AlgebraError("simplex not found in level");
    return {it->second, mod_int(x.g, orbit_size_of_cell(x.cell))};
  }

  Simplex element(int k, const GElement& e) const {
    Simplex s = orbits(k).at(e.orbit);
    return act(s, e.power);
  }

  /// All simplices of level k, orbit by orbit.
  std::vector<Simplex> simplices(int k) const {
    std::vector<Simplex> out;
    for (auto& b : orbits(k))
      for (int g = 0; g < orbit_size_of_cell(b.cell); ++g) out.push_back(act(b, g));
    return out;
  }

  FinGSet level_gset(int k) const {
    FinGSet s{d_->n, {}};
    for (auto& b : orbits(k)) s.stabilizers.push_back(d_->cells[b.cell].stabilizer);
    return s;
  }

  GMap face_map(int k, int i) const {
    std::vector<GElement> im;
    for (auto& b : orbits(k)) im.push_back(address(face(b, i)));
    return GMap(level_gset(k), level_gset(k - 1), im);
  }
  GMap degeneracy_map(int k, int i) const {
    std::vector<GElement> im;
    for (auto& b : orbits(k)) im.push_back(address(degeneracy(b, i)));
    return GMap(level_gset(k), level_gset(k + 1), im);
  }

  Level expand_level(int k) const {
    Level l{level_gset(k), {}, {}};
    if (k > 0)
      for (int i = 0; i <= k; ++i) l.faces.push_back(face_map(k, i));
    for (int i = 0; i <= k; ++i) l.degeneracies.push_back(degeneracy_map(k, i));
    return l;
  }

  /// Checks the simplicial identities on levels 0..top; returns violations.
  std::vector<std::string> validate(int top) const {
    std::vector<std::string> bad;
    for (int k = 0; k <= top; ++k)
      for (auto& x : orbits(k)) {
        auto tag = [&](const std::string& what) { return what + " at level " + std::to_string(k) + " cell " + std::to_string(x.cell); };
        for (int j = 0; j <= k; ++j)
          for (int i = 0; i <= k + 1; ++i) {
            Simplex sj = degeneracy(x, j);
            Simplex lhs = face(sj, i);
            Simplex rhs;
            if (i < j) rhs = degeneracy(face(x, i), j - 1);
            else if (i == j || i == j + 1) rhs = x;
            else rhs = degeneracy(face(x, i - 1), j);
            if (!(lhs == rhs)) bad.push_back(tag("d_i s_j"));
          }
        for (int i = 0; i <= k; ++i)
          for (int j = i; j <= k; ++j)
            if (!(degeneracy(degeneracy(x, j), i) == degeneracy(degeneracy(x, i), j + 1))) bad.push_back(tag("s_i s_j"));
        if (k >= 2)
          for (int j = 1; j <= k; ++j)
            for (int i = 0; i < j; ++i)
              if (!(face(face(x, j), i) == face(face(x, i), j - 1))) bad.push_back(tag("d_i d_j"));
        // equivariance of faces
        if (k >= 1)
          for (int i = 0; i <= k; ++i)
            if (!(face(act(x, 1), i) == act(face(x, i), 1))) bad.push_back(tag("equivariance"));
      }
    return bad;
  }

  /// Number of elements at level k from the closed-form count over cells.
  std::size_t closed_form_size(int k) const {
    std::size_t total = 0;
    for (std::size_t c = 0; c < d_->cells.size(); ++c) {
      int j = d_->cells[c].dim;
      if (j > k) continue;
      // binomial(k, j)
      std::size_t b = 1;
      for (int t = 1; t <= j; ++t) b = b * static_cast<std::size_t>(k - j + t) / static_cast<std::size_t>(t);
      total += b * static_cast<std::size_t>(orbit_size_of_cell(c));
    }
    return total;
  }

 private:
  struct LevelIndex {
    std::vector<Simplex> orbits;
    std::map<std::pair<std::size_t, std::vector<int>>, std::size_t> lookup;
  };
  struct Data {
    int n = 1;
    std::vector<Cell> cells;
    std::string name;
    mutable std::mutex mu;
    mutable std::map<int, std::shared_ptr<const LevelIndex>> cache;
  };
  std::shared_ptr<Data> d_;

  const LevelIndex& index(int k) const {
    if (k < 0) throw AlgebraError("negative simplicial level");
    std::lock_guard<std::mutex> lock(d_->mu);
    auto it = d_->cache.find(k);
    if (it != d_->cache.end()) return *it->second;
    auto li = std::make_shared<LevelIndex>();
    for (std::size_t c = 0; c < d_->cells.size(); ++c)
      for (auto& s : surjections(k, d_->cells[c].dim)) {
        li->lookup[{c, s}] = li->orbits.size();
        li->orbits.push_back({c, s, 0});
      }
    d_->cache[k] = li;
    return *li;
  }

  void validate_cells() const {
    const int n = d_->n;
    for (std::size_t c = 0; c < d_->cells.size(); ++c) {
      const Cell& cell = d_->cells[c];
      if (cell.stabilizer < 1 || n % cell.stabilizer != 0) throw AlgebraError("cell stabilizer must divide the group order");
      if (cell.dim < 0) throw AlgebraError("negative cell dimension");
      if (cell.dim == 0 && !cell.faces.empty()) throw AlgebraError("vertex with faces");
      if (cell.dim > 0 && static_cast<int>(cell.faces.size()) != cell.dim + 1)
        throw AlgebraError("cell " + std::to_string(c) + " needs dim+1 faces");
      for (auto& f : cell.faces) {
        if (f.cell >= d_->cells.size()) throw AlgebraError("face refers to unknown cell");
        const Cell& t = d_->cells[f.cell];
        if (static_cast<int>(f.surj.size()) != cell.dim) throw AlgebraError("face surjection has wrong length");
        for (std::size_t i = 0; i < f.surj.size(); ++i) {
          if (f.surj[i] < 0 || f.surj[i] > t.dim) throw AlgebraError("face surjection out of range");
          if (i > 0 && f.surj[i] != f.surj[i - 1] && f.surj[i] != f.surj[i - 1] + 1)
            throw AlgebraError("face map is not an order-preserving surjection");
        }
        if (f.surj.front() != 0 || f.surj.back() != t.dim) throw AlgebraError("face map is not surjective");
        if (t.stabilizer % cell.stabilizer != 0) throw AlgebraError("face of a cell has smaller stabilizer");
      }
    }
  }
};

/// Levelwise description of a simplicial C_n-map: images of simplices.
using SimplexMap = std::function<Simplex(const Simplex&)>;

inline GMap level_gmap(const SimplicialGSet& x, const SimplicialGSet& y, int k, const SimplexMap& f) {
  std::vector<GElement> im;
  for (auto& b : x.orbits(k)) {
    Simplex s = f(b);
    if (s.level() != k) throw AlgebraError("simplicial map changes level");
    if (!(f(x.act(b, 1)) == y.act(s, 1))) throw AlgebraError("simplicial map is not equivariant");
    im.push_back(y.address(s));
  }
  return GMap(x.level_gset(k), y.level_gset(k), im);
}

inline std::vector<std::string> validate_simplicial_map(const SimplicialGSet& x, const SimplicialGSet& y, const SimplexMap& f, int top) {
  std::vector<std::string> bad;
  for (int k = 0; k <= top; ++k)
    for (auto& b : x.orbits(k)) {
      if (!(f(x.act(b, 1)) == y.act(f(b), 1))) bad.push_back("equivariance at level " + std::to_string(k));
      if (k > 0)
        for (int i = 0; i <= k; ++i)
          if (!(f(x.face(b, i)) == y.face(f(b), i))) bad.push_back("face " + std::to_string(i) + " at level " + std::to_string(k));
      for (int i = 0; i <= k; ++i)
        if (!(f(x.degeneracy(b, i)) == y.degeneracy(f(b), i)))
          bad.push_back("degeneracy " + std::to_string(i) + " at level " + std::to_string(k));
    }
  return bad;
}

/// Map determined on nondegenerate cells: cell c goes to the simplex images[c] (same dimension).
inline SimplexMap cellular_map(const SimplicialGSet& y, std::vector<Simplex> images) {
  return [y, images = std::move(images)](const Simplex& s) {
    const Simplex& t = images.at(s.cell);
    std::vector<int> comp(s.surj.size());
    for (std::size_t i = 0; i < s.surj.size(); ++i) comp[i] = t.surj.at(static_cast<std::size_t>(s.surj[i]));
    return y.normalize({t.cell, comp, t.g + s.g});
  };
}

// ---------------------------------------------------------------------------
// Builders from explicit element models.

template <class E>
struct SimplicialModel {
  int n = 1;
  int max_dim = 0;
  std::function<std::vector<E>(int)> elements;           // every element of level k
  std::function<E(int, int, const E&)> face;             // d_i at level k
  std::function<E(int, int, const E&)> degeneracy;       // s_i from level k
  std::function<E(const E&)> act;                        // generator action
};

/// Simplicial G-set generated by an element model, with translation both ways.
template <class E>
class ModelSimplicialGSet {
 public:
  ModelSimplicialGSet() = default;
  ModelSimplicialGSet(SimplicialModel<E> m, std::string name) : m_(std::make_shared<SimplicialModel<E>>(std::move(m))) {
    const SimplicialModel<E>& md = *m_;
    std::vector<Cell> cells;
    for (int k = 0; k <= md.max_dim; ++k) {
      for (const E& e : md.elements(k)) {
        if (nondeg_.count(e)) continue;
        if (k > 0 && is_degenerate(k, e)) continue;
        std::size_t c = cells.size();
        std::vector<E> orbit{e};
        for (E x = md.act(e); !(x == e); x = md.act(x)) {
          orbit.push_back(x);
          if (static_cast<int>(orbit.size()) > md.n) throw AlgebraError("model action has wrong order");
        }
        if (md.n % static_cast<int>(orbit.size()) != 0) throw AlgebraError("model orbit size does not divide n");
        for (std::size_t g = 0; g < orbit.size(); ++g) nondeg_[orbit[g]] = {c, static_cast<int>(g)};
        Cell cell;
        cell.dim = k;
        cell.stabilizer = md.n / static_cast<int>(orbit.size());
        base_.push_back(e);
        if (k > 0)
          for (int i = 0; i <= k; ++i) {
            Simplex s = decompose(k - 1, md.face(k, i, e));
            cell.faces.push_back({s.cell, s.surj, s.g});
          }
        cells.push_back(std::move(cell));
      }
    }
    x_ = SimplicialGSet(md.n, std::move(cells), std::move(name));
  }

  const SimplicialGSet& sset() const { return x_; }

  Simplex to_simplex(int k, const E& e) const { return x_.normalize(decompose(k, e)); }

  E to_element(const Simplex& s) const {
    E e = base_.at(s.cell);
    int lvl = static_cast<int>(s.surj.back());
    for (std::size_t t = 1; t < s.surj.size(); ++t)
      if (s.surj[t] == s.surj[t - 1]) {
        e = m_->degeneracy(lvl, static_cast<int>(t) - 1, e);
        ++lvl;
      }
    for (int g = 0; g < s.g; ++g) e = m_->act(e);
    return e;
  }

  const SimplicialModel<E>& model() const { return *m_; }

 private:
  bool is_degenerate(int k, const E& e) const {
    for (int i = 0; i < k; ++i)
      if (m_->degeneracy(k - 1, i, m_->face(k, i, e)) == e) return true;
    return false;
  }

  Simplex decompose(int k, const E& e) const {
    auto it = nondeg_.find(e);
    if (it != nondeg_.end()) return {it->second.first, identity_surjection(k), it->second.second};
    for (int i = 0; i < k; ++i) {
      E f = m_->face(k, i, e);
      if (m_->degeneracy(k - 1, i, f) == e) {
        Simplex s = decompose(k - 1, f);
        std::vector<int> surj;
        for (int x = 0; x <= k; ++x) surj.push_back(s.surj[static_cast<std::size_t>(x <= i ? x : x - 1)]);
        return {s.cell, surj, s.g};
      }
    }
    throw AlgebraError("model element is neither known nor degenerate");
  }

  std::shared_ptr<SimplicialModel<E>> m_;
  std::map<E, std::pair<std::size_t, int>> nondeg_;
  std::vector<E> base_;
  SimplicialGSet x_;
};

// ---------------------------------------------------------------------------
// Basic spaces.

inline SimplicialGSet point(int n = 1) { return SimplicialGSet(n, {Cell{0, n, {}, "pt"}}, "point"); }

inline SimplicialGSet free_orbit(int n) { return SimplicialGSet(n, {Cell{0, 1, {}, "g"}}, "free_orbit"); }

inline SimplicialGSet empty_space(int n) { return SimplicialGSet(n, {}, "empty"); }

/// Free vertex x0 and free edge e0 with d0 e0 = x0, d1 e0 = gamma^{-1} x0.
inline SimplicialGSet rotation_circle(int n) {
  if (n < 1) throw AlgebraError("rotation circle needs n >= 1");
  return SimplicialGSet(n, {Cell{0, 1, {}, "x0"}, Cell{1, 1, {{0, {0}, 0}, {0, {0}, -1}}, "e0"}},
                        "rotation_circle(" + std::to_string(n) + ")");
}

/// The circle with trivial action (quotient of the rotation circle by the whole group).
inline SimplicialGSet rotation_quotient_circle(int n) {
  return SimplicialGSet(n, {Cell{0, n, {}, "x0"}, Cell{1, n, {{0, {0}, 0}, {0, {0}, 0}}, "e0"}},
                        "rotation_quotient_circle(" + std::to_string(n) + ")");
}

inline SimplicialGSet one_vertex_circle() { return rotation_circle(1); }

/// Two fixed vertices joined by a free edge orbit.
inline SimplicialGSet reflection_circle() {
  return SimplicialGSet(2, {Cell{0, 2, {}, "x0"}, Cell{1, 1, {{0, {0}, 0}, {2, {0}, 0}}, "e0"}, Cell{0, 2, {}, "x1"}},
                        "reflection_circle()");
}

inline SimplicialGSet disjoint_union(const SimplicialGSet& x, const SimplicialGSet& y) {
  if (x.group_order() != y.group_order()) throw AlgebraError("disjoint union over different groups");
  std::vector<Cell> cells = x.cells();
  const std::size_t off = cells.size();
  for (Cell c : y.cells()) {
    for (auto& f : c.faces) f.cell += off;
    cells.push_back(std::move(c));
  }
  return SimplicialGSet(x.group_order(), cells, "disjoint(" + x.name() + "," + y.name() + ")");
}

inline SimplexMap union_left(const SimplicialGSet& u) {
  return [u](const Simplex& s) { return u.normalize(s); };
}
inline SimplexMap union_right(const SimplicialGSet& u, const SimplicialGSet& x) {
  const std::size_t off = x.cells().size();
  return [u, off](const Simplex& s) { return u.normalize({s.cell + off, s.surj, s.g}); };
}

inline SimplicialGSet fixed_points(const SimplicialGSet& x) {
  const int n = x.group_order();
  std::vector<std::size_t> idx(x.cells().size(), SIZE_MAX);
  std::vector<Cell> cells;
  for (std::size_t c = 0; c < x.cells().size(); ++c)
    if (x.cells()[c].stabilizer == n) idx[c] = cells.size(), cells.push_back(x.cells()[c]);
  for (auto& c : cells)
    for (auto& f : c.faces) {
      f.cell = idx[f.cell];
      f.exponent = 0;
      if (f.cell == SIZE_MAX) throw AlgebraError("face of a fixed cell is not fixed");
    }
  return SimplicialGSet(n, cells, "fixed_points(" + x.name() + ")");
}

/// Underlying simplicial set: cell (c, g) for each element of each cell orbit.
inline SimplicialGSet underlying(const SimplicialGSet& x) {
  std::vector<std::size_t> off;
  std::size_t total = 0;
  for (std::size_t c = 0; c < x.cells().size(); ++c) off.push_back(total), total += static_cast<std::size_t>(x.orbit_size_of_cell(c));
  std::vector<Cell> cells;
  for (std::size_t c = 0; c < x.cells().size(); ++c)
    for (int g = 0; g < x.orbit_size_of_cell(c); ++g) {
      Cell cell{x.cells()[c].dim, 1, {}, x.cells()[c].name + "^" + std::to_string(g)};
      for (auto& f : x.cells()[c].faces)
        cell.faces.push_back({off[f.cell] + static_cast<std::size_t>(mod_int(g + f.exponent, x.orbit_size_of_cell(f.cell))), f.surj, 0});
      cells.push_back(cell);
    }
  return SimplicialGSet(1, cells, "underlying(" + x.name() + ")");
}

/// Index of the underlying cell for (cell, g).
inline std::size_t underlying_cell(const SimplicialGSet& x, std::size_t c, int g) {
  std::size_t off = 0;
  for (std::size_t i = 0; i < c; ++i) off += static_cast<std::size_t>(x.orbit_size_of_cell(i));
  return off + static_cast<std::size_t>(mod_int(g, x.orbit_size_of_cell(c)));
}

// ---------------------------------------------------------------------------
// Products.

using ProductElement = std::pair<Simplex, Simplex>;

inline ModelSimplicialGSet<ProductElement> product_model(const SimplicialGSet& x, const SimplicialGSet& y) {
  if (x.group_order() != y.group_order()) throw AlgebraError("product over different groups");
  SimplicialModel<ProductElement> m;
  m.n = x.group_order();
  m.max_dim = std::max(0, x.max_dim()) + std::max(0, y.max_dim());
  m.elements = [x, y](int k) {
    std::vector<ProductElement> out;
    for (auto& a : x.simplices(k))
      for (auto& b : y.simplices(k)) out.push_back({a, b});
    return out;
  };
  m.face = [x, y](int, int i, const ProductElement& e) { return ProductElement{x.face(e.first, i), y.face(e.second, i)}; };
  m.degeneracy = [x, y](int, int i, const ProductElement& e) {
    return ProductElement{x.degeneracy(e.first, i), y.degeneracy(e.second, i)};
  };
  m.act = [x, y](const ProductElement& e) { return ProductElement{x.act(e.first, 1), y.act(e.second, 1)}; };
  if (x.cells().empty() || y.cells().empty()) m.max_dim = -1;
  return ModelSimplicialGSet<ProductElement>(m, "product(" + x.name() + "," + y.name() + ")");
}

inline SimplicialGSet product(const SimplicialGSet& x, const SimplicialGSet& y) { return product_model(x, y).sset(); }

// ---------------------------------------------------------------------------
// Cones and suspensions.

/// Element of a cone: a simplex of the base followed by s apex vertices.
struct ConeElement {
  int level = 0;
  bool has_x = false;
  Simplex x;
  int s = 0;
  bool operator==(const ConeElement&) const = default;
  auto operator<=>(const ConeElement&) const = default;
};

inline ModelSimplicialGSet<ConeElement> cone_model(const SimplicialGSet& x) {
  SimplicialModel<ConeElement> m;
  m.n = x.group_order();
  m.max_dim = x.max_dim() + 1;
  m.elements = [x](int k) {
    std::vector<ConeElement> out;
    for (int s = 0; s <= k; ++s)
      for (auto& a : x.simplices(k - s)) out.push_back({k, true, a, s});
    out.push_back({k, false, {}, k + 1});
    return out;
  };
  m.face = [x](int k, int i, const ConeElement& e) {
    if (e.has_x) {
      const int mx = e.x.level();
      if (i <= mx) {
        if (mx == 0) return ConeElement{k - 1, false, {}, e.s};
        return ConeElement{k - 1, true, x.face(e.x, i), e.s};
      }
    }
    return ConeElement{k - 1, e.has_x, e.x, e.s - 1};
  };
  m.degeneracy = [x](int k, int i, const ConeElement& e) {
    if (e.has_x && i <= e.x.level()) return ConeElement{k + 1, true, x.degeneracy(e.x, i), e.s};
    return ConeElement{k + 1, e.has_x, e.x, e.s + 1};
  };
  m.act = [x](const ConeElement& e) {
    ConeElement r = e;
    if (e.has_x) r.x = x.act(e.x, 1);
    return r;
  };
  return ModelSimplicialGSet<ConeElement>(m, "cone(" + x.name() + ")");
}

inline SimplicialGSet cone(const SimplicialGSet& x) { return cone_model(x).sset(); }

/// Element of an (unreduced, possibly flipped) suspension: the Delta^1 coordinate
/// is 0^j 1^{k+1-j}; j = 0 is the "bottom" end, j = k+1 the "top" end.
struct JoinElement {
  int level = 0;
  int j = 0;
  int sign = 0;
  bool has_y = false;
  Simplex y;
  bool operator==(const JoinElement&) const = default;
  auto operator<=>(const JoinElement&) const = default;
};

/// flipped == false: suspension SY (both ends are fixed apexes).
/// flipped == true: S^sigma Y for C_2: bottom end is Y itself, top end a free apex orbit.
inline ModelSimplicialGSet<JoinElement> join_model(const SimplicialGSet& y, bool flipped) {
  if (flipped && y.group_order() != 2) throw AlgebraError("sigma suspension needs the group C_2");
  SimplicialModel<JoinElement> m;
  m.n = y.group_order();
  m.max_dim = y.max_dim() + 1;
  auto normalize = [flipped](JoinElement e) {
    const int k = e.level;
    if (e.j == k + 1) e.has_y = false, e.y = {};
    if (e.j == 0 && !flipped) e.has_y = false, e.y = {};
    if (!flipped || e.j == 0) e.sign = 0;
    return e;
  };
  m.elements = [y, flipped](int k) {
    std::vector<JoinElement> out;
    for (int j = 0; j <= k + 1; ++j) {
      const bool needs_y = j <= k && (j > 0 || flipped);
      const int signs = flipped && j > 0 ? 2 : 1;
      for (int sg = 0; sg < signs; ++sg) {
        if (needs_y)
          for (auto& b : y.simplices(k)) out.push_back({k, j, sg, true, b});
        else
          out.push_back({k, j, sg, false, {}});
      }
    }
    return out;
  };
  m.face = [y, normalize](int k, int i, const JoinElement& e) {
    JoinElement r = e;
    r.level = k - 1;
    if (i < e.j) r.j--;
    if (e.has_y) r.y = y.face(e.y, i);
    // center/bottom points keep y; an element with no y (apex) stays an apex
    if (!e.has_y) r.has_y = false;
    return normalize(r);
  };
  m.degeneracy = [y, normalize](int k, int i, const JoinElement& e) {
    JoinElement r = e;
    r.level = k + 1;
    if (i < e.j) r.j++;
    if (e.has_y) r.y = y.degeneracy(e.y, i);
    return normalize(r);
  };
  m.act = [y, flipped](const JoinElement& e) {
    JoinElement r = e;
    if (e.has_y) r.y = y.act(e.y, 1);
    if (flipped && e.j > 0) r.sign = 1 - e.sign;
    return r;
  };
  return ModelSimplicialGSet<JoinElement>(m, (flipped ? "sigma_suspension(" : "suspension(") + y.name() + ")");
}

inline SimplicialGSet suspension(const SimplicialGSet& y) { return join_model(y, false).sset(); }
inline SimplicialGSet sigma_suspension(const SimplicialGSet& y) { return join_model(y, true).sset(); }

/// The interval with the flip: fixed center, free pair of endpoints.
inline SimplicialGSet interval_sigma() {
  SimplicialGSet s = sigma_suspension(point(2));
  return SimplicialGSet(2, s.cells(), "interval_sigma()");
}

// ---------------------------------------------------------------------------
// Pushouts along orbit-closed subobjects.

/// Cellwise inclusion Z -> X: cell c of Z goes to gamma^exponent * (cell) of X.
struct CellInclusion {
  std::vector<std::pair<std::size_t, int>> cells;
};

inline SimplexMap inclusion_map(const SimplicialGSet& x, const CellInclusion& inc) {
  return [x, inc](const Simplex& s) {
    auto [c, e] = inc.cells.at(s.cell);
    return x.normalize({c, s.surj, s.g + e});
  };
}

inline void check_inclusion(const SimplicialGSet& z, const SimplicialGSet& x, const CellInclusion& inc) {
  if (inc.cells.size() != z.cells().size()) throw AlgebraError("inclusion must map every cell");
  std::set<std::size_t> seen;
  for (std::size_t c = 0; c < z.cells().size(); ++c) {
    auto [t, e] = inc.cells[c];
    if (t >= x.cells().size()) throw AlgebraError("inclusion target out of range");
    if (x.cells()[t].dim != z.cells()[c].dim) throw AlgebraError("inclusion changes dimension");
    if (x.orbit_size_of_cell(t) != z.orbit_size_of_cell(c))
      throw AlgebraError("subobject is not orbit-closed: cell " + std::to_string(c) + " covers part of an orbit");
    if (!seen.insert(t).second) throw AlgebraError("inclusion is not injective");
  }
  auto bad = validate_simplicial_map(z, x, inclusion_map(x, inc), std::max(0, z.max_dim()) + 1);
  if (!bad.empty()) throw AlgebraError("inclusion is not simplicial: " + bad.front());
}

struct PushoutElement {
  int side = 0;  // 0: from x, 1: from y outside z
  Simplex s;
  bool operator==(const PushoutElement&) const = default;
  auto operator<=>(const PushoutElement&) const = default;
};

inline ModelSimplicialGSet<PushoutElement> pushout_model(const SimplicialGSet& x, const SimplicialGSet& z, const SimplicialGSet& y,
                                                         const CellInclusion& zx, const CellInclusion& zy) {
  check_inclusion(z, x, zx);
  check_inclusion(z, y, zy);
  std::map<std::size_t, std::size_t> y_to_z;
  for (std::size_t c = 0; c < zy.cells.size(); ++c) y_to_z[zy.cells[c].first] = c;
  SimplexMap fx = inclusion_map(x, zx);
  auto normalize = [y, z, zy, y_to_z, fx](PushoutElement e) {
    if (e.side == 1) {
      auto it = y_to_z.find(e.s.cell);
      if (it != y_to_z.end()) {
        Simplex zs = z.normalize({it->second, e.s.surj, e.s.g - zy.cells[it->second].second});
        return PushoutElement{0, fx(zs)};
      }
    }
    return e;
  };
  SimplicialModel<PushoutElement> m;
  m.n = x.group_order();
  m.max_dim = std::max(x.max_dim(), y.max_dim());
  m.elements = [x, y, y_to_z](int k) {
    std::vector<PushoutElement> out;
    for (auto& s : x.simplices(k)) out.push_back({0, s});
    for (auto& s : y.simplices(k))
      if (!y_to_z.count(s.cell)) out.push_back({1, s});
    return out;
  };
  m.face = [x, y, normalize](int, int i, const PushoutElement& e) {
    return normalize({e.side, e.side == 0 ? x.face(e.s, i) : y.face(e.s, i)});
  };
  m.degeneracy = [x, y, normalize](int, int i, const PushoutElement& e) {
    return normalize({e.side, e.side == 0 ? x.degeneracy(e.s, i) : y.degeneracy(e.s, i)});
  };
  m.act = [x, y](const PushoutElement& e) { return PushoutElement{e.side, e.side == 0 ? x.act(e.s, 1) : y.act(e.s, 1)}; };
  return ModelSimplicialGSet<PushoutElement>(m, "pushout(" + x.name() + "," + z.name() + "," + y.name() + ")");
}

inline SimplicialGSet pushout(const SimplicialGSet& x, const SimplicialGSet& z, const SimplicialGSet& y, const CellInclusion& zx,
                              const CellInclusion& zy) {
  return pushout_model(x, z, y, zx, zy).sset();
}

/// Inclusions of the pieces into a pushout built by pushout_model.
inline SimplexMap pushout_left(const ModelSimplicialGSet<PushoutElement>& p) {
  return [p](const Simplex& s) { return p.to_simplex(s.level(), {0, s}); };
}
inline SimplexMap pushout_right(const ModelSimplicialGSet<PushoutElement>& p, const SimplicialGSet& z, const SimplicialGSet& x,
                                const CellInclusion& zx, const CellInclusion& zy) {
  std::map<std::size_t, std::size_t> y_to_z;
  for (std::size_t c = 0; c < zy.cells.size(); ++c) y_to_z[zy.cells[c].first] = c;
  SimplexMap fx = inclusion_map(x, zx);
  return [p, z, y_to_z, fx, zy](const Simplex& s) {
    auto it = y_to_z.find(s.cell);
    if (it != y_to_z.end()) {
      Simplex zs = z.normalize({it->second, s.surj, s.g - zy.cells[it->second].second});
      return p.to_simplex(s.level(), {0, fx(zs)});
    }
    return p.to_simplex(s.level(), {1, s});
  };
}

// ---------------------------------------------------------------------------
// Plain simplicial sets stored levelwise (used at ring level).

struct LevelwiseSimplicialSet {
  int group_order = 1;
  std::vector<std::size_t> sizes;                              // levels 0..top
  std::vector<std::vector<std::vector<std::size_t>>> faces;    // faces[k][i] : level k -> k-1
  std::vector<std::vector<std::vector<std::size_t>>> degens;   // degens[k][i] : level k -> k+1 (k < top)
  std::vector<std::vector<std::size_t>> action;                // generator permutation per level

  int top() const { return static_cast<int>(sizes.size()) - 1; }

  std::vector<std::string> validate() const {
    std::vector<std::string> bad;
    const int t = top();
    for (int k = 0; k <= t; ++k) {
      const std::size_t uk = static_cast<std::size_t>(k);
      for (std::size_t e = 0; e < sizes[uk]; ++e) {
        if (k >= 2)
          for (int j = 1; j <= k; ++j)
            for (int i = 0; i < j; ++i)
              if (faces[uk - 1][static_cast<std::size_t>(i)][faces[uk][static_cast<std::size_t>(j)][e]] !=
                  faces[uk - 1][static_cast<std::size_t>(j - 1)][faces[uk][static_cast<std::size_t>(i)][e]])
                bad.push_back("d_i d_j at level " + std::to_string(k));
        if (k < t)
          for (int j = 0; j <= k; ++j) {
            std::size_t sj = degens[uk][static_cast<std::size_t>(j)][e];
            for (int i = 0; i <= k + 1; ++i) {
              std::size_t lhs = faces[uk + 1][static_cast<std::size_t>(i)][sj];
              std::size_t rhs;
              if (i < j) rhs = degens[uk - 1][static_cast<std::size_t>(j - 1)][faces[uk][static_cast<std::size_t>(i)][e]];
              else if (i == j || i == j + 1) rhs = e;
              else rhs = degens[uk - 1][static_cast<std::size_t>(j)][faces[uk][static_cast<std::size_t>(i - 1)][e]];
              if (lhs != rhs) bad.push_back("d_i s_j at level " + std::to_string(k));
            }
          }
        if (k + 1 < t)
          for (int i = 0; i <= k; ++i)
            for (int j = i; j <= k; ++j)
              if (degens[uk + 1][static_cast<std::size_t>(i)][degens[uk][static_cast<std::size_t>(j)][e]] !=
                  degens[uk + 1][static_cast<std::size_t>(j + 1)][degens[uk][static_cast<std::size_t>(i)][e]])
                bad.push_back("s_i s_j at level " + std::to_string(k));
      }
    }
    return bad;
  }

  /// Free abelian chain complex with alternating-sum boundary.
  ChainComplex chains() const {
    std::vector<FgAbGroup> groups;
    std::vector<GroupMap> d;
    for (int k = 0; k <= top(); ++k) groups.push_back(FgAbGroup::free(sizes[static_cast<std::size_t>(k)]));
    for (int k = 1; k <= top(); ++k) {
      const std::size_t uk = static_cast<std::size_t>(k);
      Matrix m(sizes[uk - 1], sizes[uk]);
      for (int i = 0; i <= k; ++i)
        for (std::size_t e = 0; e < sizes[uk]; ++e) m(faces[uk][static_cast<std::size_t>(i)][e], e) += (i % 2 ? -1 : 1);
      d.push_back(GroupMap(groups[uk], groups[uk - 1], m));
    }
    return ChainComplex(groups, d);
  }
};

/// Flattened levels 0..top of a simplicial G-set; element (orbit, g) sits at offset(orbit) + g.
inline LevelwiseSimplicialSet levelwise(const SimplicialGSet& x, int top) {
  LevelwiseSimplicialSet l;
  l.group_order = x.group_order();
  auto flat = [&](int k, const Simplex& s) {
    GElement a = x.address(s);
    return x.level_gset(k).offset(a.orbit) + static_cast<std::size_t>(a.power);
  };
  for (int k = 0; k <= top; ++k) {
    auto all = x.simplices(k);
    l.sizes.push_back(all.size());
    std::vector<std::vector<std::size_t>> fs, ds;
    if (k > 0)
      for (int i = 0; i <= k; ++i) {
        std::vector<std::size_t> f;
        for (auto& s : all) f.push_back(flat(k - 1, x.face(s, i)));
        fs.push_back(std::move(f));
      }
    if (k < top)
      for (int i = 0; i <= k; ++i) {
        std::vector<std::size_t> dd;
        for (auto& s : all) dd.push_back(flat(k + 1, x.degeneracy(s, i)));
        ds.push_back(std::move(dd));
      }
    std::vector<std::size_t> act;
    for (auto& s : all) act.push_back(flat(k, x.act(s, 1)));
    l.faces.push_back(std::move(fs));
    l.degens.push_back(std::move(ds));
    l.action.push_back(std::move(act));
  }
  return l;
}

/// Edgewise subdivision: level k of the result is level n(k+1)-1 of x. Faces and
/// degeneracies act blockwise on the n concatenated copies of [k].
inline LevelwiseSimplicialSet subdivide(const LevelwiseSimplicialSet& x, int n) {
  if (n < 1) throw AlgebraError("subdivision factor must be positive");
  // highest level k with n(k+1)-1 <= top
  const int top = (x.top() + 1) / n - 1;
  if (top < 0) throw AlgebraError("simplicial set too short to subdivide");
  LevelwiseSimplicialSet s;
  s.group_order = x.group_order;
  auto lvl = [n](int k) { return static_cast<std::size_t>(n * (k + 1) - 1); };
  for (int k = 0; k <= top; ++k) {
    const std::size_t L = lvl(k);
    s.sizes.push_back(x.sizes[L]);
    s.action.push_back(x.action.empty() ? std::vector<std::size_t>() : x.action[L]);
    std::vector<std::vector<std::size_t>> fs, ds;
    if (k > 0)
      for (int i = 0; i <= k; ++i) {
        std::vector<std::size_t> f(x.sizes[L]);
        for (std::size_t e = 0; e < f.size(); ++e) {
          std::size_t cur = e, level = L;
          for (int b = n - 1; b >= 0; --b, --level) cur = x.faces[level][static_cast<std::size_t>(b * (k + 1) + i)][cur];
          f[e] = cur;
        }
        fs.push_back(std::move(f));
      }
    if (k < top)
      for (int i = 0; i <= k; ++i) {
        std::vector<std::size_t> d(x.sizes[L]);
        for (std::size_t e = 0; e < d.size(); ++e) {
          std::size_t cur = e, level = L;
          for (int b = 0; b < n; ++b, ++level) cur = x.degens[level][static_cast<std::size_t>(b * (k + 2) + i)][cur];
          d[e] = cur;
        }
        ds.push_back(std::move(d));
      }
    s.faces.push_back(std::move(fs));
    s.degens.push_back(std::move(ds));
  }
  return s;
}

}  // namespace tamloday
