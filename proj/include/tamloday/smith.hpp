#pragma once

#include "tamloday/matrix.hpp"

namespace tamloday {

/// Result of a Smith normal form computation: left * m * right == diagonal.
struct SmithForm {
  Matrix diagonal;
  Matrix left, left_inv;
  Matrix right, right_inv;
  std::size_t rank = 0;

  Integer factor(std::size_t i) const { return i < diagonal.rows() && i < diagonal.cols() ? diagonal(i, i) : Integer(0); }
};

enum SmithTrack : unsigned {
  kTrackLeft = 1u,
  kTrackRight = 2u,
  kTrackAll = 3u,
};

/// Smith normal form with unimodular transforms. Diagonal entries are
/// nonnegative, nonzero ones first, each dividing the next.
/// Left transforms are only maintained when requested (they are m x m).
inline SmithForm smith_normal_form(const Matrix& m, unsigned track = kTrackAll) {
  const std::size_t rows = m.rows(), cols = m.cols();
  const bool tl = track & kTrackLeft, tr = track & kTrackRight;
  SmithForm s;
  Matrix a = m;
  Matrix L = tl ? Matrix::identity(rows) : Matrix();
  Matrix Li = tl ? Matrix::identity(rows) : Matrix();
  Matrix R = tr ? Matrix::identity(cols) : Matrix();
  Matrix Ri = tr ? Matrix::identity(cols) : Matrix();

  auto row_add = [&](std::size_t dst, std::size_t src, const Integer& q) {  // row dst += q row src
    a.add_row(dst, src, q);
    if (tl) {
      L.add_row(dst, src, q);
      Li.add_col(src, dst, -q);
    }
  };
  auto row_swap = [&](std::size_t x, std::size_t y) {
    a.swap_rows(x, y);
    if (tl) {
      L.swap_rows(x, y);
      Li.swap_cols(x, y);
    }
  };
  auto row_neg = [&](std::size_t x) {
    a.negate_row(x);
    if (tl) {
      L.negate_row(x);
      Li.negate_col(x);
    }
  };
  auto col_add = [&](std::size_t dst, std::size_t src, const Integer& q) {  // col dst += q col src
    a.add_col(dst, src, q);
    if (tr) {
      R.add_col(dst, src, q);
      Ri.add_row(src, dst, -q);
    }
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    a.swap_cols(x, y);
    if (tr) {
      R.swap_cols(x, y);
      Ri.swap_rows(x, y);
    }
  };

  const std::size_t lim = std::min(rows, cols);
  std::size_t t = 0;
  for (; t < lim; ++t) {
    // pivot: smallest nonzero absolute value in the trailing block
    bool found = false;
    std::size_t pi = 0, pj = 0;
    Integer best;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        const Integer& x = a(i, j);
        if (x != 0 && (!found || abs(x) < best)) {
          found = true;
          best = abs(x);
          pi = i;
          pj = j;
        }
      }
    if (!found) break;
    row_swap(t, pi);
    col_swap(t, pj);
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        row_add(i, t, -fdiv(a(i, t), a(t, t)));
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        col_add(j, t, -fdiv(a(t, j), a(t, t)));
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) {
        // move the smallest remainder into the pivot position
        std::size_t bi = t, bj = t;
        Integer b = abs(a(t, t));
        for (std::size_t i = t + 1; i < rows; ++i)
          if (a(i, t) != 0 && abs(a(i, t)) < b) b = abs(a(i, t)), bi = i, bj = t;
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a(t, j) != 0 && abs(a(t, j)) < b) b = abs(a(t, j)), bi = t, bj = j;
        row_swap(t, bi);
        col_swap(t, bj);
        continue;
      }
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a(i, j) != 0 && mod(a(i, j), abs(a(t, t))) != 0) {
            row_add(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (a(t, t) < 0) row_neg(t);
  }
  s.rank = t;
  s.diagonal = std::move(a);
  s.left = std::move(L);
  s.left_inv = std::move(Li);
  s.right = std::move(R);
  s.right_inv = std::move(Ri);
  return s;
}

/// Basis (as columns) of the sublattice of Z^rows spanned by the columns of gens.
inline Matrix lattice_basis(const Matrix& gens) {
  const std::size_t n = gens.rows();
  if (gens.cols() == 0) return Matrix(n, 0);
  // column span of gens == column span of Li * D
  SmithForm s = smith_normal_form(gens, kTrackLeft);
  Matrix b(n, s.rank);
  for (std::size_t k = 0; k < s.rank; ++k)
    for (std::size_t i = 0; i < n; ++i) b(i, k) = s.left_inv(i, k) * s.diagonal(k, k);
  return b;
}

/// Basis (as columns) of the kernel {x : a x = 0}.
inline Matrix integer_kernel(const Matrix& a) {
  const std::size_t n = a.cols();
  SmithForm s = smith_normal_form(a, kTrackRight);
  Matrix k(n, n - s.rank);
  for (std::size_t c = s.rank; c < n; ++c)
    for (std::size_t i = 0; i < n; ++i) k(i, c - s.rank) = s.right(i, c);
  return k;
}

/// A full-rank lattice basis together with a solver for coordinates.
class LatticeSolver {
 public:
  LatticeSolver() = default;
  explicit LatticeSolver(Matrix basis) : basis_(std::move(basis)), smith_(smith_normal_form(basis_, kTrackAll)) {
    if (smith_.rank != basis_.cols()) throw AlgebraError("lattice basis is not linearly independent");
  }

  const Matrix& basis() const { return basis_; }
  std::size_t rank() const { return basis_.cols(); }

  /// Coordinates u with basis * u == x, or false if x is not in the lattice.
  bool solve(const Vec& x, Vec& u) const {
    Vec y = smith_.left.apply(x);
    const std::size_t r = basis_.cols();
    Vec z(r);
    for (std::size_t i = 0; i < r; ++i) {
      const Integer& d = smith_.diagonal(i, i);
      if (mod(y[i], d) != 0) return false;
      z[i] = y[i] / d;
    }
    for (std::size_t i = r; i < y.size(); ++i)
      if (y[i] != 0) return false;
    u = smith_.right.apply(z);
    return true;
  }

  bool contains(const Vec& x) const {
    Vec u;
    return solve(x, u);
  }

 private:
  Matrix basis_;
  SmithForm smith_;
};

}  // namespace tamloday
