#pragma once

// Finitely generated subgroups of Q^m in a canonical Hermite-style echelon
// form: pivots positive, entries above each pivot reduced into [0, pivot),
// zero rows stripped. Two lattices are equal iff their canonical matrices are
// equal. Rational entries are supported by clearing denominators internally;
// HNF commutes with scaling, so the canonical form does not depend on the
// generating set used.
//
// Also hosts the integer Smith normal form and the SNF-based integer row
// kernel that intersection, index and relation-word computations build on.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "rational.hpp"

namespace iwa {

struct RowHnf {
  MatZ h;       // h = u * input, echelon-canonical, zero rows at the bottom
  MatZ u;       // unimodular row transform
  std::size_t rank = 0;
};

inline RowHnf hnf_rows(MatZ m) {
  const std::size_t R = m.rows(), C = m.cols();
  MatZ u = MatZ::identity(R);

  auto row_sub = [&](std::size_t dst, std::size_t src, const Int& q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < C; ++j) m(dst, j) -= q * m(src, j);
    for (std::size_t j = 0; j < R; ++j) u(dst, j) -= q * u(src, j);
  };
  auto row_swap = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (std::size_t j = 0; j < C; ++j) std::swap(m(x, j), m(y, j));
    for (std::size_t j = 0; j < R; ++j) std::swap(u(x, j), u(y, j));
  };
  auto row_negate = [&](std::size_t x) {
    for (std::size_t j = 0; j < C; ++j) m(x, j) = -m(x, j);
    for (std::size_t j = 0; j < R; ++j) u(x, j) = -u(x, j);
  };

  std::size_t pr = 0;
  for (std::size_t pc = 0; pc < C && pr < R; ++pc) {
    // Euclidean sweeps until at most one nonzero entry remains at or below pr.
    while (true) {
      std::size_t best = R;
      for (std::size_t i = pr; i < R; ++i)
        if (m(i, pc) != 0 && (best == R || abs_int(m(i, pc)) < abs_int(m(best, pc)))) best = i;
      if (best == R) break;
      row_swap(pr, best);
      bool leftover = false;
      for (std::size_t i = pr + 1; i < R; ++i) {
        if (m(i, pc) == 0) continue;
        row_sub(i, pr, m(i, pc) / m(pr, pc));
        if (m(i, pc) != 0) leftover = true;
      }
      if (!leftover) break;
    }
    if (m(pr, pc) == 0) continue;
    if (m(pr, pc) < 0) row_negate(pr);
    for (std::size_t i = 0; i < pr; ++i) row_sub(i, pr, floor_div(m(i, pc), m(pr, pc)));
    ++pr;
  }
  return RowHnf{std::move(m), std::move(u), pr};
}

struct Smith {
  MatZ u, d, v; // d = u * input * v, diagonal, d_i >= 0, d_i | d_{i+1}
};

inline Smith smith_normal_form(MatZ m) {
  const std::size_t R = m.rows(), C = m.cols();
  MatZ u = MatZ::identity(R), v = MatZ::identity(C);

  auto row_sub = [&](std::size_t dst, std::size_t src, const Int& q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < C; ++j) m(dst, j) -= q * m(src, j);
    for (std::size_t j = 0; j < R; ++j) u(dst, j) -= q * u(src, j);
  };
  auto col_sub = [&](std::size_t dst, std::size_t src, const Int& q) {
    if (q == 0) return;
    for (std::size_t i = 0; i < R; ++i) m(i, dst) -= q * m(i, src);
    for (std::size_t i = 0; i < C; ++i) v(i, dst) -= q * v(i, src);
  };
  auto row_swap = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (std::size_t j = 0; j < C; ++j) std::swap(m(x, j), m(y, j));
    for (std::size_t j = 0; j < R; ++j) std::swap(u(x, j), u(y, j));
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (std::size_t i = 0; i < R; ++i) std::swap(m(i, x), m(i, y));
    for (std::size_t i = 0; i < C; ++i) std::swap(v(i, x), v(i, y));
  };
  auto row_negate = [&](std::size_t x) {
    for (std::size_t j = 0; j < C; ++j) m(x, j) = -m(x, j);
    for (std::size_t j = 0; j < R; ++j) u(x, j) = -u(x, j);
  };

  const std::size_t T = R < C ? R : C;
  for (std::size_t t = 0; t < T; ++t) {
    while (true) {
      std::size_t bi = R, bj = C;
      for (std::size_t i = t; i < R; ++i)
        for (std::size_t j = t; j < C; ++j)
          if (m(i, j) != 0 && (bi == R || abs_int(m(i, j)) < abs_int(m(bi, bj)))) { bi = i; bj = j; }
      if (bi == R) { t = T; break; } // remaining block is zero
      row_swap(t, bi);
      col_swap(t, bj);

      bool dirty = false;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (m(i, t) == 0) continue;
        row_sub(i, t, m(i, t) / m(t, t));
        if (m(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (m(t, j) == 0) continue;
        col_sub(j, t, m(t, j) / m(t, t));
        if (m(t, j) != 0) dirty = true;
      }
      if (dirty) continue;

      // pivot divides the remaining block, else pull a bad row up and retry
      bool fixed = true;
      for (std::size_t i = t + 1; i < R && fixed; ++i)
        for (std::size_t j = t + 1; j < C && fixed; ++j)
          if (m(i, j) % m(t, t) != 0) {
            row_sub(t, i, Int(-1)); // add row i to row t
            fixed = false;
          }
      if (fixed) break;
    }
    if (t >= T) break;
    if (m(t, t) < 0) row_negate(t);
  }
  return Smith{std::move(u), std::move(m), std::move(v)};
}

inline std::size_t smith_rank(const Smith& s) {
  std::size_t r = 0;
  const std::size_t T = s.d.rows() < s.d.cols() ? s.d.rows() : s.d.cols();
  while (r < T && s.d(r, r) != 0) ++r;
  return r;
}

// Basis of {x in Z^rows : x * m = 0}; the rows of the SNF transform past the
// rank. Deterministic given the input.
inline std::vector<VecZ> integer_row_kernel(const MatZ& m) {
  Smith s = smith_normal_form(m);
  const std::size_t r = smith_rank(s);
  std::vector<VecZ> out;
  for (std::size_t i = r; i < m.rows(); ++i) out.push_back(s.u.row(i));
  return out;
}

class ZLattice {
public:
  static ZLattice from_generators(std::size_t ambient, const std::vector<VecQ>& gens) {
    for (const auto& g : gens)
      if (g.size() != ambient) throw DimensionError("generator length does not match ambient dimension");
    Int scale = 1;
    for (const auto& g : gens) scale = lcm(scale, common_denominator(g));
    MatZ m(gens.size(), ambient);
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = 0; j < ambient; ++j) {
        Rat v = gens[i][j] * Rat(scale);
        m(i, j) = rat_num(v);
      }
    RowHnf h = hnf_rows(std::move(m));
    std::vector<VecQ> rows(h.rank, VecQ(ambient));
    for (std::size_t i = 0; i < h.rank; ++i)
      for (std::size_t j = 0; j < ambient; ++j) rows[i][j] = Rat(h.h(i, j), scale);
    return ZLattice(ambient, std::move(rows));
  }

  static ZLattice standard(std::size_t m) {
    std::vector<VecQ> rows(m, VecQ(m, Rat(0)));
    for (std::size_t i = 0; i < m; ++i) rows[i][i] = 1;
    return ZLattice(m, std::move(rows));
  }

  static ZLattice zero(std::size_t m) { return ZLattice(m, {}); }

  std::size_t ambient() const { return ambient_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<VecQ>& basis() const { return rows_; }
  const VecQ& basis_row(std::size_t i) const { return rows_[i]; }

  friend bool operator==(const ZLattice& x, const ZLattice& y) {
    return x.ambient_ == y.ambient_ && x.rows_ == y.rows_;
  }
  friend bool operator!=(const ZLattice& x, const ZLattice& y) { return !(x == y); }

  // Z-membership by echelon back-substitution with an integrality check.
  bool contains(const VecQ& v) const { return reduce(v, /*require_integral=*/true).has_value(); }

  // Rational coordinates of v in the basis, if v lies in the Q-span.
  std::optional<VecQ> coords_of(const VecQ& v) const { return reduce(v, /*require_integral=*/false); }

  bool is_sublattice_of(const ZLattice& super) const {
    if (ambient_ != super.ambient_) throw DimensionError("ambient dimension mismatch");
    for (const auto& r : rows_)
      if (!super.contains(r)) return false;
    return true;
  }

  ZLattice sum(const ZLattice& other) const {
    if (ambient_ != other.ambient_) throw DimensionError("ambient dimension mismatch");
    std::vector<VecQ> gens = rows_;
    gens.insert(gens.end(), other.rows_.begin(), other.rows_.end());
    return from_generators(ambient_, gens);
  }

  ZLattice scaled(const Rat& s) const {
    std::vector<VecQ> gens;
    gens.reserve(rows_.size());
    for (const auto& r : rows_) gens.push_back(scale_vec(s, r));
    return from_generators(ambient_, gens);
  }

  // Computed via the SNF-based integer kernel so all arithmetic stays integral.
  ZLattice intersect(const ZLattice& other) const {
    if (ambient_ != other.ambient_) throw DimensionError("ambient dimension mismatch");
    if (rank() == 0 || other.rank() == 0) return zero(ambient_);
    std::vector<VecQ> stacked = rows_;
    for (const auto& r : other.rows_) stacked.push_back(scale_vec(Rat(-1), r));
    Int scale = 1;
    MatZ c = clear_denominators(MatQ::from_rows(stacked, ambient_), scale);
    std::vector<VecQ> gens;
    for (const auto& z : integer_row_kernel(c)) {
      VecQ v(ambient_, Rat(0));
      for (std::size_t i = 0; i < rank(); ++i)
        for (std::size_t j = 0; j < ambient_; ++j) v[j] += Rat(z[i]) * rows_[i][j];
      gens.push_back(std::move(v));
    }
    return from_generators(ambient_, gens);
  }

  // Smallest lattice containing both this lattice and every integer vector of
  // its rational span. For integral lattices this is the classical saturation;
  // it is idempotent and contains the input with finite index in general.
  ZLattice saturate() const;

  // [super : this]; nullopt when the rank drops (infinite index). Throws
  // NotSublatticeError when this is not contained in super.
  std::optional<Int> index_in(const ZLattice& super) const {
    if (ambient_ != super.ambient_) throw DimensionError("ambient dimension mismatch");
    std::vector<VecQ> coord_rows;
    for (const auto& r : rows_) {
      auto c = super.reduce(r, /*require_integral=*/true);
      if (!c) throw NotSublatticeError("lattice is not contained in the claimed superlattice");
      coord_rows.push_back(std::move(*c));
    }
    if (rank() < super.rank()) return std::nullopt;
    // Index as the product of the SNF diagonal of the coordinate matrix.
    Int scale = 1;
    MatZ c = clear_denominators(MatQ::from_rows(coord_rows, super.rank()), scale); // scale == 1 here
    Smith s = smith_normal_form(std::move(c));
    Int idx = 1;
    for (std::size_t i = 0; i < super.rank(); ++i) idx *= s.d(i, i);
    if (idx == 0) throw std::logic_error("full-rank coordinate matrix with zero determinant");
    return idx;
  }

private:
  ZLattice(std::size_t ambient, std::vector<VecQ> rows) : ambient_(ambient), rows_(std::move(rows)) {}

  std::optional<VecQ> reduce(const VecQ& v, bool require_integral) const {
    if (v.size() != ambient_) throw DimensionError("vector length does not match ambient dimension");
    VecQ rem = v;
    VecQ coords(rows_.size(), Rat(0));
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      std::size_t pc = 0;
      while (pc < ambient_ && rows_[i][pc] == 0) ++pc;
      Rat q = rem[pc] / rows_[i][pc];
      if (require_integral && !is_integral(q)) return std::nullopt;
      if (q != 0)
        for (std::size_t j = pc; j < ambient_; ++j) rem[j] -= q * rows_[i][j];
      coords[i] = std::move(q);
    }
    if (!is_zero_vec(rem)) return std::nullopt;
    return coords;
  }

  std::size_t ambient_;
  std::vector<VecQ> rows_;
};

// Lattice points of a rational subspace: {v in L : v in span(span_rows)}.
inline ZLattice subspace_intersect_lattice(const std::vector<VecQ>& span_rows, const ZLattice& l) {
  const std::size_t m = l.ambient();
  for (const auto& r : span_rows)
    if (r.size() != m) throw DimensionError("subspace row length mismatch");
  MatQ w = MatQ::from_rows(span_rows, m);
  std::vector<VecQ> normals = kernel_basis(w); // span(W) = {v : v . n = 0 for all n}
  if (normals.empty()) return l;               // full space
  MatQ bl = MatQ::from_rows(l.basis(), m);
  MatQ n(m, normals.size());
  for (std::size_t j = 0; j < normals.size(); ++j)
    for (std::size_t i = 0; i < m; ++i) n(i, j) = normals[j][i];
  Int scale = 1;
  MatZ cond = clear_denominators(bl * n, scale);
  std::vector<VecQ> gens;
  for (const auto& z : integer_row_kernel(cond)) {
    VecQ v(m, Rat(0));
    for (std::size_t i = 0; i < l.rank(); ++i)
      for (std::size_t j = 0; j < m; ++j) v[j] += Rat(z[i]) * l.basis_row(i)[j];
    gens.push_back(std::move(v));
  }
  return ZLattice::from_generators(m, gens);
}

inline ZLattice ZLattice::saturate() const {
  if (rank() == 0) return *this;
  ZLattice span_points = subspace_intersect_lattice(rows_, standard(ambient_));
  return span_points.sum(*this);
}

// Stability of a lattice under the column action of a rational matrix:
// m * v stays in the lattice for every basis vector v.
inline bool lattice_stable_under(const ZLattice& l, const MatQ& m) {
  if (m.rows() != l.ambient() || m.cols() != l.ambient())
    throw DimensionError("matrix must be square of the ambient dimension");
  for (const auto& r : l.basis())
    if (!l.contains(matvec(m, r))) return false;
  return true;
}

// Stability of a rational subspace: m * W is contained in span(W).
inline bool subspace_stable_under(const std::vector<VecQ>& w_rows, const MatQ& m) {
  if (w_rows.empty()) return true;
  const std::size_t n = w_rows.front().size();
  if (m.rows() != n || m.cols() != n)
    throw DimensionError("matrix must be square of the ambient dimension");
  std::vector<VecQ> all = w_rows;
  for (const auto& r : w_rows) all.push_back(matvec(m, r));
  return rank_of_rows(all, n) == rank_of_rows(w_rows, n);
}

} // namespace iwa
