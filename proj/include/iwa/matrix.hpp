#pragma once

// Small dense matrices plus the exact rational elimination toolkit (rank,
// kernel, solve, determinant, inverse) everything downstream relies on.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace iwa {

template <typename T>
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : r_(r), c_(c), a_(r * c) {}
  Matrix(std::size_t r, std::size_t c, const T& fill) : r_(r), c_(c), a_(r * c, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw DimensionError("row length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }

  T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(a_.begin() + i * c_, a_.begin() + (i + 1) * c_);
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_;
  }
  friend bool operator!=(const Matrix& x, const Matrix& y) { return !(x == y); }

  Matrix operator+(const Matrix& o) const {
    check_same_shape(o);
    Matrix m = *this;
    for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] += o.a_[k];
    return m;
  }
  Matrix operator-(const Matrix& o) const {
    check_same_shape(o);
    Matrix m = *this;
    for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] -= o.a_[k];
    return m;
  }
  Matrix operator*(const Matrix& o) const {
    if (c_ != o.r_) throw DimensionError("matrix product shape mismatch");
    Matrix m(r_, o.c_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t k = 0; k < c_; ++k) {
        if ((*this)(i, k) == T(0)) continue;
        for (std::size_t j = 0; j < o.c_; ++j) m(i, j) += (*this)(i, k) * o(k, j);
      }
    return m;
  }
  friend Matrix operator*(const T& s, const Matrix& m) {
    Matrix out = m;
    for (auto& x : out.a_) x *= s;
    return out;
  }

  Matrix transpose() const {
    Matrix m(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!(x == T(0))) return false;
    return true;
  }

private:
  void check_same_shape(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw DimensionError("matrix shape mismatch");
  }

  std::size_t r_ = 0, c_ = 0;
  std::vector<T> a_;
};

using MatQ = Matrix<Rat>;
using MatZ = Matrix<Int>;

inline MatQ to_rational(const MatZ& m) {
  MatQ out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Rat(m(i, j));
  return out;
}

// Integral matrix scale*m together with the scale used.
inline MatZ clear_denominators(const MatQ& m, Int& scale) {
  scale = 1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) scale = lcm(scale, rat_den(m(i, j)));
  MatZ out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Rat v = m(i, j) * Rat(scale);
      out(i, j) = rat_num(v);
    }
  return out;
}

// In-place reduced row echelon form; returns the pivot columns.
inline std::vector<std::size_t> rref_inplace(MatQ& a) {
  std::vector<std::size_t> pivots;
  std::size_t pr = 0;
  for (std::size_t pc = 0; pc < a.cols() && pr < a.rows(); ++pc) {
    std::size_t sel = a.rows();
    for (std::size_t i = pr; i < a.rows(); ++i)
      if (a(i, pc) != 0) { sel = i; break; }
    if (sel == a.rows()) continue;
    if (sel != pr)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(sel, j), a(pr, j));
    Rat inv = Rat(1) / a(pr, pc);
    for (std::size_t j = pc; j < a.cols(); ++j) a(pr, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == pr || a(i, pc) == 0) continue;
      Rat f = a(i, pc);
      for (std::size_t j = pc; j < a.cols(); ++j) a(i, j) -= f * a(pr, j);
    }
    pivots.push_back(pc);
    ++pr;
  }
  return pivots;
}

inline std::size_t rank(MatQ a) { return rref_inplace(a).size(); }

inline std::size_t rank_of_rows(const std::vector<VecQ>& rows, std::size_t cols) {
  return rank(MatQ::from_rows(rows, cols));
}

// Basis of the right kernel {x : a*x = 0}.
inline std::vector<VecQ> kernel_basis(MatQ a) {
  const std::size_t n = a.cols();
  std::vector<std::size_t> pivots = rref_inplace(a);
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<VecQ> basis;
  for (std::size_t j = 0; j < n; ++j) {
    if (is_pivot[j]) continue;
    VecQ v(n, Rat(0));
    v[j] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -a(k, j);
    basis.push_back(std::move(v));
  }
  return basis;
}

// One solution of a*x = b, if consistent (free variables set to zero).
inline std::optional<VecQ> solve_linear(const MatQ& a, const VecQ& b) {
  if (b.size() != a.rows()) throw DimensionError("rhs length mismatch");
  MatQ aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  std::vector<std::size_t> pivots = rref_inplace(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt; // row (0 ... 0 | 1)
  VecQ x(a.cols(), Rat(0));
  for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug(k, a.cols());
  return x;
}

inline Rat determinant(MatQ a) {
  if (a.rows() != a.cols()) throw DimensionError("determinant of non-square matrix");
  Rat det(1);
  for (std::size_t c = 0; c < a.cols(); ++c) {
    std::size_t sel = a.rows();
    for (std::size_t i = c; i < a.rows(); ++i)
      if (a(i, c) != 0) { sel = i; break; }
    if (sel == a.rows()) return Rat(0);
    if (sel != c) {
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(sel, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    Rat inv = Rat(1) / a(c, c);
    for (std::size_t i = c + 1; i < a.rows(); ++i) {
      if (a(i, c) == 0) continue;
      Rat f = a(i, c) * inv;
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

inline std::optional<MatQ> inverse_of(const MatQ& a) {
  if (a.rows() != a.cols()) throw DimensionError("inverse of non-square matrix");
  const std::size_t n = a.rows();
  MatQ aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  std::vector<std::size_t> pivots = rref_inplace(aug);
  if (pivots.size() != n || pivots.back() != n - 1) return std::nullopt;
  MatQ inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

// Column action m*v.
inline VecQ matvec(const MatQ& m, const VecQ& v) {
  if (v.size() != m.cols()) throw DimensionError("matrix/vector size mismatch");
  VecQ out(m.rows(), Rat(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

inline VecQ scale_vec(const Rat& s, const VecQ& v) {
  VecQ out = v;
  for (auto& x : out) x *= s;
  return out;
}

inline bool is_zero_vec(const VecQ& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

} // namespace iwa
