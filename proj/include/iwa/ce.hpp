#pragma once

// Finite-dimensional bigraded differential graded algebra over Q on degree-one
// generators: the de Rham model of a nilmanifold. Monomials are index subsets
// in lexicographic order; differentials are stored per generator as sparse
// coefficient lists and extended by the graded Leibniz rule. d^2 = 0 is a
// constructor invariant. Betti numbers, the filtration spectral sequence
// pages, and closed/exact certificates are all exact Q-rank computations.
//
// Conjugate generators are independent generators of a rational dg-algebra;
// no actual complex conjugation is performed anywhere.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "rational.hpp"

namespace iwa {

struct CEGenerator {
  std::string name;
  int p = 1, q = 0; // bidegree, p + q == 1
};

// One summand of a generator differential: coeff * xi_i ^ xi_j, i < j.
struct DTerm {
  Rat coeff;
  std::size_t i = 0, j = 0;
};

struct JacobiViolation : Error {
  using Error::Error;
};
struct NotNilpotentError : Error {
  using Error::Error;
};

class CEAlgebra;

struct DGElement {
  std::size_t degree = 0;
  VecQ coeff; // over the monomial basis of that degree

  bool is_zero() const { return is_zero_vec(coeff); }
};

class CEAlgebra {
public:
  using Mask = std::uint32_t;

  static CEAlgebra create(std::vector<CEGenerator> gens, std::vector<std::vector<DTerm>> dgens) {
    // the dense per-degree differentials grow like binom(n, n/2)^2
    if (gens.empty() || gens.size() > 12) throw Error("generator count out of range (1..12)");
    if (dgens.size() != gens.size()) throw Error("differential table length mismatch");
    for (const auto& g : gens)
      if (g.p + g.q != 1 || g.p < 0 || g.q < 0) throw Error("generators must have total degree one");
    for (auto& terms : dgens)
      for (auto& t : terms) {
        if (t.i >= gens.size() || t.j >= gens.size()) throw Error("differential references unknown generator");
        if (t.i == t.j) throw Error("degenerate wedge in differential");
        if (t.i > t.j) { std::swap(t.i, t.j); t.coeff = -t.coeff; }
      }
    CEAlgebra a(std::move(gens), std::move(dgens));
    for (std::size_t k = 0; k + 1 < a.n(); ++k)
      if (!(a.d_[k + 1] * a.d_[k]).is_zero()) throw Error("differential does not square to zero");
    return a;
  }

  // Chevalley-Eilenberg algebra of a rational nilpotent Lie algebra given by
  // structure constants c[k](i,j) = coefficient of e_k in [e_i, e_j]:
  // d xi^k = - sum_{i<j} c^k_{ij} xi^i xi^j. Jacobi and nilpotency are checked.
  static CEAlgebra from_nilpotent_algebra(const std::vector<MatQ>& c) {
    const std::size_t n = c.size();
    if (n == 0) throw Error("empty structure constant table");
    for (const auto& m : c)
      if (m.rows() != n || m.cols() != n) throw DimensionError("structure constant shape mismatch");
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (c[k](i, j) != -c[k](j, i)) throw Error("structure constants are not antisymmetric");
    check_jacobi(c);
    check_nilpotent(c);

    std::vector<CEGenerator> gens(n);
    std::vector<std::vector<DTerm>> dgens(n);
    for (std::size_t k = 0; k < n; ++k) {
      gens[k] = CEGenerator{"xi" + std::to_string(k + 1), 1, 0};
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (c[k](i, j) != 0) dgens[k].push_back(DTerm{-c[k](i, j), i, j});
    }
    return create(std::move(gens), std::move(dgens));
  }

  // The bigraded de Rham model of the Iwasawa manifold: generators alpha,
  // beta, gamma of bidegree (1,0) and their bars of bidegree (0,1), with
  // d gamma = sign * alpha beta and d gammabar = sign * alphabar betabar.
  static CEAlgebra iwasawa_model(int sign = +1) {
    std::vector<CEGenerator> gens{{"alpha", 1, 0},    {"beta", 1, 0},    {"gamma", 1, 0},
                                  {"alphabar", 0, 1}, {"betabar", 0, 1}, {"gammabar", 0, 1}};
    std::vector<std::vector<DTerm>> dgens(6);
    dgens[2] = {DTerm{Rat(sign), 0, 1}};
    dgens[5] = {DTerm{Rat(sign), 3, 4}};
    return create(std::move(gens), std::move(dgens));
  }

  std::size_t n() const { return gens_.size(); }
  const std::vector<CEGenerator>& generators() const { return gens_; }
  std::size_t dim(std::size_t degree) const { return degree <= n() ? monos_[degree].size() : 0; }
  Mask monomial(std::size_t degree, std::size_t idx) const { return monos_[degree][idx]; }
  const MatQ& d_matrix(std::size_t degree) const { return d_[degree]; }

  std::pair<int, int> bidegree(Mask m) const {
    int p = 0, q = 0;
    for (std::size_t i = 0; i < n(); ++i)
      if (m & (Mask(1) << i)) { p += gens_[i].p; q += gens_[i].q; }
    return {p, q};
  }

  DGElement zero(std::size_t degree) const { return DGElement{degree, VecQ(dim(degree), Rat(0))}; }

  DGElement generator_element(std::size_t i) const {
    DGElement e = zero(1);
    e.coeff[index_of(1, Mask(1) << i)] = 1;
    return e;
  }

  // Wedge product of basis monomials with sign; zero on repeated factors.
  DGElement wedge(const DGElement& x, const DGElement& y) const {
    DGElement out{x.degree + y.degree, VecQ(dim(x.degree + y.degree), Rat(0))};
    if (out.coeff.empty()) return out;
    for (std::size_t ix = 0; ix < x.coeff.size(); ++ix) {
      if (x.coeff[ix] == 0) continue;
      Mask mx = monos_[x.degree][ix];
      for (std::size_t iy = 0; iy < y.coeff.size(); ++iy) {
        if (y.coeff[iy] == 0) continue;
        Mask my = monos_[y.degree][iy];
        if (mx & my) continue;
        int s = merge_sign(mx, my);
        out.coeff[index_of(x.degree + y.degree, mx | my)] += Rat(s) * x.coeff[ix] * y.coeff[iy];
      }
    }
    return out;
  }

  DGElement wedge_of(const std::vector<std::size_t>& gen_indices) const {
    DGElement acc = generator_element(gen_indices.at(0));
    for (std::size_t k = 1; k < gen_indices.size(); ++k) acc = wedge(acc, generator_element(gen_indices[k]));
    return acc;
  }

  DGElement d(const DGElement& x) const {
    if (x.degree >= n()) return DGElement{x.degree + 1, {}};
    DGElement out = zero(x.degree + 1);
    const MatQ& m = d_[x.degree];
    for (std::size_t j = 0; j < x.coeff.size(); ++j) {
      if (x.coeff[j] == 0) continue;
      for (std::size_t i = 0; i < out.coeff.size(); ++i) out.coeff[i] += m(i, j) * x.coeff[j];
    }
    return out;
  }

  bool is_closed(const DGElement& x) const { return x.degree >= n() || d(x).is_zero(); }

  // Solves d y = x exactly; nullopt when x is not exact.
  std::optional<DGElement> primitive_of(const DGElement& x) const {
    if (x.degree == 0) return x.is_zero() ? std::optional<DGElement>(zero(0)) : std::nullopt;
    auto y = solve_linear(d_[x.degree - 1], x.coeff);
    if (!y) return std::nullopt;
    return DGElement{x.degree - 1, std::move(*y)};
  }

  std::vector<std::size_t> betti() const {
    std::vector<std::size_t> b(n() + 1);
    std::vector<std::size_t> rk(n() + 1, 0);
    for (std::size_t k = 0; k < n(); ++k) rk[k] = rank(d_[k]);
    for (std::size_t k = 0; k <= n(); ++k) b[k] = dim(k) - rk[k] - (k ? rk[k - 1] : 0);
    return b;
  }

  // True when d = del + delbar with bidegrees (1,0) and (0,1); the spectral
  // sequence below requires it.
  bool differential_is_bigraded() const {
    for (std::size_t g = 0; g < n(); ++g)
      for (const auto& t : dgens_[g]) {
        auto [p, q] = bidegree((Mask(1) << t.i) | (Mask(1) << t.j));
        int dp = p - gens_[g].p, dq = q - gens_[g].q;
        if (!((dp == 1 && dq == 0) || (dp == 0 && dq == 1))) return false;
      }
    return true;
  }

  // Page dimensions E_r^{p,q} of the spectral sequence of the filtration by p,
  // computed by the direct subquotient-rank formula
  //   E_r = Z_r / (Z_{r-1}^{p+1,q-1} + d Z_{r-1}^{p-r+1,q+r-2}),
  //   Z_r^{p,q} = {x in F^p A^{p+q} : d x in F^{p+r}}.
  // pages[r] is indexed as dim[p][q]; r runs 1..rmax.
  std::vector<std::vector<std::vector<std::size_t>>> frolicher_pages(std::size_t rmax) const {
    if (!differential_is_bigraded())
      throw Error("differential has components outside bidegrees (1,0) and (0,1)");
    int maxp = 0, maxq = 0;
    for (const auto& g : gens_) { maxp += g.p; maxq += g.q; }

    std::vector<std::vector<std::vector<std::size_t>>> pages;
    for (std::size_t r = 1; r <= rmax; ++r) {
      std::vector<std::vector<std::size_t>> page(maxp + 1, std::vector<std::size_t>(maxq + 1, 0));
      for (int p = 0; p <= maxp; ++p)
        for (int q = 0; q <= maxq; ++q) {
          if (p + q > static_cast<int>(n())) continue;
          auto znum = z_space(static_cast<int>(r), p, q);
          if (znum.empty()) continue;
          std::vector<VecQ> den = z_space(static_cast<int>(r) - 1, p + 1, q - 1);
          for (const auto& v : z_space(static_cast<int>(r) - 1, p - static_cast<int>(r) + 1,
                                       q + static_cast<int>(r) - 2)) {
            DGElement dv = d(DGElement{static_cast<std::size_t>(p + q - 1), v});
            den.push_back(dv.coeff);
          }
          const std::size_t dden = den.empty() ? 0 : rank_of_rows(den, dim(p + q));
          if (dden > znum.size()) throw std::logic_error("boundary space escapes the cycle space");
          page[p][q] = znum.size() - dden;
        }
      pages.push_back(std::move(page));
    }
    return pages;
  }

private:
  CEAlgebra(std::vector<CEGenerator> gens, std::vector<std::vector<DTerm>> dgens)
      : gens_(std::move(gens)), dgens_(std::move(dgens)) {
    build_monomials();
    build_differentials();
  }

  static void check_jacobi(const std::vector<MatQ>& c) {
    const std::size_t n = c.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k)
          for (std::size_t l = 0; l < n; ++l) {
            Rat s(0);
            for (std::size_t m = 0; m < n; ++m)
              s += c[m](i, j) * c[l](m, k) + c[m](j, k) * c[l](m, i) + c[m](k, i) * c[l](m, j);
            if (s != 0) throw JacobiViolation("Jacobi identity fails on basis triple");
          }
  }

  static void check_nilpotent(const std::vector<MatQ>& c) {
    const std::size_t n = c.size();
    std::vector<VecQ> current;
    for (std::size_t i = 0; i < n; ++i) {
      VecQ e(n, Rat(0));
      e[i] = 1;
      current.push_back(std::move(e));
    }
    for (std::size_t step = 0; step <= n + 1; ++step) {
      if (current.empty()) return;
      std::vector<VecQ> next;
      for (std::size_t i = 0; i < n; ++i)
        for (const auto& v : current) {
          VecQ w(n, Rat(0));
          bool nonzero = false;
          for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t j = 0; j < n; ++j) w[k] += c[k](i, j) * v[j];
            nonzero = nonzero || w[k] != 0;
          }
          if (nonzero) next.push_back(std::move(w));
        }
      // keep a basis so the series stays small
      if (!next.empty()) {
        MatQ m = MatQ::from_rows(next, n);
        std::size_t r = rref_inplace(m).size();
        next.clear();
        for (std::size_t i = 0; i < r; ++i) next.push_back(m.row(i));
      }
      current = std::move(next);
    }
    throw NotNilpotentError("lower central series does not terminate");
  }

  void build_monomials() {
    const std::size_t N = n();
    monos_.assign(N + 1, {});
    index_.assign(N + 1, {});
    for (std::size_t k = 0; k <= N; ++k) {
      // subsets of size k in lexicographic order of the index tuple
      std::vector<std::size_t> idx(k);
      for (std::size_t i = 0; i < k; ++i) idx[i] = i;
      while (true) {
        Mask m = 0;
        for (auto i : idx) m |= Mask(1) << i;
        index_[k][m] = monos_[k].size();
        monos_[k].push_back(m);
        if (k == 0) break;
        int i = static_cast<int>(k) - 1;
        while (i >= 0 && idx[i] == N - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
  }

  std::size_t index_of(std::size_t degree, Mask m) const { return index_[degree].at(m); }

  // Sign of sorting the concatenation of two disjoint ascending index sets.
  static int merge_sign(Mask a, Mask b) {
    int inversions = 0;
    for (std::size_t j = 0; j < 32; ++j) {
      if (!(b & (Mask(1) << j))) continue;
      Mask higher = a >> (j + 1);
      inversions += __builtin_popcount(higher);
    }
    return inversions % 2 == 0 ? 1 : -1;
  }

  void build_differentials() {
    const std::size_t N = n();
    d_.clear();
    for (std::size_t k = 0; k < N; ++k) {
      MatQ m(dim(k + 1), dim(k));
      for (std::size_t col = 0; col < dim(k); ++col) {
        Mask mono = monos_[k][col];
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < N; ++i)
          if (mono & (Mask(1) << i)) idx.push_back(i);
        for (std::size_t pos = 0; pos < idx.size(); ++pos) {
          const int lead = pos % 2 == 0 ? 1 : -1; // (-1)^(pos) passing d over degree-one factors
          Mask rest = mono & ~(Mask(1) << idx[pos]);
          for (const auto& t : dgens_[idx[pos]]) {
            Mask pair = (Mask(1) << t.i) | (Mask(1) << t.j);
            if (rest & pair) continue;
            // order: (i, j) then the remaining factors in their original slots
            std::vector<std::size_t> seq;
            for (std::size_t l = 0; l < pos; ++l) seq.push_back(idx[l]);
            seq.push_back(t.i);
            seq.push_back(t.j);
            for (std::size_t l = pos + 1; l < idx.size(); ++l) seq.push_back(idx[l]);
            int inv = 0;
            for (std::size_t x = 0; x < seq.size(); ++x)
              for (std::size_t y = x + 1; y < seq.size(); ++y)
                if (seq[x] > seq[y]) ++inv;
            int s = (inv % 2 == 0 ? 1 : -1) * lead;
            m(index_.at(k + 1).at(rest | pair), col) += Rat(s) * t.coeff;
          }
        }
      }
      d_.push_back(std::move(m));
    }
  }

  // Basis of Z_r^{p,q} = {x in F^p of degree p+q : d x in F^{p+r}}, as vectors
  // over the full monomial basis of degree p+q. For out-of-range (p,q) this is
  // empty or the full filtration piece, following the usual conventions.
  std::vector<VecQ> z_space(int r, int p, int q) const {
    const int deg = p + q;
    if (deg < 0 || deg > static_cast<int>(n())) return {};
    std::vector<std::size_t> vars;
    for (std::size_t i = 0; i < dim(deg); ++i)
      if (bidegree(monos_[deg][i]).first >= p) vars.push_back(i);
    if (vars.empty()) return {};

    std::vector<std::size_t> constraints;
    if (deg < static_cast<int>(n()))
      for (std::size_t i = 0; i < dim(deg + 1); ++i)
        if (bidegree(monos_[deg + 1][i]).first < p + r) constraints.push_back(i);

    MatQ sys(constraints.size(), vars.size());
    for (std::size_t cc = 0; cc < constraints.size(); ++cc)
      for (std::size_t vv = 0; vv < vars.size(); ++vv) sys(cc, vv) = d_[deg](constraints[cc], vars[vv]);
    std::vector<VecQ> out;
    for (const auto& k : kernel_basis(sys)) {
      VecQ full(dim(deg), Rat(0));
      for (std::size_t vv = 0; vv < vars.size(); ++vv) full[vars[vv]] = k[vv];
      out.push_back(std::move(full));
    }
    return out;
  }

  std::vector<CEGenerator> gens_;
  std::vector<std::vector<DTerm>> dgens_;
  std::vector<std::vector<Mask>> monos_;
  std::vector<std::map<Mask, std::size_t>> index_;
  std::vector<MatQ> d_;
};

} // namespace iwa
