#pragma once

// The complex Heisenberg group G over K = Q(sqrt(-d)) and its Lie algebra:
// group law, log/exp, the two-step BCH formula, validation of finitely
// generated subgroups as cocompact lattices, extraction of the bundle data
// (Delta, Gamma, q), the inverse constructor from (Delta, Gamma), and the
// splitting of the central extension over K-lines.
//
// Lattices are represented by group generators, not by log-lattices: the set
// log(Lambda) is generally not closed under addition (half-integer central
// corrections), so everything is phrased through normal-form bookkeeping with
// explicit central-defect computation.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "quadfield.hpp"
#include "rational.hpp"
#include "zlattice.hpp"

namespace iwa {

// Upper unipotent 3x3 matrix with rows (1 a c / 0 1 b / 0 0 1).
struct HeisPoint {
  QuadElem a, b, c;

  HeisPoint(QuadElem a_, QuadElem b_, QuadElem c_)
      : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)) {
    if (a.field() != b.field() || a.field() != c.field())
      throw FieldMismatchError("Heisenberg point entries from different fields");
  }
  const QuadField& field() const { return a.field(); }

  friend bool operator==(const HeisPoint& x, const HeisPoint& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c;
  }
  friend bool operator!=(const HeisPoint& x, const HeisPoint& y) { return !(x == y); }
};

inline HeisPoint heis_identity(QuadField f) {
  return HeisPoint(QuadElem::zero(f), QuadElem::zero(f), QuadElem::zero(f));
}

inline HeisPoint heis_mul(const HeisPoint& g, const HeisPoint& h) {
  return HeisPoint(g.a + h.a, g.b + h.b, g.c + h.c + g.a * h.b);
}

inline HeisPoint heis_inv(const HeisPoint& g) {
  return HeisPoint(-g.a, -g.b, -g.c + g.a * g.b);
}

// g^n in closed form: (na, nb, nc + n(n-1)/2 * ab).
inline HeisPoint heis_pow(const HeisPoint& g, const Int& n) {
  Rat nn(n);
  Rat half = Rat(n * (n - 1), 2);
  return HeisPoint(nn * g.a, nn * g.b, nn * g.c + half * (g.a * g.b));
}

// Lie algebra vector (x, y, z), with the center z = {(0,0,z)}.
struct LieVector {
  QuadElem x, y, z;

  LieVector(QuadElem x_, QuadElem y_, QuadElem z_)
      : x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {
    if (x.field() != y.field() || x.field() != z.field())
      throw FieldMismatchError("Lie vector entries from different fields");
  }
  const QuadField& field() const { return x.field(); }

  friend bool operator==(const LieVector& u, const LieVector& v) {
    return u.x == v.x && u.y == v.y && u.z == v.z;
  }
  friend bool operator!=(const LieVector& u, const LieVector& v) { return !(u == v); }
  friend LieVector operator+(const LieVector& u, const LieVector& v) {
    return LieVector(u.x + v.x, u.y + v.y, u.z + v.z);
  }
};

// [(x1,y1,z1),(x2,y2,z2)] = (0, 0, x1 y2 - y1 x2); central, alternating.
inline LieVector lie_bracket(const LieVector& u, const LieVector& v) {
  QuadField f = u.field();
  if (f != v.field()) throw FieldMismatchError("bracket of vectors from different fields");
  return LieVector(QuadElem::zero(f), QuadElem::zero(f), u.x * v.y - u.y * v.x);
}

inline LieVector heis_log(const HeisPoint& g) {
  return LieVector(g.a, g.b, g.c - Rat(1, 2) * (g.a * g.b));
}

inline HeisPoint heis_exp(const LieVector& v) {
  return HeisPoint(v.x, v.y, v.z + Rat(1, 2) * (v.x * v.y));
}

// Two-step BCH: X + Y + [X,Y]/2, exact here since all triple brackets vanish.
inline LieVector bch(const LieVector& u, const LieVector& v) {
  LieVector br = lie_bracket(u, v);
  return LieVector(u.x + v.x, u.y + v.y, u.z + v.z + Rat(1, 2) * br.z);
}

// --- K^2 <-> Q^4 plumbing (coordinates a = a0 + a1 sqrt(-d)) ---------------

inline VecQ k_to_q2(const QuadElem& x) { return VecQ{x.a(), x.b()}; }
inline QuadElem q2_to_k(QuadField f, const VecQ& v) {
  if (v.size() != 2) throw DimensionError("expected a vector of length 2");
  return QuadElem(f, v[0], v[1]);
}
inline VecQ k2_to_q4(const QuadElem& u, const QuadElem& v) { return VecQ{u.a(), u.b(), v.a(), v.b()}; }
inline std::pair<QuadElem, QuadElem> q4_to_k2(QuadField f, const VecQ& v) {
  if (v.size() != 4) throw DimensionError("expected a vector of length 4");
  return {QuadElem(f, v[0], v[1]), QuadElem(f, v[2], v[3])};
}

// Column-action matrix of multiplication by sqrt(-d) on K^g read as Q^{2g}.
inline MatQ mult_sqrt_minus_d(QuadField f, std::size_t g) {
  MatQ m(2 * g, 2 * g);
  for (std::size_t k = 0; k < g; ++k) {
    m(2 * k, 2 * k + 1) = Rat(-f.d);
    m(2 * k + 1, 2 * k) = 1;
  }
  return m;
}

// The standard complex symplectic cocycle q((u1,u2),(v1,v2)) = u1 v2 - u2 v1.
inline QuadElem symplectic_q(const QuadElem& u1, const QuadElem& u2, const QuadElem& v1, const QuadElem& v2) {
  return u1 * v2 - u2 * v1;
}
inline QuadElem symplectic_q(QuadField f, const VecQ& u, const VecQ& v) {
  auto [u1, u2] = q4_to_k2(f, u);
  auto [v1, v2] = q4_to_k2(f, v);
  return symplectic_q(u1, u2, v1, v2);
}

// --- lattice validation ----------------------------------------------------

struct NotCocompactError : Error {
  std::string which;       // "delta" or "gamma"
  std::size_t observed;    // rank actually found
  std::size_t required;
  NotCocompactError(std::string which_, std::size_t observed_, std::size_t required_)
      : Error("not cocompact: rank(" + which_ + ") = " + std::to_string(observed_) + ", expected " +
              std::to_string(required_)),
        which(std::move(which_)), observed(observed_), required(required_) {}
};

struct CocycleConditionViolated : Error {
  std::size_t i, j;    // offending basis pair of Delta
  QuadElem value;      // q(delta_i, delta_j), not in Gamma
  CocycleConditionViolated(std::size_t i_, std::size_t j_, QuadElem value_)
      : Error("cocycle condition violated: q(basis " + std::to_string(i_) + ", basis " + std::to_string(j_) +
              ") = " + value_.str() + " lies outside Gamma"),
        i(i_), j(j_), value(std::move(value_)) {}
};

class HeisLattice {
public:
  // Validates a finitely generated subgroup as a cocompact lattice.
  //
  // Delta is the lattice of abelianized generators in Q^4. The central lattice
  // Gamma = Lambda meet Z(G) is generated by (i) central parts of generators
  // with zero abelianization, (ii) all pairwise commutator values q(d_i, d_j),
  // and (iii) central defects of the relation words attached to an integer
  // kernel basis of the projection matrix. Cocompact iff rank(Delta) = 4 and
  // rank(Gamma) = 2.
  static HeisLattice validate(const std::vector<HeisPoint>& gens) {
    if (gens.empty()) throw PreconditionError("empty generator list");
    QuadField f = gens.front().field();
    for (const auto& g : gens)
      if (g.field() != f) throw FieldMismatchError("generators from different fields");

    std::vector<VecQ> proj;
    proj.reserve(gens.size());
    for (const auto& g : gens) proj.push_back(k2_to_q4(g.a, g.b));
    ZLattice delta = ZLattice::from_generators(4, proj);

    std::vector<VecQ> centrals;
    for (const auto& g : gens)
      if (g.a.is_zero() && g.b.is_zero()) centrals.push_back(k_to_q2(g.c));
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = i + 1; j < gens.size(); ++j)
        centrals.push_back(k_to_q2(symplectic_q(gens[i].a, gens[i].b, gens[j].a, gens[j].b)));

    // Relation words: for each kernel vector n of the projection matrix, the
    // normal-form word prod_i g_i^{n_i} is central; collect its defect.
    Int scale = 1;
    MatZ p = clear_denominators(MatQ::from_rows(proj, 4), scale);
    for (const auto& n : integer_row_kernel(p)) {
      HeisPoint w = heis_identity(f);
      for (std::size_t i = 0; i < gens.size(); ++i) w = heis_mul(w, heis_pow(gens[i], n[i]));
      if (!w.a.is_zero() || !w.b.is_zero()) throw std::logic_error("relation word is not central");
      centrals.push_back(k_to_q2(w.c));
    }
    ZLattice gamma = ZLattice::from_generators(2, centrals);

    if (delta.rank() != 4) throw NotCocompactError("delta", delta.rank(), 4);
    if (gamma.rank() != 2) throw NotCocompactError("gamma", gamma.rank(), 2);

    HeisLattice l(f, gens, std::move(delta), std::move(gamma));
    l.check_cocycle_values();
    return l;
  }

  // Test-only bypass for corrupted negative controls; performs no validation.
  static HeisLattice unchecked(QuadField f, std::vector<HeisPoint> gens, ZLattice delta, ZLattice gamma) {
    return HeisLattice(f, std::move(gens), std::move(delta), std::move(gamma));
  }

  const QuadField& field() const { return f_; }
  const std::vector<HeisPoint>& generators() const { return gens_; }
  const ZLattice& delta() const { return delta_; }
  const ZLattice& gamma() const { return gamma_; }

  // Gram matrix of q on the canonical basis of Delta.
  std::vector<std::vector<QuadElem>> q_gram() const {
    std::vector<std::vector<QuadElem>> q(delta_.rank(), std::vector<QuadElem>());
    for (std::size_t i = 0; i < delta_.rank(); ++i)
      for (std::size_t j = 0; j < delta_.rank(); ++j)
        q[i].push_back(symplectic_q(f_, delta_.basis_row(i), delta_.basis_row(j)));
    return q;
  }

private:
  HeisLattice(QuadField f, std::vector<HeisPoint> gens, ZLattice delta, ZLattice gamma)
      : f_(f), gens_(std::move(gens)), delta_(std::move(delta)), gamma_(std::move(gamma)) {}

  void check_cocycle_values() const {
    for (std::size_t i = 0; i < delta_.rank(); ++i)
      for (std::size_t j = i + 1; j < delta_.rank(); ++j) {
        QuadElem v = symplectic_q(f_, delta_.basis_row(i), delta_.basis_row(j));
        if (!gamma_.contains(k_to_q2(v)))
          throw std::logic_error("validated lattice violates q(Delta^2) <= Gamma");
      }
  }

  QuadField f_;
  std::vector<HeisPoint> gens_;
  ZLattice delta_;
  ZLattice gamma_;
};

// The Iwasawa-bundle data of a validated lattice: base lattice, fiber lattice
// and the symplectic cocycle (determined by the field, tabulated on the basis).
struct IwasawaData {
  QuadField field;
  ZLattice delta; // rank 4 in Q^4
  ZLattice gamma; // rank 2 in Q^2
  std::vector<std::vector<QuadElem>> q_on_basis;
};

inline IwasawaData extract_iwasawa(const HeisLattice& l) {
  IwasawaData data{l.field(), l.delta(), l.gamma(), l.q_gram()};
  for (std::size_t i = 0; i < data.delta.rank(); ++i)
    for (std::size_t j = 0; j < data.delta.rank(); ++j)
      if (!data.gamma.contains(k_to_q2(data.q_on_basis[i][j])))
        throw std::logic_error("extracted data violates q(Delta^2) <= Gamma");
  return data;
}

// Builds the lattice generated by exp of lifted Delta-basis vectors and by the
// central Gamma-basis, after checking q(Delta^2) <= Gamma on the basis.
inline HeisLattice construct_iwasawa(const ZLattice& delta, const ZLattice& gamma, QuadField f) {
  if (delta.ambient() != 4) throw DimensionError("Delta must live in Q^4");
  if (gamma.ambient() != 2) throw DimensionError("Gamma must live in Q^2");
  if (delta.rank() != 4) throw NotCocompactError("delta", delta.rank(), 4);
  if (gamma.rank() != 2) throw NotCocompactError("gamma", gamma.rank(), 2);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) {
      QuadElem v = symplectic_q(f, delta.basis_row(i), delta.basis_row(j));
      if (!gamma.contains(k_to_q2(v))) throw CocycleConditionViolated(i, j, v);
    }

  std::vector<HeisPoint> gens;
  for (std::size_t i = 0; i < 4; ++i) {
    auto [d1, d2] = q4_to_k2(f, delta.basis_row(i));
    gens.push_back(heis_exp(LieVector(d1, d2, QuadElem::zero(f))));
  }
  for (std::size_t j = 0; j < 2; ++j)
    gens.push_back(HeisPoint(QuadElem::zero(f), QuadElem::zero(f), q2_to_k(f, gamma.basis_row(j))));

  HeisLattice l = HeisLattice::validate(gens);
  if (l.delta() != delta || l.gamma() != gamma)
    throw std::logic_error("constructed lattice does not round-trip to its inputs");
  return l;
}

// Splitting of the central extension over the K-line through v: the lift
// h(w) = (w, 0) of L = K*v gives an abelian subalgebra, certified by the
// brackets of the lifted basis vanishing identically.
struct LineSplitting {
  std::pair<QuadElem, QuadElem> line; // primitive direction (v1, v2)
  std::vector<LieVector> basis;       // h(v), h(sqrt(-d) v)
  std::vector<QuadElem> brackets;     // pairwise bracket z-components
  std::vector<QuadElem> q_restricted; // q on all basis pairs of the line
  bool split = false;                 // all certificates exactly zero
};

inline LineSplitting split_over_line(const IwasawaData& data, const VecQ& v) {
  if (v.size() != 4) throw DimensionError("line direction must live in Q^4");
  if (is_zero_vec(v)) throw PreconditionError("zero vector spans no line");
  QuadField f = data.field;
  auto [v1, v2] = q4_to_k2(f, v);
  QuadElem root = QuadElem::sqrt_gen(f);
  LieVector h0(v1, v2, QuadElem::zero(f));
  LieVector h1(root * v1, root * v2, QuadElem::zero(f));

  std::vector<LieVector> basis{h0, h1};
  std::vector<QuadElem> brackets, q_restricted;
  bool ok = true;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      QuadElem br = lie_bracket(basis[i], basis[j]).z;
      QuadElem qv = symplectic_q(basis[i].x, basis[i].y, basis[j].x, basis[j].y);
      brackets.push_back(br);
      q_restricted.push_back(qv);
      ok = ok && br.is_zero() && qv.is_zero();
    }
  return LineSplitting{{v1, v2}, std::move(basis), std::move(brackets), std::move(q_restricted), ok};
}

} // namespace iwa
