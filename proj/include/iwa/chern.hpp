#pragma once

// The first Chern class of the Iwasawa bundle as an exact bilinear object:
// the K-valued symplectic cocycle evaluated on lattice 2-cycles, expanded
// over Q into a pair of antisymmetric rational component matrices. Type (2,0)
// is transcribed as K-bilinearity of the alternating form; restriction to a
// K-line is identically zero, which is the lattice-level triviality of the
// restricted bundle.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "heisenberg.hpp"
#include "matrix.hpp"
#include "quadfield.hpp"
#include "zlattice.hpp"

namespace iwa {

class CocycleForm {
public:
  // The cocycle of validated bundle data: q((a,b),(a',b')) = a b' - a' b.
  static CocycleForm standard(const IwasawaData& data) {
    CocycleForm c(data.field, data.delta, data.gamma, standard_q0(data.field), standard_q1());
    for (std::size_t i = 0; i < data.delta.rank(); ++i)
      for (std::size_t j = i + 1; j < data.delta.rank(); ++j)
        if (!data.gamma.contains(k_to_q2(c.eval(data.delta.basis_row(i), data.delta.basis_row(j)))))
          throw std::logic_error("cocycle values leave Gamma");
    return c;
  }

  // Arbitrary component matrices; used by tests to build broken forms.
  static CocycleForm with_components(QuadField f, ZLattice delta, ZLattice gamma, MatQ q0, MatQ q1) {
    return CocycleForm(f, std::move(delta), std::move(gamma), std::move(q0), std::move(q1));
  }

  const QuadField& field() const { return f_; }
  const ZLattice& delta() const { return delta_; }
  const ZLattice& gamma() const { return gamma_; }
  const MatQ& q0() const { return q0_; }
  const MatQ& q1() const { return q1_; }

  QuadElem eval(const VecQ& v, const VecQ& w) const {
    if (v.size() != 4 || w.size() != 4) throw DimensionError("cocycle arguments live in Q^4");
    Rat a(0), b(0);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        a += v[i] * q0_(i, j) * w[j];
        b += v[i] * q1_(i, j) * w[j];
      }
    return QuadElem(f_, a, b);
  }

private:
  CocycleForm(QuadField f, ZLattice delta, ZLattice gamma, MatQ q0, MatQ q1)
      : f_(f), delta_(std::move(delta)), gamma_(std::move(gamma)), q0_(std::move(q0)), q1_(std::move(q1)) {
    if (q0_.rows() != 4 || q0_.cols() != 4 || q1_.rows() != 4 || q1_.cols() != 4)
      throw DimensionError("component matrices must be 4x4");
  }

  // Components of a b' - a' b in coordinates (a0, a1, b0, b1).
  static MatQ standard_q0(QuadField f) {
    MatQ m(4, 4);
    m(0, 2) = 1; m(2, 0) = -1;
    m(1, 3) = Rat(-f.d); m(3, 1) = Rat(f.d);
    return m;
  }
  static MatQ standard_q1() {
    MatQ m(4, 4);
    m(0, 3) = 1; m(3, 0) = -1;
    m(1, 2) = 1; m(2, 1) = -1;
    return m;
  }

  QuadField f_;
  ZLattice delta_, gamma_;
  MatQ q0_, q1_;
};

struct TypeWitness {
  VecQ v, w;          // offending pair
  QuadElem got, want; // q(sqrt(-d) v, w) versus sqrt(-d) q(v, w)
};

struct TypeCertificate {
  bool alternating = false;
  bool k_bilinear = false;
  bool nondegenerate = false;
  std::optional<TypeWitness> bilinearity_witness;
  std::optional<QuadElem> gram_det; // determinant of the K-valued 2x2 Gram matrix, when K-bilinear
  bool pass() const { return alternating && k_bilinear && nondegenerate; }
};

// Exact-arithmetic meaning of "holomorphically symplectic of type (2,0)":
// alternating, complex-bilinear for the sqrt(-d) action, nondegenerate.
inline TypeCertificate verify_holomorphic_type(const CocycleForm& c) {
  TypeCertificate cert;
  const MatQ mu = mult_sqrt_minus_d(c.field(), 2);
  const MatQ mut = mu.transpose();

  cert.alternating = c.q0().transpose() == Rat(-1) * c.q0() && c.q1().transpose() == Rat(-1) * c.q1();

  // q(sqrt(-d) v, w) = sqrt(-d) q(v, w) as matrix identities on components.
  bool bil = mut * c.q0() == Rat(-c.field().d) * c.q1() && mut * c.q1() == c.q0();
  cert.k_bilinear = bil;
  if (!bil) {
    QuadElem root = QuadElem::sqrt_gen(c.field());
    for (std::size_t i = 0; i < 4 && !cert.bilinearity_witness; ++i)
      for (std::size_t j = 0; j < 4 && !cert.bilinearity_witness; ++j) {
        VecQ ei(4, Rat(0)), ej(4, Rat(0));
        ei[i] = 1;
        ej[j] = 1;
        QuadElem got = c.eval(matvec(mu, ei), ej);
        QuadElem want = root * c.eval(ei, ej);
        if (got != want) cert.bilinearity_witness = TypeWitness{ei, ej, got, want};
      }
  }

  // Nondegeneracy of the Q^2-valued pairing: the stacked components have full rank.
  MatQ stacked(8, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      stacked(i, j) = c.q0()(i, j);
      stacked(4 + i, j) = c.q1()(i, j);
    }
  cert.nondegenerate = rank(stacked) == 4;

  if (cert.k_bilinear) {
    // 2x2 alternating K-Gram matrix on the standard K-basis of K^2.
    VecQ e1{Rat(1), Rat(0), Rat(0), Rat(0)}, e2{Rat(0), Rat(0), Rat(1), Rat(0)};
    QuadElem g12 = c.eval(e1, e2);
    cert.gram_det = QuadElem::zero(c.field()) - g12 * g12; // det [[0, g12], [-g12, 0]]
  }
  return cert;
}

struct RestrictedForm {
  ZLattice sublattice;
  QuadElem value; // q on the basis pair of the rank-2 sublattice
  bool zero = false;
};

struct NotKLineError : Error {
  using Error::Error;
};

// Restriction of the cocycle to a rank-2 sublattice spanning a K-line; for
// K-lines the restriction vanishes identically.
inline RestrictedForm restrict_to_subtorus(const CocycleForm& c, const ZLattice& m) {
  if (m.ambient() != 4) throw DimensionError("sublattice must live in Q^4");
  if (m.rank() != 2) throw PreconditionError("expected a rank-2 sublattice");
  if (!m.is_sublattice_of(c.delta())) throw NotSublatticeError("not a sublattice of Delta");
  if (!subspace_stable_under(m.basis(), mult_sqrt_minus_d(c.field(), 2)))
    throw NotKLineError("the rational span of the sublattice is not a K-line");
  QuadElem v = c.eval(m.basis_row(0), m.basis_row(1));
  return RestrictedForm{m, v, v.is_zero()};
}

} // namespace iwa
