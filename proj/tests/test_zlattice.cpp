#include <catch2/catch_amalgamated.hpp>

#include "iwa/matrix.hpp"
#include "iwa/zlattice.hpp"

#include "oracles.hpp"

using namespace iwa;

namespace {

VecQ qv(std::vector<long> v) {
  VecQ out;
  for (long x : v) out.push_back(Rat(x));
  return out;
}

MatZ zmat(std::vector<std::vector<long>> rows) {
  MatZ m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

ZLattice random_lattice(std::size_t m, std::size_t gens, int range) {
  std::vector<VecQ> rows;
  for (std::size_t i = 0; i < gens; ++i) {
    VecQ r(m);
    for (auto& x : r) x = Rat(oracles::random_int(range));
    rows.push_back(std::move(r));
  }
  return ZLattice::from_generators(m, rows);
}

} // namespace

TEST_CASE("from_generators canonical form examples") {
  // {(2,0),(1,1)} spans the same lattice as its canonical basis {(1,1),(0,2)}
  ZLattice l = ZLattice::from_generators(2, {qv({2, 0}), qv({1, 1})});
  REQUIRE(l.rank() == 2);
  CHECK(l.basis_row(0) == qv({1, 1}));
  CHECK(l.basis_row(1) == qv({0, 2}));
  // cross-membership against a brute-force span oracle
  for (const auto& g : std::vector<VecQ>{qv({2, 0}), qv({1, 1})})
    CHECK(oracles::brute_force_in_span(l.basis(), g, 4));
  for (const auto& b : l.basis())
    CHECK(oracles::brute_force_in_span({qv({2, 0}), qv({1, 1})}, b, 4));

  ZLattice dup = ZLattice::from_generators(2, {qv({1, 0}), qv({1, 0})});
  CHECK(dup.rank() == 1);
  CHECK(dup.basis_row(0) == qv({1, 0}));

  CHECK(ZLattice::from_generators(3, {}).rank() == 0);
  CHECK_THROWS_AS(ZLattice::from_generators(2, {qv({1, 2, 3})}), DimensionError);
}

TEST_CASE("canonical form uniqueness under unimodular remixing") {
  for (int trial = 0; trial < 120; ++trial) {
    std::size_t m = 4;
    ZLattice l = random_lattice(m, 3 + trial % 3, 6);
    if (l.rank() == 0) continue;
    MatZ u = oracles::random_unimodular(l.rank(), 12);
    std::vector<VecQ> remixed;
    for (std::size_t i = 0; i < l.rank(); ++i) {
      VecQ r(m, Rat(0));
      for (std::size_t k = 0; k < l.rank(); ++k)
        for (std::size_t j = 0; j < m; ++j) r[j] += Rat(u(i, k)) * l.basis_row(k)[j];
      remixed.push_back(std::move(r));
    }
    CHECK(ZLattice::from_generators(m, remixed) == l);
  }
}

TEST_CASE("rational entries are supported") {
  ZLattice l = ZLattice::from_generators(2, {VecQ{Rat(1, 2), Rat(1, 2)}, qv({0, 1})});
  CHECK(l.rank() == 2);
  CHECK(l.contains(VecQ{Rat(1, 2), Rat(1, 2)}));
  CHECK(l.contains(qv({1, 0})));
  CHECK_FALSE(l.contains(VecQ{Rat(1, 2), Rat(0)}));
  // scaling a lattice scales its canonical form
  CHECK(l.scaled(Rat(2)) == ZLattice::from_generators(2, {qv({1, 1}), qv({0, 2})}));
}

TEST_CASE("smith normal form examples and properties") {
  Smith s1 = smith_normal_form(MatZ::identity(3));
  CHECK(s1.d == MatZ::identity(3));

  Smith s2 = smith_normal_form(zmat({{2, 0}, {0, 3}}));
  CHECK(s2.d(0, 0) == 1);
  CHECK(s2.d(1, 1) == 6);

  Smith s3 = smith_normal_form(zmat({{0, 0}, {0, 0}}));
  CHECK(s3.d.is_zero());

  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = 2 + trial % 3, c = 2 + (trial / 3) % 3;
    MatZ m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = oracles::random_int(9);
    Smith s = smith_normal_form(m);
    CHECK(s.u * m * s.v == s.d); // exact factorization
    Rat du = determinant(to_rational(s.u)), dv = determinant(to_rational(s.v));
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
    std::size_t t = std::min(r, c);
    for (std::size_t i = 0; i < t; ++i) {
      CHECK(s.d(i, i) >= 0);
      if (i + 1 < t && s.d(i + 1, i + 1) != 0) {
        REQUIRE(s.d(i, i) != 0);
        CHECK(s.d(i + 1, i + 1) % s.d(i, i) == 0); // divisibility chain
      }
    }
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (i != j) CHECK(s.d(i, j) == 0);
  }
}

TEST_CASE("hnf transform is unimodular") {
  for (int trial = 0; trial < 40; ++trial) {
    MatZ m(3, 4);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 4; ++j) m(i, j) = oracles::random_int(9);
    RowHnf h = hnf_rows(m);
    CHECK(h.u * m == h.h);
    Rat du = determinant(to_rational(h.u));
    CHECK((du == 1 || du == -1));
  }
}

TEST_CASE("intersection examples") {
  ZLattice z2 = ZLattice::standard(2);
  ZLattice two_z2 = z2.scaled(Rat(2));
  CHECK(z2.intersect(two_z2) == two_z2);

  ZLattice e1 = ZLattice::from_generators(2, {qv({1, 0})});
  ZLattice e2 = ZLattice::from_generators(2, {qv({0, 1})});
  CHECK(e1.intersect(e2).rank() == 0);

  ZLattice a = ZLattice::from_generators(2, {qv({2, 0}), qv({1, 1})});
  ZLattice b = ZLattice::from_generators(2, {qv({0, 2}), qv({1, 1})});
  ZLattice i = a.intersect(b);
  CHECK(i.contains(qv({1, 1})));
  // brute-force oracle: all small vectors lying in both lattices
  std::vector<VecQ> both;
  for (const auto& v : oracles::bounded_combinations(a.basis(), 3))
    if (b.contains(v)) both.push_back(v);
  CHECK(ZLattice::from_generators(2, both) == i);
}

TEST_CASE("intersection respects containment on randomized inputs") {
  for (int trial = 0; trial < 40; ++trial) {
    ZLattice a = random_lattice(3, 3, 4), b = random_lattice(3, 3, 4);
    ZLattice i = a.intersect(b);
    CHECK(i.is_sublattice_of(a));
    CHECK(i.is_sublattice_of(b));
    for (const auto& v : oracles::bounded_combinations(a.basis(), 2))
      if (b.contains(v)) CHECK(i.contains(v));
  }
}

TEST_CASE("saturation examples and idempotence") {
  CHECK(ZLattice::from_generators(2, {qv({2, 0})}).saturate() ==
        ZLattice::from_generators(2, {qv({1, 0})}));

  ZLattice sat = ZLattice::from_generators(2, {qv({1, 1}), qv({0, 2})}).saturate();
  CHECK(sat == ZLattice::standard(2));

  // the stated oracle: integer-coordinate vectors in the rational span of {(2,2),(0,4)}
  ZLattice l = ZLattice::from_generators(2, {qv({2, 2}), qv({0, 4})});
  ZLattice s = l.saturate();
  std::vector<VecQ> small_integer_vectors = oracles::bounded_combinations({qv({1, 0}), qv({0, 1})}, 3);
  CHECK(s == ZLattice::from_generators(2, small_integer_vectors)); // = Z^2

  for (int trial = 0; trial < 40; ++trial) {
    ZLattice r = random_lattice(4, 3, 5);
    ZLattice sr = r.saturate();
    CHECK(r.is_sublattice_of(sr));
    if (r.rank() > 0) {
      auto idx = r.index_in(sr);
      REQUIRE(idx.has_value()); // finite index
    }
    CHECK(sr.saturate() == sr); // idempotent
  }
}

TEST_CASE("index examples") {
  ZLattice z2 = ZLattice::standard(2);
  CHECK(z2.scaled(Rat(2)).index_in(z2) == Int(4));
  CHECK(z2.index_in(z2) == Int(1));
  CHECK(ZLattice::from_generators(2, {qv({1, 1}), qv({0, 2})}).index_in(z2) == Int(2));

  // infinite index on rank drop
  ZLattice line = ZLattice::from_generators(2, {qv({1, 0})});
  CHECK_FALSE(line.index_in(z2).has_value());

  // not a sublattice
  ZLattice half = ZLattice::from_generators(2, {VecQ{Rat(1, 2), Rat(0)}, qv({0, 1})});
  CHECK_THROWS_AS(half.index_in(z2), NotSublatticeError);
}

TEST_CASE("index multiplicativity on randomized chains") {
  for (int trial = 0; trial < 40; ++trial) {
    ZLattice l1 = random_lattice(3, 4, 3);
    if (l1.rank() < 3) continue;
    // random finite-index sublattices via triangular integer coefficient matrices
    auto sub_of = [&](const ZLattice& l) {
      std::vector<VecQ> gens;
      MatZ t(l.rank(), l.rank());
      for (std::size_t i = 0; i < l.rank(); ++i) {
        t(i, i) = 1 + (i + 1) * (1 + trial % 3);
        for (std::size_t j = i + 1; j < l.rank(); ++j) t(i, j) = oracles::random_int(2);
      }
      for (std::size_t i = 0; i < l.rank(); ++i) {
        VecQ r(l.ambient(), Rat(0));
        for (std::size_t k = 0; k < l.rank(); ++k)
          for (std::size_t j = 0; j < l.ambient(); ++j) r[j] += Rat(t(i, k)) * l.basis_row(k)[j];
        gens.push_back(std::move(r));
      }
      return ZLattice::from_generators(l.ambient(), gens);
    };
    ZLattice l2 = sub_of(l1), l3 = sub_of(l2);
    auto i21 = l2.index_in(l1), i32 = l3.index_in(l2), i31 = l3.index_in(l1);
    REQUIRE((i21 && i32 && i31));
    CHECK(*i31 == *i21 * *i32);
  }
}

TEST_CASE("membership examples") {
  ZLattice l = ZLattice::from_generators(2, {qv({2, 0}), qv({1, 1})});
  CHECK(l.contains(qv({0, 0})));
  CHECK(l.contains(qv({3, 1}))); // (3,1) = (2,0) + (1,1)
  CHECK(oracles::brute_force_in_span({qv({2, 0}), qv({1, 1})}, qv({3, 1}), 4));
  CHECK_FALSE(ZLattice::standard(2).contains(VecQ{Rat(1, 2), Rat(0)}));
  CHECK_THROWS_AS(l.contains(qv({1, 2, 3})), DimensionError);
}

TEST_CASE("stability under a matrix action") {
  MatQ rot(2, 2);
  rot(0, 1) = -1;
  rot(1, 0) = 1;
  CHECK(subspace_stable_under({qv({1, 0}), qv({0, 1})}, rot));
  CHECK_FALSE(subspace_stable_under({qv({1, 0})}, rot));
  CHECK(subspace_stable_under({qv({1, 0})}, MatQ::identity(2)));

  MatQ block(4, 4);
  block(0, 1) = -1; block(1, 0) = 1; block(2, 3) = -1; block(3, 2) = 1;
  CHECK(subspace_stable_under({qv({1, 0, 0, 0}), qv({0, 1, 0, 0})}, block));
  CHECK_FALSE(subspace_stable_under({qv({1, 0, 0, 0}), qv({0, 0, 1, 0})}, block));

  CHECK(lattice_stable_under(ZLattice::standard(2), rot));
  ZLattice skew = ZLattice::from_generators(2, {qv({1, 0}), qv({0, 2})});
  CHECK_FALSE(lattice_stable_under(skew, rot)); // (1,0) maps to (0,1), outside
}

TEST_CASE("subspace meet lattice") {
  ZLattice z4 = ZLattice::standard(4);
  ZLattice m = subspace_intersect_lattice({qv({1, 1, 0, 0})}, z4);
  CHECK(m == ZLattice::from_generators(4, {qv({1, 1, 0, 0})}));

  // diagonal line against a lattice refined in one coordinate
  ZLattice l = ZLattice::from_generators(2, {VecQ{Rat(1, 2), Rat(0)}, qv({0, 1})});
  ZLattice diag = subspace_intersect_lattice({qv({1, 1})}, l);
  CHECK(diag == ZLattice::from_generators(2, {qv({1, 1})}));
}
