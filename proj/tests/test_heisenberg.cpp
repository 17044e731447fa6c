#include <catch2/catch_amalgamated.hpp>

#include "iwa/heisenberg.hpp"

#include "oracles.hpp"

using namespace iwa;

namespace {

const QuadField F1 = quad_field(1);

QuadElem qe(QuadField f, long a, long b) { return QuadElem(f, Rat(a), Rat(b)); }

HeisPoint hp(QuadField f, long a0, long a1, long b0, long b1, long c0, long c1) {
  return HeisPoint(QuadElem(f, a0, a1), QuadElem(f, b0, b1), QuadElem(f, c0, c1));
}

std::vector<HeisPoint> gaussian_gens() {
  return {hp(F1, 1, 0, 0, 0, 0, 0), hp(F1, 0, 1, 0, 0, 0, 0), hp(F1, 0, 0, 1, 0, 0, 0),
          hp(F1, 0, 0, 0, 1, 0, 0), hp(F1, 0, 0, 0, 0, 1, 0), hp(F1, 0, 0, 0, 0, 0, 1)};
}

std::vector<HeisPoint> eisenstein_gens() {
  QuadField f3 = quad_field(3);
  QuadElem one = QuadElem::one(f3), zero = QuadElem::zero(f3);
  QuadElem omega(f3, Rat(-1, 2), Rat(1, 2));
  return {HeisPoint(one, zero, zero),  HeisPoint(omega, zero, zero), HeisPoint(zero, one, zero),
          HeisPoint(zero, omega, zero), HeisPoint(zero, zero, one),  HeisPoint(zero, zero, omega)};
}

std::vector<HeisPoint> refined_gens() {
  QuadElem half(F1, Rat(1, 2), Rat(0)), zero = QuadElem::zero(F1), one = QuadElem::one(F1),
      i(F1, Rat(0), Rat(1));
  return {HeisPoint(half, zero, zero), HeisPoint(zero, one, zero), HeisPoint(zero, zero, one),
          HeisPoint(i, zero, zero),    HeisPoint(zero, i, zero),   HeisPoint(zero, zero, i)};
}

HeisPoint random_point(QuadField f) {
  auto r = [&] { return QuadElem(f, oracles::random_rational(6, 3), oracles::random_rational(6, 3)); };
  return HeisPoint(r(), r(), r());
}

} // namespace

TEST_CASE("group law matches matrix multiplication") {
  // (1,0,0)*(0,1,0) = (1,1,1)
  HeisPoint g = hp(F1, 1, 0, 0, 0, 0, 0), h = hp(F1, 0, 0, 1, 0, 0, 0);
  CHECK(heis_mul(g, h) == hp(F1, 1, 0, 1, 0, 1, 0));

  for (int t = 0; t < 100; ++t) {
    HeisPoint a = random_point(F1), b = random_point(F1), c = random_point(F1);
    CHECK(heis_mul(a, heis_inv(a)) == heis_identity(F1));
    CHECK(heis_mul(heis_inv(a), a) == heis_identity(F1));
    CHECK(heis_mul(heis_mul(a, b), c) == heis_mul(a, heis_mul(b, c)));
    // 3x3 unipotent matrix product, entrywise
    HeisPoint ab = heis_mul(a, b);
    CHECK(ab.a == a.a + b.a);
    CHECK(ab.b == a.b + b.b);
    CHECK(ab.c == a.c + b.c + a.a * b.b);
  }
}

TEST_CASE("the commutator of the two standard generators is central") {
  HeisPoint g = hp(F1, 1, 0, 0, 0, 0, 0), h = hp(F1, 0, 0, 1, 0, 0, 0);
  HeisPoint comm = heis_mul(heis_mul(g, h), heis_mul(heis_inv(g), heis_inv(h)));
  CHECK(comm == hp(F1, 0, 0, 0, 0, 1, 0));
}

TEST_CASE("log and exp") {
  CHECK(heis_log(hp(F1, 0, 0, 0, 0, 5, 3)) == LieVector(qe(F1, 0, 0), qe(F1, 0, 0), qe(F1, 5, 3)));
  LieVector l = heis_log(hp(F1, 1, 0, 1, 0, 1, 0));
  CHECK(l == LieVector(qe(F1, 1, 0), qe(F1, 1, 0), QuadElem(F1, Rat(1, 2), Rat(0))));
  for (int t = 0; t < 100; ++t) {
    HeisPoint g = random_point(F1);
    CHECK(heis_exp(heis_log(g)) == g);
    LieVector v = heis_log(g);
    CHECK(heis_log(heis_exp(v)) == v);
  }
}

TEST_CASE("bch is exact for the two-step group") {
  LieVector x(qe(F1, 1, 0), qe(F1, 0, 0), qe(F1, 0, 0));
  LieVector y(qe(F1, 0, 0), qe(F1, 1, 0), qe(F1, 0, 0));
  CHECK(bch(x, y) == LieVector(qe(F1, 1, 0), qe(F1, 1, 0), QuadElem(F1, Rat(1, 2), Rat(0))));
  CHECK(bch(x, y) == heis_log(heis_mul(heis_exp(x), heis_exp(y))));

  LieVector zero(QuadElem::zero(F1), QuadElem::zero(F1), QuadElem::zero(F1));
  for (int t = 0; t < 100; ++t) {
    LieVector a = heis_log(random_point(F1)), b = heis_log(random_point(F1));
    CHECK(heis_exp(bch(a, b)) == heis_mul(heis_exp(a), heis_exp(b)));
    CHECK(bch(a, zero) == a);
    // antisymmetry of the bracket: bch(a,b) + bch(b,a) = 2(a+b)
    LieVector s = bch(a, b) + bch(b, a);
    LieVector twice = a + b + (a + b);
    CHECK(s == twice);
  }
}

TEST_CASE("powers in closed form") {
  for (int t = 0; t < 50; ++t) {
    HeisPoint g = random_point(F1);
    HeisPoint acc = heis_identity(F1);
    for (int k = 0; k <= 5; ++k) {
      CHECK(heis_pow(g, k) == acc);
      CHECK(heis_pow(g, -k) == heis_inv(acc));
      acc = heis_mul(acc, g);
    }
  }
}

TEST_CASE("bracket lands in the center and is alternating") {
  for (int t = 0; t < 50; ++t) {
    LieVector a = heis_log(random_point(F1)), b = heis_log(random_point(F1));
    LieVector br = lie_bracket(a, b);
    CHECK(br.x.is_zero());
    CHECK(br.y.is_zero());
    CHECK(lie_bracket(a, a).z.is_zero());
    CHECK(br.z == -lie_bracket(b, a).z);
  }
}

TEST_CASE("gaussian lattice validates with the expected data") {
  HeisLattice l = HeisLattice::validate(gaussian_gens());
  CHECK(l.delta() == ZLattice::standard(4));
  CHECK(l.gamma() == ZLattice::standard(2));

  // q on the canonical Delta basis generates exactly Gamma = Z[i]
  std::vector<VecQ> values;
  auto gram = l.q_gram();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) values.push_back(k_to_q2(gram[i][j]));
  CHECK(ZLattice::from_generators(2, values) == l.gamma());
}

TEST_CASE("rank-deficient generator sets are rejected") {
  auto gens = gaussian_gens();
  // drop the central generators and one abelian direction
  std::vector<HeisPoint> missing{gens[0], gens[1], gens[2]};
  CHECK_THROWS_AS(HeisLattice::validate(missing), NotCocompactError);
  try {
    HeisLattice::validate(missing);
  } catch (const NotCocompactError& e) {
    CHECK(e.which == "delta");
    CHECK(e.observed == 3);
  }

  // four abelian directions but no central rank: commutators still fill the center
  std::vector<HeisPoint> no_central{gens[0], gens[1], gens[2], gens[3]};
  CHECK(HeisLattice::validate(no_central).gamma() == ZLattice::standard(2));

  CHECK_THROWS_AS(HeisLattice::validate({}), PreconditionError);

  QuadField f3 = quad_field(3);
  std::vector<HeisPoint> mixed{gens[0], HeisPoint(QuadElem::one(f3), QuadElem::zero(f3), QuadElem::zero(f3))};
  CHECK_THROWS_AS(HeisLattice::validate(mixed), FieldMismatchError);
}

TEST_CASE("refined lattice has Gamma strictly larger than Z[i]") {
  HeisLattice l = HeisLattice::validate(refined_gens());
  // q((1/2,0),(0,1)) = 1/2 must be central
  CHECK(l.gamma().contains(VecQ{Rat(1, 2), Rat(0)}));
  CHECK(l.gamma() == ZLattice::standard(2).scaled(Rat(1, 2)));
  ZLattice zi = ZLattice::standard(2);
  auto idx = zi.index_in(l.gamma());
  REQUIRE(idx.has_value());
  CHECK(*idx == 4); // [Gamma : Z[i]] = 4 for Gamma = Z[i]/2
}

TEST_CASE("word oracle agrees with the central lattice computation") {
  struct Entry {
    const char* name;
    std::vector<HeisPoint> gens;
  };
  std::vector<Entry> corpus{{"gaussian", gaussian_gens()},
                            {"eisenstein", eisenstein_gens()},
                            {"refined", refined_gens()}};
  for (const auto& entry : corpus) {
    INFO(entry.name);
    HeisLattice l = HeisLattice::validate(entry.gens);
    auto oracle = oracles::heisenberg_word_oracle(entry.gens, l.gamma(), 4);
    CHECK(oracle.logs_in_model); // every word log lies in the predicted Z-span
    std::vector<VecQ> centrals;
    for (const auto& w : oracle.central_words) {
      CHECK(l.gamma().contains(k_to_q2(w.c))); // every central word lands in Gamma
      centrals.push_back(k_to_q2(w.c));
    }
    CHECK(ZLattice::from_generators(2, centrals) == l.gamma()); // and they generate it
  }
}

TEST_CASE("extract produces bundle data with the cocycle condition") {
  HeisLattice l = HeisLattice::validate(eisenstein_gens());
  IwasawaData data = extract_iwasawa(l);
  CHECK(data.delta.rank() == 4);
  CHECK(data.gamma.rank() == 2);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(data.q_on_basis[i][i].is_zero()); // alternating
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(data.q_on_basis[i][j] == -data.q_on_basis[j][i]);
      CHECK(data.gamma.contains(k_to_q2(data.q_on_basis[i][j])));
    }
  }
}

TEST_CASE("construct round-trips and reports violations") {
  QuadField f = F1;
  ZLattice delta = ZLattice::standard(4), gamma = ZLattice::standard(2);
  HeisLattice l = construct_iwasawa(delta, gamma, f);
  IwasawaData data = extract_iwasawa(l);
  CHECK(data.delta == delta);
  CHECK(data.gamma == gamma);

  // Gamma = 2 Z[i] misses q((1,0),(0,1)) = 1
  try {
    construct_iwasawa(delta, gamma.scaled(Rat(2)), f);
    FAIL("expected a cocycle violation");
  } catch (const CocycleConditionViolated& e) {
    CHECK(e.i == 0);
    CHECK(e.j == 2);
    CHECK(e.value == QuadElem::one(f));
  }

  // Delta = (2 Z[i])^2 pushes all cocycle values into 4 Z[i]
  HeisLattice coarse = construct_iwasawa(delta.scaled(Rat(2)), gamma, f);
  CHECK(extract_iwasawa(coarse).delta == delta.scaled(Rat(2)));
  CHECK(extract_iwasawa(coarse).gamma == gamma);

  CHECK_THROWS_AS(construct_iwasawa(ZLattice::from_generators(4, {VecQ{Rat(1), Rat(0), Rat(0), Rat(0)}}),
                                    gamma, f),
                  NotCocompactError);
}

TEST_CASE("construct/extract round-trip on randomized valid data") {
  for (int trial = 0; trial < 25; ++trial) {
    MatZ b(4, 4);
    do {
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) b(i, j) = oracles::random_int(3);
    } while (determinant(to_rational(b)) == 0);
    std::vector<VecQ> rows;
    for (std::size_t i = 0; i < 4; ++i) {
      VecQ r(4);
      for (std::size_t j = 0; j < 4; ++j) r[j] = Rat(b(i, j));
      rows.push_back(std::move(r));
    }
    ZLattice delta = ZLattice::from_generators(4, rows);
    // Gamma as a refinement of the lattice of cocycle values
    std::vector<VecQ> qvals;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j)
        qvals.push_back(k_to_q2(symplectic_q(F1, delta.basis_row(i), delta.basis_row(j))));
    ZLattice gamma = ZLattice::from_generators(2, qvals).scaled(Rat(1, 1 + trial % 3));
    REQUIRE(gamma.rank() == 2);

    HeisLattice l = construct_iwasawa(delta, gamma, F1);
    IwasawaData data = extract_iwasawa(l);
    CHECK(data.delta == delta);
    CHECK(data.gamma == gamma);
  }
}

TEST_CASE("splitting over K-lines") {
  HeisLattice l = HeisLattice::validate(gaussian_gens());
  IwasawaData data = extract_iwasawa(l);

  LineSplitting s1 = split_over_line(data, VecQ{Rat(1), Rat(0), Rat(0), Rat(0)});
  CHECK(s1.split);
  LineSplitting s2 = split_over_line(data, VecQ{Rat(1), Rat(0), Rat(1), Rat(0)}); // v = (1,1)
  CHECK(s2.split);
  LineSplitting s3 = split_over_line(data, VecQ{Rat(1), Rat(0), Rat(0), Rat(1)}); // v = (1,i)
  CHECK(s3.split);
  for (const auto& b : s3.brackets) CHECK(b.is_zero());
  for (const auto& q : s3.q_restricted) CHECK(q.is_zero());

  CHECK_THROWS_AS(split_over_line(data, VecQ{Rat(0), Rat(0), Rat(0), Rat(0)}), PreconditionError);
}

TEST_CASE("splitting certificates on random directions") {
  HeisLattice l = HeisLattice::validate(eisenstein_gens());
  IwasawaData data = extract_iwasawa(l);
  for (int t = 0; t < 50; ++t) {
    VecQ v(4);
    do {
      for (auto& x : v) x = oracles::random_rational(5, 3);
    } while (is_zero_vec(v));
    CHECK(split_over_line(data, v).split);
  }
}
