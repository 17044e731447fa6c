#include <catch2/catch_amalgamated.hpp>

#include "iwa/ce.hpp"

#include "oracles.hpp"

using namespace iwa;

namespace {

std::vector<MatQ> zero_constants(std::size_t n) { return std::vector<MatQ>(n, MatQ(n, n)); }

void set_bracket(std::vector<MatQ>& c, std::size_t i, std::size_t j, std::size_t k, Rat v) {
  c[k](i, j) = v;
  c[k](j, i) = -v;
}

// [e1,e3] = e5, [e1,e4] = e6, [e2,e3] = e6, [e2,e4] = -e5: the real form of
// the complex Heisenberg bracket.
std::vector<MatQ> real_iwasawa_constants() {
  auto c = zero_constants(6);
  set_bracket(c, 0, 2, 4, 1);
  set_bracket(c, 0, 3, 5, 1);
  set_bracket(c, 1, 2, 5, 1);
  set_bracket(c, 1, 3, 4, -1);
  return c;
}

std::vector<std::size_t> page_total_by_degree(const std::vector<std::vector<std::size_t>>& page,
                                              std::size_t degree) {
  std::vector<std::size_t> out(degree + 1, 0);
  for (std::size_t p = 0; p < page.size(); ++p)
    for (std::size_t q = 0; q < page[p].size(); ++q)
      if (p + q <= degree) out[p + q] += page[p][q];
  return out;
}

std::size_t page_total(const std::vector<std::vector<std::size_t>>& page) {
  std::size_t s = 0;
  for (const auto& row : page)
    for (auto v : row) s += v;
  return s;
}

} // namespace

TEST_CASE("abelian algebras have binomial Betti numbers") {
  CEAlgebra a = CEAlgebra::from_nilpotent_algebra(zero_constants(6));
  CHECK(a.betti() == std::vector<std::size_t>{1, 6, 15, 20, 15, 6, 1});
}

TEST_CASE("three-dimensional Heisenberg algebra") {
  auto c = zero_constants(3);
  set_bracket(c, 0, 1, 2, 1); // [e1, e2] = e3
  CEAlgebra a = CEAlgebra::from_nilpotent_algebra(c);
  CHECK(a.betti() == std::vector<std::size_t>{1, 2, 2, 1});

  // d xi3 = -xi1 xi2
  DGElement d3 = a.d(a.generator_element(2));
  DGElement expect = a.wedge_of({0, 1});
  for (std::size_t i = 0; i < d3.coeff.size(); ++i) CHECK(d3.coeff[i] == -expect.coeff[i]);
}

TEST_CASE("real six-dimensional model has two non-closed generators") {
  auto c = real_iwasawa_constants();
  CEAlgebra a = CEAlgebra::from_nilpotent_algebra(c);
  std::size_t nonzero = 0;
  for (std::size_t g = 0; g < 6; ++g)
    if (!a.d(a.generator_element(g)).is_zero()) ++nonzero;
  CHECK(nonzero == 2);
  CHECK(a.betti() == std::vector<std::size_t>{1, 4, 8, 10, 8, 4, 1});
}

TEST_CASE("Jacobi violations and non-nilpotent algebras are rejected") {
  auto c = real_iwasawa_constants();
  set_bracket(c, 0, 1, 4, 1);
  set_bracket(c, 2, 3, 0, 1); // breaks Jacobi for (0,2,3)
  CHECK_THROWS_AS(CEAlgebra::from_nilpotent_algebra(c), JacobiViolation);

  auto solvable = zero_constants(2);
  set_bracket(solvable, 0, 1, 1, 1); // [e1, e2] = e2: solvable, not nilpotent
  CHECK_THROWS_AS(CEAlgebra::from_nilpotent_algebra(solvable), NotNilpotentError);

  auto asym = zero_constants(2);
  asym[0](0, 1) = 1; // not antisymmetric
  CHECK_THROWS_AS(CEAlgebra::from_nilpotent_algebra(asym), Error);
}

TEST_CASE("d squared is checked at construction") {
  std::vector<CEGenerator> gens{{"a", 1, 0}, {"b", 1, 0}, {"c", 1, 0}, {"e", 1, 0}};
  std::vector<std::vector<DTerm>> bad(4);
  bad[2] = {DTerm{Rat(1), 0, 1}};
  bad[3] = {DTerm{Rat(1), 2, 3}}; // d e = c e: d(d e) = (a b) e != 0
  CHECK_THROWS_AS(CEAlgebra::create(gens, bad), Error);

  std::vector<std::vector<DTerm>> good(4);
  good[2] = {DTerm{Rat(1), 0, 1}};
  good[3] = {DTerm{Rat(1), 0, 2}}; // d(d e) = -a (a b) = 0
  CHECK_NOTHROW(CEAlgebra::create(gens, good));
}

TEST_CASE("wedge is graded-commutative and Leibniz holds") {
  CEAlgebra a = CEAlgebra::iwasawa_model();
  auto random_el = [&](std::size_t deg) {
    DGElement e = a.zero(deg);
    for (auto& c : e.coeff) c = oracles::random_rational(4, 2);
    return e;
  };
  for (int t = 0; t < 20; ++t) {
    for (std::size_t p = 1; p <= 3; ++p)
      for (std::size_t q = 1; q <= 2; ++q) {
        DGElement x = random_el(p), y = random_el(q);
        DGElement xy = a.wedge(x, y), yx = a.wedge(y, x);
        Rat sign = (p * q) % 2 == 0 ? Rat(1) : Rat(-1);
        for (std::size_t i = 0; i < xy.coeff.size(); ++i) CHECK(xy.coeff[i] == sign * yx.coeff[i]);
        // graded Leibniz: d(x y) = dx y + (-1)^p x dy
        DGElement lhs = a.d(xy);
        DGElement rhs = a.wedge(a.d(x), y);
        DGElement x_dy = a.wedge(x, a.d(y));
        Rat s = p % 2 == 0 ? Rat(1) : Rat(-1);
        for (std::size_t i = 0; i < lhs.coeff.size(); ++i)
          CHECK(lhs.coeff[i] == rhs.coeff[i] + s * x_dy.coeff[i]);
      }
  }
}

TEST_CASE("Iwasawa model Betti numbers against the dense oracle") {
  CEAlgebra a = CEAlgebra::iwasawa_model(+1);
  std::vector<std::size_t> b = a.betti();
  CHECK(b == std::vector<std::size_t>{1, 4, 8, 10, 8, 4, 1});

  // independent dense-matrix rank oracle (own Leibniz expansion + Bareiss)
  std::vector<std::vector<std::array<long, 3>>> dnum(6);
  std::vector<long> dden(6, 1);
  dnum[2] = {{1, 0, 1}};
  dnum[5] = {{1, 3, 4}};
  auto dd = oracles::dense_differential(6, dnum, dden);
  CHECK(oracles::dense_betti(dd) == b);

  // the sign convention for d gamma does not affect any rank
  CEAlgebra flipped = CEAlgebra::iwasawa_model(-1);
  CHECK(flipped.betti() == b);
  std::vector<std::vector<std::array<long, 3>>> dnum2(6);
  dnum2[2] = {{-1, 0, 1}};
  dnum2[5] = {{-1, 3, 4}};
  CHECK(oracles::dense_betti(oracles::dense_differential(6, dnum2, dden)) == b);
}

TEST_CASE("Poincare duality and Euler characteristic on the corpus") {
  std::vector<CEAlgebra> corpus;
  corpus.push_back(CEAlgebra::iwasawa_model());
  corpus.push_back(CEAlgebra::from_nilpotent_algebra(zero_constants(6)));
  corpus.push_back(CEAlgebra::from_nilpotent_algebra(real_iwasawa_constants()));
  {
    auto c = zero_constants(3);
    set_bracket(c, 0, 1, 2, 1);
    corpus.push_back(CEAlgebra::from_nilpotent_algebra(c));
  }
  for (const auto& a : corpus) {
    auto b = a.betti();
    long chi = 0;
    for (std::size_t k = 0; k < b.size(); ++k) {
      CHECK(b[k] == b[b.size() - 1 - k]); // Poincare duality of ranks
      chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(b[k]);
    }
    CHECK(chi == 0);
  }
}

TEST_CASE("closed and exact certificates") {
  CEAlgebra a = CEAlgebra::iwasawa_model(+1);

  // omega = (alpha alphabar + beta betabar) gamma gammabar is closed
  DGElement omega = a.wedge(a.wedge_of({0, 3}), a.wedge_of({2, 5}));
  DGElement t2 = a.wedge(a.wedge_of({1, 4}), a.wedge_of({2, 5}));
  for (std::size_t i = 0; i < omega.coeff.size(); ++i) omega.coeff[i] += t2.coeff[i];
  CHECK(a.is_closed(omega));
  CHECK_FALSE(a.primitive_of(omega).has_value()); // closed but not exact

  // tau = alpha beta alphabar betabar = d(gamma alphabar betabar)
  DGElement tau = a.wedge_of({0, 1, 3, 4});
  CHECK(a.is_closed(tau));
  DGElement primitive = a.wedge_of({2, 3, 4});
  CHECK(a.d(primitive).coeff == tau.coeff);
  auto found = a.primitive_of(tau);
  REQUIRE(found.has_value());
  CHECK(a.d(*found).coeff == tau.coeff);

  // alpha is closed and not exact (a b1 generator)
  DGElement alpha = a.generator_element(0);
  CHECK(a.is_closed(alpha));
  CHECK_FALSE(a.primitive_of(alpha).has_value());

  // d gamma = alpha beta is exact by construction
  DGElement dgamma = a.d(a.generator_element(2));
  auto g = a.primitive_of(dgamma);
  REQUIRE(g.has_value());
  CHECK(a.d(*g).coeff == dgamma.coeff);
}

TEST_CASE("Frolicher pages of the abelian model degenerate at E1") {
  CEAlgebra a = CEAlgebra::create(
      {{"a", 1, 0}, {"b", 1, 0}, {"c", 1, 0}, {"ab", 0, 1}, {"bb", 0, 1}, {"cb", 0, 1}},
      std::vector<std::vector<DTerm>>(6));
  auto pages = a.frolicher_pages(3);
  REQUIRE(pages.size() == 3);
  CHECK(page_total(pages[0]) == 64);
  CHECK(pages[0] == pages[1]);
  CHECK(pages[1] == pages[2]);
  auto b = a.betti();
  auto by_deg = page_total_by_degree(pages[2], 6);
  for (std::size_t k = 0; k <= 6; ++k) CHECK(by_deg[k] == b[k]);
}

TEST_CASE("Frolicher pages of the Iwasawa model") {
  CEAlgebra a = CEAlgebra::iwasawa_model(+1);
  auto pages = a.frolicher_pages(4);

  // E1 = invariant Dolbeault table
  std::vector<std::vector<std::size_t>> e1_expected{
      {1, 2, 2, 1}, {3, 6, 6, 3}, {3, 6, 6, 3}, {1, 2, 2, 1}};
  CHECK(pages[0] == e1_expected);
  CHECK(page_total(pages[0]) == 48); // strictly larger than sum of Betti numbers

  std::vector<std::vector<std::size_t>> e2_expected{
      {1, 2, 2, 1}, {2, 4, 4, 2}, {2, 4, 4, 2}, {1, 2, 2, 1}};
  CHECK(pages[1] == e2_expected);
  CHECK(page_total(pages[1]) == 36);
  CHECK(pages[1] == pages[2]); // stabilizes at E2
  CHECK(pages[2] == pages[3]);

  auto b = a.betti();
  auto by_deg = page_total_by_degree(pages[3], 6);
  for (std::size_t k = 0; k <= 6; ++k) CHECK(by_deg[k] == b[k]); // E-infinity totals = Betti

  // page monotonicity
  CHECK(page_total(pages[0]) >= page_total(pages[1]));
  CHECK(page_total(pages[1]) >= page_total(pages[2]));
}

TEST_CASE("page monotonicity and stabilization on randomized bigraded algebras") {
  // two-step differentials (values on closed generators only) square to zero
  // by construction, so random instances are always admissible
  std::vector<CEGenerator> gens{{"a", 1, 0}, {"b", 1, 0}, {"ab", 0, 1}, {"bb", 0, 1},
                                {"c", 1, 0},  {"cb", 0, 1}};
  std::uniform_int_distribution<int> coin(-2, 2);
  for (int trial = 0; trial < 15; ++trial) {
    std::vector<std::vector<DTerm>> d(6);
    // d c picks types (2,0) and (1,1); d cb picks (1,1) and (0,2)
    for (auto [i, j] : {std::pair<int, int>{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}}) {
      int v = coin(oracles::rng());
      if (v != 0) d[4].push_back(DTerm{Rat(v), std::size_t(i), std::size_t(j)});
    }
    for (auto [i, j] : {std::pair<int, int>{2, 3}, {0, 2}, {0, 3}, {1, 2}, {1, 3}}) {
      int v = coin(oracles::rng());
      if (v != 0) d[5].push_back(DTerm{Rat(v), std::size_t(i), std::size_t(j)});
    }
    CEAlgebra a = CEAlgebra::create(gens, d);
    auto b = a.betti();
    std::size_t btotal = 0;
    for (auto v : b) btotal += v;
    auto pages = a.frolicher_pages(5);
    std::size_t prev = page_total(pages[0]);
    CHECK(prev >= btotal);
    for (std::size_t r = 1; r < pages.size(); ++r) {
      std::size_t cur = page_total(pages[r]);
      CHECK(cur <= prev); // monotone
      prev = cur;
    }
    CHECK(prev == btotal); // stabilized to the Betti total
    auto by_deg = page_total_by_degree(pages.back(), 6);
    for (std::size_t k = 0; k <= 6; ++k) CHECK(by_deg[k] == b[k]);
    CHECK(pages[3] == pages[4]); // stable page by r = 4 on a 6-generator algebra
  }
}

TEST_CASE("primitives of random exact elements") {
  CEAlgebra a = CEAlgebra::iwasawa_model();
  for (int trial = 0; trial < 30; ++trial) {
    for (std::size_t deg = 1; deg <= 5; ++deg) {
      DGElement y = a.zero(deg);
      for (auto& c : y.coeff) c = oracles::random_rational(5, 3);
      DGElement x = a.d(y);
      auto p = a.primitive_of(x);
      REQUIRE(p.has_value());
      CHECK(a.d(*p).coeff == x.coeff);
    }
  }
}

TEST_CASE("generator count is capped") {
  CHECK_THROWS_AS(CEAlgebra::create({}, {}), Error);
  std::vector<CEGenerator> many(13, CEGenerator{"x", 1, 0});
  CHECK_THROWS_AS(CEAlgebra::create(many, std::vector<std::vector<DTerm>>(13)), Error);
}

TEST_CASE("frolicher rejects differentials with stray bidegrees") {
  std::vector<CEGenerator> gens{{"a", 1, 0}, {"ab", 0, 1}, {"bb", 0, 1}};
  std::vector<std::vector<DTerm>> d(3);
  d[0] = {DTerm{Rat(1), 1, 2}}; // d of a (1,0)-generator lands in (0,2)
  CEAlgebra a = CEAlgebra::create(gens, d);
  CHECK_FALSE(a.differential_is_bigraded());
  CHECK_THROWS_AS(a.frolicher_pages(2), Error);
  CHECK_NOTHROW(a.betti()); // ungraded invariants still fine
}

TEST_CASE("perturbed structure constants that break Jacobi break d^2 = 0") {
  // directly feed the CE differential of a non-Lie bracket into create
  std::vector<CEGenerator> gens{{"x1", 1, 0}, {"x2", 1, 0}, {"x3", 1, 0}, {"x4", 1, 0}};
  std::vector<std::vector<DTerm>> d(4);
  d[3] = {DTerm{Rat(1), 0, 1}};
  d[2] = {DTerm{Rat(1), 0, 3}}; // d x3 = x1 x4, d x4 = x1 x2: d(d x3) = -x1 x1 x2 = 0 ok
  CHECK_NOTHROW(CEAlgebra::create(gens, d));
  d[2] = {DTerm{Rat(1), 1, 3}};
  d[3] = {DTerm{Rat(1), 0, 2}}; // d x3 = x2 x4, d x4 = x1 x3: d(d x4) = -x1 x2 x4 != 0
  CHECK_THROWS_AS(CEAlgebra::create(gens, d), Error);
}
