#pragma once

// Theorem-level verification pipelines. Checks never re-implement any
// mathematics; they compose the other modules, so a passing check is evidence
// about those modules. Every failing verdict carries a concrete witness, and
// reports are deterministic for a given input (timings aside).

#include <chrono>
#include <future>
#include <string>
#include <utility>
#include <vector>

#include "ce.hpp"
#include "chern.hpp"
#include "heisenberg.hpp"
#include "json_io.hpp"
#include "torus.hpp"
#include "zlattice.hpp"

namespace iwa {

struct VerificationReport {
  std::string check;  // stable machine name
  std::string claim;  // the mathematical statement being exercised
  bool pass = false;
  Json witnesses = Json::object();
  double duration_ms = 0.0;

  Json to_json(bool with_timing = true) const {
    Json j{{"check", check}, {"claim", claim}, {"pass", pass}, {"witnesses", witnesses}};
    if (with_timing) j["duration_ms"] = duration_ms;
    return j;
  }
};

namespace detail {

template <typename F>
VerificationReport timed_check(std::string name, std::string claim, F&& body) {
  VerificationReport r;
  r.check = std::move(name);
  r.claim = std::move(claim);
  auto t0 = std::chrono::steady_clock::now();
  body(r);
  r.duration_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

} // namespace detail

// The base torus of validated bundle data has maximal Picard number: rho = 4
// and the rational (2,0)+(0,2) part has dimension 2. The torus-level assertion
// is exposed separately so corrupted tori can be fed to it as negative controls.
inline VerificationReport check_maximal_picard_torus(const TorusJ& t) {
  return detail::timed_check("maximal-picard", "base torus has rho = g^2 = 4 and rational (2,0)+(0,2) dimension 2",
                             [&](VerificationReport& r) {
                               std::size_t rho = picard_number(t);
                               std::size_t h20 = h20_02_dim(t);
                               r.pass = rho == 4 && h20 == 2;
                               r.witnesses = Json{{"rho", rho}, {"h20_02", h20}};
                             });
}

inline VerificationReport check_maximal_picard(const HeisLattice& l) {
  return check_maximal_picard_torus(TorusJ::from_klattice(l.delta(), l.field()));
}

// Shared comparison used by the CM-field check; fails with the offending pair.
inline bool cm_fields_agree(const std::vector<CMOrder>& orders, Json& witness) {
  for (std::size_t i = 1; i < orders.size(); ++i)
    if (orders[i].field != orders.front().field) {
      witness = Json{{"first", to_json(orders.front())}, {"other", to_json(orders[i])}, {"index", i}};
      return false;
    }
  return true;
}

// Fiber curve and the two complementary subtorus curves of the base all carry
// complex multiplication by the same field K = Q(sqrt(-d)).
inline VerificationReport check_cm_fields(const HeisLattice& l) {
  return detail::timed_check(
      "cm-fields", "fiber curve and both isogeny factors of the base carry CM by Q(sqrt(-d))",
      [&](VerificationReport& r) {
        IsogenyDecomposition dec = decompose_isogeny(TorusJ::from_klattice(l.delta(), l.field()));
        CMOrder fiber = endomorphism_order(TorusJ::from_klattice(l.gamma(), l.field()));
        CMOrder e1 = endomorphism_order(TorusJ::from_klattice(dec.first.curve_lattice, l.field()));
        CMOrder e2 = endomorphism_order(TorusJ::from_klattice(dec.second.curve_lattice, l.field()));
        Json wit;
        bool same = cm_fields_agree({fiber, e1, e2}, wit);
        bool expected = fiber.field.d == l.field().d;
        r.pass = same && expected;
        r.witnesses = Json{{"fiber", to_json(fiber)},
                           {"factor1", to_json(e1)},
                           {"factor2", to_json(e2)},
                           {"isogeny_degree", dec.degree.str()}};
        if (!same) r.witnesses["mismatch"] = wit;
      });
}

// For every K-line of bounded height: the restricted cocycle is the zero form,
// the lifted line is an abelian subalgebra (zero-bracket certificate), and the
// preimage of the subtorus splits as (base curve) x (fiber curve).
inline VerificationReport check_subtorus_splitting(const HeisLattice& l, unsigned height) {
  return detail::timed_check(
      "subtorus-splitting",
      "cocycle restricts to zero on every K-line and the extension splits over it",
      [&](VerificationReport& r) {
        IwasawaData data = extract_iwasawa(l);
        CocycleForm c = CocycleForm::standard(data);
        TypeCertificate type = verify_holomorphic_type(c);
        TorusJ t = TorusJ::from_klattice(l.delta(), l.field());
        auto lines = enumerate_elliptic_subtori(t, height);

        bool all = type.pass();
        Json entries = Json::array();
        for (const auto& sub : lines) {
          RestrictedForm rest = restrict_to_subtorus(c, sub.sublattice);
          LineSplitting split = split_over_line(data, sub.sublattice.basis_row(0));
          CMOrder curve = endomorphism_order(TorusJ::from_klattice(sub.curve_lattice, l.field()));
          bool ok = rest.zero && split.split;
          all = all && ok;
          entries.push_back(Json{{"line", Json{{"v1", to_json(sub.line.first)}, {"v2", to_json(sub.line.second)}}},
                                 {"restriction_zero", rest.zero},
                                 {"brackets_zero", split.split},
                                 {"split_torus", Json{{"base_curve_lattice", to_json(sub.sublattice)},
                                                      {"fiber_lattice", to_json(l.gamma())},
                                                      {"base_curve_cm", to_json(curve)}}}});
        }
        r.pass = all;
        r.witnesses = Json{{"holomorphic_type",
                            Json{{"alternating", type.alternating},
                                 {"k_bilinear", type.k_bilinear},
                                 {"nondegenerate", type.nondegenerate}}},
                           {"height", height},
                           {"lines", entries}};
      });
}

// construct followed by extract returns the input (Delta, Gamma, q); a cocycle
// violation is reported with the offending basis pair.
inline VerificationReport check_construct_roundtrip(const ZLattice& delta, const ZLattice& gamma, QuadField f) {
  return detail::timed_check(
      "construct-roundtrip", "extracting the constructed lattice returns (Delta, Gamma, q) unchanged",
      [&](VerificationReport& r) {
        try {
          HeisLattice l = construct_iwasawa(delta, gamma, f);
          IwasawaData out = extract_iwasawa(l);
          bool eq = out.delta == delta && out.gamma == gamma;
          bool qeq = true;
          auto gram = l.q_gram();
          for (std::size_t i = 0; i < 4 && qeq; ++i)
            for (std::size_t j = 0; j < 4 && qeq; ++j) qeq = gram[i][j] == out.q_on_basis[i][j];
          r.pass = eq && qeq;
          r.witnesses = Json{{"delta_equal", out.delta == delta}, {"gamma_equal", out.gamma == gamma},
                             {"q_equal", qeq}};
        } catch (const CocycleConditionViolated& e) {
          r.pass = false;
          r.witnesses = Json{{"violation", Json{{"i", e.i}, {"j", e.j}, {"value", to_json(e.value)}}}};
        } catch (const NotCocompactError& e) {
          r.pass = false;
          r.witnesses = Json{{"rank_failure", Json{{"which", e.which}, {"observed", e.observed},
                                                   {"required", e.required}}}};
        }
      });
}

// The de Rham model: Betti numbers (1,4,8,10,8,4,1), Poincare duality, zero
// Euler characteristic, b1 = rank(Delta), the closed (2,2) form, the exact
// positive (2,2) form with its primitive, and a Frolicher sequence that is
// nondegenerate at E1 and stabilizes to the Betti totals at E2.
inline VerificationReport check_de_rham_model(const HeisLattice& l) {
  return detail::timed_check(
      "de-rham-model", "invariant-form model has the expected cohomology and certificates",
      [&](VerificationReport& r) {
        CEAlgebra a = CEAlgebra::iwasawa_model(+1);
        auto b = a.betti();
        const std::vector<std::size_t> expect{1, 4, 8, 10, 8, 4, 1};
        bool betti_ok = b == expect;
        bool pd = true, chi0 = true;
        long chi = 0;
        for (std::size_t k = 0; k <= 6; ++k) {
          pd = pd && b[k] == b[6 - k];
          chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(b[k]);
        }
        chi0 = chi == 0;
        bool b1_rank = b[1] == l.delta().rank();

        // omega = (alpha alphabar + beta betabar) gamma gammabar is closed
        DGElement omega = a.wedge(a.wedge_of({0, 3}) , a.wedge_of({2, 5}));
        {
          DGElement t2 = a.wedge(a.wedge_of({1, 4}), a.wedge_of({2, 5}));
          for (std::size_t i = 0; i < omega.coeff.size(); ++i) omega.coeff[i] += t2.coeff[i];
        }
        bool omega_closed = a.is_closed(omega);

        // tau = alpha beta alphabar betabar is exact with primitive gamma alphabar betabar
        DGElement tau = a.wedge_of({0, 1, 3, 4});
        DGElement candidate = a.wedge_of({2, 3, 4});
        bool primitive_ok = a.d(candidate).coeff == tau.coeff;
        auto solved = a.primitive_of(tau);
        bool exact_ok = solved && a.d(*solved).coeff == tau.coeff;

        auto pages = a.frolicher_pages(4);
        auto total = [&](std::size_t rp) {
          std::size_t s = 0;
          for (const auto& row : pages[rp])
            for (auto v : row) s += v;
          return s;
        };
        bool e1_nondegenerate = total(0) > 36;
        bool stabilize = total(1) == 36 && total(2) == 36 && total(3) == 36 && pages[1] == pages[2] &&
                         pages[2] == pages[3];

        // the adopted orientation of d gamma is a convention: flipping the sign
        // leaves every Betti number unchanged
        bool sign_insensitive = CEAlgebra::iwasawa_model(-1).betti() == b;

        r.pass = betti_ok && pd && chi0 && b1_rank && omega_closed && primitive_ok && exact_ok &&
                 e1_nondegenerate && stabilize && sign_insensitive;
        r.witnesses = Json{{"betti", b},
                           {"poincare_duality", pd},
                           {"euler_characteristic_zero", chi0},
                           {"b1_equals_rank_delta", b1_rank},
                           {"omega_closed", omega_closed},
                           {"tau_primitive_verified", primitive_ok},
                           {"tau_exact", exact_ok},
                           {"e1_total", total(0)},
                           {"e2_total", total(1)},
                           {"stabilizes_to_betti", stabilize},
                           {"sign_flip_invariant", sign_insensitive}};
      });
}

// Runs the whole battery concurrently; reports are merged in a fixed order.
inline std::vector<VerificationReport> run_all_checks(const HeisLattice& l, unsigned height) {
  IwasawaData data = extract_iwasawa(l);
  auto f0 = std::async(std::launch::async, [&] { return check_construct_roundtrip(data.delta, data.gamma, data.field); });
  auto f1 = std::async(std::launch::async, [&] { return check_maximal_picard(l); });
  auto f2 = std::async(std::launch::async, [&] { return check_cm_fields(l); });
  auto f3 = std::async(std::launch::async, [&] { return check_subtorus_splitting(l, height); });
  auto f4 = std::async(std::launch::async, [&] { return check_de_rham_model(l); });
  std::vector<VerificationReport> out;
  out.push_back(f0.get());
  out.push_back(f1.get());
  out.push_back(f2.get());
  out.push_back(f3.get());
  out.push_back(f4.get());
  return out;
}

} // namespace iwa
