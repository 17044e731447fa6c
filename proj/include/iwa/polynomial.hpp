#pragma once

// Dense univariate polynomials over Q: division, gcd, Sturm chains for exact
// real-root counting, and a Kronecker-style irreducibility certificate. Used
// by the real algebraic field layer.

#include <algorithm>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace iwa {

class PolyQ {
public:
  PolyQ() = default;
  explicit PolyQ(VecQ coeffs) : c_(std::move(coeffs)) { trim(); }

  static PolyQ constant(Rat r) { return PolyQ(VecQ{std::move(r)}); }
  static PolyQ x() { return PolyQ(VecQ{Rat(0), Rat(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for the zero polynomial
  bool is_zero() const { return c_.empty(); }
  const VecQ& coeffs() const { return c_; }

  Rat coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }
  const Rat& lead() const { return c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  friend PolyQ operator+(const PolyQ& f, const PolyQ& g) {
    VecQ r(std::max(f.c_.size(), g.c_.size()), Rat(0));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = f.coeff(i) + g.coeff(i);
    return PolyQ(std::move(r));
  }
  friend PolyQ operator-(const PolyQ& f, const PolyQ& g) {
    VecQ r(std::max(f.c_.size(), g.c_.size()), Rat(0));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = f.coeff(i) - g.coeff(i);
    return PolyQ(std::move(r));
  }
  friend PolyQ operator*(const PolyQ& f, const PolyQ& g) {
    if (f.is_zero() || g.is_zero()) return PolyQ();
    VecQ r(f.c_.size() + g.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < f.c_.size(); ++i)
      for (std::size_t j = 0; j < g.c_.size(); ++j) r[i + j] += f.c_[i] * g.c_[j];
    return PolyQ(std::move(r));
  }
  friend PolyQ operator*(const Rat& s, const PolyQ& f) {
    if (s == 0) return PolyQ();
    VecQ r = f.c_;
    for (auto& x : r) x *= s;
    return PolyQ(std::move(r));
  }
  friend PolyQ operator-(const PolyQ& f) { return Rat(-1) * f; }

  friend bool operator==(const PolyQ& f, const PolyQ& g) { return f.c_ == g.c_; }
  friend bool operator!=(const PolyQ& f, const PolyQ& g) { return !(f == g); }

  // Euclidean division: f = q*g + r with deg r < deg g.
  static std::pair<PolyQ, PolyQ> divmod(const PolyQ& f, const PolyQ& g) {
    if (g.is_zero()) throw DivisionByZeroError("polynomial division by zero");
    VecQ rem = f.c_;
    VecQ quo(f.c_.size() > g.c_.size() ? f.c_.size() - g.c_.size() + 1 : 1, Rat(0));
    const int dg = g.degree();
    for (int i = static_cast<int>(rem.size()) - 1; i >= dg; --i) {
      if (rem[i] == 0) continue;
      Rat q = rem[i] / g.lead();
      quo[i - dg] = q;
      for (int j = 0; j <= dg; ++j) rem[i - dg + j] -= q * g.c_[j];
    }
    return {PolyQ(std::move(quo)), PolyQ(std::move(rem))};
  }

  PolyQ derivative() const {
    if (c_.size() <= 1) return PolyQ();
    VecQ r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = Rat(i) * c_[i];
    return PolyQ(std::move(r));
  }

  Rat eval(const Rat& x) const {
    Rat acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  PolyQ monic() const {
    if (is_zero()) return PolyQ();
    return Rat(1) / lead() * (*this);
  }

  static PolyQ gcd(PolyQ a, PolyQ b) {
    while (!b.is_zero()) {
      PolyQ r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  // g = gcd(a,b) = s*a + t*b, g monic (or zero).
  static PolyQ ext_gcd(const PolyQ& a, const PolyQ& b, PolyQ& s, PolyQ& t) {
    PolyQ r0 = a, r1 = b;
    PolyQ s0 = constant(1), s1;
    PolyQ t0, t1 = constant(1);
    while (!r1.is_zero()) {
      auto [q, r2] = divmod(r0, r1);
      PolyQ s2 = s0 - q * s1, t2 = t0 - q * t1;
      r0 = std::move(r1); r1 = std::move(r2);
      s0 = std::move(s1); s1 = std::move(s2);
      t0 = std::move(t1); t1 = std::move(t2);
    }
    if (r0.is_zero()) { s = PolyQ(); t = PolyQ(); return PolyQ(); }
    Rat inv = Rat(1) / r0.lead();
    s = inv * s0;
    t = inv * t0;
    return inv * r0;
  }

private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  VecQ c_;
};

// Sturm chain of the squarefree part of p.
inline std::vector<PolyQ> sturm_chain(const PolyQ& p) {
  PolyQ p0 = PolyQ::divmod(p, PolyQ::gcd(p, p.derivative())).first; // squarefree part
  std::vector<PolyQ> chain{p0, p0.derivative()};
  while (!chain.back().is_zero()) {
    PolyQ r = PolyQ::divmod(chain[chain.size() - 2], chain.back()).second;
    chain.push_back(-r);
  }
  chain.pop_back();
  return chain;
}

namespace detail {
inline int sign_variations(const std::vector<PolyQ>& chain, const Rat& x) {
  int var = 0, last = 0;
  for (const auto& f : chain) {
    int s = sign(f.eval(x));
    if (s != 0 && last != 0 && s != last) ++var;
    if (s != 0) last = s;
  }
  return var;
}
} // namespace detail

// Number of distinct real roots of p in (lo, hi). Requires p(lo), p(hi) != 0.
inline int count_real_roots(const PolyQ& p, const Rat& lo, const Rat& hi) {
  if (p.eval(lo) == 0 || p.eval(hi) == 0)
    throw PreconditionError("root counting requires interval endpoints that are not roots");
  auto chain = sturm_chain(p);
  return detail::sign_variations(chain, lo) - detail::sign_variations(chain, hi);
}

namespace detail {

inline std::vector<Int> divisors_signed(const Int& v) {
  Int a = abs_int(v);
  std::vector<Int> ds;
  for (Int k = 1; k * k <= a; ++k) {
    if (a % k == 0) {
      ds.push_back(k);
      if (k * k != a) ds.push_back(a / k);
    }
  }
  std::vector<Int> out;
  out.reserve(2 * ds.size());
  for (const auto& d : ds) { out.push_back(d); out.push_back(-d); }
  return out;
}

// Primitive integer polynomial proportional to p.
inline std::vector<Int> to_primitive_int(const PolyQ& p) {
  Int den = common_denominator(p.coeffs());
  std::vector<Int> w(p.coeffs().size());
  Int content = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = rat_num(p.coeffs()[i]) * (den / rat_den(p.coeffs()[i]));
    content = gcd(content, w[i]);
  }
  if (content > 1)
    for (auto& x : w) x /= content;
  return w;
}

inline PolyQ lagrange_interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
  PolyQ acc;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    PolyQ basis = PolyQ::constant(1);
    Rat denom(1);
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      basis = basis * PolyQ(VecQ{-xs[j], Rat(1)});
      denom *= xs[i] - xs[j];
    }
    acc = acc + (ys[i] / denom) * basis;
  }
  return acc;
}

} // namespace detail

// Exact irreducibility over Q via Kronecker's method (search a factor of each
// degree f <= deg/2 through divisor combinations of values at small integers).
// Only suitable for the small minimal polynomials this library handles; the
// work is capped and overflow of the cap raises an error rather than guessing.
inline bool is_irreducible_over_q(const PolyQ& p) {
  const int n = p.degree();
  if (n <= 0) return false;
  if (n == 1) return true;

  std::vector<Int> pz = detail::to_primitive_int(p);
  PolyQ pq(VecQ(pz.begin(), pz.end()));

  // Rational roots give linear factors.
  for (const auto& r : detail::divisors_signed(pz[0] == 0 ? Int(0) : pz[0])) {
    for (const auto& s : detail::divisors_signed(pz.back())) {
      if (s <= 0) continue;
      if (pq.eval(Rat(r, s)) == 0) return false;
    }
  }
  if (pz[0] == 0) return false; // root at 0

  for (int f = 2; f <= n / 2; ++f) {
    std::vector<Rat> xs;
    for (int k = 0; static_cast<int>(xs.size()) < f + 1; ++k) {
      xs.push_back(Rat(k));
      if (k > 0 && static_cast<int>(xs.size()) < f + 1) xs.push_back(Rat(-k));
    }
    std::vector<std::vector<Int>> divs;
    Int combos = 1;
    for (const auto& x : xs) {
      Rat v = pq.eval(x);
      if (v == 0) return false;
      divs.push_back(detail::divisors_signed(rat_num(v)));
      combos *= Int(divs.back().size());
      if (combos > 1000000)
        throw Error("irreducibility certificate too expensive for this polynomial");
    }
    // Fix the sign of the value at xs[0]; a factor and its negation divide alike.
    std::vector<std::size_t> idx(xs.size(), 0);
    while (true) {
      bool skip = divs[0][idx[0]] < 0;
      if (!skip) {
        std::vector<Rat> ys(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = Rat(divs[i][idx[i]]);
        PolyQ g = detail::lagrange_interpolate(xs, ys);
        if (g.degree() == f && PolyQ::divmod(pq, g).second.is_zero()) return false;
      }
      std::size_t i = 0;
      for (; i < idx.size(); ++i) {
        if (++idx[i] < divs[i].size()) break;
        idx[i] = 0;
      }
      if (i == idx.size()) break;
    }
  }
  return true;
}

} // namespace iwa
