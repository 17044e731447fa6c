#pragma once

// Real algebraic field Q(theta): theta is pinned down by a monic irreducible
// minimal polynomial together with an isolating interval with rational
// endpoints. Elements are coefficient vectors in the power basis
// 1, theta, ..., theta^(deg-1); equality is coefficient equality. Signs of
// elements are decided exactly by rational interval bisection.

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "polynomial.hpp"
#include "rational.hpp"

namespace iwa {

class RealAlgField {
public:
  static RealAlgField create(PolyQ minpoly, Rat lo, Rat hi) {
    if (minpoly.degree() < 1) throw Error("minimal polynomial must have positive degree");
    if (!minpoly.is_monic()) throw Error("minimal polynomial must be monic");
    if (!is_irreducible_over_q(minpoly)) throw Error("minimal polynomial is reducible over Q");
    if (!(lo < hi)) throw Error("isolating interval must satisfy lo < hi");
    if (minpoly.eval(lo) == 0 || minpoly.eval(hi) == 0)
      throw Error("isolating interval endpoints must not be roots");
    if (count_real_roots(minpoly, lo, hi) != 1)
      throw Error("interval does not isolate exactly one real root");
    return RealAlgField(std::make_shared<const Data>(Data{std::move(minpoly), std::move(lo), std::move(hi)}));
  }

  // Q itself, presented as the degree-one field with theta = 0.
  static RealAlgField rationals() {
    static const RealAlgField f = create(PolyQ::x(), Rat(-1), Rat(1));
    return f;
  }

  int degree() const { return d_->minpoly.degree(); }
  const PolyQ& minpoly() const { return d_->minpoly; }
  const Rat& lo() const { return d_->lo; }
  const Rat& hi() const { return d_->hi; }

  // Descriptors are canonical: equality is exact equality of the defining data.
  friend bool operator==(const RealAlgField& x, const RealAlgField& y) {
    return x.d_ == y.d_ || (x.d_->minpoly == y.d_->minpoly && x.d_->lo == y.d_->lo && x.d_->hi == y.d_->hi);
  }
  friend bool operator!=(const RealAlgField& x, const RealAlgField& y) { return !(x == y); }

private:
  struct Data {
    PolyQ minpoly;
    Rat lo, hi;
  };
  explicit RealAlgField(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

namespace detail {

struct RatInterval {
  Rat lo, hi;

  RatInterval operator+(const RatInterval& o) const { return {lo + o.lo, hi + o.hi}; }
  RatInterval operator*(const RatInterval& o) const {
    Rat a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
    Rat mn = a, mx = a;
    for (const Rat* v : {&b, &c, &d}) {
      if (*v < mn) mn = *v;
      if (*v > mx) mx = *v;
    }
    return {mn, mx};
  }
};

} // namespace detail

class RealAlgElem {
public:
  RealAlgElem(RealAlgField f, VecQ coeffs) : f_(std::move(f)), c_(std::move(coeffs)) {
    if (static_cast<int>(c_.size()) != f_.degree())
      throw Error("coefficient vector length does not match field degree");
  }

  static RealAlgElem from_rational(const RealAlgField& f, Rat v) {
    VecQ c(f.degree(), Rat(0));
    c[0] = std::move(v);
    return RealAlgElem(f, std::move(c));
  }
  static RealAlgElem zero(const RealAlgField& f) { return from_rational(f, 0); }
  static RealAlgElem one(const RealAlgField& f) { return from_rational(f, 1); }

  // The generator theta; for a degree-one field this is the rational root itself.
  static RealAlgElem theta(const RealAlgField& f) {
    if (f.degree() == 1) return from_rational(f, -f.minpoly().coeff(0));
    VecQ c(f.degree(), Rat(0));
    c[1] = 1;
    return RealAlgElem(f, std::move(c));
  }

  const RealAlgField& field() const { return f_; }
  const VecQ& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }

  bool is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }
  Rat as_rational() const {
    if (!is_rational()) throw PreconditionError("element is not rational");
    return c_[0];
  }

  friend RealAlgElem operator-(const RealAlgElem& x) {
    VecQ c = x.c_;
    for (auto& v : c) v = -v;
    return RealAlgElem(x.f_, std::move(c));
  }
  friend RealAlgElem operator+(const RealAlgElem& x, const RealAlgElem& y) {
    same_field(x, y);
    VecQ c = x.c_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += y.c_[i];
    return RealAlgElem(x.f_, std::move(c));
  }
  friend RealAlgElem operator-(const RealAlgElem& x, const RealAlgElem& y) { return x + (-y); }

  friend RealAlgElem operator*(const RealAlgElem& x, const RealAlgElem& y) {
    same_field(x, y);
    PolyQ prod = PolyQ(x.c_) * PolyQ(y.c_);
    return x.reduce(prod);
  }
  friend RealAlgElem operator*(const Rat& s, const RealAlgElem& x) {
    VecQ c = x.c_;
    for (auto& v : c) v *= s;
    return RealAlgElem(x.f_, std::move(c));
  }
  friend RealAlgElem operator*(const RealAlgElem& x, const Rat& s) { return s * x; }

  RealAlgElem inverse() const {
    if (is_zero()) throw DivisionByZeroError();
    PolyQ s, t;
    PolyQ g = PolyQ::ext_gcd(PolyQ(c_), f_.minpoly(), s, t);
    if (g.degree() != 0) throw std::logic_error("minimal polynomial not coprime with nonzero element");
    return reduce(Rat(1) / g.coeff(0) * s);
  }
  friend RealAlgElem operator/(const RealAlgElem& x, const RealAlgElem& y) {
    same_field(x, y);
    return x * y.inverse();
  }

  friend bool operator==(const RealAlgElem& x, const RealAlgElem& y) {
    return x.f_ == y.f_ && x.c_ == y.c_;
  }
  friend bool operator!=(const RealAlgElem& x, const RealAlgElem& y) { return !(x == y); }

  // Exact sign. An element is zero iff its coefficient vector is zero, since a
  // nonzero expression of degree < deg(minpoly) cannot vanish at theta; for
  // nonzero elements rational interval bisection terminates.
  int sign() const {
    if (is_zero()) return 0;
    if (f_.degree() == 1) return iwa::sign(c_[0]);
    Rat lo = f_.lo(), hi = f_.hi();
    const PolyQ& m = f_.minpoly();
    int slo = iwa::sign(m.eval(lo));
    for (int iter = 0; iter < 100000; ++iter) {
      detail::RatInterval acc{c_.back(), c_.back()};
      const detail::RatInterval th{lo, hi};
      for (std::size_t i = c_.size() - 1; i-- > 0;) acc = acc * th + detail::RatInterval{c_[i], c_[i]};
      if (acc.lo > 0) return 1;
      if (acc.hi < 0) return -1;
      Rat mid = (lo + hi) / 2; // never a root: irreducible of degree >= 2 has no rational roots
      if (iwa::sign(m.eval(mid)) == slo) lo = mid;
      else hi = mid;
    }
    throw std::logic_error("sign bisection failed to converge");
  }

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      if (!s.empty()) s += " + ";
      s += format_rational(c_[i]);
      if (i >= 1) s += "*theta" + (i > 1 ? "^" + std::to_string(i) : "");
    }
    return s.empty() ? "0" : s;
  }

private:
  static void same_field(const RealAlgElem& x, const RealAlgElem& y) {
    if (x.f_ != y.f_) throw FieldMismatchError("mixed real algebraic fields");
  }

  RealAlgElem reduce(const PolyQ& p) const {
    PolyQ r = PolyQ::divmod(p, f_.minpoly()).second;
    VecQ c(f_.degree(), Rat(0));
    for (int i = 0; i <= r.degree(); ++i) c[i] = r.coeff(i);
    return RealAlgElem(f_, std::move(c));
  }

  RealAlgField f_;
  VecQ c_;
};

// The field Q(sqrt(n)) together with sqrt(n) as an element; collapses to Q
// when n is a perfect square.
inline std::pair<RealAlgField, RealAlgElem> sqrt_with_field(std::int64_t n) {
  if (n < 1) throw Error("square root field needs a positive radicand");
  std::int64_t r = 0;
  while ((r + 1) * (r + 1) <= n) ++r;
  if (r * r == n) {
    RealAlgField f = RealAlgField::rationals();
    return {f, RealAlgElem::from_rational(f, Rat(r))};
  }
  RealAlgField f = RealAlgField::create(PolyQ(VecQ{Rat(-n), Rat(0), Rat(1)}), Rat(0), Rat(n + 1));
  return {f, RealAlgElem::theta(f)};
}

} // namespace iwa
