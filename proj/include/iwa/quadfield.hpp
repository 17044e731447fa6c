#pragma once

// Imaginary quadratic fields K = Q(sqrt(-d)) and their elements a + b*sqrt(-d).
// The embedding into C is fixed once and for all: sqrt(-d) has positive
// imaginary part. Field descriptors are canonical, so d must be squarefree.

#include <cstdint>
#include <string>
#include <utility>

#include "errors.hpp"
#include "rational.hpp"

namespace iwa {

struct QuadField {
  std::int64_t d = 1;

  friend bool operator==(const QuadField& x, const QuadField& y) { return x.d == y.d; }
  friend bool operator!=(const QuadField& x, const QuadField& y) { return !(x == y); }
};

inline bool is_squarefree(std::int64_t d) {
  for (std::int64_t p = 2; p * p <= d; ++p)
    if (d % (p * p) == 0) return false;
  return true;
}

inline QuadField quad_field(std::int64_t d) {
  if (d < 1) throw Error("quadratic field parameter must be positive, got " + std::to_string(d));
  if (d > 1000000000000) throw Error("quadratic field parameter too large to certify squarefree");
  if (!is_squarefree(d)) throw Error("quadratic field parameter must be squarefree, got " + std::to_string(d));
  return QuadField{d};
}

class QuadElem {
public:
  QuadElem(QuadField f, Rat a, Rat b) : f_(f), a_(std::move(a)), b_(std::move(b)) {}

  static QuadElem zero(QuadField f) { return QuadElem(f, 0, 0); }
  static QuadElem one(QuadField f) { return QuadElem(f, 1, 0); }
  static QuadElem sqrt_gen(QuadField f) { return QuadElem(f, 0, 1); } // sqrt(-d)
  static QuadElem from_rational(QuadField f, Rat a) { return QuadElem(f, std::move(a), 0); }

  const QuadField& field() const { return f_; }
  const Rat& a() const { return a_; }
  const Rat& b() const { return b_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }

  QuadElem conj() const { return QuadElem(f_, a_, -b_); }
  Rat norm() const { return a_ * a_ + Rat(f_.d) * b_ * b_; } // nonnegative, zero iff zero

  friend QuadElem operator-(const QuadElem& x) { return QuadElem(x.f_, -x.a_, -x.b_); }

  friend QuadElem operator+(const QuadElem& x, const QuadElem& y) {
    same_field(x, y);
    return QuadElem(x.f_, x.a_ + y.a_, x.b_ + y.b_);
  }
  friend QuadElem operator-(const QuadElem& x, const QuadElem& y) { return x + (-y); }

  friend QuadElem operator*(const QuadElem& x, const QuadElem& y) {
    same_field(x, y);
    const Rat d(x.f_.d);
    return QuadElem(x.f_, x.a_ * y.a_ - d * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_);
  }

  friend QuadElem operator*(const Rat& s, const QuadElem& x) { return QuadElem(x.f_, s * x.a_, s * x.b_); }
  friend QuadElem operator*(const QuadElem& x, const Rat& s) { return s * x; }

  friend QuadElem operator/(const QuadElem& x, const QuadElem& y) {
    same_field(x, y);
    if (y.is_zero()) throw DivisionByZeroError();
    const Rat n = y.norm();
    QuadElem z = x * y.conj();
    return QuadElem(x.f_, z.a_ / n, z.b_ / n);
  }

  friend bool operator==(const QuadElem& x, const QuadElem& y) {
    return x.f_ == y.f_ && x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const QuadElem& x, const QuadElem& y) { return !(x == y); }

  std::string str() const {
    if (b_ == 0) return format_rational(a_);
    std::string s;
    if (a_ != 0) s += format_rational(a_) + (sign(b_) < 0 ? " - " : " + ");
    else if (sign(b_) < 0) s += "-";
    Rat ab = b_ < 0 ? Rat(-b_) : b_;
    if (ab != 1) s += format_rational(ab) + "*";
    s += "sqrt(-" + std::to_string(f_.d) + ")";
    return s;
  }

private:
  static void same_field(const QuadElem& x, const QuadElem& y) {
    if (x.f_ != y.f_)
      throw FieldMismatchError("mixed quadratic fields d=" + std::to_string(x.f_.d) + " and d=" +
                               std::to_string(y.f_.d));
  }

  QuadField f_;
  Rat a_, b_;
};

} // namespace iwa
