#pragma once

// Exact integers and rationals. All coefficient arithmetic in the library is
// built on these; no floating point appears anywhere.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"

namespace iwa {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational; // stored in lowest terms, denominator > 0

using VecZ = std::vector<Int>;
using VecQ = std::vector<Rat>;

inline Int rat_num(const Rat& x) { return numerator(x); }
inline Int rat_den(const Rat& x) { return denominator(x); }

inline int sign(const Int& x) { return x.sign(); }
inline int sign(const Rat& x) { return x.sign(); }

inline Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

// Floored quotient (remainder has the divisor's sign stripped into [0, |b|)).
inline Int floor_div(const Int& a, const Int& b) {
  if (b == 0) throw DivisionByZeroError();
  Int q = a / b;
  if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int rat_floor(const Rat& x) { return floor_div(rat_num(x), rat_den(x)); }

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

// Serialized form: "p/q", or just "p" when the denominator is 1.
inline std::string format_rational(const Rat& x) { return x.str(); }

namespace detail {
inline bool is_integer_token(const std::string& s) {
  std::size_t i = (!s.empty() && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
  if (i >= s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}
} // namespace detail

inline Rat parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  const std::string ns = s.substr(0, slash);
  if (!detail::is_integer_token(ns)) throw Error("invalid rational \"" + s + "\"");
  Int n(ns);
  if (slash == std::string::npos) return Rat(n);
  const std::string ds = s.substr(slash + 1);
  if (!detail::is_integer_token(ds)) throw Error("invalid rational \"" + s + "\"");
  Int d(ds);
  if (d == 0) throw Error("invalid rational \"" + s + "\": zero denominator");
  if (d < 0) { n = -n; d = -d; }
  return Rat(n, d);
}

inline bool is_integral(const Rat& x) { return rat_den(x) == 1; }

// lcm of the denominators of a family of rationals; 1 for an empty family.
inline Int common_denominator(const VecQ& v) {
  Int l = 1;
  for (const auto& x : v) l = lcm(l, rat_den(x));
  return l;
}

} // namespace iwa
