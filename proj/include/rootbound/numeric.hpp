#ifndef ROOTBOUND_NUMERIC_HPP
#define ROOTBOUND_NUMERIC_HPP

// Exact scalar arithmetic. Everything downstream works over Q; there is no
// floating point anywhere in this library.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace rootbound {

struct invalid_input : std::runtime_error {
  explicit invalid_input(const std::string& what) : std::runtime_error(what) {}
};

struct unsupported_dimension : std::runtime_error {
  explicit unsupported_dimension(const std::string& what) : std::runtime_error(what) {}
};

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline int sgn(const Int& a) { return a.sign(); }
inline int sgn(const Rational& q) { return q.sign(); }

inline Int int_gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int int_lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

// The two-argument Rational constructor requires a positive denominator;
// this quotient form normalizes any nonzero one.
inline Rational make_rational(const Int& p, const Int& q) {
  if (q == 0) throw invalid_input("make_rational: zero denominator");
  return Rational(p) / Rational(q);
}

// floor(q), exact.
inline Int ifloor(const Rational& q) {
  Int n = num(q), d = den(q);
  Int t = n / d;  // truncated toward zero
  if (n < 0 && t * d != n) --t;
  return t;
}

inline Int iceil(const Rational& q) { return -ifloor(-q); }

inline bool is_integer(const Rational& q) { return den(q) == 1; }

inline std::string to_string(const Int& a) { return a.str(); }

// Lowest terms, "p" or "p/q"; cpp_rational keeps gcd 1 and positive denominator.
inline std::string to_string(const Rational& q) {
  if (den(q) == 1) return num(q).str();
  return num(q).str() + "/" + den(q).str();
}

}  // namespace rootbound

#endif
