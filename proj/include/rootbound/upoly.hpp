#ifndef ROOTBOUND_UPOLY_HPP
#define ROOTBOUND_UPOLY_HPP

// Dense univariate polynomials over Q in the variable s.

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "rootbound/numeric.hpp"

namespace rootbound {

class UniPoly {
 public:
  UniPoly() = default;

  explicit UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UniPoly constant(const Rational& a) {
    UniPoly p;
    if (a != 0) p.c_.push_back(a);
    return p;
  }

  // The variable s itself.
  static UniPoly var() { return UniPoly({Rational(0), Rational(1)}); }

  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }

  // Degree of the zero polynomial is -1 by convention; callers that need
  // ord_inf must check is_zero() first.
  long degree() const { return static_cast<long>(c_.size()) - 1; }

  const std::vector<Rational>& coeffs() const { return c_; }

  Rational coeff(std::size_t k) const {
    return k < c_.size() ? c_[k] : Rational(0);
  }

  Rational lead() const { return c_.empty() ? Rational(0) : c_.back(); }

  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

  // Deterministic total order: by degree, then coefficients from s^0 up.
  friend bool operator<(const UniPoly& a, const UniPoly& b) {
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
    for (std::size_t k = 0; k < a.c_.size(); ++k)
      if (a.c_[k] != b.c_[k]) return a.c_[k] < b.c_[k];
    return false;
  }

  UniPoly operator-() const {
    UniPoly r(*this);
    for (auto& a : r.c_) a = -a;
    return r;
  }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
    return UniPoly(std::move(c));
  }

  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly();
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return UniPoly(std::move(c));
  }

  friend UniPoly operator*(const Rational& a, const UniPoly& b) {
    if (a == 0) return UniPoly();
    UniPoly r(b);
    for (auto& x : r.c_) x *= a;
    return r;
  }

  UniPoly pow(unsigned long e) const {
    UniPoly r = constant(Rational(1));
    UniPoly base(*this);
    while (e > 0) {
      if (e & 1) r = r * base;
      base = base * base;
      e >>= 1;
    }
    return r;
  }

  Rational eval(const Rational& v) const {
    Rational r(0);
    for (std::size_t k = c_.size(); k-- > 0;) r = r * v + c_[k];
    return r;
  }

  UniPoly derivative() const {
    if (c_.size() <= 1) return UniPoly();
    std::vector<Rational> c(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) c[k - 1] = Rational(k) * c_[k];
    return UniPoly(std::move(c));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Rational> c_;
};

// Convenience for tests and fixtures: coefficients lowest-first.
inline UniPoly upoly(std::vector<long> coeffs) {
  std::vector<Rational> c(coeffs.size());
  for (std::size_t k = 0; k < coeffs.size(); ++k) c[k] = Rational(coeffs[k]);
  return UniPoly(std::move(c));
}

// Euclidean division: a = q*b + r with deg r < deg b.
inline std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw invalid_input("divmod: division by the zero polynomial");
  std::vector<Rational> rem(a.coeffs());
  long db = b.degree();
  if (static_cast<long>(rem.size()) - 1 < db) return {UniPoly(), a};
  std::vector<Rational> quot(rem.size() - db, Rational(0));
  Rational lb = b.lead();
  for (long k = static_cast<long>(rem.size()) - 1; k >= db; --k) {
    if (rem[k] == 0) continue;
    Rational q = rem[k] / lb;
    quot[k - db] = q;
    for (long j = 0; j <= db; ++j) rem[k - db + j] -= q * b.coeff(j);
  }
  return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
}

inline bool divides(const UniPoly& b, const UniPoly& a) {
  return divmod(a, b).second.is_zero();
}

// Exact quotient; throws if the division is not exact.
inline UniPoly exact_div(const UniPoly& a, const UniPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw invalid_input("exact_div: inexact division");
  return q;
}

// Monic gcd; gcd(a, 0) = monic(a). Both zero is invalid.
inline UniPoly upoly_gcd(UniPoly a, UniPoly b) {
  if (a.is_zero() && b.is_zero()) throw invalid_input("upoly_gcd: both inputs zero");
  while (!b.is_zero()) {
    UniPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return (Rational(1) / a.lead()) * a;
}

// Multiplicity of the root v (0 if v is not a root).
inline long ord_at(const UniPoly& alpha, const Rational& v) {
  if (alpha.is_zero()) throw invalid_input("ord_at: zero polynomial");
  UniPoly lin({-v, Rational(1)});
  long m = 0;
  UniPoly p = alpha;
  for (;;) {
    auto [q, r] = divmod(p, lin);
    if (!r.is_zero()) return m;
    ++m;
    p = std::move(q);
  }
}

inline long ord_inf(const UniPoly& alpha) {
  if (alpha.is_zero()) throw invalid_input("ord_inf: zero polynomial");
  return -alpha.degree();
}

// Largest k with q^k dividing alpha, for non-constant q.
inline long ord_factor(const UniPoly& alpha, const UniPoly& q) {
  if (alpha.is_zero()) throw invalid_input("ord_factor: zero polynomial");
  if (q.is_constant()) throw invalid_input("ord_factor: constant factor");
  long m = 0;
  UniPoly p = alpha;
  for (;;) {
    auto [quo, rem] = divmod(p, q);
    if (!rem.is_zero()) return m;
    ++m;
    p = std::move(quo);
  }
}

// Coefficient of z^m in alpha(z + v) where m = ord_at(alpha, v); equivalently
// the first nonzero Taylor coefficient of alpha at v.
inline Rational initial_coeff(const UniPoly& alpha, const Rational& v) {
  if (alpha.is_zero()) throw invalid_input("initial_coeff: zero polynomial");
  UniPoly lin({-v, Rational(1)});
  UniPoly p = alpha;
  for (;;) {
    auto [q, r] = divmod(p, lin);
    if (!r.is_zero()) return p.eval(v);
    p = std::move(q);
  }
}

// Initial coefficient at infinity: the leading coefficient.
inline Rational initial_coeff_inf(const UniPoly& alpha) {
  if (alpha.is_zero()) throw invalid_input("initial_coeff_inf: zero polynomial");
  return alpha.lead();
}

// Write p = lambda * P with P integer-primitive and positive leading
// coefficient; returns (lambda, P). p must be nonzero.
inline std::pair<Rational, UniPoly> int_primitive(const UniPoly& p) {
  if (p.is_zero()) throw invalid_input("int_primitive: zero polynomial");
  Int l(1);
  for (const auto& a : p.coeffs()) l = int_lcm(l, den(a));
  Int g(0);
  for (const auto& a : p.coeffs()) g = int_gcd(g, num(a) * (l / den(a)));
  Rational lambda(g, l);
  if (p.lead() < 0) lambda = -lambda;
  std::vector<Rational> c(p.coeffs());
  for (auto& a : c) a /= lambda;
  return {lambda, UniPoly(std::move(c))};
}

// Deterministic display, highest degree first, e.g. "s^2 - 2*s + 1".
inline std::string to_string(const UniPoly& p, const std::string& var = "s") {
  if (p.is_zero()) return "0";
  std::string out;
  for (long k = p.degree(); k >= 0; --k) {
    Rational a = p.coeff(k);
    if (a == 0) continue;
    if (out.empty()) {
      if (a < 0) out += "-";
    } else {
      out += (a < 0) ? " - " : " + ";
    }
    Rational m = a < 0 ? Rational(-a) : a;
    if (k == 0) {
      out += to_string(m);
    } else {
      if (m != 1) out += to_string(m) + "*";
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

}  // namespace rootbound

#endif
