#ifndef ROOTBOUND_LAURENT_HPP
#define ROOTBOUND_LAURENT_HPP

// Laurent polynomials in t1..tn with coefficients in Q[s], kept as ordered
// term lists.  The as-written presentation is significant: when a support
// exponent repeats, bounds computed from the written terms can differ from
// bounds computed after collapsing, so collapsing is always explicit.

#include <cstddef>
#include <string>
#include <vector>

#include "rootbound/upoly.hpp"

namespace rootbound {

struct LaurentTerm {
  std::vector<long> a;  // exponent vector, one entry per t variable
  UniPoly alpha;        // nonzero coefficient in Q[s]

  friend bool operator==(const LaurentTerm& x, const LaurentTerm& y) {
    return x.a == y.a && x.alpha == y.alpha;
  }
};

using LaurentPoly = std::vector<LaurentTerm>;  // empty list = zero polynomial

struct LaurentSystem {
  long n = 0;                      // number of t variables; polys.size() == n+1
  std::vector<LaurentPoly> polys;  // f_0, ..., f_n
  bool collapsed = false;

  friend bool operator==(const LaurentSystem& x, const LaurentSystem& y) {
    return x.n == y.n && x.polys == y.polys && x.collapsed == y.collapsed;
  }
};

// Merge equal exponents (first-occurrence order), drop zero coefficients.
inline LaurentPoly collapse(const LaurentPoly& f) {
  LaurentPoly out;
  for (const auto& term : f) {
    bool merged = false;
    for (auto& t : out)
      if (t.a == term.a) {
        t.alpha = t.alpha + term.alpha;
        merged = true;
        break;
      }
    if (!merged) out.push_back(term);
  }
  LaurentPoly trimmed;
  for (auto& t : out)
    if (!t.alpha.is_zero()) trimmed.push_back(std::move(t));
  return trimmed;
}

inline LaurentSystem collapse(const LaurentSystem& sys) {
  LaurentSystem out;
  out.n = sys.n;
  out.collapsed = true;
  for (const auto& f : sys.polys) out.polys.push_back(collapse(f));
  return out;
}

// gcd of all coefficients (monic); zero polynomial has content 0.
inline UniPoly content(const LaurentPoly& f) {
  UniPoly g;
  for (const auto& t : f) g = g.is_zero() ? t.alpha : upoly_gcd(g, t.alpha);
  if (!g.is_zero()) g = (Rational(1) / g.lead()) * g;
  return g;
}

// No common non-constant factor in Q[s] among the coefficients.
inline bool is_primitive(const LaurentPoly& f) {
  UniPoly c = content(f);
  return !c.is_zero() && c.is_constant();
}

// Specialize s := v and collapse: term list of f(v, t) over Q, zeros dropped.
inline std::vector<std::pair<std::vector<long>, Rational>> evaluate_at_s(
    const LaurentPoly& f, const Rational& v) {
  std::vector<std::pair<std::vector<long>, Rational>> out;
  for (const auto& term : f) {
    Rational val = term.alpha.eval(v);
    bool merged = false;
    for (auto& [a, c] : out)
      if (a == term.a) {
        c += val;
        merged = true;
        break;
      }
    if (!merged) out.emplace_back(term.a, val);
  }
  std::vector<std::pair<std::vector<long>, Rational>> trimmed;
  for (auto& e : out)
    if (e.second != 0) trimmed.push_back(std::move(e));
  return trimmed;
}

// Value of f at s = v, t = (t_1,...,t_n) with all t_k nonzero.
inline Rational evaluate_point(const LaurentPoly& f, const Rational& v,
                               const std::vector<Rational>& t) {
  for (const auto& tk : t)
    if (tk == 0) throw invalid_input("evaluate_point: zero torus coordinate");
  Rational total(0);
  for (const auto& term : f) {
    Rational m = term.alpha.eval(v);
    for (std::size_t k = 0; k < term.a.size(); ++k) {
      long e = term.a[k];
      Rational base = t[k];
      if (e < 0) {
        base = Rational(1) / base;
        e = -e;
      }
      for (long i = 0; i < e; ++i) m *= base;
    }
    total += m;
  }
  return total;
}

namespace detail {

inline std::string t_name(long i, long n) {
  return n == 1 ? std::string("t") : "t" + std::to_string(i + 1);
}

inline std::size_t monomial_count(const UniPoly& p) {
  std::size_t c = 0;
  for (const auto& a : p.coeffs())
    if (a != 0) ++c;
  return c;
}

}  // namespace detail

// Canonical text for one term, re-parseable under the system grammar.
inline std::string term_to_string(const LaurentTerm& term, long n) {
  std::string tpart;
  for (std::size_t k = 0; k < term.a.size(); ++k) {
    if (term.a[k] == 0) continue;
    if (!tpart.empty()) tpart += "*";
    tpart += detail::t_name(static_cast<long>(k), n);
    if (term.a[k] != 1) tpart += "^" + std::to_string(term.a[k]);
  }
  const UniPoly& c = term.alpha;
  if (tpart.empty()) {
    return detail::monomial_count(c) > 1 ? "(" + to_string(c) + ")" : to_string(c);
  }
  if (detail::monomial_count(c) > 1) return "(" + to_string(c) + ")*" + tpart;
  if (c == UniPoly::constant(Rational(1))) return tpart;
  if (c == UniPoly::constant(Rational(-1))) return "-" + tpart;
  return to_string(c) + "*" + tpart;
}

inline std::string to_string(const LaurentPoly& f, long n) {
  if (f.empty()) return "0";
  std::string out;
  for (std::size_t j = 0; j < f.size(); ++j) {
    std::string t = term_to_string(f[j], n);
    if (j == 0) {
      out += t;
    } else if (!t.empty() && t[0] == '-') {
      out += " - " + t.substr(1);
    } else {
      out += " + " + t;
    }
  }
  return out;
}

inline std::string to_string(const LaurentSystem& sys) {
  std::string out = "n = " + std::to_string(sys.n) + "\n";
  for (std::size_t i = 0; i < sys.polys.size(); ++i)
    out += "f" + std::to_string(i) + " = " + to_string(sys.polys[i], sys.n) + "\n";
  return out;
}

}  // namespace rootbound

#endif
