#ifndef ROOTBOUND_ADELIC_HPP
#define ROOTBOUND_ADELIC_HPP

// The bound pipeline.  A system of n+1 Laurent polynomials in t_1..t_n with
// coefficients in Q[s] is read as a family of lifted point configurations:
// at a place v of the projective s-line each coefficient alpha contributes
// the lift -ord_v(alpha) over its exponent vector, and at infinity it
// contributes deg(alpha).  The refined bound on isolated roots is
//
//   MI_n at infinity  +  sum over finite factors p of  deg(p) * MI_n at p,
//
// where the finite places are grouped by one pairwise-coprime factorization
// of the written coefficients — only multiplicities e_p and deg p enter, so
// no irreducible factorization or root extraction happens anywhere.  On top
// of that this header provides the unmixed variant over a common polytope,
// base-point corrections for non-primitive systems, the classical
// Kusnirenko-Bernstein mixed volume for comparison, and a lattice test
// deciding positivity of the bound.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rootbound/concave.hpp"
#include "rootbound/factorization.hpp"
#include "rootbound/laurent.hpp"
#include "rootbound/linalg.hpp"
#include "rootbound/mixed.hpp"
#include "rootbound/polytope.hpp"

namespace rootbound {

// Raised when an operation that assumes primitive polynomials (coefficients
// with no common factor) meets one that is not.  The offending divisor is
// kept both in the message and as a plain string field.
struct not_primitive : std::runtime_error {
  std::string common_factor;
  not_primitive(const std::string& what, std::string factor)
      : std::runtime_error(what), common_factor(std::move(factor)) {}
};

// A place of the projective s-line over Q: either a rational value of s or
// the place at infinity.  Places sitting at irrational roots never need to
// be named individually — they are handled through their coprime factors.
struct Place {
  bool infinite = false;
  Rational value;  // meaningful only when !infinite

  static Place at(const Rational& v) { return Place{false, v}; }
  static Place infinity() { return Place{true, Rational(0)}; }
};

inline long ord_at_place(const UniPoly& alpha, const Place& v) {
  if (alpha.is_zero()) throw invalid_input("ord_at_place: zero polynomial");
  return v.infinite ? ord_inf(alpha) : ord_at(alpha, v.value);
}

namespace adelic_detail {

inline void check_system(const LaurentSystem& sys) {
  if (sys.n < 1) throw invalid_input("system: need at least one torus variable");
  if (static_cast<long>(sys.polys.size()) != sys.n + 1)
    throw invalid_input("system: need n+1 polynomials in n torus variables");
  for (const auto& f : sys.polys) {
    if (f.empty()) throw invalid_input("system: zero polynomial");
    for (const auto& term : f) {
      if (static_cast<long>(term.a.size()) != sys.n)
        throw invalid_input("system: exponent vector of wrong length");
      if (term.alpha.is_zero())
        throw invalid_input("system: term with zero coefficient");
    }
  }
}

inline Rational factorial(long n) {
  Rational r(1);
  for (long k = 2; k <= n; ++k) r *= Rational(k);
  return r;
}

}  // namespace adelic_detail

// Lifted point (a_j, -ord_v(alpha_j)) for every term of f; the polytope they
// span sits in R^{n+1}.  The zero polynomial degenerates to the origin.
inline Polytope vadic_polytope(const LaurentPoly& f, long n, const Place& v) {
  std::vector<Point> pts;
  for (const auto& term : f) {
    if (term.alpha.is_zero()) continue;
    if (static_cast<long>(term.a.size()) != n)
      throw invalid_input("vadic_polytope: exponent vector of wrong length");
    Point p;
    for (long e : term.a) p.push_back(Rational(e));
    p.push_back(Rational(-ord_at_place(term.alpha, v)));
    pts.push_back(std::move(p));
  }
  if (pts.empty()) pts.push_back(Point(static_cast<std::size_t>(n) + 1, Rational(0)));
  return Polytope::convex_hull(pts);
}

// Upper envelope of the same lifted points, as a function on NP(f).
inline ConcavePWA roof(const LaurentPoly& f, long n, const Place& v) {
  std::vector<Point> pts;
  for (const auto& term : f) {
    if (term.alpha.is_zero()) continue;
    if (static_cast<long>(term.a.size()) != n)
      throw invalid_input("roof: exponent vector of wrong length");
    Point p;
    for (long e : term.a) p.push_back(Rational(e));
    p.push_back(Rational(-ord_at_place(term.alpha, v)));
    pts.push_back(std::move(p));
  }
  if (pts.empty()) pts.push_back(Point(static_cast<std::size_t>(n) + 1, Rational(0)));
  return ConcavePWA::from_lifted_points(std::move(pts));
}

// The finite places that can carry a nonzero roof, named by pairwise coprime
// non-constant polynomials.  The place at infinity is always implied.
struct PlaceSet {
  std::vector<UniPoly> factors;

  long degree(std::size_t k) const { return factors[k].degree(); }
};

// One roof per polynomial and place.  finite[i][k] is the roof of f_i at the
// factor places.factors[k], built from exponent data; at_infinity[i] is the
// degree roof.  Every roof of index i lives on NP(f_i).
struct RoofFamily {
  std::vector<std::vector<ConcavePWA>> finite;
  std::vector<ConcavePWA> at_infinity;
};

// One coprime factorization of the multiset of all written coefficients
// turns the system into a roof family.  Lifts at a factor place are the
// negated multiplicities, lifts at infinity are the degrees.
inline std::pair<PlaceSet, RoofFamily> roofs_from_factorization(const LaurentSystem& sys) {
  adelic_detail::check_system(sys);

  std::vector<UniPoly> coeffs;
  for (const auto& f : sys.polys)
    for (const auto& term : f) coeffs.push_back(term.alpha);
  CoprimeFactorization fact = coprime_factorization(coeffs);

  PlaceSet places{fact.factors};
  RoofFamily fam;
  std::size_t flat = 0;
  for (const auto& f : sys.polys) {
    std::vector<std::vector<Point>> lifted(fact.factors.size());
    std::vector<Point> lifted_inf;
    for (const auto& term : f) {
      Point base;
      for (long e : term.a) base.push_back(Rational(e));
      for (std::size_t k = 0; k < fact.factors.size(); ++k) {
        Point p = base;
        p.push_back(Rational(-fact.exponents[k][flat]));
        lifted[k].push_back(std::move(p));
      }
      Point p = base;
      p.push_back(Rational(term.alpha.degree()));
      lifted_inf.push_back(std::move(p));
      ++flat;
    }
    std::vector<ConcavePWA> row;
    for (auto& pts : lifted) row.push_back(ConcavePWA::from_lifted_points(std::move(pts)));
    fam.finite.push_back(std::move(row));
    fam.at_infinity.push_back(ConcavePWA::from_lifted_points(std::move(lifted_inf)));
  }
  return {std::move(places), std::move(fam)};
}

// Roof of f_i at a rational place: if v is a root of some factor p with
// multiplicity m, the roof is m times the factor roof; otherwise it vanishes
// identically on NP(f_i).
inline ConcavePWA theta_at(const PlaceSet& places, const RoofFamily& fam,
                           std::size_t i, const Rational& v) {
  if (i >= fam.at_infinity.size()) throw invalid_input("theta_at: index out of range");
  for (std::size_t k = 0; k < places.factors.size(); ++k) {
    long m = ord_at(places.factors[k], v);
    if (m > 0) return scale_values(fam.finite[i][k], Rational(m));
  }
  Polytope dom = fam.at_infinity[i].domain();
  return ConcavePWA::constant_fn(dom, Rational(0));
}

// Whether the bound reads the term list exactly as written or merges equal
// exponent vectors first.  Repeated exponents keep separate lifted points in
// the as-written reading, which is what generic-coefficient analyses need;
// merging can only lower the lifted data, hence the bound.
enum class Presentation { as_written, collapsed };

inline const char* to_string(Presentation p) {
  return p == Presentation::as_written ? "as-written" : "collapsed";
}

// Everything the bound computation produces.  total is the plain roof sum
// MI_infinity + sum_p deg(p) * MI_p.  For non-primitive systems the base
// fibers can carry extra isolated roots; correction accounts for them, and
// total + correction is the bound valid for the whole root set.
struct BoundReport {
  long n = 0;
  Presentation presentation = Presentation::collapsed;
  PlaceSet places;
  std::vector<Rational> place_mi;  // aligned with places.factors
  Rational mi_infinity;
  Rational total;       // mi_infinity + sum_k deg(p_k) * place_mi[k]
  Rational kb;          // classical mixed-volume bound on the same data
  Rational correction;  // base-point term; 0 for primitive systems
  bool positive = false;

  Rational corrected_total() const { return total + correction; }
};

// Classical bound: the normalized mixed volume of the full (t, s)-Newton
// polytopes, with the s-exponent as the last coordinate.
inline Rational kb_bound(const LaurentSystem& sys) {
  adelic_detail::check_system(sys);
  std::vector<Polytope> family;
  for (const auto& f : sys.polys) {
    std::vector<Point> pts;
    for (const auto& term : f) {
      for (long k = 0; k <= term.alpha.degree(); ++k) {
        if (term.alpha.coeff(k) == 0) continue;
        Point p;
        for (long e : term.a) p.push_back(Rational(e));
        p.push_back(Rational(k));
        pts.push_back(std::move(p));
      }
    }
    family.push_back(Polytope::convex_hull(pts));
  }
  return mixed_volume_ie(family);
}

// Decides whether the bound is strictly positive, through the geometry of
// the coefficient data rather than by computing the bound itself.  For every
// subset I of the polynomials, the projection of the incidence variety
// carved out by the data of I has dimension
//
//   rank of the exponent differences of I
//     + 1 if some linear relation among those differences moves a
//          coefficient divisor (checked on factor multiplicities; the place
//          at infinity is determined by them and needs no extra column),
//
// and the bound is positive exactly when every such dimension reaches |I|.
// The naive reading "rank of the span of all (difference, -ord) vectors"
// overshoots whenever two coefficient columns move in parallel, so the
// relation test is the sound form.  Primitivity is not needed here: the
// predicate describes the roof total, which ignores contents' sign.
inline bool positivity_predicate(const LaurentSystem& sys) {
  adelic_detail::check_system(sys);

  std::vector<UniPoly> coeffs;
  for (const auto& f : sys.polys)
    for (const auto& term : f) coeffs.push_back(term.alpha);
  CoprimeFactorization fact = coprime_factorization(coeffs);
  const std::size_t nf = fact.factors.size();

  // Per polynomial: rows (a_j - a_0 | e_p(j) - e_p(0)).
  struct Row {
    std::vector<Rational> a;
    std::vector<Rational> w;
  };
  std::vector<std::vector<Row>> rows(sys.polys.size());
  std::size_t flat = 0;
  for (std::size_t i = 0; i < sys.polys.size(); ++i) {
    const auto& f = sys.polys[i];
    const std::size_t base = flat;
    for (std::size_t j = 0; j < f.size(); ++j, ++flat) {
      if (j == 0) continue;
      Row r;
      for (long c = 0; c < sys.n; ++c)
        r.a.push_back(Rational(f[j].a[c] - f[0].a[c]));
      for (std::size_t k = 0; k < nf; ++k)
        r.w.push_back(Rational(fact.exponents[k][flat] - fact.exponents[k][base]));
      rows[i].push_back(std::move(r));
    }
  }

  const std::size_t m = sys.polys.size();
  for (std::size_t mask = 1; mask < (std::size_t(1) << m); ++mask) {
    Mat A;
    Mat W;
    std::size_t card = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (!(mask & (std::size_t(1) << i))) continue;
      ++card;
      for (const auto& r : rows[i]) {
        A.push_back(r.a);
        W.push_back(r.w);
      }
    }
    std::size_t rk = A.empty() ? 0 : rank(A);
    if (rk >= card) continue;
    if (rk + 1 < card) return false;
    if (A.empty()) return false;
    // One dimension short: some relation among the rows must move a divisor.
    Mat At(A[0].size(), std::vector<Rational>(A.size()));
    for (std::size_t r = 0; r < A.size(); ++r)
      for (std::size_t c = 0; c < A[0].size(); ++c) At[c][r] = A[r][c];
    bool breaks = false;
    std::vector<std::vector<Rational>> relations = nullspace(std::move(At));
    for (const auto& c : relations) {
      for (std::size_t k = 0; k < nf && !breaks; ++k) {
        Rational s(0);
        for (std::size_t r = 0; r < W.size(); ++r) s += c[r] * W[r][k];
        if (s != 0) breaks = true;
      }
      if (breaks) break;
    }
    if (!breaks) return false;
  }
  return true;
}

// Rank and index of the lattice spanned by all exponent differences.  When
// the rank falls short of n the index is reported as 0 (not defined); the
// MI machinery then yields 0 at every place on its own.
struct LatticeDiagnostics {
  std::size_t rank = 0;
  Int index;
};

inline LatticeDiagnostics lattice_diagnostics(const LaurentSystem& sys) {
  adelic_detail::check_system(sys);
  std::vector<std::vector<Int>> rows;
  for (const auto& f : sys.polys)
    for (std::size_t j = 1; j < f.size(); ++j) {
      std::vector<Int> r;
      for (long c = 0; c < sys.n; ++c) r.push_back(Int(f[j].a[c] - f[0].a[c]));
      rows.push_back(std::move(r));
    }
  LatticeDiagnostics d;
  d.index = 0;
  if (rows.empty()) return d;
  d.rank = rank_int(rows);
  if (d.rank == static_cast<std::size_t>(sys.n)) {
    d.index = 1;
    std::vector<Int> diag = smith_diagonal(rows);
    for (const auto& x : diag) d.index *= x;
  }
  return d;
}

// Contribution of base points to the root count of a non-primitive system.
// The system is merged first (orders of vanishing are properties of the
// polynomial, not of its presentation).  A factor q contributes only when
// exactly one f_i vanishes identically on its roots: shared base points are
// already covered by the plain roof sum.  Each exclusive factor adds
//   deg(q) * ord_q(f_i) * MV_n(supports of the other polynomials at a root),
// where those supports keep exactly the terms whose coefficient does not
// vanish there.
inline Rational base_corrections(const LaurentSystem& sys) {
  adelic_detail::check_system(sys);
  LaurentSystem merged = collapse(sys);
  for (const auto& f : merged.polys)
    if (f.empty()) throw invalid_input("system: polynomial collapses to zero");

  std::vector<UniPoly> coeffs;
  std::vector<std::vector<std::size_t>> idx(merged.polys.size());
  for (std::size_t i = 0; i < merged.polys.size(); ++i)
    for (const auto& term : merged.polys[i]) {
      idx[i].push_back(coeffs.size());
      coeffs.push_back(term.alpha);
    }
  CoprimeFactorization fact = coprime_factorization(coeffs);

  Rational corr(0);
  for (std::size_t k = 0; k < fact.factors.size(); ++k) {
    std::vector<long> o(merged.polys.size());
    for (std::size_t i = 0; i < merged.polys.size(); ++i) {
      long m = fact.exponents[k][idx[i][0]];
      for (std::size_t j = 1; j < idx[i].size(); ++j)
        m = std::min(m, fact.exponents[k][idx[i][j]]);
      o[i] = m;
    }
    std::size_t vanishing = 0, which = 0;
    for (std::size_t i = 0; i < o.size(); ++i)
      if (o[i] > 0) {
        ++vanishing;
        which = i;
      }
    if (vanishing != 1) continue;

    std::vector<Polytope> supports;
    for (std::size_t i = 0; i < merged.polys.size(); ++i) {
      if (i == which) continue;
      std::vector<Point> pts;
      for (std::size_t j = 0; j < idx[i].size(); ++j) {
        if (fact.exponents[k][idx[i][j]] != 0) continue;
        Point p;
        for (long e : merged.polys[i][j].a) p.push_back(Rational(e));
        pts.push_back(std::move(p));
      }
      supports.push_back(Polytope::convex_hull(pts));
    }
    corr += Rational(fact.factors[k].degree()) * Rational(o[which]) *
            mixed_volume_ie(supports);
  }
  return corr;
}

// The refined bound for a system of primitive polynomials.  Primitivity is
// judged on merged coefficients regardless of the requested presentation,
// since a common divisor is a property of the polynomial itself.
inline BoundReport bound_mainthm(const LaurentSystem& sys, Presentation pres) {
  adelic_detail::check_system(sys);
  LaurentSystem merged = collapse(sys);
  for (std::size_t i = 0; i < merged.polys.size(); ++i) {
    if (merged.polys[i].empty())
      throw invalid_input("system: polynomial collapses to zero");
    if (!is_primitive(merged.polys[i])) {
      std::string c = to_string(content(merged.polys[i]));
      throw not_primitive("polynomial " + std::to_string(i) +
                              " has non-trivial content " + c +
                              "; use the corrected bound for such systems",
                          c);
    }
  }
  const LaurentSystem& work = (pres == Presentation::collapsed) ? merged : sys;

  auto [places, fam] = roofs_from_factorization(work);
  BoundReport rep;
  rep.n = sys.n;
  rep.presentation = pres;
  rep.mi_infinity = mixed_integral_def(fam.at_infinity);
  rep.total = rep.mi_infinity;
  for (std::size_t k = 0; k < places.factors.size(); ++k) {
    std::vector<ConcavePWA> fam_k;
    for (std::size_t i = 0; i < fam.finite.size(); ++i) fam_k.push_back(fam.finite[i][k]);
    Rational mi = mixed_integral_def(fam_k);
    rep.total += Rational(places.degree(k)) * mi;
    rep.place_mi.push_back(std::move(mi));
  }
  rep.kb = kb_bound(work);
  rep.correction = 0;
  rep.positive = positivity_predicate(work);
  rep.places = std::move(places);
  return rep;
}

// Unmixed variant: one polytope Q spanned by all supports, one roof per
// place dominating every individual roof (the envelope of the pooled lifted
// points), and the bound (n+1)! * sum of integrals.  Never smaller than the
// mixed total.
inline Rational bound_unmixed(const LaurentSystem& sys) {
  adelic_detail::check_system(sys);
  LaurentSystem merged = collapse(sys);
  for (std::size_t i = 0; i < merged.polys.size(); ++i) {
    if (merged.polys[i].empty())
      throw invalid_input("system: polynomial collapses to zero");
    if (!is_primitive(merged.polys[i])) {
      std::string c = to_string(content(merged.polys[i]));
      throw not_primitive("polynomial " + std::to_string(i) +
                              " has non-trivial content " + c +
                              "; use the corrected bound for such systems",
                          c);
    }
  }

  std::vector<UniPoly> coeffs;
  for (const auto& f : sys.polys)
    for (const auto& term : f) coeffs.push_back(term.alpha);
  CoprimeFactorization fact = coprime_factorization(coeffs);

  Rational total(0);
  for (std::size_t k = 0; k <= fact.factors.size(); ++k) {
    const bool inf = (k == fact.factors.size());
    std::vector<Point> pooled;
    std::size_t flat = 0;
    for (const auto& f : sys.polys)
      for (const auto& term : f) {
        Point p;
        for (long e : term.a) p.push_back(Rational(e));
        p.push_back(inf ? Rational(term.alpha.degree())
                        : Rational(-fact.exponents[k][flat]));
        pooled.push_back(std::move(p));
        ++flat;
      }
    Rational part = integral(ConcavePWA::from_lifted_points(std::move(pooled)));
    total += inf ? part : Rational(fact.factors[k].degree()) * part;
  }
  return adelic_detail::factorial(sys.n + 1) * total;
}

// Bound pipeline for possibly non-primitive systems: the plain roof sum on
// the merged system plus the base-point correction, reported separately.
// total still satisfies the roof-sum identity; total + correction is the
// valid bound for every isolated root, base fibers included.
inline BoundReport bound_corrected(const LaurentSystem& sys) {
  adelic_detail::check_system(sys);
  LaurentSystem merged = collapse(sys);
  for (const auto& f : merged.polys)
    if (f.empty()) throw invalid_input("system: polynomial collapses to zero");

  auto [places, fam] = roofs_from_factorization(merged);
  BoundReport rep;
  rep.n = sys.n;
  rep.presentation = Presentation::collapsed;
  rep.mi_infinity = mixed_integral_def(fam.at_infinity);
  rep.total = rep.mi_infinity;
  for (std::size_t k = 0; k < places.factors.size(); ++k) {
    std::vector<ConcavePWA> fam_k;
    for (std::size_t i = 0; i < fam.finite.size(); ++i) fam_k.push_back(fam.finite[i][k]);
    Rational mi = mixed_integral_def(fam_k);
    rep.total += Rational(places.degree(k)) * mi;
    rep.place_mi.push_back(std::move(mi));
  }
  rep.kb = kb_bound(merged);
  rep.correction = base_corrections(sys);
  rep.positive = positivity_predicate(merged);
  rep.places = std::move(places);
  return rep;
}

}  // namespace rootbound

#endif
