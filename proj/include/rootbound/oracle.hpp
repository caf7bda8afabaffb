#ifndef ROOTBOUND_ORACLE_HPP
#define ROOTBOUND_ORACLE_HPP

// Exact root counting for systems with one torus variable, used to check the
// bounds against ground truth on small inputs.
//
// For f0, f1 in Q[s][t^{±1}] the isolated common roots (v, tau) with v in the
// algebraic closure of Q and tau != 0 are counted with multiplicity through
// the t-resultant R(s) = Res_t(t^{k0} f0, t^{k1} f1), where the shifts clear
// negative exponents and make both trailing coefficients nonzero.  A factor q
// of R is "clean" when q does not divide both leading coefficients and does
// not divide both trailing coefficients; above a clean place the order of R
// equals the sum of the local intersection multiplicities, so q contributes
// ord_q(R) * deg(q) to the count.  An unclean factor may inflate R by roots
// escaping to t = 0 or t = infinity, so the fiber of the pair over Q[s]/(q)
// is examined instead: a gcd that is trivial once powers of t are stripped
// means the whole order of q is inflation and contributes nothing, while a
// nontrivial gcd means honest roots hide above a degenerate place and the
// count cannot be trusted; such factors are flagged and the result is marked
// invalid rather than silently wrong.  Q[s]/(q) need not be a field: when a
// gcd step meets a zero divisor the modulus is split by the offending gcd and
// both pieces are processed separately.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rootbound/factorization.hpp"
#include "rootbound/laurent.hpp"
#include "rootbound/numeric.hpp"
#include "rootbound/upoly.hpp"

namespace rootbound {

// The two polynomials vanish on a common curve that dominates the s-line, so
// no isolated-root count exists.
struct common_component : std::runtime_error {
  explicit common_component(const std::string& what) : std::runtime_error(what) {}
};

// The requested check cannot be decided by the resultant at this place.
struct inconclusive : std::runtime_error {
  explicit inconclusive(const std::string& what) : std::runtime_error(what) {}
};

struct OracleResult {
  long count = 0;    // isolated roots with multiplicity, from clean places only
  bool valid = true; // false when a flagged place hides uncounted roots
  // Factors of the resultant with leading or trailing degeneracy; each was
  // either resolved as pure inflation or flagged below.
  std::vector<UniPoly> unclean;
  // Unclean places (possibly split further) whose torus fiber is nontrivial;
  // nonempty exactly when valid is false.
  std::vector<UniPoly> obstructed;
};

namespace oracle_detail {

// Polynomial in t with Q[s] coefficients; index = power of t.
using TPoly = std::vector<UniPoly>;

inline void trim(TPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

// One-variable Laurent polynomial shifted by its minimal t-exponent: the
// result has a nonzero trailing coefficient and the same torus roots.
inline TPoly shifted_tpoly(const LaurentPoly& f) {
  long lo = f.front().a[0], hi = lo;
  for (const auto& term : f) {
    if (term.a[0] < lo) lo = term.a[0];
    if (term.a[0] > hi) hi = term.a[0];
  }
  TPoly out(static_cast<std::size_t>(hi - lo) + 1);
  for (const auto& term : f) out[static_cast<std::size_t>(term.a[0] - lo)] = term.alpha;
  return out;
}

inline TPoly reduce_tpoly(const TPoly& p, const UniPoly& m) {
  TPoly out;
  out.reserve(p.size());
  for (const auto& c : p) out.push_back(divmod(c, m).second);
  return out;
}

// Drop end coefficients that vanish identically modulo m.  Returns false and
// sets g to a proper nonconstant divisor of m when an end coefficient is a
// zero divisor, so the caller can split the modulus.  Dropping the trailing
// side divides by a power of t, which never moves torus roots.
inline bool strip_ends(TPoly& p, const UniPoly& m, UniPoly& g) {
  for (int side = 0; side < 2; ++side) {
    while (!p.empty()) {
      const UniPoly& c = side == 0 ? p.back() : p.front();
      if (c.is_zero()) {
        if (side == 0)
          p.pop_back();
        else
          p.erase(p.begin());
        continue;
      }
      UniPoly d = upoly_gcd(c, m);
      if (d.is_constant()) break;
      g = d;
      return false;
    }
  }
  return true;
}

// Sub-moduli of m above which the pair (a, b) has a common root with t != 0.
// Empty result: every root of m has an empty torus fiber, so the order of m
// in the resultant is pure inflation.  The gcd runs over Q[s]/(m) with
// pseudo-divisions (leading coefficients are kept invertible by stripping and
// splitting), so only multiplications and remainders modulo m are needed.
inline std::vector<UniPoly> fiber_torus_obstruction(const TPoly& a, const TPoly& b,
                                                    const UniPoly& m0) {
  std::vector<UniPoly> out;
  std::vector<UniPoly> queue{m0};
  while (!queue.empty()) {
    UniPoly m = queue.back();
    queue.pop_back();
    UniPoly g;
    TPoly A = reduce_tpoly(a, m);
    TPoly B = reduce_tpoly(b, m);
    if (!strip_ends(A, m, g) || !strip_ends(B, m, g)) {
      queue.push_back(g);
      queue.push_back(exact_div(m, g));
      continue;
    }
    bool split = false;
    while (!A.empty() && !B.empty()) {
      if (A.size() < B.size()) A.swap(B);
      const UniPoly la = A.back();
      const UniPoly lb = B.back();
      const std::size_t sh = A.size() - B.size();
      TPoly next(A.size() - 1);
      for (std::size_t k = 0; k + 1 < A.size(); ++k) {
        UniPoly c = lb * A[k];
        if (k >= sh) c = c - la * B[k - sh];
        next[k] = divmod(c, m).second;
      }
      A = std::move(next);
      if (!strip_ends(A, m, g)) {
        queue.push_back(g);
        queue.push_back(exact_div(m, g));
        split = true;
        break;
      }
    }
    if (split) continue;
    const TPoly& gcd = A.empty() ? B : A;
    // Both vanishing identically means the whole fiber lies in the zero set;
    // a stripped gcd of positive t-degree means common roots off t = 0.
    if (gcd.empty() || gcd.size() > 1) out.push_back(m);
  }
  return out;
}

// Partial derivative in s: coefficients differentiate.
inline LaurentPoly d_ds(const LaurentPoly& f) {
  LaurentPoly out;
  for (const auto& term : f) {
    UniPoly d = term.alpha.derivative();
    if (!d.is_zero()) out.push_back({term.a, d});
  }
  return out;
}

// Partial derivative in t_k; valid on the torus for negative exponents too.
inline LaurentPoly d_dt(const LaurentPoly& f, std::size_t k) {
  LaurentPoly out;
  for (const auto& term : f) {
    long e = term.a[k];
    if (e == 0) continue;
    LaurentTerm next{term.a, Rational(e) * term.alpha};
    next.a[k] = e - 1;
    out.push_back(std::move(next));
  }
  return out;
}

inline LaurentSystem checked_pair(const LaurentSystem& sys_in, const char* who) {
  LaurentSystem sys = sys_in.collapsed ? sys_in : collapse(sys_in);
  if (sys.polys.size() != static_cast<std::size_t>(sys.n) + 1)
    throw invalid_input(std::string(who) + ": a system in n torus variables needs n + 1 polynomials");
  if (sys.n != 1)
    throw unsupported_dimension(std::string(who) + ": exactly one torus variable is supported");
  for (const auto& f : sys.polys)
    if (f.empty())
      throw invalid_input(std::string(who) + ": the zero polynomial has no isolated roots");
  return sys;
}

// Resultant in t of the shifted pair, with the degree-zero convention
// Res_t(c, g) = c^{deg g}; the pair (0-dim in t, 0-dim in t) never reaches
// here.  Identically zero exactly when the pair shares a factor of positive
// degree in t.
inline UniPoly shifted_resultant(const TPoly& A, const TPoly& B);

}  // namespace oracle_detail

// Resultant of two polynomials in t with Q[s] coefficients (index = power of
// t), eliminating t: the determinant of the Sylvester matrix, computed by
// fraction-free elimination so every division is exact in Q[s].  Vanishes
// identically exactly when the inputs share a factor of positive t-degree.
inline UniPoly resultant_t(std::vector<UniPoly> a, std::vector<UniPoly> b) {
  oracle_detail::trim(a);
  oracle_detail::trim(b);
  if (a.empty() || b.empty()) throw invalid_input("resultant_t: zero polynomial");
  if (a.size() == 1 || b.size() == 1)
    throw invalid_input("resultant_t: both arguments need positive degree in t");

  const std::size_t m = a.size() - 1;
  const std::size_t n = b.size() - 1;
  const std::size_t N = m + n;
  std::vector<std::vector<UniPoly>> M(N, std::vector<UniPoly>(N));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t j = 0; j <= m; ++j) M[r][r + j] = a[m - j];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t j = 0; j <= n; ++j) M[n + r][r + j] = b[n - j];

  bool negate = false;
  UniPoly prev = UniPoly::constant(Rational(1));
  for (std::size_t k = 0; k < N; ++k) {
    std::size_t pivot = k;
    while (pivot < N && M[pivot][k].is_zero()) ++pivot;
    if (pivot == N) return UniPoly();
    if (pivot != k) {
      M[pivot].swap(M[k]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < N; ++i) {
      for (std::size_t j = k + 1; j < N; ++j)
        M[i][j] = exact_div(M[k][k] * M[i][j] - M[i][k] * M[k][j], prev);
      M[i][k] = UniPoly();
    }
    prev = M[k][k];
  }
  UniPoly det = M[N - 1][N - 1];
  return negate ? -det : det;
}

namespace oracle_detail {

inline UniPoly shifted_resultant(const TPoly& A, const TPoly& B) {
  if (A.size() == 1) return A[0].pow(B.size() - 1);
  if (B.size() == 1) return B[0].pow(A.size() - 1);
  return resultant_t(A, B);
}

}  // namespace oracle_detail

// Number of isolated common roots (v, tau), tau != 0, counted with
// multiplicity, of a pair of Laurent polynomials in one torus variable.
// Clean places of the resultant are counted outright; unclean places are
// resolved to zero when their torus fiber is empty and flagged otherwise.
inline OracleResult count_roots_n1(const LaurentSystem& sys_in) {
  LaurentSystem sys = oracle_detail::checked_pair(sys_in, "count_roots_n1");
  oracle_detail::TPoly A = oracle_detail::shifted_tpoly(sys.polys[0]);
  oracle_detail::TPoly B = oracle_detail::shifted_tpoly(sys.polys[1]);

  OracleResult out;
  if (A.size() == 1 && B.size() == 1) return out;  // vertical lines only, nothing isolated
  UniPoly R = oracle_detail::shifted_resultant(A, B);
  if (R.is_zero())
    throw common_component(
        "count_roots_n1: the resultant vanishes identically, the pair shares a component of "
        "positive degree in t");
  if (R.is_constant()) return out;

  CoprimeFactorization fact =
      coprime_factorization({R, A.back(), B.back(), A.front(), B.front()});
  for (std::size_t f = 0; f < fact.factors.size(); ++f) {
    long e = fact.exponents[f][0];
    if (e == 0) continue;
    bool lead_bad = fact.exponents[f][1] > 0 && fact.exponents[f][2] > 0;
    bool trail_bad = fact.exponents[f][3] > 0 && fact.exponents[f][4] > 0;
    if (!lead_bad && !trail_bad) {
      out.count += e * fact.factors[f].degree();
      continue;
    }
    out.unclean.push_back(fact.factors[f]);
    std::vector<UniPoly> obs =
        oracle_detail::fiber_torus_obstruction(A, B, fact.factors[f]);
    for (auto& q : obs) {
      out.valid = false;
      out.obstructed.push_back(std::move(q));
    }
  }
  return out;
}

// Check a claimed isolated root (v, tau) with claimed multiplicity.  Exact
// evaluation is decisive for membership; the multiplicity claim is accepted
// when the resultant has order exactly expected_mult at v and the Jacobian
// determinant in (s, t) is nonzero for a simple claim and zero for a multiple
// one.  Above an unclean place the resultant order proves nothing, so the
// check refuses instead of guessing.
inline bool verify_claimed_root(const LaurentSystem& sys_in, const Rational& v,
                                const Rational& tau, long expected_mult) {
  LaurentSystem sys = oracle_detail::checked_pair(sys_in, "verify_claimed_root");
  if (expected_mult < 1)
    throw invalid_input("verify_claimed_root: multiplicity must be at least 1");
  if (tau == Rational(0))
    throw invalid_input("verify_claimed_root: the torus coordinate must be nonzero");

  if (evaluate_point(sys.polys[0], v, {tau}) != Rational(0)) return false;
  if (evaluate_point(sys.polys[1], v, {tau}) != Rational(0)) return false;

  oracle_detail::TPoly A = oracle_detail::shifted_tpoly(sys.polys[0]);
  oracle_detail::TPoly B = oracle_detail::shifted_tpoly(sys.polys[1]);
  if (A.size() == 1 && B.size() == 1) return false;  // common locus is a union of lines
  UniPoly R = oracle_detail::shifted_resultant(A, B);
  if (R.is_zero())
    throw common_component(
        "verify_claimed_root: the resultant vanishes identically, no root is isolated along "
        "the shared component");

  bool lead_bad = A.back().eval(v) == Rational(0) && B.back().eval(v) == Rational(0);
  bool trail_bad = A.front().eval(v) == Rational(0) && B.front().eval(v) == Rational(0);
  if (lead_bad || trail_bad)
    throw inconclusive(
        "verify_claimed_root: leading or trailing degeneracy above the claimed base value; "
        "the resultant order is not a multiplicity there");

  if (ord_at(R, v) != expected_mult) return false;

  Rational ds0 = evaluate_point(oracle_detail::d_ds(sys.polys[0]), v, {tau});
  Rational dt0 = evaluate_point(oracle_detail::d_dt(sys.polys[0], 0), v, {tau});
  Rational ds1 = evaluate_point(oracle_detail::d_ds(sys.polys[1]), v, {tau});
  Rational dt1 = evaluate_point(oracle_detail::d_dt(sys.polys[1], 0), v, {tau});
  Rational jac = ds0 * dt1 - dt0 * ds1;
  return expected_mult == 1 ? jac != Rational(0) : jac == Rational(0);
}

}  // namespace rootbound

#endif
