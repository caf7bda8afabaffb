#ifndef ROOTBOUND_FACTORIZATION_HPP
#define ROOTBOUND_FACTORIZATION_HPP

// Pairwise-coprime factorization of a family of univariate polynomials by
// gcd and exact division alone — no irreducible factorization is ever needed.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

#include "rootbound/upoly.hpp"

namespace rootbound {

struct CoprimeFactorization {
  // Pairwise coprime, non-constant, integer-primitive with positive leading
  // coefficient; sorted by (degree, coefficient order).
  std::vector<UniPoly> factors;
  // exponents[f][j] = multiplicity of factors[f] in input j.
  std::vector<std::vector<long>> exponents;
  // units[j] * prod_f factors[f]^exponents[f][j] reproduces input j exactly.
  std::vector<Rational> units;
};

// Factor each input as a unit times a product of powers of pairwise coprime
// polynomials shared across the whole family.  Candidate factors start from
// the last non-constant member and are refined by gcds with the quotients
// until a full pass is clean, then the procedure recurses on the quotients.
inline CoprimeFactorization coprime_factorization(const std::vector<UniPoly>& G) {
  for (const auto& g : G)
    if (g.is_zero()) throw invalid_input("coprime_factorization: zero input");

  const std::size_t r = G.size();
  std::vector<UniPoly> H(G);
  std::vector<std::pair<UniPoly, std::vector<long>>> found;

  for (;;) {
    // Last non-constant member of the current family seeds the candidate.
    long seed = -1;
    for (std::size_t j = r; j-- > 0;)
      if (!H[j].is_constant()) {
        seed = static_cast<long>(j);
        break;
      }
    if (seed < 0) break;

    UniPoly p = int_primitive(H[seed]).second;
    std::vector<long> c(r, 0);
    std::vector<UniPoly> quot(r);
    for (std::size_t j = 0; j < r;) {
      long cj = 0;
      UniPoly q = H[j];
      for (;;) {
        auto [div, rem] = divmod(q, p);
        if (!rem.is_zero()) break;
        ++cj;
        q = std::move(div);
      }
      UniPoly g = upoly_gcd(p, q);
      if (!g.is_constant()) {
        // Candidate was too coarse: refine and restart the pass.
        p = int_primitive(g).second;
        j = 0;
        continue;
      }
      c[j] = cj;
      quot[j] = std::move(q);
      ++j;
    }
    found.emplace_back(std::move(p), std::move(c));
    H = std::move(quot);
  }

  std::sort(found.begin(), found.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  CoprimeFactorization out;
  for (auto& [p, c] : found) {
    out.factors.push_back(std::move(p));
    out.exponents.push_back(std::move(c));
  }
  out.units.resize(r);
  for (std::size_t j = 0; j < r; ++j) out.units[j] = H[j].coeff(0);
  return out;
}

}  // namespace rootbound

#endif
