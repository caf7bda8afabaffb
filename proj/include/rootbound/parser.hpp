#ifndef ROOTBOUND_PARSER_HPP
#define ROOTBOUND_PARSER_HPP

// Text format for systems:
//
//   # comment
//   n = 2
//   f0 = (s-1) + (s-1)^2*t1 - 3*s*t1^2
//   f1 = 1/2*t2^-1 + s*t1*t2
//
// The header line is optional; without it n is inferred from the number of
// polynomial lines.  Top-level additive terms become the as-written term
// list.  Inside a term, parenthesized subexpressions may involve s only;
// t factors must be plain powers and only t exponents may be negative.

#include <cctype>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rootbound/laurent.hpp"

namespace rootbound {

struct parse_error : std::runtime_error {
  int line;
  int col;
  parse_error(int line_, int col_, const std::string& msg)
      : std::runtime_error("parse error at " + std::to_string(line_) + ":" +
                           std::to_string(col_) + ": " + msg),
        line(line_),
        col(col_) {}
};

namespace detail {

class TermScanner {
 public:
  TermScanner(const std::string& text, int line_no, int col_base, long n)
      : s_(text), line_(line_no), base_(col_base), n_(n) {}

  // Parses a full expression: signed terms separated by + or -.
  LaurentPoly parse_expr() {
    LaurentPoly out;
    skip_ws();
    int sign = consume_sign();
    for (;;) {
      LaurentTerm t = parse_term(sign);
      if (!t.alpha.is_zero()) out.push_back(std::move(t));
      skip_ws();
      if (at_end()) break;
      char c = peek();
      if (c == '+') {
        ++pos_;
        sign = 1;
      } else if (c == '-') {
        ++pos_;
        sign = -1;
      } else {
        fail("expected '+' or '-' between terms");
      }
      skip_ws();
    }
    return out;
  }

 private:
  LaurentTerm parse_term(int sign) {
    LaurentTerm term;
    term.a.assign(static_cast<std::size_t>(n_), 0);
    term.alpha = UniPoly::constant(Rational(sign));
    for (;;) {
      parse_factor(term);
      skip_ws();
      if (!at_end() && peek() == '*') {
        ++pos_;
        skip_ws();
      } else {
        break;
      }
    }
    return term;
  }

  void parse_factor(LaurentTerm& term) {
    skip_ws();
    if (at_end()) fail("expected a factor");
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Rational q = parse_rational();
      long e = parse_exponent_opt();
      term.alpha = rational_power(q, e) * term.alpha;
    } else if (c == 's') {
      ++pos_;
      long e = parse_exponent_opt();
      if (e < 0) fail("negative exponent on s");
      term.alpha = term.alpha * UniPoly::var().pow(static_cast<unsigned long>(e));
    } else if (c == 't') {
      std::size_t idx = parse_t_index();
      long e = parse_exponent_opt();
      term.a[idx] += e;
    } else if (c == '(') {
      ++pos_;
      UniPoly p = parse_s_expr();
      skip_ws();
      if (at_end() || peek() != ')') fail("expected ')'");
      ++pos_;
      long e = parse_exponent_opt();
      if (e < 0) fail("negative exponent on a parenthesized expression");
      term.alpha = term.alpha * p.pow(static_cast<unsigned long>(e));
    } else {
      fail(std::string("unexpected character '") + c + "'");
    }
  }

  // Additive expression in s alone (inside parentheses).
  UniPoly parse_s_expr() {
    skip_ws();
    int sign = consume_sign();
    UniPoly total;
    for (;;) {
      total = total + Rational(sign) * parse_s_term();
      skip_ws();
      if (at_end() || peek() == ')') break;
      char c = peek();
      if (c == '+') {
        ++pos_;
        sign = 1;
      } else if (c == '-') {
        ++pos_;
        sign = -1;
      } else {
        fail("expected '+', '-' or ')' in coefficient expression");
      }
    }
    return total;
  }

  UniPoly parse_s_term() {
    UniPoly prod = UniPoly::constant(Rational(1));
    for (;;) {
      prod = prod * parse_s_factor();
      skip_ws();
      if (!at_end() && peek() == '*') {
        ++pos_;
      } else {
        break;
      }
    }
    return prod;
  }

  UniPoly parse_s_factor() {
    skip_ws();
    if (at_end()) fail("expected a coefficient factor");
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Rational q = parse_rational();
      long e = parse_exponent_opt();
      return UniPoly::constant(rational_power(q, e));
    }
    if (c == 's') {
      ++pos_;
      long e = parse_exponent_opt();
      if (e < 0) fail("negative exponent on s");
      return UniPoly::var().pow(static_cast<unsigned long>(e));
    }
    if (c == 't') fail("t variable inside a parenthesized coefficient");
    if (c == '(') {
      ++pos_;
      UniPoly p = parse_s_expr();
      skip_ws();
      if (at_end() || peek() != ')') fail("expected ')'");
      ++pos_;
      long e = parse_exponent_opt();
      if (e < 0) fail("negative exponent on a parenthesized expression");
      return p.pow(static_cast<unsigned long>(e));
    }
    fail(std::string("unexpected character '") + c + "' in coefficient");
    return UniPoly();  // unreachable
  }

  std::size_t parse_t_index() {
    // At 't'.  Either a bare alias (n must be 1) or t<k> with 1 <= k <= n.
    int col = cur_col();
    ++pos_;
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) {
      if (n_ != 1)
        throw parse_error(line_, col, "bare 't' is only valid when n = 1");
      return 0;
    }
    long k = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      k = k * 10 + (peek() - '0');
      if (k > 1000) throw parse_error(line_, col, "t index out of range");
      ++pos_;
    }
    if (k < 1 || k > n_)
      throw parse_error(line_, col,
                        "variable t" + std::to_string(k) + " out of range for n = " +
                            std::to_string(n_));
    return static_cast<std::size_t>(k - 1);
  }

  Rational parse_rational() {
    Int p = parse_integer();
    skip_ws();
    if (!at_end() && peek() == '/') {
      std::size_t save = pos_;
      ++pos_;
      skip_ws();
      if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
        Int q = parse_integer();
        if (q == 0) fail("division by zero in rational literal");
        return Rational(p, q);
      }
      pos_ = save;  // '/' belonged to something else; not part of this literal
    }
    return Rational(p);
  }

  Int parse_integer() {
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
      fail("expected an integer");
    Int v = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (peek() - '0');
      ++pos_;
    }
    return v;
  }

  // Optional "^" followed by an (optionally negative) integer.
  long parse_exponent_opt() {
    skip_ws();
    if (at_end() || peek() != '^') return 1;
    ++pos_;
    skip_ws();
    long sign = 1;
    if (!at_end() && peek() == '-') {
      sign = -1;
      ++pos_;
    }
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
      fail("expected an integer exponent");
    long e = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      e = e * 10 + (peek() - '0');
      if (e > 1000000) fail("exponent out of range");
      ++pos_;
    }
    return sign * e;
  }

  static Rational rational_power(const Rational& q, long e) {
    if (e < 0 && q == 0) throw invalid_input("zero to a negative power");
    Rational base = e < 0 ? Rational(1) / q : q;
    long k = e < 0 ? -e : e;
    Rational r(1);
    for (long i = 0; i < k; ++i) r *= base;
    return r;
  }

  int consume_sign() {
    int sign = 1;
    skip_ws();
    while (!at_end() && (peek() == '+' || peek() == '-')) {
      if (peek() == '-') sign = -sign;
      ++pos_;
      skip_ws();
    }
    return sign;
  }

  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  void skip_ws() {
    while (!at_end() && (peek() == ' ' || peek() == '\t')) ++pos_;
  }
  int cur_col() const { return base_ + static_cast<int>(pos_) + 1; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw parse_error(line_, cur_col(), msg);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  int line_;
  int base_;
  long n_;
};

inline std::string strip_comment(const std::string& line) {
  auto h = line.find('#');
  return h == std::string::npos ? line : line.substr(0, h);
}

inline bool blank(const std::string& line) {
  for (char c : line)
    if (c != ' ' && c != '\t' && c != '\r') return false;
  return true;
}

}  // namespace detail

inline LaurentSystem parse_system(const std::string& text) {
  // First pass: split into the optional header and the f<k> lines.
  std::vector<std::string> lines;
  {
    std::string cur;
    for (char c : text) {
      if (c == '\n') {
        lines.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    lines.push_back(cur);
  }

  bool have_n = false;
  long n = -1;
  struct PolyLine {
    long index;
    std::string body;
    int line_no;
    int col_base;
  };
  std::vector<PolyLine> poly_lines;

  for (std::size_t li = 0; li < lines.size(); ++li) {
    std::string raw = detail::strip_comment(lines[li]);
    if (detail::blank(raw)) continue;
    int line_no = static_cast<int>(li) + 1;
    std::size_t p = raw.find_first_not_of(" \t");
    if (raw[p] == 'n' && !have_n && poly_lines.empty()) {
      std::size_t q = raw.find_first_not_of(" \t", p + 1);
      if (q == std::string::npos || raw[q] != '=')
        throw parse_error(line_no, static_cast<int>(p) + 1, "expected 'n = <int>'");
      std::size_t r = raw.find_first_not_of(" \t", q + 1);
      if (r == std::string::npos)
        throw parse_error(line_no, static_cast<int>(q) + 2, "expected an integer after 'n ='");
      long val = 0;
      std::size_t k = r;
      while (k < raw.size() && std::isdigit(static_cast<unsigned char>(raw[k]))) {
        val = val * 10 + (raw[k] - '0');
        ++k;
      }
      if (k == r || !detail::blank(raw.substr(k)))
        throw parse_error(line_no, static_cast<int>(k) + 1, "malformed header line");
      if (val < 1) throw parse_error(line_no, static_cast<int>(r) + 1, "n must be at least 1");
      have_n = true;
      n = val;
      continue;
    }
    if (raw[p] != 'f')
      throw parse_error(line_no, static_cast<int>(p) + 1, "expected 'f<k> = ...'");
    std::size_t k = p + 1;
    if (k >= raw.size() || !std::isdigit(static_cast<unsigned char>(raw[k])))
      throw parse_error(line_no, static_cast<int>(k) + 1, "expected a polynomial index after 'f'");
    long idx = 0;
    while (k < raw.size() && std::isdigit(static_cast<unsigned char>(raw[k]))) {
      idx = idx * 10 + (raw[k] - '0');
      ++k;
    }
    std::size_t e = raw.find_first_not_of(" \t", k);
    if (e == std::string::npos || raw[e] != '=')
      throw parse_error(line_no, static_cast<int>(k) + 1, "expected '=' after polynomial name");
    poly_lines.push_back(
        {idx, raw.substr(e + 1), line_no, static_cast<int>(e) + 1});
  }

  if (poly_lines.empty()) throw parse_error(1, 1, "no polynomial lines");
  if (!have_n) n = static_cast<long>(poly_lines.size()) - 1;
  if (n < 1) throw parse_error(poly_lines[0].line_no, 1, "need at least two polynomials (n >= 1)");
  if (static_cast<long>(poly_lines.size()) != n + 1)
    throw parse_error(poly_lines.back().line_no, 1,
                      "expected " + std::to_string(n + 1) + " polynomials for n = " +
                          std::to_string(n) + ", found " +
                          std::to_string(poly_lines.size()));

  LaurentSystem sys;
  sys.n = n;
  sys.polys.assign(static_cast<std::size_t>(n) + 1, LaurentPoly{});
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  for (const auto& pl : poly_lines) {
    if (pl.index < 0 || pl.index > n)
      throw parse_error(pl.line_no, 1,
                        "polynomial index f" + std::to_string(pl.index) + " out of range");
    if (seen[static_cast<std::size_t>(pl.index)])
      throw parse_error(pl.line_no, 1, "duplicate polynomial f" + std::to_string(pl.index));
    seen[static_cast<std::size_t>(pl.index)] = true;
    detail::TermScanner sc(pl.body, pl.line_no, pl.col_base, n);
    sys.polys[static_cast<std::size_t>(pl.index)] = sc.parse_expr();
  }
  return sys;
}

}  // namespace rootbound

#endif
