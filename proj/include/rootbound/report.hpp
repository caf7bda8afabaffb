#ifndef ROOTBOUND_REPORT_HPP
#define ROOTBOUND_REPORT_HPP

// Full analysis of one system, assembled into a document with deterministic
// text and JSON renderings.  The document carries the place table with the
// per-place mixed integrals, the refined bound, the classical bound on the
// same data, the base-point correction, the positivity verdict, the equality
// certificate with its initial systems, and -- for one torus variable -- the
// exact root count.  All rationals are rendered as strings so the two output
// formats agree byte for byte on every number.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rootbound/adelic.hpp"
#include "rootbound/concave.hpp"
#include "rootbound/equality.hpp"
#include "rootbound/laurent.hpp"
#include "rootbound/mixed.hpp"
#include "rootbound/numeric.hpp"
#include "rootbound/oracle.hpp"
#include "rootbound/parser.hpp"
#include "rootbound/upoly.hpp"

namespace rootbound {

struct PlaceRow {
  std::string factor;
  long degree = 0;
  std::string mi;
};

struct EqualitySection {
  std::string verdict;  // "certified" or "not certified"
  std::vector<std::string> obstructions;
  std::vector<std::string> initial_systems;
};

struct OracleSection {
  bool present = false;  // only one torus variable has an exact count
  long count = 0;
  bool valid = false;
  std::vector<std::string> unclean;
};

struct ReportDocument {
  std::string input;  // echoed in the text rendering only
  long n = 0;
  std::string presentation;
  std::vector<PlaceRow> places;
  std::string mi_infinity;
  std::string bound;
  std::string bound_as_written;  // set when merging coefficients changed the input
  std::string kb_bound;
  std::string correction;
  bool positivity = false;
  EqualitySection equality;
  OracleSection oracle;
};

namespace report_detail {

// Did the input write some support point twice?  Exactly then the two
// presentations can differ and the as-written bound is worth reporting.
inline bool supports_repeat(const LaurentSystem& sys) {
  LaurentSystem merged = collapse(sys);
  for (std::size_t i = 0; i < sys.polys.size(); ++i)
    if (merged.polys[i].size() != sys.polys[i].size()) return true;
  return false;
}

// Recompute every mixed integral in the report by the mixed-volume route and
// by the facet decomposition and insist on exact agreement with the defining
// formula.  A mismatch is a bug in this program, not bad input.
inline void check_routes(const LaurentSystem& work, const BoundReport& rep) {
  auto [places, fam] = roofs_from_factorization(work);
  if (places.factors.size() != rep.places.factors.size())
    throw std::logic_error("route check: place sets disagree");

  auto check_one = [](const std::vector<ConcavePWA>& family, const Rational& expected,
                      const std::string& where) {
    if (mixed_integral_mv(family) != expected)
      throw std::logic_error("route check: mixed-volume route disagrees at " + where);
    if (mixed_integral_dec(family) != expected)
      throw std::logic_error("route check: decomposition route disagrees at " + where);
  };

  check_one(fam.at_infinity, rep.mi_infinity, "infinity");
  for (std::size_t k = 0; k < places.factors.size(); ++k) {
    std::vector<ConcavePWA> fam_k;
    for (std::size_t i = 0; i < fam.finite.size(); ++i) fam_k.push_back(fam.finite[i][k]);
    check_one(fam_k, rep.place_mi[k], to_string(places.factors[k]));
  }
}

inline std::string join_lines_indented(const std::string& text) {
  std::string out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(start, end - start);
    if (!line.empty()) out += "  " + line + "\n";
    start = end + 1;
  }
  return out;
}

}  // namespace report_detail

// Parse, bound, certify, and (for one torus variable) count.  Primitive
// systems go through the plain bound with the requested presentation;
// systems with base points get the corrected bound, which always merges
// coefficients first.  check_all_routes re-derives every mixed integral by
// the two alternative algorithms.
inline ReportDocument build_report(const std::string& input, Presentation pres,
                                   bool check_all_routes = false) {
  LaurentSystem sys = parse_system(input);
  LaurentSystem merged = collapse(sys);
  for (const auto& f : merged.polys)
    if (f.empty()) throw invalid_input("system: polynomial collapses to zero");

  bool primitive = true;
  for (const auto& f : merged.polys)
    if (!is_primitive(f)) primitive = false;

  BoundReport rep = primitive ? bound_mainthm(sys, pres) : bound_corrected(sys);

  ReportDocument doc;
  doc.input = input;
  doc.n = rep.n;
  doc.presentation = to_string(rep.presentation);
  for (std::size_t k = 0; k < rep.places.factors.size(); ++k)
    doc.places.push_back({to_string(rep.places.factors[k]), rep.places.degree(k),
                          to_string(rep.place_mi[k])});
  doc.mi_infinity = to_string(rep.mi_infinity);
  doc.bound = to_string(rep.total);
  doc.kb_bound = to_string(rep.kb);
  doc.correction = to_string(rep.correction);
  doc.positivity = rep.positive;

  if (check_all_routes) {
    const LaurentSystem& work =
        (rep.presentation == Presentation::as_written) ? sys : merged;
    report_detail::check_routes(work, rep);
  }

  if (primitive && rep.presentation == Presentation::collapsed &&
      report_detail::supports_repeat(sys))
    doc.bound_as_written = to_string(bound_mainthm(sys, Presentation::as_written).total);

  if (primitive) {
    EqualityCertificate cert = equality_certificate(sys);
    doc.equality.verdict = cert.certified ? "certified" : "not certified";
    if (!cert.reason.empty()) doc.equality.obstructions.push_back(cert.reason);
    for (const auto& is : cert.systems)
      doc.equality.initial_systems.push_back(to_string(is));
  } else {
    doc.equality.verdict = "not certified";
    doc.equality.obstructions.push_back(
        "the system has base points; the certificate applies to primitive systems");
  }

  if (rep.n == 1) {
    OracleResult res = count_roots_n1(sys);
    doc.oracle.present = true;
    doc.oracle.count = res.count;
    doc.oracle.valid = res.valid;
    for (const auto& q : res.unclean) doc.oracle.unclean.push_back(to_string(q));
  }

  return doc;
}

inline std::string render_text(const ReportDocument& doc) {
  std::string out;
  out += "input:\n" + report_detail::join_lines_indented(doc.input) + "\n";
  out += "n = " + std::to_string(doc.n) + ", presentation = " + doc.presentation + "\n\n";

  std::size_t w = 5;  // "place"
  for (const auto& row : doc.places) w = std::max(w, row.factor.size());
  auto pad = [&](const std::string& s) {
    return s + std::string(w - s.size() + 2, ' ');
  };
  out += pad("place") + "degree  mi\n";
  for (const auto& row : doc.places) {
    std::string deg = std::to_string(row.degree);
    out += pad(row.factor) + deg + std::string(deg.size() < 6 ? 6 - deg.size() + 2 : 2, ' ') +
           row.mi + "\n";
  }
  out += "\n";
  out += "mi at infinity: " + doc.mi_infinity + "\n";
  out += "bound: " + doc.bound + "\n";
  if (!doc.bound_as_written.empty())
    out += "bound (as written): " + doc.bound_as_written + "\n";
  out += "classical bound: " + doc.kb_bound + "\n";
  out += "correction: " + doc.correction + "\n";
  out += "positivity: " + std::string(doc.positivity ? "positive" : "not positive") + "\n";

  out += "\nequality: " + doc.equality.verdict + "\n";
  for (const auto& o : doc.equality.obstructions) out += "  obstruction: " + o + "\n";
  for (const auto& s : doc.equality.initial_systems) out += "  initial system at " + s + "\n";

  if (doc.oracle.present) {
    out += "\nroot count: " + std::to_string(doc.oracle.count) +
           (doc.oracle.valid ? "" : " (incomplete)") + "\n";
    for (const auto& q : doc.oracle.unclean)
      out += "  resolved degenerate place: " + q + "\n";
  }
  return out;
}

inline std::string render_json(const ReportDocument& doc) {
  nlohmann::ordered_json j;
  j["n"] = doc.n;
  j["presentation"] = doc.presentation;
  j["places"] = nlohmann::ordered_json::array();
  for (const auto& row : doc.places) {
    nlohmann::ordered_json r;
    r["factor"] = row.factor;
    r["degree"] = row.degree;
    r["mi"] = row.mi;
    j["places"].push_back(std::move(r));
  }
  j["mi_infinity"] = doc.mi_infinity;
  j["bound"] = doc.bound;
  if (!doc.bound_as_written.empty()) j["bound_as_written"] = doc.bound_as_written;
  j["kb_bound"] = doc.kb_bound;
  j["correction"] = doc.correction;
  j["positivity"] = doc.positivity;
  j["equality"] = {{"verdict", doc.equality.verdict},
                   {"obstructions", doc.equality.obstructions},
                   {"initial_systems", doc.equality.initial_systems}};
  if (doc.oracle.present)
    j["oracle"] = {{"count", doc.oracle.count},
                   {"valid", doc.oracle.valid},
                   {"unclean", doc.oracle.unclean}};
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Lifted point sets from plain text, for mixed integrals without a system.
// Format: '#' starts a comment, blank lines separate nothing, a line reading
// "set" starts the next point set, and every other line is one lifted point
// as whitespace-separated rationals (a_1 .. a_n, lift).

inline std::vector<std::vector<Point>> parse_lifted_sets(const std::string& text) {
  std::vector<std::vector<Point>> sets;
  long cols = -1;
  std::size_t start = 0, lineno = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(start, end - start);
    start = end + 1;
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);

    std::vector<std::string> fields;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
      if (j > i) fields.push_back(line.substr(i, j - i));
      i = j;
    }
    if (fields.empty()) continue;

    if (fields.size() == 1 && fields[0] == "set") {
      sets.emplace_back();
      continue;
    }
    if (sets.empty())
      throw invalid_input("points: a point appears before the first \"set\" line");
    if (cols == -1) cols = static_cast<long>(fields.size());
    if (static_cast<long>(fields.size()) != cols)
      throw invalid_input("points: line " + std::to_string(lineno) +
                          " has " + std::to_string(fields.size()) +
                          " fields, expected " + std::to_string(cols));
    Point p;
    for (const auto& f : fields) {
      std::size_t slash = f.find('/');
      try {
        if (slash == std::string::npos)
          p.push_back(Rational(Int(f)));
        else
          p.push_back(Rational(Int(f.substr(0, slash)), Int(f.substr(slash + 1))));
      } catch (const std::exception&) {
        throw invalid_input("points: line " + std::to_string(lineno) +
                            ": cannot read \"" + f + "\" as a rational");
      }
    }
    sets.back().push_back(std::move(p));
  }
  if (sets.empty()) throw invalid_input("points: no point sets");
  for (const auto& s : sets)
    if (s.empty()) throw invalid_input("points: a \"set\" line has no points");
  if (cols < 2) throw invalid_input("points: need at least one coordinate plus a lift");
  return sets;
}

}  // namespace rootbound

#endif
