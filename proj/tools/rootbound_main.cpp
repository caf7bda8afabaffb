// Command-line front end.  Subcommands expose the pipelines one at a time
// (bound, kb, equality, oracle, mi) or all together (report); every command
// reads one input file and writes one deterministic report to standard
// output, as text or as JSON.  Diagnostics go to standard error; exit codes
// separate parse errors (2), invalid systems (3), and unsupported
// dimensions (4) from internal failures (1).

#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rootbound/adelic.hpp"
#include "rootbound/concave.hpp"
#include "rootbound/equality.hpp"
#include "rootbound/mixed.hpp"
#include "rootbound/oracle.hpp"
#include "rootbound/parser.hpp"
#include "rootbound/report.hpp"

namespace {

struct Options {
  std::string file;
  bool json = false;
  bool as_written = false;
  bool check_all_routes = false;
  long max_dim = 4;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw rootbound::invalid_input("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

rootbound::LaurentSystem load_system(const Options& opt) {
  rootbound::LaurentSystem sys = rootbound::parse_system(read_file(opt.file));
  if (sys.n > opt.max_dim)
    throw rootbound::unsupported_dimension(
        "system has " + std::to_string(sys.n) +
        " torus variables; raise --max-dim to allow this");
  return sys;
}

rootbound::Presentation presentation(const Options& opt) {
  return opt.as_written ? rootbound::Presentation::as_written
                        : rootbound::Presentation::collapsed;
}

// The bound pipeline shared by cmd_bound and cmd_report: primitive systems
// take the requested presentation, systems with base points the corrected
// bound (which merges coefficients first).
rootbound::BoundReport run_bound(const rootbound::LaurentSystem& sys,
                                 rootbound::Presentation pres) {
  rootbound::LaurentSystem merged = rootbound::collapse(sys);
  for (const auto& f : merged.polys)
    if (f.empty()) throw rootbound::invalid_input("system: polynomial collapses to zero");
  for (const auto& f : merged.polys)
    if (!rootbound::is_primitive(f)) return rootbound::bound_corrected(sys);
  return rootbound::bound_mainthm(sys, pres);
}

nlohmann::ordered_json places_json(const rootbound::BoundReport& rep) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < rep.places.factors.size(); ++k) {
    nlohmann::ordered_json r;
    r["factor"] = rootbound::to_string(rep.places.factors[k]);
    r["degree"] = rep.places.degree(k);
    r["mi"] = rootbound::to_string(rep.place_mi[k]);
    arr.push_back(std::move(r));
  }
  return arr;
}

void print_place_table(std::ostream& out, const rootbound::BoundReport& rep) {
  std::size_t w = 5;
  for (const auto& q : rep.places.factors)
    w = std::max(w, rootbound::to_string(q).size());
  auto pad = [&](const std::string& s) { return s + std::string(w - s.size() + 2, ' '); };
  out << pad("place") << "degree  mi\n";
  for (std::size_t k = 0; k < rep.places.factors.size(); ++k) {
    std::string deg = std::to_string(rep.places.degree(k));
    out << pad(rootbound::to_string(rep.places.factors[k])) << deg
        << std::string(deg.size() < 6 ? 6 - deg.size() + 2 : 2, ' ')
        << rootbound::to_string(rep.place_mi[k]) << "\n";
  }
}

int cmd_bound(const Options& opt) {
  rootbound::LaurentSystem sys = load_system(opt);
  rootbound::BoundReport rep = run_bound(sys, presentation(opt));
  if (opt.check_all_routes) {
    rootbound::LaurentSystem work = (rep.presentation == rootbound::Presentation::as_written)
                                        ? sys
                                        : rootbound::collapse(sys);
    rootbound::report_detail::check_routes(work, rep);
  }
  if (opt.json) {
    nlohmann::ordered_json j;
    j["n"] = rep.n;
    j["presentation"] = rootbound::to_string(rep.presentation);
    j["places"] = places_json(rep);
    j["mi_infinity"] = rootbound::to_string(rep.mi_infinity);
    j["bound"] = rootbound::to_string(rep.total);
    j["correction"] = rootbound::to_string(rep.correction);
    j["positivity"] = rep.positive;
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "n = " << rep.n
            << ", presentation = " << rootbound::to_string(rep.presentation) << "\n";
  print_place_table(std::cout, rep);
  std::cout << "mi at infinity: " << rootbound::to_string(rep.mi_infinity) << "\n"
            << "bound: " << rootbound::to_string(rep.total) << "\n"
            << "correction: " << rootbound::to_string(rep.correction) << "\n"
            << "positivity: " << (rep.positive ? "positive" : "not positive") << "\n";
  return 0;
}

int cmd_kb(const Options& opt) {
  rootbound::LaurentSystem sys = load_system(opt);
  rootbound::Rational kb = rootbound::kb_bound(sys);
  if (opt.json) {
    nlohmann::ordered_json j;
    j["n"] = sys.n;
    j["kb_bound"] = rootbound::to_string(kb);
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "classical bound: " << rootbound::to_string(kb) << "\n";
  return 0;
}

int cmd_equality(const Options& opt) {
  rootbound::LaurentSystem sys = load_system(opt);
  rootbound::EqualityCertificate cert = rootbound::equality_certificate(sys);
  if (opt.json) {
    nlohmann::ordered_json j;
    j["n"] = sys.n;
    nlohmann::ordered_json eq;
    eq["verdict"] = cert.certified ? "certified" : "not certified";
    eq["obstructions"] = nlohmann::ordered_json::array();
    if (!cert.reason.empty()) eq["obstructions"].push_back(cert.reason);
    eq["initial_systems"] = nlohmann::ordered_json::array();
    for (const auto& is : cert.systems)
      eq["initial_systems"].push_back(rootbound::to_string(is));
    j["equality"] = std::move(eq);
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "equality: " << (cert.certified ? "certified" : "not certified") << "\n";
  if (!cert.reason.empty()) std::cout << "  obstruction: " << cert.reason << "\n";
  for (const auto& is : cert.systems)
    std::cout << "  initial system at " << rootbound::to_string(is) << "\n";
  return 0;
}

int cmd_oracle(const Options& opt) {
  rootbound::LaurentSystem sys = load_system(opt);
  rootbound::OracleResult res = rootbound::count_roots_n1(sys);
  if (opt.json) {
    nlohmann::ordered_json j;
    j["n"] = sys.n;
    nlohmann::ordered_json o;
    o["count"] = res.count;
    o["valid"] = res.valid;
    o["unclean"] = nlohmann::ordered_json::array();
    for (const auto& q : res.unclean) o["unclean"].push_back(rootbound::to_string(q));
    j["oracle"] = std::move(o);
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "root count: " << res.count << (res.valid ? "" : " (incomplete)") << "\n";
  for (const auto& q : res.unclean)
    std::cout << "  resolved degenerate place: " << rootbound::to_string(q) << "\n";
  for (const auto& q : res.obstructed)
    std::cout << "  unresolved place: " << rootbound::to_string(q) << "\n";
  return 0;
}

int cmd_report(const Options& opt) {
  std::string text = read_file(opt.file);
  {
    rootbound::LaurentSystem sys = rootbound::parse_system(text);
    if (sys.n > opt.max_dim)
      throw rootbound::unsupported_dimension(
          "system has " + std::to_string(sys.n) +
          " torus variables; raise --max-dim to allow this");
  }
  rootbound::ReportDocument doc =
      rootbound::build_report(text, presentation(opt), opt.check_all_routes);
  std::cout << (opt.json ? rootbound::render_json(doc) : rootbound::render_text(doc));
  return 0;
}

int cmd_mi(const Options& opt) {
  std::vector<std::vector<rootbound::Point>> sets =
      rootbound::parse_lifted_sets(read_file(opt.file));
  std::vector<rootbound::ConcavePWA> family;
  for (auto& s : sets)
    family.push_back(rootbound::ConcavePWA::from_lifted_points(std::move(s)));
  long n = family.front().base_dim();
  rootbound::Rational mi = rootbound::mixed_integral_def(family);
  if (opt.check_all_routes) {
    if (rootbound::mixed_integral_mv(family) != mi)
      throw std::logic_error("route check: mixed-volume route disagrees");
    if (rootbound::mixed_integral_dec(family) != mi)
      throw std::logic_error("route check: decomposition route disagrees");
  }
  if (opt.json) {
    nlohmann::ordered_json j;
    j["n"] = n;
    j["mi"] = rootbound::to_string(mi);
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "mi: " << rootbound::to_string(mi) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"refined root bounds for systems of Laurent polynomials with "
               "polynomial coefficients"};
  app.require_subcommand(1);

  Options opt;
  int (*run)(const Options&) = nullptr;

  auto add = [&](const std::string& name, const std::string& desc,
                 int (*fn)(const Options&), bool system_flags) {
    CLI::App* c = app.add_subcommand(name, desc);
    c->add_option("file", opt.file, "input file")->required();
    c->add_flag("--json", opt.json, "emit JSON instead of text");
    if (system_flags) {
      c->add_flag("--as-written", opt.as_written,
                  "keep repeated support points separate instead of merging them");
      c->add_option("--max-dim", opt.max_dim,
                    "largest number of torus variables to accept");
    }
    c->add_flag("--check-all-routes", opt.check_all_routes,
                "recompute every mixed integral by all three algorithms");
    c->callback([&run, fn] { run = fn; });
    return c;
  };

  add("bound", "refined bound with the per-place table", cmd_bound, true);
  add("kb", "classical mixed-volume bound", cmd_kb, true);
  add("equality", "exactness certificate via initial systems", cmd_equality, true);
  add("oracle", "exact root count for one torus variable", cmd_oracle, true);
  add("report", "everything: bound, classical bound, equality, count", cmd_report, true);
  add("mi", "mixed integral of lifted point sets", cmd_mi, false);

  CLI11_PARSE(app, argc, argv);

  try {
    return run(opt);
  } catch (const rootbound::parse_error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const rootbound::unsupported_dimension& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const rootbound::common_component& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const rootbound::not_primitive& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const rootbound::invalid_input& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
