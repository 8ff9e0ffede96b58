// dynirr: census, set tests, Gamma sets and r-set enumeration for
// dynamically irreducible quadratics over odd finite fields.
//
// Exit codes: 0 ok, 1 negative verdict / failed check, 2 usage error,
// 3 resource budget exceeded.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dynirr/census.hpp"
#include "dynirr/enumr.hpp"
#include "dynirr/error.hpp"
#include "dynirr/multiset.hpp"
#include "dynirr/orbit.hpp"
#include "dynirr/parallel.hpp"
#include "dynirr/report.hpp"
#include "dynirr/verify.hpp"

namespace {

using namespace dynirr;
using json = report::json;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  return out;
}

// One polynomial per line, or several joined with ';'. Blank lines and
// '#' comments are skipped.
std::vector<quad::QuadPoly> read_polys(const ff::Field& f, std::istream& in) {
  std::vector<quad::QuadPoly> out;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::stringstream parts(line);
    std::string item;
    while (std::getline(parts, item, ';')) {
      if (item.find_first_not_of(" \t\r") == std::string::npos) continue;
      out.push_back(quad::parse(f, item));
    }
  }
  return out;
}

struct CensusArgs {
  std::string field;
  bool count_only = false;
  std::string emit;
  std::uint32_t k_depth = 0;
  int jobs = 0;
  std::string format = "json";
  bool reference = false;
};

int cmd_census(const CensusArgs& a) {
  if (a.count_only && a.format == "csv") throw InvalidArgument("--format csv lists polynomials; drop --count-only");
  const auto f = ff::Field::parse(a.field);
  census::CensusOptions opts;
  opts.jobs = a.jobs;
  opts.params.filter_depth = a.k_depth;
  opts.keep_list = !a.count_only || !a.emit.empty() || a.format == "csv";
  auto result = a.reference ? census::census_monic_serial(f, opts) : census::census_monic(f, opts);

  const bool stream_full = a.format == "csv" || !a.emit.empty();
  if (stream_full) {
    std::ofstream file;
    if (!a.emit.empty()) file = open_out(a.emit);
    std::ostream& out = a.emit.empty() ? std::cout : file;
    for (const auto& p : *result.monic_list)
      for (auto u : f.elements())
        if (!u.is_zero()) out << quad::format(f, quad::scale(f, p, u)) << '\n';
  }
  if (a.format == "csv" && a.emit.empty()) return kOk;

  if (a.count_only) result.monic_list.reset();
  json config = {{"command", "census"},     {"field", a.field},           {"count_only", a.count_only},
                 {"emit", a.emit},          {"k_depth", a.k_depth},       {"format", a.format},
                 {"reference", a.reference}, {"jobs_requested", a.jobs}};
  print(report::envelope(f, config, report::census_result(f, result), report::census_timing(result)));
  return kOk;
}

struct CurveArgs {
  std::vector<std::string> fields;
  std::uint32_t k_depth = 0;
  int jobs = 0;
  std::string format = "csv";
};

int cmd_curve(const CurveArgs& a) {
  census::CensusOptions opts;
  opts.jobs = a.jobs;
  opts.params.filter_depth = a.k_depth;
  json rows = json::array();
  if (a.format == "csv") std::cout << "q,survivors,filter_depth,normalized\n";
  for (const auto& spec : a.fields) {
    const auto f = ff::Field::parse(spec);
    const auto pt = census::survivor_curve(f, opts);
    if (a.format == "csv")
      std::cout << pt.q << ',' << pt.survivors << ',' << pt.filter_depth << ',' << pt.normalized << '\n';
    rows.push_back({{"q", pt.q}, {"survivors", pt.survivors}, {"filter_depth", pt.filter_depth},
                    {"normalized", pt.normalized}});
  }
  if (a.format == "json")
    print({{"tool", report::tool_json()},
           {"config", {{"command", "curve"}, {"fields", a.fields}, {"k_depth", a.k_depth}}},
           {"result", rows}});
  return kOk;
}

struct TestSetArgs {
  std::string field;
  std::string polys;
};

int cmd_test_set(const TestSetArgs& a) {
  const auto f = ff::Field::parse(a.field);
  std::vector<quad::QuadPoly> polys;
  if (a.polys == "-") {
    polys = read_polys(f, std::cin);
  } else {
    std::ifstream in(a.polys);
    if (!in) throw InvalidArgument("cannot read '" + a.polys + "'");
    polys = read_polys(f, in);
  }
  const auto v = multiset::di_set_test(f, polys);
  json config = {{"command", "test-set"}, {"field", a.field}, {"polys", a.polys}};
  print(report::envelope(f, config, report::set_verdict(f, polys, v)));
  return v.is_di() ? kOk : kNegative;
}

struct OrbitArgs {
  std::string field;
  std::string poly;
  bool oracle = false;
};

int cmd_orbit(const OrbitArgs& a) {
  const auto f = ff::Field::parse(a.field);
  const auto p = quad::parse(f, a.poly);
  const auto rep = orbit::di_test_char(f, p);
  json result = report::orbit_report(f, rep);
  int code = rep.dynamically_irreducible ? kOk : kNegative;
  if (a.oracle) {
    const auto o = orbit::di_test_oracle(f, p, static_cast<unsigned>(rep.oracle_depth()));
    const bool agrees = rep.dynamically_irreducible ? o.all_irreducible
                                                    : o.first_reducible == std::optional<unsigned>(rep.fail_step);
    result["oracle"] = {{"depth", o.depth},
                        {"all_irreducible", o.all_irreducible},
                        {"first_reducible", o.first_reducible ? json(*o.first_reducible) : json(nullptr)},
                        {"agrees", agrees}};
    if (!agrees) code = kNegative;
  }
  json config = {{"command", "orbit"}, {"field", a.field}, {"poly", a.poly}, {"oracle", a.oracle}};
  print(report::envelope(f, config, result));
  return code;
}

struct GammaArgs {
  std::string field;
  std::string f1, f2;
  unsigned depth = 0;
  int jobs = 0;
};

int cmd_gamma(const GammaArgs& a) {
  const auto f = ff::Field::parse(a.field);
  const auto p1 = quad::parse(f, a.f1);
  const auto p2 = quad::parse(f, a.f2);
  const unsigned depth = a.depth != 0 ? a.depth : multiset::default_gamma_depth(f.order());
  const auto g = multiset::gamma_set(f, p1, p2, depth, a.jobs);
  json config = {{"command", "gamma"}, {"field", a.field}, {"f1", a.f1}, {"f2", a.f2}, {"depth", depth}};
  print(report::envelope(f, config, report::gamma_report(f, g)));
  return kOk;
}

struct EnumArgs {
  std::string field;
  unsigned r = 2;
  std::string emit;
  std::uint64_t budget = 0;
  bool oracle_check = false;
  unsigned oracle_len = 4;
  unsigned gamma_depth = 0;
  std::string part3 = "closure";
  int jobs = 0;
};

int cmd_enum_sets(const EnumArgs& a) {
  const auto f = ff::Field::parse(a.field);
  enumr::EnumOptions opts;
  opts.jobs = a.jobs;
  opts.budget = a.budget != 0 ? a.budget : report::budget_from_env();
  if (a.gamma_depth != 0) opts.gamma_depth = a.gamma_depth;
  opts.part3 = a.part3 == "literal" ? enumr::Part3Method::Literal : enumr::Part3Method::ClosureValues;
  opts.keep_list = true;

  json config = {{"command", "enum-sets"}, {"field", a.field},          {"r", a.r},
                 {"budget", opts.budget},  {"oracle_check", a.oracle_check}, {"part3", a.part3},
                 {"gamma_depth", opts.gamma_depth.value_or(multiset::default_gamma_depth(f.order()))},
                 {"emit", a.emit}};
  enumr::REnumResult result;
  try {
    result = enumr::enum_all(f, a.r, opts);
  } catch (const enumr::BudgetExceeded& e) {
    json partial = report::enum_result(f, e.partial());
    partial["error"] = e.what();
    print(report::envelope(f, config, partial, {{"seconds", e.partial().seconds}}));
    return kBudget;
  }

  if (!a.emit.empty()) {
    auto out = open_out(a.emit);
    for (const auto& s : *result.set_list) out << quad::format_set(f, s) << '\n';
  }
  json body = report::enum_result(f, result);
  if (!a.emit.empty()) body.erase("set_list");
  int code = result.audit_failures == 0 ? kOk : kNegative;
  if (a.oracle_check) {
    const auto brute = enumr::brute_force_sets(f, a.r, a.oracle_len);
    std::vector<std::string> missing, extra;
    for (const auto& s : brute.sets)
      if (!std::binary_search(result.set_list->begin(), result.set_list->end(), s))
        missing.push_back(quad::format_set(f, s));
    for (const auto& s : *result.set_list)
      if (!std::binary_search(brute.sets.begin(), brute.sets.end(), s)) extra.push_back(quad::format_set(f, s));
    body["oracle_check"] = {{"max_word_len", a.oracle_len},
                            {"brute_force_count", brute.sets.size()},
                            {"candidates", brute.candidates},
                            {"equal", missing.empty() && extra.empty()},
                            {"missing", missing},
                            {"extra", extra}};
    if (!missing.empty() || !extra.empty()) code = kNegative;
  }
  print(report::envelope(f, config, body, {{"seconds", result.seconds}}));
  return code;
}

struct VerifyArgs {
  std::string level = "desk";
  std::string field;
  std::vector<std::string> suites;
  std::uint64_t seed = verify::Config{}.seed;
  std::string baseline;
  int jobs = 0;
};

int cmd_verify(const VerifyArgs& a) {
  verify::Config cfg;
  const auto level = verify::parse_level(a.level);
  if (!level) throw InvalidArgument("unknown level '" + a.level + "' (quick, desk)");
  cfg.level = *level;
  if (!a.field.empty()) cfg.field = ff::Field::parse(a.field);
  cfg.seed = a.seed;
  cfg.jobs = a.jobs;
  if (!a.baseline.empty()) cfg.baseline_path = a.baseline;

  std::vector<std::string> suites = a.suites;
  if (suites.empty() || (suites.size() == 1 && suites[0] == "all")) suites = verify::suite_names();
  for (const auto& s : suites)
    if (!verify::is_suite(s)) throw InvalidArgument("unknown suite '" + s + "'");

  json results = json::array();
  json timing = json::object();
  std::vector<std::string> failed;
  for (const auto& s : suites) {
    const auto r = verify::run_suite(s, cfg);
    results.push_back(verify::suite_json(r));
    timing[s] = r.seconds;
    if (!r.passed) failed.push_back(s);
  }
  json config = {{"command", "verify"}, {"level", a.level}, {"field", a.field.empty() ? json(nullptr) : json(a.field)},
                 {"suites", suites},    {"seed", a.seed}};
  json body = {{"passed", failed.empty()}, {"failed_suites", failed}, {"suites", results}};
  json out = {{"tool", report::tool_json()}, {"config", config}, {"result", body}, {"timing", timing}};
  if (cfg.field) out["field"] = report::field_json(*cfg.field);
  print(out);
  return failed.empty() ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamically irreducible quadratics over odd finite fields"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(report::kToolVersion));

  const std::string field_help = "field as p or p^k (odd q)";

  CensusArgs census_args;
  auto* census = app.add_subcommand("census", "count (and list) DI quadratics");
  census->add_option("--field", census_args.field, field_help)->required();
  census->add_flag("--count-only", census_args.count_only, "omit the monic list from the report");
  census->add_option("--emit", census_args.emit, "write every DI quadratic as a,b,c rows to FILE");
  census->add_option("--k-depth", census_args.k_depth, "stage-1 filter depth (default ceil(log2 q / 2) + 2)");
  census->add_option("--jobs", census_args.jobs, "worker threads (default: all)");
  census->add_option("--format", census_args.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  census->add_flag("--reference", census_args.reference, "use the single-threaded reference implementation");

  CurveArgs curve_args;
  auto* curve = app.add_subcommand("curve", "stage-1 survivor counts across fields");
  curve->add_option("--fields", curve_args.fields, field_help)->required()->delimiter(',');
  curve->add_option("--k-depth", curve_args.k_depth, "stage-1 filter depth");
  curve->add_option("--jobs", curve_args.jobs, "worker threads");
  curve->add_option("--format", curve_args.format, "csv or json")->check(CLI::IsMember({"json", "csv"}));

  TestSetArgs set_args;
  auto* test_set = app.add_subcommand("test-set", "test a set of quadratics for dynamical irreducibility");
  test_set->add_option("--field", set_args.field, field_help)->required();
  test_set->add_option("--polys", set_args.polys, "file with one a,b,c per line ('-' for stdin)")->required();

  OrbitArgs orbit_args;
  auto* orbit_cmd = app.add_subcommand("orbit", "single-polynomial test with orbit statistics");
  orbit_cmd->add_option("--field", orbit_args.field, field_help)->required();
  orbit_cmd->add_option("--poly", orbit_args.poly, "a,b,c")->required();
  orbit_cmd->add_flag("--oracle", orbit_args.oracle, "also expand iterates and run the irreducibility oracle");

  GammaArgs gamma_args;
  auto* gamma = app.add_subcommand("gamma", "Gamma set of a non-proportional pair");
  gamma->add_option("--field", gamma_args.field, field_help)->required();
  gamma->add_option("--f1", gamma_args.f1, "a,b,c")->required();
  gamma->add_option("--f2", gamma_args.f2, "a,b,c")->required();
  gamma->add_option("--depth", gamma_args.depth, "word length K (default from q)");
  gamma->add_option("--jobs", gamma_args.jobs, "worker threads");

  EnumArgs enum_args;
  auto* enum_sets = app.add_subcommand("enum-sets", "enumerate all DI r-sets");
  enum_sets->add_option("--field", enum_args.field, field_help)->required();
  enum_sets->add_option("-r", enum_args.r, "set size (>= 2)")->required()->check(CLI::Range(2u, 64u));
  enum_sets->add_option("--emit", enum_args.emit, "write sets to FILE, one per line");
  enum_sets->add_option("--budget", enum_args.budget, "character-test budget (default DYNIRR_BUDGET or 1e9)");
  enum_sets->add_flag("--oracle-check", enum_args.oracle_check, "compare with the brute-force enumeration");
  enum_sets->add_option("--oracle-len", enum_args.oracle_len, "dense-oracle word length for --oracle-check");
  enum_sets->add_option("--gamma-depth", enum_args.gamma_depth, "Gamma word length for part 3");
  enum_sets->add_option("--part3", enum_args.part3, "closure or literal")
      ->check(CLI::IsMember({"closure", "literal"}));
  enum_sets->add_option("--jobs", enum_args.jobs, "worker threads");

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "run verification suites");
  verify_cmd->add_option("--level", verify_args.level, "quick or desk");
  verify_cmd->add_option("--field", verify_args.field, "restrict field-indexed suites to one field");
  verify_cmd->add_option("--suite", verify_args.suites, "suite name (repeatable; default all)");
  verify_cmd->add_option("--seed", verify_args.seed, "seed for randomized suites");
  verify_cmd->add_option("--baseline", verify_args.baseline, "telemetry baseline JSON");
  verify_cmd->add_option("--jobs", verify_args.jobs, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*census) return cmd_census(census_args);
    if (*curve) return cmd_curve(curve_args);
    if (*test_set) return cmd_test_set(set_args);
    if (*orbit_cmd) return cmd_orbit(orbit_args);
    if (*gamma) return cmd_gamma(gamma_args);
    if (*enum_sets) return cmd_enum_sets(enum_args);
    if (*verify_cmd) return cmd_verify(verify_args);
  } catch (const InvalidField& e) {
    std::cerr << "dynirr: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "dynirr: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "dynirr: " << e.what() << '\n';
    return kUsage;
  } catch (const DegeneratePolynomial& e) {
    std::cerr << "dynirr: " << e.what() << '\n';
    return kUsage;
  } catch (const ResourceExhausted& e) {
    std::cerr << "dynirr: " << e.what() << '\n';
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "dynirr: " << e.what() << '\n';
    return kNegative;
  }
  return kUsage;
}
