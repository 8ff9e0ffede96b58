#include "dynirr/report.hpp"

#include <charconv>
#include <cstdlib>

#include "dynirr/error.hpp"

namespace dynirr::report {

namespace {

json polys_json(const ff::Field& f, std::span<const quad::QuadPoly> polys) {
  json out = json::array();
  for (const auto& p : polys) out.push_back(quad::format(f, p));
  return out;
}

json part_json(const enumr::PartTelemetry& t) {
  return {{"sets_tested", t.sets_tested},
          {"sets_emitted", t.sets_emitted},
          {"pairs_considered", t.pairs_considered},
          {"pairs_skipped", t.pairs_skipped},
          {"max_gamma", t.max_gamma},
          {"max_pool", t.max_pool},
          {"skip_reasons", t.skip_reasons}};
}

}  // namespace

json tool_json() { return {{"name", kToolName}, {"version", kToolVersion}}; }

json field_json(const ff::Field& f) {
  return {{"spec", f.spec_string()},
          {"p", f.characteristic()},
          {"k", f.degree()},
          {"q", f.order()},
          {"modulus", f.degree() > 1 ? json(f.modulus_string()) : json(nullptr)},
          {"minus_one_is_square", f.minus_one_is_square()}};
}

json census_result(const ff::Field& f, const census::CensusResult& r) {
  json out = {{"q", r.q},
              {"di_star", r.di_star},
              {"di", r.di},
              {"stage1_survivors", r.stage1_survivors},
              {"filter_depth", r.filter_depth},
              {"lower_bound", (r.q - 1) * (r.q - 1) / 4.0},
              {"orbit_telemetry",
               {{"max_di_orbit", r.telemetry.max_di_orbit},
                {"max_survivor_walk", r.telemetry.max_survivor_walk},
                {"reference_cap", r.telemetry.reference_cap},
                {"di_above_reference", r.telemetry.di_above_reference}}}};
  if (r.monic_list) out["monic_list"] = polys_json(f, *r.monic_list);
  return out;
}

json census_timing(const census::CensusResult& r) {
  return {{"jobs", r.jobs},
          {"stage1_seconds", r.wall_times.stage1_seconds},
          {"stage2_seconds", r.wall_times.stage2_seconds},
          {"expand_seconds", r.wall_times.expand_seconds}};
}

json set_verdict(const ff::Field& f, std::span<const quad::QuadPoly> polys, const multiset::SetVerdict& v) {
  using Kind = multiset::SetVerdict::Kind;
  json out = {{"polys", polys_json(f, polys)}};
  switch (v.kind) {
    case Kind::DynamicallyIrreducible:
      out["verdict"] = "DI";
      break;
    case Kind::Fails:
      out["verdict"] = "fails";
      out["witness"] = {{"word", v.word.indices},
                        {"gamma_index", v.gamma_index},
                        {"value", f.format(v.value)},
                        {"tested_value", f.format(v.tested_value)}};
      break;
    case Kind::PreconditionFailed:
      out["verdict"] = "precondition-failed";
      out["bad_index"] = v.bad_index;
      break;
  }
  out["values_visited"] = v.values_visited;
  out["tests_performed"] = v.tests_performed;
  out["reference_value_bound"] = multiset::reference_value_bound(f.order());
  return out;
}

json gamma_report(const ff::Field& f, const multiset::GammaReport& g) {
  json set = json::array();
  for (auto x : g.gamma_set) set.push_back(f.format(x));
  const double q = f.order();
  const double lq = std::log(q);
  return {{"depth", g.depth},
          {"size", g.gamma_set.size()},
          {"gamma_set", set},
          {"sizes_per_depth", g.sizes_per_depth},
          {"tests_performed", g.tests_performed},
          {"reference_bound", std::sqrt(q) * lq * lq}};
}

json orbit_report(const ff::Field& f, const orbit::OrbitReport& r) {
  json out = {{"verdict", r.dynamically_irreducible ? "DI" : "not-DI"},
              {"fail_step", r.fail_step},
              {"preperiod", r.stats.preperiod},
              {"period", r.stats.period},
              {"critical_orbit_size", r.stats.critical_orbit_size()},
              {"steps_tested", r.steps_tested},
              {"oracle_depth", r.oracle_depth()},
              {"capped", r.capped},
              {"reference_cap", orbit::reference_orbit_cap(f.order())}};
  out["witness"] = r.witness ? json(f.format(*r.witness)) : json(nullptr);
  out["tested_value"] = r.tested_value ? json(f.format(*r.tested_value)) : json(nullptr);
  return out;
}

json enum_result(const ff::Field& f, const enumr::REnumResult& r) {
  json out = {{"q", r.q},
              {"r", r.r},
              {"count_total", r.count_total},
              {"counts_per_part", r.counts_per_part},
              {"overlaps", r.overlaps},
              {"audit_failures", r.audit_failures},
              {"tests_performed", r.tests_performed},
              {"bound_reference", r.bound_reference},
              {"parts", json::array({part_json(r.parts[0]), part_json(r.parts[1]), part_json(r.parts[2])})}};
  if (r.set_list) {
    json sets = json::array();
    for (const auto& s : *r.set_list) sets.push_back(quad::format_set(f, s));
    out["set_list"] = sets;
  }
  return out;
}

json envelope(const ff::Field& f, json config, json result, json timing) {
  return {{"tool", tool_json()},
          {"config", std::move(config)},
          {"field", field_json(f)},
          {"result", std::move(result)},
          {"timing", std::move(timing)}};
}

json without_timing(json report) {
  report.erase("timing");
  return report;
}

std::uint64_t budget_from_env(std::uint64_t fallback) {
  const char* env = std::getenv("DYNIRR_BUDGET");
  if (env == nullptr || *env == '\0') return fallback;
  const std::string_view text(env);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value == 0)
    throw InvalidArgument("DYNIRR_BUDGET must be a positive integer, got '" + std::string(text) + "'");
  return value;
}

}  // namespace dynirr::report
