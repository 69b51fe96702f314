#include "verify/verify.hpp"

#include <algorithm>
#include <chrono>
#include <map>

#include "verify/builder.hpp"

namespace et::verify {

namespace {

using SuiteFn = void (*)(detail::Builder&, const SuiteOptions&);

const std::map<std::string, SuiteFn>& registry() {
  static const std::map<std::string, SuiteFn> r = {
      {"theta", detail::theta_suite},         {"ellint", detail::ellint_suite},
      {"hts", detail::hts_suite},             {"operators", detail::operators_suite},
      {"macdonald", detail::macdonald_suite}, {"modular", detail::modular_suite},
      {"limits", detail::limits_suite},
  };
  return r;
}

json check_json(const Check& c) {
  json j;
  j["name"] = c.name;
  j["paper_anchor"] = c.anchor;
  j["parameters"] = c.parameters;
  j["residual"] = c.has_residual ? json(c.residual) : json(nullptr);
  j["tolerance"] = c.tolerance;
  j["bound"] = c.bound == Bound::upper ? "upper" : "lower";
  j["pass"] = c.pass;
  j["acceptance"] = c.acceptance;
  if (c.skipped) j["skipped"] = true;
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

}  // namespace

int Report::passed() const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return c.pass; }));
}

int Report::skipped() const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return c.skipped; }));
}

int Report::failed() const { return static_cast<int>(checks.size()) - passed() - skipped(); }

bool Report::acceptance_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return !c.acceptance || c.pass || c.skipped; });
}

json Report::to_json(bool with_timing) const {
  json j;
  j["suite"] = suite;
  j["options"] = {{"kappa", options.kappa},
                  {"seed", options.seed},
                  {"trunc",
                   {{"product_cutoff", options.trunc.product_cutoff},
                    {"series_cutoff", options.trunc.series_cutoff},
                    {"quad_points", options.trunc.quad_points},
                    {"line_radius", options.trunc.line_radius},
                    {"tol_abs", options.trunc.tol_abs},
                    {"tol_rel", options.trunc.tol_rel},
                    {"pinch_tol", options.trunc.pinch_tol}}}};
  json arr = json::array();
  for (const auto& c : checks) arr.push_back(check_json(c));
  j["checks"] = std::move(arr);
  int acc_total = 0, acc_pass = 0;
  for (const auto& c : checks)
    if (c.acceptance) {
      ++acc_total;
      acc_pass += c.pass ? 1 : 0;
    }
  j["summary"] = {{"total", checks.size()},
                  {"passed", passed()},
                  {"failed", failed()},
                  {"skipped", skipped()},
                  {"acceptance_total", acc_total},
                  {"acceptance_passed", acc_pass},
                  {"all_pass", all_pass()}};
  if (with_timing) {
    json per = json::object();
    for (const auto& c : checks) per[c.name] = c.seconds;
    j["timing"] = {{"total_seconds", seconds}, {"checks", per}};
  }
  return j;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"theta",     "ellint",  "hts",   "operators",
                                                 "macdonald", "modular", "limits"};
  return names;
}

bool is_suite(const std::string& name) { return registry().count(name) > 0; }

Report run_suite(const std::string& name, const SuiteOptions& opt) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw Error(Errc::argument, "unknown suite '" + name + "'");
  Report rep;
  rep.suite = name;
  rep.options = opt;
  const auto t0 = std::chrono::steady_clock::now();
  detail::Builder b(rep);
  it->second(b, opt);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::stable_sort(rep.checks.begin(), rep.checks.end(),
                   [](const Check& a, const Check& c) { return a.name < c.name; });
  return rep;
}

}  // namespace et::verify
