// elliptheta command line: eval, table, verify, limits, targets.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "elliptheta/elliptheta.h"
#include "json.hpp"

using json = nlohmann::json;

namespace {

constexpr int kExitFail = 1;   // some check failed
constexpr int kExitError = 2;  // bad input or evaluation error

struct CtxDeleter {
  void operator()(et_context* c) const { et_context_destroy(c); }
};
using Ctx = std::unique_ptr<et_context, CtxDeleter>;

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Takes ownership of a string returned by the library.
std::string take(char* s) {
  std::string out = s ? s : "";
  et_string_free(s);
  return out;
}

void check(et_context* ctx, et_status st) {
  if (st != ET_OK) throw CliError(std::string(et_status_name(st)) + ": " + et_last_error(ctx));
}

std::string csv_field(const json& v) {
  std::string s;
  if (v.is_null())
    s = "";
  else if (v.is_string())
    s = v.get<std::string>();
  else
    s = v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

std::string csv_line(const std::vector<json>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) out += (i ? "," : "") + csv_field(fields[i]);
  return out + "\n";
}

void flatten(const json& j, const std::string& prefix, std::vector<std::string>& keys, std::vector<json>& vals) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), keys, vals);
    return;
  }
  keys.push_back(prefix);
  vals.push_back(j);
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw CliError("cannot write '" + path + "'");
  f << text;
}

// --name value and --name=value pairs left over by CLI11
json parse_extras(const std::vector<std::string>& extras) {
  json params = json::object();
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const std::string& a = extras[i];
    if (a.rfind("--", 0) != 0 || a.size() < 3) throw CliError("unexpected argument '" + a + "'");
    const auto eq = a.find('=');
    if (eq != std::string::npos) {
      params[a.substr(2, eq - 2)] = a.substr(eq + 1);
      continue;
    }
    if (i + 1 >= extras.size()) throw CliError("parameter '" + a + "' needs a value");
    params[a.substr(2)] = extras[++i];
  }
  return params;
}

void strip_timing(json& j) {
  if (j.is_object()) {
    j.erase("timing");
    for (auto& [k, v] : j.items()) strip_timing(v);
  } else if (j.is_array()) {
    for (auto& v : j) strip_timing(v);
  }
}

struct Options {
  std::string config_path;
  std::string format = "json";
  std::string output;
  std::string target;
  std::string suite = "all";
  uint64_t seed = 20240601;
  int kappa = 5;
  bool no_timing = false;
};

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream f(path);
  if (!f) throw CliError("cannot read config '" + path + "'");
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw CliError(std::string("config: ") + e.what());
  }
}

// Config values fill in whatever the command line left unset.
void merge_config(const json& cfg, Options& o, json& params, const CLI::App& sub) {
  auto unset = [&](const char* flag) { return sub.count(flag) == 0; };
  if (cfg.contains("target") && unset("--target")) o.target = cfg["target"].get<std::string>();
  if (cfg.contains("suite") && unset("--suite")) o.suite = cfg["suite"].get<std::string>();
  if (cfg.contains("seed") && unset("--seed")) o.seed = cfg["seed"].get<uint64_t>();
  if (cfg.contains("kappa") && unset("--kappa")) o.kappa = cfg["kappa"].get<int>();
  if (cfg.contains("output")) {
    const json& out = cfg["output"];
    if (out.contains("path") && unset("--output")) o.output = out["path"].get<std::string>();
    if (out.contains("format") && unset("--format")) o.format = out["format"].get<std::string>();
  }
  for (const char* key : {"parameters", "grid"})
    if (cfg.contains(key))
      for (auto it = cfg[key].begin(); it != cfg[key].end(); ++it)
        if (!params.contains(it.key())) params[it.key()] = it.value();
}

int run_eval(et_context* ctx, const Options& o, json params, const json& trunc, bool table) {
  if (o.target.empty()) throw CliError("--target is required");
  json req = {{"target", o.target}, {"params", std::move(params)}};
  if (!trunc.is_null()) req["trunc"] = trunc;
  char* out = nullptr;
  const std::string body = req.dump();
  check(ctx, table ? et_table(ctx, body.c_str(), &out) : et_eval(ctx, body.c_str(), &out));
  const json res = json::parse(take(out));
  if (o.format == "json") {
    emit(res.dump(2) + "\n", o.output);
    return 0;
  }
  std::string text;
  if (table) {
    std::vector<json> head;
    for (const auto& c : res["columns"]) head.push_back(c);
    text += csv_line(head);
    for (const auto& r : res["rows"]) text += csv_line(std::vector<json>(r.begin(), r.end()));
  } else {
    std::vector<std::string> keys;
    std::vector<json> vals;
    flatten(res["params"], "", keys, vals);
    flatten(res["result"], "", keys, vals);
    text += csv_line(std::vector<json>(keys.begin(), keys.end()));
    text += csv_line(vals);
  }
  emit(text, o.output);
  return 0;
}

int run_verify(et_context* ctx, const Options& o) {
  std::vector<std::string> suites;
  if (o.suite == "all") {
    char* out = nullptr;
    check(ctx, et_suite_names(ctx, &out));
    suites = json::parse(take(out)).get<std::vector<std::string>>();
  } else {
    suites.push_back(o.suite);
  }
  json reports = json::array();
  bool pass = true;
  for (const auto& s : suites) {
    char* out = nullptr;
    int ok = 0;
    check(ctx, et_verify_suite(ctx, s.c_str(), o.kappa, o.seed, &out, &ok));
    json r = json::parse(take(out));
    if (o.no_timing) strip_timing(r);
    reports.push_back(std::move(r));
    pass = pass && ok;
    std::cerr << s << ": " << (ok ? "PASS" : "FAIL") << " (" << reports.back()["summary"]["passed"] << "/"
              << reports.back()["summary"]["total"] << " checks passed)\n";
  }
  if (o.format == "json") {
    const json doc = reports.size() == 1 ? reports[0] : json{{"reports", reports}};
    emit(doc.dump(2) + "\n", o.output);
  } else {
    std::string text = csv_line({"suite", "name", "paper_anchor", "residual", "tolerance", "bound", "pass",
                                 "acceptance", "skipped", "note"});
    for (const auto& r : reports)
      for (const auto& c : r["checks"])
        text += csv_line({r["suite"], c["name"], c["paper_anchor"], c["residual"], c["tolerance"], c["bound"],
                          c["pass"], c["acceptance"], c.value("skipped", false), c.value("note", "")});
    emit(text, o.output);
  }
  return pass ? 0 : kExitFail;
}

int run_targets(et_context* ctx, bool limits_only) {
  char* out = nullptr;
  check(ctx, et_targets(ctx, &out));
  for (const auto& t : json::parse(take(out))) {
    if (limits_only && !t["limits"].get<bool>()) continue;
    std::cout << t["name"].get<std::string>() << " (" << t["module"].get<std::string>() << "):";
    for (const auto& r : t["required"]) std::cout << " --" << r.get<std::string>();
    for (const auto& r : t["optional"]) std::cout << " [--" << r.get<std::string>() << "]";
    std::cout << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"elliptheta: hypergeometric theta functions, qKZB operators and Macdonald polynomials"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(et_version()));

  Options o;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config_path, "JSON run configuration");
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--output,-o", o.output, "output path (default stdout)");
    sub->add_option("--seed", o.seed, "seed for sample points");
  };

  CLI::App* eval = app.add_subcommand("eval", "evaluate a target at one parameter point");
  CLI::App* table = app.add_subcommand("table", "evaluate a target on a parameter grid (a..b ranges)");
  CLI::App* limits = app.add_subcommand("limits", "run a limit check (classical, trigonometric, Mehta, ...)");
  for (CLI::App* sub : {eval, table, limits}) {
    common(sub);
    sub->add_option("--target", o.target, "operation name");
    sub->allow_extras();
  }
  CLI::App* verify = app.add_subcommand("verify", "run verification suites");
  common(verify);
  verify->add_option("--suite", o.suite, "suite name or 'all'");
  verify->add_option("--kappa", o.kappa, "level kappa for the suites");
  verify->add_flag("--no-timing", o.no_timing, "omit timing fields");
  CLI::App* list = app.add_subcommand("targets", "list targets and their parameters");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  Ctx ctx;
  {
    et_context* raw = nullptr;
    if (et_context_create(&raw) != ET_OK) {
      std::cerr << "error: cannot create context\n";
      return kExitError;
    }
    ctx.reset(raw);
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    if (sub == list) return run_targets(ctx.get(), false);
    const json cfg = load_config(o.config_path);
    json params = sub == verify ? json::object() : parse_extras(sub->remaining());
    merge_config(cfg, o, params, *sub);
    const json trunc = cfg.value("trunc", json());
    if (!trunc.is_null()) check(ctx.get(), et_set_truncation(ctx.get(), trunc.dump().c_str()));
    if (o.format != "json" && o.format != "csv") throw CliError("format must be json or csv");
    if (sub == verify) return run_verify(ctx.get(), o);
    if (sub == limits) {
      if (o.target.empty()) return run_targets(ctx.get(), true);
      char* out = nullptr;
      check(ctx.get(), et_targets(ctx.get(), &out));
      bool found = false;
      for (const auto& t : json::parse(take(out)))
        if (t["name"] == o.target) found = t["limits"].get<bool>();
      if (!found) throw CliError("'" + o.target + "' is not a limits target (see 'limits' without --target)");
    }
    return run_eval(ctx.get(), o, std::move(params), json(), sub == table);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
