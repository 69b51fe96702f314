// Acceptance runner: one PASS/FAIL line per criterion on stdout.
//   acceptance --criterion N [--cli path]
// Criteria 1-7 run a verify suite and require every acceptance check to pass
// within the suite's wall-clock limit.  Criterion 8 runs the CLI twice and
// compares the reports with timing removed.

#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "verify/verify.hpp"

namespace {

using nlohmann::json;

struct Criterion {
  const char* suite;
  double limit_s;
  const char* what;
};

// suite, runtime limit, description
const std::array<Criterion, 7> kSuites = {{
    {"theta", 10.0, "theta functions and level-kappa spaces"},
    {"ellint", 60.0, "elliptic hypergeometric integral and its limits"},
    {"hts", 300.0, "hypergeometric theta functions and the inversion relation"},
    {"operators", 600.0, "qKZB heat equation and Cherednik operators"},
    {"modular", 900.0, "modular transformations"},
    {"macdonald", 30.0, "Macdonald polynomials"},
    {"limits", 900.0, "classical, trigonometric and Mehta limits"},
}};

int run_suite_criterion(int n) {
  const Criterion& c = kSuites[n - 1];
  const auto t0 = std::chrono::steady_clock::now();
  const et::verify::Report rep = et::verify::run_suite(c.suite);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  int acc = 0, acc_pass = 0;
  for (const auto& ch : rep.checks) {
    if (!ch.acceptance) continue;
    ++acc;
    if (ch.pass) ++acc_pass;
    if (!ch.pass) {
      std::cerr << "  failed: " << ch.name << "  residual=";
      if (ch.has_residual)
        std::cerr << ch.residual;
      else
        std::cerr << "none";
      std::cerr << " tol=" << ch.tolerance << (ch.bound == et::verify::Bound::lower ? " (lower)" : "");
      if (!ch.note.empty()) std::cerr << "  " << ch.note;
      std::cerr << "\n";
    }
  }
  const bool in_time = secs <= c.limit_s;
  const bool ok = acc > 0 && acc_pass == acc && in_time;
  char buf[128];
  std::snprintf(buf, sizeof buf, "(%d/%d acceptance checks, %.1f s, limit %.0f s)", acc_pass, acc, secs,
                c.limit_s);
  std::cout << "CRITERION " << n << (ok ? " PASS" : " FAIL") << ": " << c.suite << ", " << c.what << " " << buf
            << (in_time ? "" : " over time limit") << "\n";
  return ok ? 0 : 1;
}

std::string capture(const std::string& cmd, int* rc) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    *rc = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  const int st = pclose(p);
  *rc = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return out;
}

void strip_timing(json& j) {
  if (j.is_object()) {
    j.erase("timing");
    for (auto& [k, v] : j.items()) strip_timing(v);
  } else if (j.is_array()) {
    for (auto& v : j) strip_timing(v);
  }
}

int run_determinism(const std::string& cli) {
  if (cli.empty()) {
    std::cout << "CRITERION 8 FAIL: determinism (no CLI path given)\n";
    return 1;
  }
  const std::string cmd = "'" + cli + "' verify --suite all --seed 20240601 2>/dev/null";
  int rc1 = 0, rc2 = 0;
  const std::string a = capture(cmd, &rc1), b = capture(cmd, &rc2);
  bool ok = rc1 == rc2 && (rc1 == 0 || rc1 == 1);
  std::string why;
  try {
    json ja = json::parse(a), jb = json::parse(b);
    strip_timing(ja);
    strip_timing(jb);
    if (ja != jb) {
      ok = false;
      why = "reports differ";
    } else if (!ja.contains("reports") || ja["reports"].empty()) {
      ok = false;
      why = "no reports";
    }
  } catch (const std::exception& e) {
    ok = false;
    why = std::string("unparsable output: ") + e.what();
  }
  if (rc1 != rc2) why = "exit codes differ";
  std::cout << "CRITERION 8 " << (ok ? "PASS" : "FAIL")
            << ": verify --suite all is byte-identical across runs without timing (exit code " << rc1 << ")"
            << (why.empty() ? "" : "; " + why) << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"elliptheta acceptance criteria"};
  int n = 0;
  std::string cli;
  app.add_option("--criterion", n, "criterion number 1-8")->required()->check(CLI::Range(1, 8));
  app.add_option("--cli", cli, "path to the elliptheta CLI (criterion 8)");
  CLI11_PARSE(app, argc, argv);
  try {
    return n == 8 ? run_determinism(cli) : run_suite_criterion(n);
  } catch (const std::exception& e) {
    std::cout << "CRITERION " << n << " FAIL: " << e.what() << "\n";
    return 1;
  }
}
