#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <string>
#include <utility>

#include "verify/verify.hpp"

namespace et::verify::detail {

struct Outcome {
  double residual = 0.0;
  std::string note;
  Outcome(double r) : residual(r) {}  // NOLINT
  Outcome(double r, std::string n) : residual(r), note(std::move(n)) {}
};

inline std::string cstr(cplx z) { return format_complex(z, 12); }

// |a - b| / max(|a|, |b|)
inline double rel_diff(cplx a, cplx b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

// |a - b| / (1 + |b|)
inline double mixed_diff(cplx a, cplx b) { return std::abs(a - b) / (1.0 + std::abs(b)); }

// Runs each check as it is added; errors from the library become failed
// checks carrying the error text.
class Builder {
 public:
  explicit Builder(Report& rep) : rep_(rep) {}

  void upper(const std::string& name, const std::string& anchor, json params, double tol,
             bool acceptance, const std::function<Outcome()>& fn) {
    run(name, anchor, std::move(params), tol, Bound::upper, acceptance, fn);
  }

  void lower(const std::string& name, const std::string& anchor, json params, double bound,
             bool acceptance, const std::function<Outcome()>& fn) {
    run(name, anchor, std::move(params), bound, Bound::lower, acceptance, fn);
  }

  // residual 0 when fn() is true, 1 otherwise; tolerance 0
  void exact(const std::string& name, const std::string& anchor, json params, bool acceptance,
             const std::function<bool()>& fn) {
    run(name, anchor, std::move(params), 0.0, Bound::upper, acceptance,
        [&]() -> Outcome { return fn() ? 0.0 : 1.0; });
  }

  // passes iff fn throws et::Error with the given code
  void expect_error(const std::string& name, const std::string& anchor, json params, Errc code,
                    bool acceptance, const std::function<void()>& fn) {
    run(name, anchor, std::move(params), 0.0, Bound::upper, acceptance, [&]() -> Outcome {
      try {
        fn();
      } catch (const Error& e) {
        if (e.code() == code) return {0.0, std::string("raised ") + errc_name(e.code()) + ": " + e.what()};
        return {1.0, std::string("raised ") + errc_name(e.code()) + " instead of " + errc_name(code)};
      }
      return {1.0, std::string("no error raised, expected ") + errc_name(code)};
    });
  }

  // A relation whose intermediate points left the regime is reported but not failed.
  void skip(const std::string& name, const std::string& anchor, json params, double tol,
            bool acceptance, const std::string& note) {
    Check c;
    c.name = name;
    c.anchor = anchor;
    c.parameters = std::move(params);
    c.tolerance = tol;
    c.acceptance = acceptance;
    c.has_residual = false;
    c.skipped = true;
    c.note = "skipped: " + note;
    rep_.checks.push_back(std::move(c));
  }

 private:
  void run(const std::string& name, const std::string& anchor, json params, double tol, Bound b,
           bool acceptance, const std::function<Outcome()>& fn) {
    Check c;
    c.name = name;
    c.anchor = anchor;
    c.parameters = std::move(params);
    c.tolerance = tol;
    c.bound = b;
    c.acceptance = acceptance;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const Outcome o = fn();
      c.residual = o.residual;
      c.note = o.note;
      if (!std::isfinite(c.residual)) {
        c.has_residual = false;
        c.note = "non-finite residual" + (c.note.empty() ? "" : "; " + c.note);
      }
    } catch (const Error& e) {
      c.has_residual = false;
      c.note = std::string(errc_name(e.code())) + ": " + e.what();
    } catch (const std::exception& e) {
      c.has_residual = false;
      c.note = std::string("internal: ") + e.what();
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.has_residual)
      c.pass = b == Bound::upper ? c.residual <= tol : c.residual > tol;
    rep_.checks.push_back(std::move(c));
  }

  Report& rep_;
};

void theta_suite(Builder& b, const SuiteOptions& opt);
void ellint_suite(Builder& b, const SuiteOptions& opt);
void hts_suite(Builder& b, const SuiteOptions& opt);
void operators_suite(Builder& b, const SuiteOptions& opt);
void macdonald_suite(Builder& b, const SuiteOptions& opt);
void modular_suite(Builder& b, const SuiteOptions& opt);
void limits_suite(Builder& b, const SuiteOptions& opt);

}  // namespace et::verify::detail
