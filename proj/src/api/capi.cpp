#include <cstdlib>
#include <cstring>
#include <string>

#include "api/dispatch.hpp"
#include "elliptheta/elliptheta.h"
#include "ellint/ellint.hpp"
#include "hts/hts.hpp"
#include "macdonald/macdonald.hpp"
#include "theta/theta.hpp"
#include "verify/verify.hpp"

struct et_context {
  et::Truncation trunc = et::Truncation::defaults();
  std::string last_error;
};

namespace {

using et::cplx;

cplx in(et_complex z) { return {z.re, z.im}; }

void put(const et::EvalResult& r, et_result* out) {
  out->value = {r.value.real(), r.value.imag()};
  out->err_estimate = r.err_estimate;
  out->terms_used = r.terms_used;
  out->min_pole_distance = r.min_pole_distance;
  out->converged = r.converged ? 1 : 0;
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

// Runs fn, mapping exceptions onto status codes and the context message.
template <class F>
et_status guard(et_context* ctx, F&& fn) {
  if (!ctx) return ET_ARGUMENT;
  ctx->last_error.clear();
  try {
    fn();
    return ET_OK;
  } catch (const et::Error& e) {
    ctx->last_error = e.what();
    return static_cast<et_status>(static_cast<int>(e.code()));
  } catch (const nlohmann::json::exception& e) {
    ctx->last_error = std::string("json: ") + e.what();
    return ET_ARGUMENT;
  } catch (const std::exception& e) {
    ctx->last_error = e.what();
    return ET_INTERNAL;
  } catch (...) {
    ctx->last_error = "unknown exception";
    return ET_INTERNAL;
  }
}

template <class T>
void need(T* p, const char* what) {
  if (!p) throw et::Error(et::Errc::argument, std::string("null pointer: ") + what);
}

}  // namespace

extern "C" {

const char* et_version(void) { return "1.0.0"; }

const char* et_status_name(et_status s) {
  if (s == ET_OK) return "ok";
  if (s == ET_INTERNAL) return "internal";
  if (s >= ET_DOMAIN && s <= ET_EVALUATION) return et::errc_name(static_cast<et::Errc>(s));
  return "unknown";
}

et_status et_context_create(et_context** out) {
  if (!out) return ET_ARGUMENT;
  try {
    *out = new et_context();
    return ET_OK;
  } catch (...) {
    *out = nullptr;
    return ET_INTERNAL;
  }
}

void et_context_destroy(et_context* ctx) { delete ctx; }

const char* et_last_error(const et_context* ctx) { return ctx ? ctx->last_error.c_str() : "null context"; }

et_status et_set_truncation(et_context* ctx, const char* json) {
  return guard(ctx, [&] {
    need(json, "json");
    ctx->trunc = et::api::truncation_from(nlohmann::json::parse(json), ctx->trunc);
  });
}

et_status et_get_truncation(et_context* ctx, char** json_out) {
  return guard(ctx, [&] {
    need(json_out, "json_out");
    const et::Truncation& t = ctx->trunc;
    const nlohmann::json j = {{"product_cutoff", t.product_cutoff}, {"series_cutoff", t.series_cutoff},
                              {"quad_points", t.quad_points},       {"line_radius", t.line_radius},
                              {"tol_abs", t.tol_abs},               {"tol_rel", t.tol_rel},
                              {"pinch_tol", t.pinch_tol}};
    *json_out = dup(j.dump());
  });
}

void et_string_free(char* s) { std::free(s); }

et_status et_jacobi_theta(et_context* ctx, et_complex lambda, et_complex tau, et_result* out) {
  return guard(ctx, [&] {
    need(out, "out");
    put(et::theta::jacobi_theta(in(lambda), in(tau), ctx->trunc), out);
  });
}

et_status et_jacobi_theta_dlam(et_context* ctx, et_complex lambda, et_complex tau, et_result* out) {
  return guard(ctx, [&] {
    need(out, "out");
    put(et::theta::jacobi_theta_dlam(in(lambda), in(tau), ctx->trunc), out);
  });
}

et_status et_theta_basis(et_context* ctx, int j, int kappa, et_complex lambda, et_complex tau, et_result* out) {
  return guard(ctx, [&] {
    need(out, "out");
    put(et::theta::theta_basis(et::theta::ThetaLevelIndex(j, kappa), in(lambda), in(tau), ctx->trunc), out);
  });
}

et_status et_u_hyper(et_context* ctx, et_complex lambda, et_complex mu, et_complex tau, et_complex sigma,
                     et_complex eta, et_result* out) {
  return guard(ctx, [&] {
    need(out, "out");
    put(et::ellint::u_hyper({in(lambda), in(mu), in(tau), in(sigma), in(eta)}, ctx->trunc), out);
  });
}

int et_is_admissible(int l, int kappa) {
  try {
    return et::hts::is_admissible(l, kappa) ? 1 : 0;
  } catch (...) {
    return 0;
  }
}

et_status et_delta_tilde(et_context* ctx, int l, int kappa, et_complex lambda, et_complex tau, et_complex eta,
                         et_result* out) {
  return guard(ctx, [&] {
    need(out, "out");
    put(et::hts::HtsEvaluator(kappa, in(tau), in(eta), ctx->trunc).delta_tilde(l, in(lambda)), out);
  });
}

et_status et_delta(et_context* ctx, int l, int kappa, et_complex lambda, et_complex tau, et_complex eta,
                   et_result* out) {
  return guard(ctx, [&] {
    need(out, "out");
    put(et::hts::HtsEvaluator(kappa, in(tau), in(eta), ctx->trunc).delta(l, in(lambda)), out);
  });
}

et_status et_macdonald_m2(et_context* ctx, int j, const char* q, char** poly_out) {
  return guard(ctx, [&] {
    need(q, "q");
    need(poly_out, "poly_out");
    *poly_out = dup(et::mac::macdonald_m2(j, et::mac::parse_rational(q)).to_string());
  });
}

et_status et_eval(et_context* ctx, const char* request_json, char** response_json) {
  return guard(ctx, [&] {
    need(request_json, "request_json");
    need(response_json, "response_json");
    const auto req = nlohmann::json::parse(request_json);
    const et::Truncation tr = et::api::truncation_from(req.value("trunc", nlohmann::json()), ctx->trunc);
    *response_json = dup(et::api::eval(req, tr).dump());
  });
}

et_status et_table(et_context* ctx, const char* request_json, char** response_json) {
  return guard(ctx, [&] {
    need(request_json, "request_json");
    need(response_json, "response_json");
    const auto req = nlohmann::json::parse(request_json);
    const et::Truncation tr = et::api::truncation_from(req.value("trunc", nlohmann::json()), ctx->trunc);
    *response_json = dup(et::api::table(req, tr).dump());
  });
}

et_status et_targets(et_context* ctx, char** response_json) {
  return guard(ctx, [&] {
    need(response_json, "response_json");
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& t : et::api::targets())
      arr.push_back({{"name", t.name},
                     {"module", t.module},
                     {"required", t.required},
                     {"optional", t.optional},
                     {"limits", t.limits}});
    *response_json = dup(arr.dump());
  });
}

et_status et_suite_names(et_context* ctx, char** response_json) {
  return guard(ctx, [&] {
    need(response_json, "response_json");
    *response_json = dup(nlohmann::json(et::verify::suite_names()).dump());
  });
}

et_status et_verify_suite(et_context* ctx, const char* suite, int kappa, uint64_t seed, char** report_json,
                          int* all_pass) {
  return guard(ctx, [&] {
    need(suite, "suite");
    need(report_json, "report_json");
    if (!et::verify::is_suite(suite)) throw et::Error(et::Errc::argument, std::string("unknown suite '") + suite + "'");
    if (kappa < 4) throw et::Error(et::Errc::argument, "kappa must be at least 4");
    et::verify::SuiteOptions opt;
    opt.kappa = kappa;
    opt.seed = seed;
    opt.trunc = ctx->trunc;
    const et::verify::Report rep = et::verify::run_suite(suite, opt);
    *report_json = dup(rep.to_json().dump(2));
    if (all_pass) *all_pass = rep.all_pass() ? 1 : 0;
  });
}

}  // extern "C"
