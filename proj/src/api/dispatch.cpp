#include "api/dispatch.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "ellint/ellint.hpp"
#include "hts/hts.hpp"
#include "limits/limits.hpp"
#include "macdonald/macdonald.hpp"
#include "modular/modular.hpp"
#include "operators/cherednik.hpp"
#include "operators/qkzb.hpp"
#include "theta/theta.hpp"

namespace et::api {

namespace {

using Handler = std::function<json(const Params&, const Truncation&)>;

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json cjson(cplx z) { return {{"value", format_complex(z)}, {"re", num(z.real())}, {"im", num(z.imag())}}; }

json ejson(const EvalResult& r) {
  json j = cjson(r.value);
  j["err_estimate"] = num(r.err_estimate);
  j["terms_used"] = r.terms_used;
  j["min_pole_distance"] = num(r.min_pole_distance);
  j["converged"] = r.converged;
  return j;
}

json poly_json(const mac::LaurentPoly& P) {
  json j = {{"polynomial", P.to_string()}};
  // "degree:coefficient" pairs, ascending
  std::string coeffs;
  if (!P.is_zero()) {
    for (int d = P.min_degree(); d <= P.max_degree(); ++d) {
      const mac::Rational c = P.coeff(d);
      if (c != 0) coeffs += (coeffs.empty() ? "" : ";") + std::to_string(d) + ":" + c.get_str();
    }
    j["min_degree"] = P.min_degree();
    j["max_degree"] = P.max_degree();
  }
  j["coefficients"] = coeffs;
  return j;
}

json matrix_json(const modular::Matrix& M) {
  json rows = json::array();
  for (const auto& row : M) {
    json r = json::array();
    for (cplx z : row) r.push_back(format_complex(z));
    rows.push_back(r);
  }
  return {{"matrix", rows}};
}

hts::Method method_of(const std::string& s) {
  if (s == "series") return hts::Method::series;
  if (s == "integral") return hts::Method::integral;
  if (s == "regularized") return hts::Method::regularized;
  throw Error(Errc::argument, "unknown method '" + s + "' (series|integral|regularized)");
}

std::vector<int> admissible_range(int kappa) {
  std::vector<int> ls;
  for (int l = 2; l <= kappa - 2; ++l) ls.push_back(l);
  return ls;
}

struct Entry {
  TargetInfo info;
  Handler fn;
};

const std::map<std::string, Entry>& registry() {
  static const std::map<std::string, Entry> reg = [] {
    std::map<std::string, Entry> m;
    auto add = [&](TargetInfo info, Handler fn) {
      const std::string n = info.name;
      m.emplace(n, Entry{std::move(info), std::move(fn)});
    };

    // theta
    add({"jacobi_theta", "theta", {"lambda", "tau"}, {}}, [](const Params& p, const Truncation& tr) {
      return ejson(theta::jacobi_theta(p.c("lambda"), p.c("tau"), tr));
    });
    add({"jacobi_theta_dlam", "theta", {"lambda", "tau"}, {}}, [](const Params& p, const Truncation& tr) {
      return ejson(theta::jacobi_theta_dlam(p.c("lambda"), p.c("tau"), tr));
    });
    add({"theta_basis", "theta", {"j", "kappa", "lambda", "tau"}, {}}, [](const Params& p, const Truncation& tr) {
      return ejson(theta::theta_basis(theta::ThetaLevelIndex(p.i("j"), p.i("kappa")), p.c("lambda"), p.c("tau"), tr));
    });
    add({"theta0", "theta", {"x", "q"}, {}}, [](const Params& p, const Truncation& tr) {
      return ejson(theta::theta0(p.c("x"), p.c("q"), tr));
    });

    // ellint
    add({"omega", "ellint", {"t", "tau", "sigma", "eta"}, {}}, [](const Params& p, const Truncation& tr) {
      return ejson(ellint::omega(p.c("t"), p.c("tau"), p.c("sigma"), p.c("eta"), tr));
    });
    add({"q_weight", "ellint", {"mu", "sigma", "eta"}, {}}, [](const Params& p, const Truncation& tr) {
      return ejson(ellint::q_weight(p.c("mu"), p.c("sigma"), p.c("eta"), tr));
    });
    add({"pole_pinch_distance", "ellint", {"tau", "sigma", "eta"}, {"max_mn"}},
        [](const Params& p, const Truncation&) {
          return json{{"distance", num(ellint::pole_pinch_distance(p.c("tau"), p.c("sigma"), p.c("eta"),
                                                                   p.i("max_mn", 4)))}};
        });
    add({"u_hyper", "ellint", {"lambda", "mu", "tau", "sigma", "eta"}, {}},
        [](const Params& p, const Truncation& tr) {
          return ejson(ellint::u_hyper({p.c("lambda"), p.c("mu"), p.c("tau"), p.c("sigma"), p.c("eta")}, tr));
        });
    add({"u_trig_degenerate", "ellint", {"lambda", "mu", "eta"}, {}}, [](const Params& p, const Truncation&) {
      return ejson(ellint::u_trig_degenerate(p.c("lambda"), p.c("mu"), p.c("eta")));
    });
    add({"u_trig_semi", "ellint", {"lambda", "l", "kappa", "eta"}, {}}, [](const Params& p, const Truncation& tr) {
      return ejson(ellint::u_trig_semi(p.c("lambda"), p.i("l"), p.i("kappa"), p.c("eta"), tr));
    });

    // hts
    add({"is_admissible", "hts", {"l", "kappa"}, {}}, [](const Params& p, const Truncation&) {
      return json{{"admissible", hts::is_admissible(p.i("l"), p.i("kappa"))}};
    });
    for (const char* name : {"delta_tilde", "delta"}) {
      const bool tilde = std::string(name) == "delta_tilde";
      add({name, "hts", {"l", "kappa", "lambda", "tau", "eta"}, {"method"}},
          [tilde](const Params& p, const Truncation& tr) {
            const hts::HtsEvaluator h(p.i("kappa"), p.c("tau"), p.c("eta"), tr);
            const hts::Method m = method_of(p.s("method", "series"));
            const EvalResult r = tilde ? h.delta_tilde(p.i("l"), p.c("lambda"), m) : h.delta(p.i("l"), p.c("lambda"), m);
            json j = ejson(r);
            j["method"] = hts::method_name(m);
            return j;
          });
    }
    add({"I_integral", "hts", {"l", "kappa", "lambda", "tau", "eta"}, {}}, [](const Params& p, const Truncation& tr) {
      return ejson(hts::HtsEvaluator(p.i("kappa"), p.c("tau"), p.c("eta"), tr).I_integral(p.i("l"), p.c("lambda")));
    });
    add({"I_regularized", "hts", {"l", "kappa", "lambda", "tau", "eta"}, {}},
        [](const Params& p, const Truncation& tr) {
          return ejson(
              hts::HtsEvaluator(p.i("kappa"), p.c("tau"), p.c("eta"), tr).I_regularized(p.i("l"), p.c("lambda")));
        });
    add({"gram_inversion", "hts", {"l", "j", "kappa", "tau", "eta"}, {"samples"}},
        [](const Params& p, const Truncation& tr) {
          const hts::HtsEvaluator h(p.i("kappa"), p.c("tau"), p.c("eta"), tr);
          hts::GramOptions o;
          o.samples = p.i("samples", o.samples);
          return ejson(hts::GramEvaluator(h, o).entry(p.i("l"), p.i("j")));
        });

    // operators
    add({"qkzb_residual", "operators", {"l", "kappa", "tau", "eta", "lambda"},
         {"method", "m_range", "perturbation", "tilde"}},
        [](const Params& p, const Truncation& tr) {
          ops::QkzbOptions o;
          const std::string m = p.s("method", "integral");
          if (m == "integral")
            o.method = ops::QkzbMethod::integral;
          else if (m == "discrete")
            o.method = ops::QkzbMethod::discrete;
          else
            throw Error(Errc::argument, "unknown method '" + m + "' (integral|discrete)");
          o.m_range = p.i("m_range", o.m_range);
          o.perturbation = p.r("perturbation", 0.0);
          o.tilde = p.i("tilde", 0) != 0;
          return json{{"residual", num(ops::qkzb_residual(p.i("l"), p.i("kappa"), p.c("tau"), p.c("eta"),
                                                          p.clist("lambda"), tr, o))}};
        });
    // T_kappa and T-bar applied to Delta_l(., tau - 2 eta kappa)
    for (const char* name : {"apply_T_kappa", "apply_T_bar"}) {
      const bool bar = std::string(name) == "apply_T_bar";
      add({name, "operators", {"l", "kappa", "tau", "eta", "lambda"}, bar ? std::vector<std::string>{"m_range"}
                                                                          : std::vector<std::string>{}},
          [bar](const Params& p, const Truncation& tr) {
            const int kappa = p.i("kappa"), l = p.i("l");
            const cplx tau = p.c("tau"), eta = p.c("eta");
            const hts::HtsEvaluator h(kappa, tau - 2.0 * eta * static_cast<double>(kappa), eta, tr);
            const ops::Fn f = [&](cplx x) { return h.delta(l, x).value; };
            if (bar) {
              ops::ShiftGrid g;
              g.m_range = p.i("m_range", g.m_range);
              return ejson(ops::apply_T_bar(f, kappa, tau, eta, p.c("lambda"), g, tr));
            }
            return ejson(ops::apply_T_kappa(f, kappa, tau, eta, p.c("lambda"), tr));
          });
    }
    add({"T_q_value", "operators", {"j", "x", "q", "m_range"}, {"weight_sign"}},
        [](const Params& p, const Truncation&) {
          return cjson(ops::T_q_value(p.i("j"), p.c("x"), p.c("q"), p.i("m_range"), p.i("weight_sign", 1)));
        });

    // macdonald
    add({"macdonald_m2", "macdonald", {"j", "q"}, {}}, [](const Params& p, const Truncation&) {
      return poly_json(mac::macdonald_m2(p.i("j"), p.q("q")));
    });
    add({"macdonald_general", "macdonald", {"m", "j", "q"}, {}}, [](const Params& p, const Truncation&) {
      return poly_json(mac::macdonald_general(p.i("m"), p.i("j"), p.q("q")));
    });
    add({"cherednik_eigenvalue", "macdonald", {"j", "m", "q"}, {}}, [](const Params& p, const Truncation&) {
      // (Y^m + Y^-m) P_j / P_j
      const mac::Rational q = p.q("q");
      const int j = p.i("j"), m = p.i("m");
      const mac::LaurentPoly P = mac::macdonald_m2(j, q);
      const mac::LaurentPoly f = mac::LaurentPoly::monomial(m, 1) + mac::LaurentPoly::monomial(-m, 1);
      mac::LaurentPoly quot;
      if (!P.divides_into(ops::apply_f_of_Y(f, P, q), &quot) || quot.max_degree() != 0 || quot.min_degree() != 0)
        throw Error(Errc::consistency, "P_j is not an eigenfunction");
      const mac::Rational ev = quot.coeff(0);
      return json{{"eigenvalue", ev.get_str()}};
    });
    add({"elliptic_macdonald", "macdonald", {"j", "kappa", "tau", "eta", "lambda"}, {}},
        [](const Params& p, const Truncation& tr) {
          return ejson(mac::EllipticMacdonald(p.i("kappa"), p.c("tau"), p.c("eta"), tr)
                           .value_lambda(p.i("j"), p.c("lambda")));
        });

    // modular
    add({"psi", "modular", {"tau", "p", "eta"}, {}},
        [](const Params& p, const Truncation&) { return cjson(modular::psi(p.c("tau"), p.c("p"), p.c("eta"))); });
    add({"C_minus", "modular", {"kappa", "tau", "eta"}, {}}, [](const Params& p, const Truncation&) {
      return cjson(modular::C_minus(p.i("kappa"), p.c("tau"), p.c("eta")));
    });
    add({"C_plus", "modular", {"kappa", "tau", "eta"}, {}}, [](const Params& p, const Truncation&) {
      return cjson(modular::C_plus(p.i("kappa"), p.c("tau"), p.c("eta")));
    });
    add({"S_minus_matrix", "modular", {"kappa", "tau", "eta"}, {}}, [](const Params& p, const Truncation& tr) {
      return matrix_json(modular::S_minus_matrix(p.i("kappa"), p.c("tau"), p.c("eta"), tr));
    });
    add({"S_plus_matrix", "modular", {"kappa", "tau", "eta"}, {}}, [](const Params& p, const Truncation& tr) {
      return matrix_json(modular::S_plus_matrix(p.i("kappa"), p.c("tau"), p.c("eta"), tr));
    });
    add({"check_T_shift", "modular", {"l", "kappa", "tau", "eta", "lambda"}, {}},
        [](const Params& p, const Truncation& tr) {
          modular::DeltaFamily fam(p.i("kappa"), tr);
          return json{{"residual", num(modular::check_T_shift(p.i("l"), fam, p.c("tau"), p.c("eta"), p.clist("lambda")))}};
        });
    add({"check_S_transform", "modular", {"l", "kappa", "tau", "eta", "lambda"}, {"form"}},
        [](const Params& p, const Truncation& tr) {
          const std::string f = p.s("form", "op");
          modular::SForm form;
          if (f == "minus")
            form = modular::SForm::minus;
          else if (f == "plus")
            form = modular::SForm::plus;
          else if (f == "op")
            form = modular::SForm::op;
          else
            throw Error(Errc::argument, "unknown form '" + f + "' (minus|plus|op)");
          modular::DeltaFamily fam(p.i("kappa"), tr);
          return json{{"residual", num(modular::check_S_transform(form, p.i("l"), fam, p.c("tau"), p.c("eta"),
                                                                  p.clist("lambda")))}};
        });
    add({"group_relations", "modular", {"kappa", "tau", "eta", "lambda"}, {}},
        [](const Params& p, const Truncation& tr) {
          modular::DeltaFamily fam(p.i("kappa"), tr);
          json rel = json::array();
          for (const auto& r : modular::group_relations(fam, p.c("tau"), p.c("eta"), p.clist("lambda"),
                                                        admissible_range(p.i("kappa"))))
            rel.push_back({{"relation", r.name},
                           {"residual", r.evaluated ? num(r.residual) : json(nullptr)},
                           {"evaluated", r.evaluated},
                           {"note", r.note}});
          return json{{"relations", rel}};
        });

    // limits
    add({"conformal_block", "limits", {"l", "kappa", "lambda", "tau"}, {}, true},
        [](const Params& p, const Truncation&) {
          return ejson(limits::conformal_block(p.i("l"), p.i("kappa"), p.c("lambda"), p.c("tau")));
        });
    add({"classical_limit_check", "limits", {"l", "kappa", "lambda", "tau"}, {"eta"}, true},
        [](const Params& p, const Truncation& tr) {
          const auto etas = p.clist("eta", {cplx(0, -0.02), cplx(0, -0.01), cplx(0, -0.005)});
          const auto r = limits::classical_limit_check(p.i("l"), p.i("kappa"), p.c("lambda"), p.c("tau"), etas, tr);
          json seq = json::array();
          for (std::size_t k = 0; k < r.ratio_values.size(); ++k)
            seq.push_back({{"eta", format_complex(r.parameter_sequence[k])},
                           {"ratio", format_complex(r.ratio_values[k])}});
          return json{{"sequence", seq},
                      {"extrapolated_limit", format_complex(r.extrapolated_limit)},
                      {"convergence_order_estimate", num(r.convergence_order_estimate)}};
        });
    add({"mehta_check", "limits", {"j", "eta", "lambda"}, {}, true}, [](const Params& p, const Truncation& tr) {
      const auto r = limits::mehta_check(p.i("j"), p.c("eta"), p.c("lambda"), tr);
      return json{{"lhs", format_complex(r.lhs)},
                  {"integral", format_complex(r.integral)},
                  {"residual", num(r.residual)},
                  {"residual_q2", num(r.corrected)},
                  {"err_estimate", num(r.err_estimate)},
                  {"radius", num(r.radius)}};
    });
    add({"orthogonality_check", "limits", {"l", "j", "kappa", "tau", "eta"}, {"samples"}, true},
        [](const Params& p, const Truncation& tr) {
          const auto r = limits::orthogonality_check(p.i("l"), p.i("j"), p.i("kappa"), p.c("tau"), p.c("eta"), tr,
                                                     p.i("samples", 256));
          return json{{"value", format_complex(r.value)},
                      {"expected", format_complex(r.expected)},
                      {"gram_scaled", format_complex(r.gram_scaled)},
                      {"residual", num(r.residual)},
                      {"cross_check", num(r.cross_check)},
                      {"refinement", num(r.refinement)}};
        });
    add({"trig_limit_ratio", "limits", {"j", "kappa", "q", "p"}, {"x"}, true},
        [](const Params& p, const Truncation& tr) {
          std::vector<cplx> xs;
          if (p.has("x")) {
            xs = p.clist("x");
          } else {
            for (const cplx l : {cplx(0.13), cplx(0.29), cplx(0.41, 0.05), cplx(0.07, -0.1), cplx(0.35, 0.12)})
              xs.push_back(std::exp(I * pi * l));
          }
          const auto r = mac::trig_limit_ratio(p.i("j"), p.i("kappa"), p.c("q"), p.r("p"), xs, tr);
          json ratios = json::array();
          for (cplx z : r.ratios) ratios.push_back(format_complex(z));
          return json{{"A_estimate", format_complex(r.A_estimate)}, {"spread", num(r.spread)}, {"ratios", ratios}};
        });
    add({"diff_eqn_check", "limits", {"j", "q", "m_range"}, {"x"}, true}, [](const Params& p, const Truncation&) {
      const auto xs = p.clist("x", {cplx(0.7, 0.2), cplx(1.3, -0.4), cplx(-0.6, 0.9)});
      const auto r = limits::diff_eqn_check(p.i("j"), p.q("q"), p.i("m_range"), xs);
      json terms = json::array();
      for (const auto& t : r.terms) terms.push_back({{"m", t.m}, {"exact", t.exact}});
      return json{{"terms", terms},
                  {"all_exact", r.all_exact},
                  {"truncated_residual", num(r.literal_residual)},
                  {"convergent_residual", num(r.corrected_residual)}};
    });
    return m;
  }();
  return reg;
}

const Entry& lookup(const std::string& name) {
  const auto& reg = registry();
  const auto it = reg.find(name);
  if (it == reg.end()) throw Error(Errc::argument, "unknown target '" + name + "'");
  return it->second;
}

json eval_one(const Entry& e, const json& params, const Truncation& tr) {
  const Params p(params);
  for (const auto& k : e.info.required)
    if (!p.has(k)) throw Error(Errc::argument, "target '" + e.info.name + "' needs parameter '" + k + "'");
  json out = e.fn(p, tr);
  p.finish();
  return out;
}

void flatten(const json& j, const std::string& prefix, json& row) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), row);
  } else {
    row[prefix] = j;
  }
}

}  // namespace

const std::vector<TargetInfo>& targets() {
  static const std::vector<TargetInfo> out = [] {
    std::vector<TargetInfo> v;
    for (const auto& [name, e] : registry()) v.push_back(e.info);
    return v;
  }();
  return out;
}

Truncation truncation_from(const json& j, const Truncation& base) {
  Truncation t = base;
  if (j.is_null()) return t;
  if (!j.is_object()) throw Error(Errc::argument, "trunc must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    const json& v = it.value();
    if (!v.is_number()) throw Error(Errc::argument, "trunc." + k + " must be a number");
    if (k == "product_cutoff")
      t.product_cutoff = v.get<int>();
    else if (k == "series_cutoff")
      t.series_cutoff = v.get<int>();
    else if (k == "quad_points")
      t.quad_points = v.get<int>();
    else if (k == "line_radius")
      t.line_radius = v.get<double>();
    else if (k == "tol_abs")
      t.tol_abs = v.get<double>();
    else if (k == "tol_rel")
      t.tol_rel = v.get<double>();
    else if (k == "pinch_tol")
      t.pinch_tol = v.get<double>();
    else
      throw Error(Errc::argument, "unknown truncation field '" + k + "'");
  }
  t.validate();
  return t;
}

json eval(const json& request, const Truncation& tr) {
  if (!request.is_object() || !request.contains("target") || !request["target"].is_string())
    throw Error(Errc::argument, "request needs a string 'target'");
  const Entry& e = lookup(request["target"].get<std::string>());
  const json params = request.value("params", json::object());
  return {{"target", e.info.name}, {"module", e.info.module}, {"params", params}, {"result", eval_one(e, params, tr)}};
}

json table(const json& request, const Truncation& tr) {
  if (!request.is_object() || !request.contains("target") || !request["target"].is_string())
    throw Error(Errc::argument, "request needs a string 'target'");
  const Entry& e = lookup(request["target"].get<std::string>());
  const json params = request.value("params", json::object());
  if (!params.is_object()) throw Error(Errc::argument, "params must be an object");

  // axes in key order; the last key varies fastest
  std::vector<std::pair<std::string, std::vector<json>>> axes;
  for (auto it = params.begin(); it != params.end(); ++it) {
    std::vector<json> vals;
    const json& v = it.value();
    if (v.is_array()) {
      if (v.empty()) throw Error(Errc::argument, "empty grid for '" + it.key() + "'");
      for (const auto& x : v) vals.push_back(x);
    } else if (v.is_string() && v.get<std::string>().find("..") != std::string::npos) {
      for (int x : parse_int_range(v.get<std::string>())) vals.push_back(x);
    } else {
      vals.push_back(v);
    }
    axes.emplace_back(it.key(), std::move(vals));
  }

  std::vector<json> rows;
  std::vector<std::size_t> idx(axes.size(), 0);
  for (bool done = false; !done;) {
    json point = json::object();
    for (std::size_t a = 0; a < axes.size(); ++a) point[axes[a].first] = axes[a].second[idx[a]];
    json row = json::object();
    for (std::size_t a = 0; a < axes.size(); ++a) row[axes[a].first] = point[axes[a].first];
    try {
      flatten(eval_one(e, point, tr), "", row);
      row["status"] = "ok";
    } catch (const Error& err) {
      row["status"] = std::string(errc_name(err.code())) + ": " + err.what();
    }
    rows.push_back(row);
    done = true;
    for (std::size_t a = axes.size(); a-- > 0;) {
      if (++idx[a] < axes[a].second.size()) {
        done = false;
        break;
      }
      idx[a] = 0;
    }
  }

  // columns: parameters first, then result fields in first-seen order
  std::vector<std::string> cols;
  for (const auto& a : axes) cols.push_back(a.first);
  for (const auto& r : rows)
    for (auto it = r.begin(); it != r.end(); ++it)
      if (std::find(cols.begin(), cols.end(), it.key()) == cols.end()) cols.push_back(it.key());
  json jrows = json::array();
  for (const auto& r : rows) {
    json line = json::array();
    for (const auto& c : cols) line.push_back(r.contains(c) ? r[c] : json(nullptr));
    jrows.push_back(line);
  }
  return {{"target", e.info.name}, {"module", e.info.module}, {"columns", cols}, {"rows", jrows}};
}

}  // namespace et::api
