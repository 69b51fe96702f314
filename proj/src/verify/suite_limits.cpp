#include <string>

#include "limits/limits.hpp"
#include "macdonald/macdonald.hpp"
#include "theta/theta.hpp"
#include "verify/builder.hpp"

namespace et::verify::detail {

using namespace et::limits;

void limits_suite(Builder& b, const SuiteOptions& opt) {
  const Truncation& tr = opt.trunc;
  const int kappa = opt.kappa;

  // Macdonald-Mehta identity
  const cplx em(0, -0.08);
  const cplx lm = 0.3;
  for (int j = 0; j <= 2; ++j) {
    const std::string jt = "_j" + std::to_string(j);
    const json p = {{"j", j}, {"eta", cstr(em)}, {"lambda", cstr(lm)}};
    MehtaResult m{};
    std::string err;
    try {
      m = mehta_check(j, em, lm, tr);
    } catch (const Error& e) {
      err = std::string(errc_name(e.code())) + ": " + e.what();
    }
    auto val = [&](double v) -> Outcome {
      if (!err.empty()) throw Error(Errc::evaluation, err);
      return v;
    };
    b.upper("mehta_check/identity" + jt, "Macdonald-Mehta identity: the Gaussian kernel reproduces q^{-(j+2)^2/2} P_j",
            p, 1e-5, true, [&] { return val(m.residual); });
    b.upper("mehta_check/identity_q2" + jt, "Macdonald-Mehta identity with the integral equal to q^{-2} times the printed side",
            p, 1e-5, false, [&] { return val(m.corrected); });
  }
  b.upper("mehta_check/radius_doubling", "the Mehta line integral is converged in the radius",
          {{"j", 1}, {"eta", cstr(em)}, {"lambda", cstr(lm)}}, 1e-7, false, [&] {
            const MehtaResult a = mehta_check(1, em, lm, tr);
            Truncation t2 = tr;
            t2.line_radius = 2.0 * a.radius;
            return std::abs(mehta_check(1, em, lm, t2).corrected - a.corrected);
          });

  // trigonometric limit of the elliptic Macdonald polynomials
  const cplx et_(0, -0.05);
  const cplx q = std::exp(-2.0 * pi * I * et_);
  std::vector<cplx> xs;
  for (const cplx l : {cplx(0.13), cplx(0.29), cplx(0.41, 0.05), cplx(0.07, -0.1), cplx(0.35, 0.12)})
    xs.push_back(std::exp(I * pi * l));
  const int kt = std::max(kappa, 5);
  for (int j = 0; j <= 1; ++j) {
    const std::string jt = "_j" + std::to_string(j);
    const json p = {{"j", j}, {"kappa", kt}, {"q", cstr(q)}, {"p", json::array({1e-4, 1e-6})}, {"x_samples", 5}};
    mac::TrigLimit a{}, c{};
    std::string err;
    try {
      a = mac::trig_limit_ratio(j, kt, q, 1e-4, xs, tr);
      c = mac::trig_limit_ratio(j, kt, q, 1e-6, xs, tr);
    } catch (const Error& e) {
      err = std::string(errc_name(e.code())) + ": " + e.what();
    }
    auto need = [&] {
      if (!err.empty()) throw Error(Errc::evaluation, err);
    };
    b.upper("trig_limit_ratio/spread_decreasing" + jt,
            "P_{j,kappa}/P_j^(2) becomes x-independent as p -> 0 (spread ratio p=1e-6 over p=1e-4)", p, 1.0, true,
            [&]() -> Outcome {
              need();
              return {c.spread / a.spread,
                      "spread " + std::to_string(a.spread) + " -> " + std::to_string(c.spread)};
            });
    b.lower("trig_limit_ratio/A_nonzero" + jt, "the limit constant A_{j,kappa}(q) is nonzero", p, 1e-6, true,
            [&]() -> Outcome {
              need();
              return {std::abs(c.A_estimate), "A ~ " + cstr(c.A_estimate)};
            });
  }

  // classical limit
  const int lc = 2, kc = std::max(kappa, 5);
  const cplx tc(0, 1.1);
  const std::vector<cplx> etas = {cplx(0, -0.02), cplx(0, -0.01), cplx(0, -0.005)};
  const json pc = {{"l", lc}, {"kappa", kc}, {"tau", cstr(tc)}, {"eta", json::array({"0-0.02i", "0-0.01i", "0-0.005i"})}};
  LimitReport r1{}, r2{};
  std::string cerr;
  try {
    r1 = classical_limit_check(lc, kc, 0.23, tc, etas, tr);
    r2 = classical_limit_check(lc, kc, cplx(0.37, 0.04), tc, etas, tr);
  } catch (const Error& e) {
    cerr = std::string(errc_name(e.code())) + ": " + e.what();
  }
  auto cneed = [&] {
    if (!cerr.empty()) throw Error(Errc::evaluation, cerr);
  };
  {
    json p = pc;
    p["lambda"] = "0.23";
    b.upper("classical_limit_check/ratio_at_smallest_eta",
            "2 eta Delta/theta tends to the stated multiple of the conformal block", p, 1e-2, true, [&]() -> Outcome {
              cneed();
              const cplx r = r1.ratio_values.back();
              return {std::abs(r - 1.0), "ratio " + cstr(r) + ", extrapolated " + cstr(r1.extrapolated_limit)};
            });
    b.lower("classical_limit_check/convergence_order", "the ratios converge with order >= 1 in |eta|", p, 1.0, false,
            [&] {
              cneed();
              return r1.convergence_order_estimate;
            });
  }
  {
    json p = pc;
    p["lambda"] = json::array({"0.23", "0.37+0.04i"});
    b.upper("classical_limit_check/lambda_independent",
            "the limit constant does not depend on lambda (lambda spread at the smallest eta over the largest)", p,
            1.0, false, [&]() -> Outcome {
              cneed();
              const double first = rel_diff(r1.ratio_values.front(), r2.ratio_values.front());
              const double last = rel_diff(r1.ratio_values.back(), r2.ratio_values.back());
              return {last / first, "spread " + std::to_string(first) + " -> " + std::to_string(last) +
                                        ", extrapolated " + cstr(r1.extrapolated_limit) + " vs " +
                                        cstr(r2.extrapolated_limit)};
            });
  }
  const json pb = {{"l", lc}, {"kappa", kc}, {"tau", cstr(tc)}, {"lambda", "0.23"}};
  b.upper("conformal_block/antisymmetry", "v_{l,kappa}(-lambda) = -v_{l,kappa}(lambda)", pb, 1e-8, false, [&] {
    return rel_diff(conformal_block(lc, kc, -0.23, tc).value, -conformal_block(lc, kc, 0.23, tc).value);
  });
  b.upper("conformal_block/symmetry", "v_{l,kappa}(-lambda) = v_{l,kappa}(lambda) (consistent with the limit)", pb,
          1e-8, false, [&] {
            return rel_diff(conformal_block(lc, kc, -0.23, tc).value, conformal_block(lc, kc, 0.23, tc).value);
          });
  b.upper("conformal_block/integrand_finite_at_endpoints",
          "the regularized integrand stays bounded as t -> 0+ and t -> 1-", pb, 1e3, false, [&] {
            double worst = 0.0;
            for (double t : {1e-4, 1e-6})
              worst = std::max({worst, std::abs(conformal_block_integrand(lc, kc, 0.23, tc, t, 1.0 - t)),
                                std::abs(conformal_block_integrand(lc, kc, 0.23, tc, 1.0 - t, t))});
            return worst;
          });
  b.upper("conformal_block/quadrature_refinement", "the tanh-sinh value is converged", pb, 1e-8, false, [&] {
    ConformalBlockOptions fine;
    fine.half_points = 320;
    return rel_diff(conformal_block(lc, kc, 0.23, tc).value, conformal_block(lc, kc, 0.23, tc, fine).value);
  });

  // difference equation in the trigonometric limit
  const mac::Rational qd(5, 3);
  for (int j = 0; j <= 3; ++j) {
    const std::string jt = "_j" + std::to_string(j);
    const json p = {{"j", j}, {"q", "5/3"}, {"m_range", 4}};
    DiffEqnReport d{};
    std::string err;
    try {
      d = diff_eqn_check(j, qd, 4, {cplx(0.7, 0.2), cplx(1.3, -0.4), cplx(-0.6, 0.9)});
    } catch (const Error& e) {
      err = std::string(errc_name(e.code())) + ": " + e.what();
    }
    auto need = [&] {
      if (!err.empty()) throw Error(Errc::evaluation, err);
    };
    b.upper("diff_eqn_check/termwise" + jt,
            "each (+-m) pair of T(q) maps P_j to q^{-m^2/2}(q^{(j+2)m} + q^{-(j+2)m}) P_j", p, 0.0, false,
            [&]() -> Outcome {
              need();
              std::string bad;
              for (const auto& t : d.terms)
                if (!t.exact) bad += (bad.empty() ? "" : ",") + std::to_string(t.m);
              return {d.all_exact ? 0.0 : 1.0, bad.empty() ? "" : "inexact m = " + bad};
            });
    b.upper("diff_eqn_check/truncated_sum" + jt, "T(q) P_j = theta0(q^{j+2}, q) P_j with weight q^{-m^2/2}, |q| > 1",
            p, 1e-8, false, [&] {
              need();
              return d.literal_residual;
            });
    b.upper("diff_eqn_check/convergent_reading" + jt,
            "T(q) P_j = -2 q^-2 sum_m q^{(j+2)m + m^2/2} P_j with |q| < 1", p, 1e-8, false, [&] {
              need();
              return d.corrected_residual;
            });
  }

  // orthogonality against the inversion relation
  const cplx to(0, 0.9), eo(0, -0.05);
  const int ko = std::max(kappa, 5);
  for (int l = 2; l <= ko - 2; ++l)
    for (int j = 2; j <= ko - 2; ++j) {
      const std::string tag = "_" + std::to_string(l) + std::to_string(j);
      const json p = {{"l", l}, {"j", j}, {"kappa", ko}, {"tau", cstr(to)}, {"eta", cstr(eo)}, {"samples", 256}};
      OrthogonalityResult o{};
      std::string err;
      try {
        o = orthogonality_check(l, j, ko, to, eo, tr);
      } catch (const Error& e) {
        err = std::string(errc_name(e.code())) + ": " + e.what();
      }
      auto need = [&] {
        if (!err.empty()) throw Error(Errc::evaluation, err);
      };
      b.upper("orthogonality_check/value" + tag,
              "the orthogonality pairing equals delta_{lj} e^{pi i(4eta+tau) j^2/2kappa}", p, 1e-5, false,
              [&]() -> Outcome {
                need();
                return {o.residual, "value " + cstr(o.value) + ", expected " + cstr(o.expected)};
              });
      b.upper("orthogonality_check/matches_gram" + tag,
              "the orthogonality pairing equals the inversion-relation Gram entry after normalization", p, 1e-5,
              true, [&] {
                need();
                return o.cross_check;
              });
      b.upper("orthogonality_check/sample_doubling" + tag, "equispaced sampling is converged", p, 1e-8, false, [&] {
        need();
        return o.refinement;
      });
    }
}

}  // namespace et::verify::detail
