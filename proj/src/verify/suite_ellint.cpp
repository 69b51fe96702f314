#include <memory>
#include <string>

#include "ellint/ellint.hpp"
#include "limits/limits.hpp"
#include "theta/theta.hpp"
#include "verify/builder.hpp"

namespace et::verify::detail {

using namespace et::ellint;

namespace {

struct Point {
  const char* tag;
  cplx tau, sigma, eta;
};

// The three acceptance points: two in the Im eta < 0 regime used by the
// hypergeometric theta functions, one with Im eta > 0.
const Point kPoints[] = {
    {"p1", cplx(0, 0.9), cplx(0, 1.1), cplx(0, -0.04)},
    {"p2", cplx(0.1, 1.0), cplx(-0.2, 1.3), cplx(0, -0.05)},
    {"p3", cplx(0, 1.1), cplx(0, 0.9), cplx(0.03, 0.04)},
};

json point_json(const Point& p) {
  return {{"tau", cstr(p.tau)}, {"sigma", cstr(p.sigma)}, {"eta", cstr(p.eta)}};
}

}  // namespace

void ellint_suite(Builder& b, const SuiteOptions& opt) {
  const Truncation& tr = opt.trunc;

  b.upper("omega/eta_zero", "Omega is identically 1 at eta = 0",
          {{"t", "0.3"}, {"tau", "0+0.9i"}, {"sigma", "0+1.1i"}}, 1e-14, false,
          [&] { return std::abs(omega(0.3, cplx(0, 0.9), cplx(0, 1.1), 0.0, tr).value - 1.0); });
  b.upper("omega/eta_reflection", "Omega_{2eta} Omega_{-2eta} = 1",
          {{"t", "0.3"}, {"tau", "0+0.9i"}, {"sigma", "0+1.1i"}, {"eta", "0-0.04i"}}, 1e-12, false, [&] {
            const cplx a = omega(0.3, cplx(0, 0.9), cplx(0, 1.1), cplx(0, -0.04), tr).value;
            const cplx c = omega(0.3, cplx(0, 0.9), cplx(0, 1.1), cplx(0, 0.04), tr).value;
            return std::abs(a * c - 1.0);
          });
  b.upper("omega/cutoff_doubling", "the double product converges",
          {{"t", "0.25"}, {"tau", "0+0.9i"}, {"sigma", "0+1.2i"}, {"eta", "0-0.05i"}}, tr.tol_rel, false, [&] {
            Truncation t2 = tr;
            t2.product_cutoff *= 2;
            const cplx a = omega(0.25, cplx(0, 0.9), cplx(0, 1.2), cplx(0, -0.05), tr).value;
            const cplx c = omega(0.25, cplx(0, 0.9), cplx(0, 1.2), cplx(0, -0.05), t2).value;
            return rel_diff(a, c);
          });

  const cplx qs(0, 1.2), qe(0, -0.05);
  b.upper("q_weight/even", "Q is even in mu", {{"mu", "0.3"}, {"sigma", cstr(qs)}, {"eta", cstr(qe)}}, 1e-13,
          false, [&] { return rel_diff(q_weight(-0.3, qs, qe, tr).value, q_weight(0.3, qs, qe, tr).value); });
  b.upper("q_weight/periodic", "Q is 1-periodic in mu", {{"mu", "0.3"}, {"sigma", cstr(qs)}, {"eta", cstr(qe)}},
          1e-13, false, [&] { return rel_diff(q_weight(1.3, qs, qe, tr).value, q_weight(0.3, qs, qe, tr).value); });
  b.upper("q_weight/series_oracle", "Q from raw theta series at doubled cutoff",
          {{"mu", "0.4"}, {"sigma", cstr(qs)}, {"eta", cstr(qe)}}, 1e-12, false, [&] {
            Truncation t2 = tr;
            t2.series_cutoff *= 2;
            const cplx mu = 0.4;
            const cplx num = theta::jacobi_theta(4.0 * qe, qs, t2).value * theta::jacobi_theta_dlam(0.0, qs, t2).value;
            const cplx den = theta::jacobi_theta(mu - 2.0 * qe, qs, t2).value *
                             theta::jacobi_theta(mu + 2.0 * qe, qs, t2).value;
            return rel_diff(q_weight(mu, qs, qe, tr).value, num / den);
          });
  b.expect_error("q_weight/pole_rejected", "Q has poles at mu = +-2 eta",
                 {{"mu", "2 eta"}, {"sigma", cstr(qs)}, {"eta", cstr(qe)}}, Errc::pole, false,
                 [&] { q_weight(2.0 * qe, qs, qe, tr); });

  b.upper("pole_pinch_distance/on_hyperplane", "4 eta + 1 + tau = 0 lies on a pole hyperplane",
          {{"tau", "0+0.9i"}, {"sigma", "0+1.3i"}, {"eta", "-(1+tau)/4"}}, 1e-14, false, [&] {
            const cplx t(0, 0.9);
            return pole_pinch_distance(t, cplx(0, 1.3), -(1.0 + t) / 4.0, 3);
          });
  b.lower("pole_pinch_distance/generic", "generic parameters avoid all pole hyperplanes",
          {{"tau", "0+0.9i"}, {"sigma", "0+1.3i"}, {"eta", "0-0.04i"}}, 1e-3, false,
          [&] { return pole_pinch_distance(cplx(0, 0.9), cplx(0, 1.3), cplx(0, -0.04), 3); });

  for (const Point& p : kPoints) {
    const std::string tag = p.tag;
    std::unique_ptr<UKernel> k0, k1;
    std::string build_error;
    try {
      k0 = std::make_unique<UKernel>(p.tau, p.sigma, p.eta, tr);
      ContourOptions alt;
      alt.gap_rank = 1;
      k1 = std::make_unique<UKernel>(p.tau, p.sigma, p.eta, tr, Limit{}, alt);
    } catch (const Error& e) {
      build_error = std::string(errc_name(e.code())) + ": " + e.what();
    }
    auto need = [&] {
      if (!k0 || !k1) throw Error(Errc::evaluation, "kernel construction failed: " + build_error);
    };

    json ps = point_json(p);
    ps["lambda"] = "0.2";
    ps["mu"] = "0.3";
    b.upper("u_hyper/symmetry_" + tag, "symmetry lemma u(-lambda,-mu) = u(lambda,mu)", ps, 1e-8, true, [&] {
      need();
      return rel_diff(k0->u(-0.2, -0.3), k0->u(0.2, 0.3));
    });

    json pv = point_json(p);
    pv["lambda"] = "0.2";
    pv["rs_range"] = 1;
    b.upper("u_hyper/vanishing_" + tag,
            "vanishing lemma u(l, 2eta+r+s sigma) = e^{2 pi i s(tau-4eta)} u(l, -2eta+r+s sigma)", pv, 1e-7,
            true, [&] {
              need();
              double worst = 0.0;
              for (int r = -1; r <= 1; ++r)
                for (int s = -1; s <= 1; ++s) {
                  const cplx sh = static_cast<double>(r) + static_cast<double>(s) * p.sigma;
                  const cplx lhs = k0->u(0.2, 2.0 * p.eta + sh);
                  const cplx rhs = e2pi(static_cast<double>(s) * (p.tau - 4.0 * p.eta)) * k0->u(0.2, -2.0 * p.eta + sh);
                  worst = std::max(worst, rel_diff(lhs, rhs));
                }
              return worst;
            });

    json ph = point_json(p);
    ph["samples"] = json::array({"0.2,0.3", "-0.15+0.05i,0.41"});
    b.upper("u_hyper/contour_homotopy_" + tag, "u is unchanged under homotopic contour deformation", ph, 1e-8,
            true, [&] {
              need();
              return std::max(rel_diff(k0->u(0.2, 0.3), k1->u(0.2, 0.3)),
                              rel_diff(k0->u(cplx(-0.15, 0.05), 0.41), k1->u(cplx(-0.15, 0.05), 0.41)));
            });
  }

  // For Im eta > 0 the printed path is the plain segment [0, 1].
  {
    const Point& p = kPoints[2];
    json ps = point_json(p);
    ps["lambda"] = "0.2";
    ps["mu"] = "0.3";
    b.upper("u_hyper/segment_path_positive_eta", "for Im eta > 0 the integration path is [0, 1]", ps, 1e-8,
            false, [&] {
              const cplx lam = 0.2, mu = 0.3;
              auto f = [&](cplx t) {
                return omega_value(t, p.tau, p.sigma, p.eta) * theta::theta(lam + t, p.tau) *
                       theta::theta(mu + t, p.sigma) /
                       (theta::theta(t - 2.0 * p.eta, p.tau) * theta::theta(t - 2.0 * p.eta, p.sigma));
              };
              const cplx seg = std::exp(-pi * I * lam * mu / (2.0 * p.eta)) *
                               integrate_contour(f, Segment{0.0, 1.0}, tr).value;
              return rel_diff(seg, u_hyper({lam, mu, p.tau, p.sigma, p.eta}, tr).value);
            });
  }

  const cplx te(0, -0.05);
  b.upper("u_trig_degenerate/symmetry", "closed form is invariant under (lambda,mu) -> (-lambda,-mu)",
          {{"lambda", "0.2"}, {"mu", "0.3"}, {"eta", cstr(te)}}, 1e-14, false, [&] {
            return rel_diff(u_trig_degenerate(-0.2, -0.3, te).value, u_trig_degenerate(0.2, 0.3, te).value);
          });
  b.upper("u_trig_degenerate/value_at_zero", "u(0,0) = i(q^-2 - 1)/sin 4 pi eta",
          {{"lambda", "0"}, {"mu", "0"}, {"eta", cstr(te)}}, 1e-14, false, [&] {
            const cplx q = std::exp(-2.0 * pi * I * te);
            return rel_diff(u_trig_degenerate(0.0, 0.0, te).value, I * (1.0 / (q * q) - 1.0) / std::sin(4.0 * pi * te));
          });

  limits::TrigUCheck tu{};
  std::string tu_err;
  try {
    tu = limits::trig_u_check(te, 30.0, opt.kappa, 2, tr);
  } catch (const Error& e) {
    tu_err = std::string(errc_name(e.code())) + ": " + e.what();
  }
  auto tu_val = [&](double v) -> Outcome {
    if (!tu_err.empty()) throw Error(Errc::evaluation, tu_err);
    return v;
  };
  const json pt = {{"eta", cstr(te)}, {"tau", "0+30i"}, {"sigma", "0+30i"}, {"samples", 5}};
  b.upper("u_trig_degenerate/limit_of_u_hyper", "printed closed form is the tau, sigma -> i infinity limit of u",
          pt, 1e-6, false, [&] { return tu_val(tu.literal); });
  b.upper("u_trig_degenerate/limit_of_u_hyper_corrected",
          "-q^2 times the closed form is the tau, sigma -> i infinity limit of u", pt, 1e-6, false,
          [&] { return tu_val(tu.corrected); });
  const json pts = {{"eta", cstr(te)}, {"tau", "0+30i"}, {"kappa", opt.kappa}, {"l", 2}, {"samples", 5}};
  b.upper("u_trig_semi/limit_of_u_hyper", "single-product kernel gives the tau -> i infinity limit of u", pts,
          1e-5, false, [&] { return tu_val(tu.semi); });
}

}  // namespace et::verify::detail
