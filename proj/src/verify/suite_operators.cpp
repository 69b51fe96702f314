#include <memory>
#include <string>

#include <Eigen/Dense>

#include "hts/hts.hpp"
#include "macdonald/macdonald.hpp"
#include "operators/cherednik.hpp"
#include "operators/qkzb.hpp"
#include "theta/theta.hpp"
#include "verify/builder.hpp"

namespace et::verify::detail {

using namespace et::ops;
using mac::LaurentPoly;
using mac::Rational;
using mac::rpow;

namespace {

LaurentPoly mono(int d, const Rational& c = 1) { return LaurentPoly::monomial(d, c); }

void cherednik_checks(Builder& b) {
  const Rational q(5, 3);
  const json pq = {{"q", "5/3"}};
  b.exact("cherednik_w/generator", "w(x) = q/x", pq, false,
          [&] { return cherednik_w(mono(1), q) == mono(-1, q); });
  b.exact("cherednik_w/involution", "w^2 = 1", {{"q", "5/3"}, {"f", "x^3 + 2 - x^-1"}}, false, [&] {
    const LaurentPoly f = mono(3) + LaurentPoly(2) - mono(-1);
    return cherednik_w(cherednik_w(f, q), q) == f;
  });
  b.exact("cherednik_w/example", "w(x^2 + x^-2) = q^2 x^-2 + q^-2 x^2", pq, false, [&] {
    return cherednik_w(mono(2) + mono(-2), q) == mono(-2, q * q) + mono(2, 1 / (q * q));
  });

  const Rational q3(3, 2);
  const LaurentPoly f = mono(3) + LaurentPoly(2) - mono(-1);
  const json pf = {{"q", "3/2"}, {"f", "x^3 + 2 - x^-1"}};
  b.exact("cherednik_Y/inverse_right", "Y Y^-1 = 1", pf, false,
          [&] { return cherednik_Y(cherednik_Y_inv(f, q3), q3) == f; });
  b.exact("cherednik_Y/inverse_left", "Y^-1 Y = 1", pf, false,
          [&] { return cherednik_Y_inv(cherednik_Y(f, q3), q3) == f; });
  b.exact("cherednik_Y/unit_symmetric_sum", "(Y + Y^-1)(1) = q^2 + q^-2", {{"q", "3/2"}}, false, [&] {
    const Rational ev = q3 * q3 + 1 / (q3 * q3);
    return cherednik_Y(LaurentPoly(1), q3) + cherednik_Y_inv(LaurentPoly(1), q3) == LaurentPoly(ev);
  });
  b.exact("cherednik_Y/literal_unit_symmetric_sum", "(Y + Y^-1)(1) = q^2 + q^-2 with Y read literally in (x, q)",
          {{"q", "3/2"}, {"convention", "literal"}}, false, [&] {
            const Rational ev = q3 * q3 + 1 / (q3 * q3);
            return cherednik_Y(LaurentPoly(1), q3, YConvention::literal) +
                       cherednik_Y_inv(LaurentPoly(1), q3, YConvention::literal) ==
                   LaurentPoly(ev);
          });

  b.exact("apply_f_of_Y/identity", "f = 1 acts as the identity", {{"q", "5/3"}, {"j", 2}}, false, [&] {
    const LaurentPoly P = mac::macdonald_m2(2, q);
    return apply_f_of_Y(LaurentPoly(1), P, q) == P;
  });
  b.exact("apply_f_of_Y/eigen_j1", "f(Y) P_j = f(q^{j+2}) P_j for f = x + 1/x",
          {{"q", "5/3"}, {"j", 1}, {"f", "x + x^-1"}}, false, [&] {
            const LaurentPoly P = mac::macdonald_m2(1, q);
            const Rational ev = rpow(q, 3) + rpow(q, -3);
            return apply_f_of_Y(mono(1) + mono(-1), P, q) == P * ev;
          });
  const Rational q74(7, 4);
  b.exact("apply_f_of_Y/eigen_j2", "f(Y) P_2 = (q^8 + q^-8) P_2 for f = x^2 + x^-2",
          {{"q", "7/4"}, {"j", 2}, {"f", "x^2 + x^-2"}}, false, [&] {
            const LaurentPoly P = mac::macdonald_m2(2, q74);
            const Rational ev = rpow(q74, 8) + rpow(q74, -8);
            return apply_f_of_Y(mono(2) + mono(-2), P, q74) == P * ev;
          });
  b.exact("apply_f_of_Y/linearity", "f -> f(Y) P is linear", {{"q", "5/3"}, {"j", 2}}, false, [&] {
    const LaurentPoly P = mac::macdonald_m2(2, q);
    const LaurentPoly f1 = mono(1) + mono(-1), f2 = mono(3) + mono(-3);
    return apply_f_of_Y(f1 * Rational(2) + f2 * Rational(-5), P, q) ==
           apply_f_of_Y(f1, P, q) * Rational(2) + apply_f_of_Y(f2, P, q) * Rational(-5);
  });
  b.exact("apply_f_of_Y/literal_eigen_j1", "f(Y) P_1 = f(q^3) P_1 with Y read literally in (x, q)",
          {{"q", "5/3"}, {"j", 1}, {"f", "x + x^-1"}, {"convention", "literal"}}, false, [&] {
            const LaurentPoly P = mac::macdonald_m2(1, q);
            const Rational ev = rpow(q, 3) + rpow(q, -3);
            return apply_f_of_Y(mono(1) + mono(-1), P, q, YConvention::literal) == P * ev;
          });
  b.expect_error("apply_f_of_Y/nonsymmetric_rejected", "f(Y) is defined for symmetric f",
                 {{"q", "5/3"}, {"f", "x"}}, Errc::argument, false,
                 [&] { apply_f_of_Y(mono(1), LaurentPoly(1), q); });

  b.exact("T_q_apply/zero", "the operator maps 0 to 0", {{"q", "5/3"}, {"m_range", 3}}, false, [&] {
    const auto app = T_q_apply(LaurentPoly(), q, 3);
    for (const auto& t : app.terms)
      if (!t.numerator.is_zero()) return false;
    return true;
  });
  b.upper("T_q_apply/matches_numeric", "exact summands agree with the numerical truncated sum (unit weight)",
          {{"q", "5/3"}, {"j", 1}, {"m_range", 2}, {"x", "0.7+0.4i"}}, 1e-12, false, [&] {
            const LaurentPoly P = mac::macdonald_m2(1, q);
            const auto app = T_q_apply(P, q, 2);
            const cplx x(0.7, 0.4);
            cplx tot = 0.0;
            for (const auto& t : app.terms) tot += t.numerator.eval(x);
            tot /= app.denominator.eval(x);
            return rel_diff(tot, T_q_value(1, x, mac::to_double(q), 2, 0));
          });
}

}  // namespace

void operators_suite(Builder& b, const SuiteOptions& opt) {
  const Truncation& tr = opt.trunc;
  const int kappa = opt.kappa;
  const int l = 2;
  const cplx tau(0, 1.2), eta(0, -0.02);
  const cplx tau0 = tau - 2.0 * eta * static_cast<double>(kappa);
  const std::vector<cplx> lams = {0.2, cplx(0.31, 0.07), cplx(-0.13, 0.11)};
  const json base = {{"l", l},
                     {"kappa", kappa},
                     {"tau", cstr(tau)},
                     {"eta", cstr(eta)},
                     {"lambda", json::array({cstr(lams[0]), cstr(lams[1]), cstr(lams[2])})}};
  auto with = [&](json extra) {
    json j = base;
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
    return j;
  };

  std::unique_ptr<hts::HtsEvaluator> hin;
  std::unique_ptr<TKappa> T;
  std::string err;
  try {
    hin = std::make_unique<hts::HtsEvaluator>(kappa, tau0, eta, tr);
    T = std::make_unique<TKappa>(kappa, tau, eta, tr);
  } catch (const Error& e) {
    err = std::string(errc_name(e.code())) + ": " + e.what();
  }
  auto need = [&] {
    if (!T) throw Error(Errc::domain, err);
  };
  const Fn f = [&](cplx x) { return hin->delta(l, x).value; };
  const Fn g = [&](cplx x) { return hin->delta(kappa - 2, x).value; };

  b.upper("apply_U/zero", "U maps 0 to 0", with({{"sigma", "tau - 2 eta kappa"}}), 0.0, false, [&] {
    return std::abs(apply_U([](cplx) { return cplx(0.0); }, tau, tau0, eta, 0.2, tr).value);
  });
  b.upper("apply_T_kappa/zero", "T_kappa maps 0 to 0", base, 0.0, false, [&] {
    need();
    return std::abs(T->apply([](cplx) { return cplx(0.0); }, 0.2).value);
  });
  b.upper("apply_T_kappa/linearity", "T_kappa is linear", with({{"f", "Delta_2"}, {"g", "Delta_{kappa-2}"}}), 1e-12,
          false, [&] {
            need();
            const Fn h = [&](cplx x) { return 2.0 * f(x) - 3.0 * g(x); };
            const cplx a = T->apply(h, 0.2).value;
            const cplx c = 2.0 * T->apply(f, 0.2).value - 3.0 * T->apply(g, 0.2).value;
            return mixed_diff(a, c);
          });
  b.upper("apply_U/radius_doubling", "the truncated line integral is converged in the radius",
          with({{"lambda", "0.2"}}), tr.tol_rel, false, [&] {
            need();
            Truncation t2 = tr;
            t2.line_radius = 2.0 * T->line().radius();
            const TKappa T2(kappa, tau, eta, t2);
            return rel_diff(T->apply(f, 0.2).value, T2.apply(f, 0.2).value);
          });

  std::vector<cplx> fs;
  auto samples = [&]() -> const std::vector<cplx>& {
    need();
    if (fs.empty()) fs = T->sample(f);
    return fs;
  };
  b.upper("apply_T_kappa/odd_output", "T_kappa maps odd functions to odd functions", with({{"f", "Delta_2"}}), 1e-10,
          false, [&] {
            double worst = 0.0;
            for (cplx x : lams)
              worst = std::max(worst, mixed_diff(T->apply_values(-x, samples()).value,
                                                 -T->apply_values(x, samples()).value));
            return worst;
          });
  // membership through a least-squares fit on the basis Delta_l(tau); the
  // quasi-periodicity shifts by tau are out of reach of the line quadrature
  b.upper("apply_T_kappa/output_in_e_kappa", "T_kappa maps E_kappa(tau - 2 eta kappa) to E_kappa(tau)",
          with({{"f", "Delta_2"}, {"fit_points", 8}}), 1e-6, false, [&]() -> Outcome {
            const auto& v = samples();
            const hts::HtsEvaluator hout(kappa, tau, eta, tr);
            const int n = 8, d = kappa - 3;
            Eigen::MatrixXcd M(n, d);
            Eigen::VectorXcd y(n);
            for (int r = 0; r < n; ++r) {
              const cplx x(0.06 + 0.11 * r, 0.04 * ((r % 3) - 1));
              y(r) = T->apply_values(x, v).value;
              for (int c = 0; c < d; ++c) M(r, c) = hout.delta(c + 2, x).value;
            }
            const Eigen::VectorXcd coef = M.colPivHouseholderQr().solve(y);
            return {(M * coef - y).norm() / y.norm(), "coefficient of Delta_2 " + cstr(coef(0))};
          });

  struct Q {
    const char* name;
    QkzbMethod method;
    bool tilde;
    bool acceptance;
    const char* anchor;
  };
  for (const Q& q : {Q{"integral_delta", QkzbMethod::integral, false, true,
                       "Delta_{l,kappa} solves the qKZB heat equation (integral operator)"},
                     Q{"integral_delta_tilde", QkzbMethod::integral, true, false,
                       "Delta~_{l,kappa} solves the qKZB heat equation (integral operator)"},
                     Q{"discrete_delta", QkzbMethod::discrete, false, true,
                       "Delta_{l,kappa} solves the difference form of the qKZB equation"},
                     Q{"discrete_delta_tilde", QkzbMethod::discrete, true, false,
                       "Delta~_{l,kappa} solves the difference form of the qKZB equation"}}) {
    QkzbOptions o;
    o.method = q.method;
    o.tilde = q.tilde;
    o.m_range = 30;
    b.upper(std::string("qkzb_residual/") + q.name, q.anchor, with({{"m_range", o.m_range}}), 1e-4, q.acceptance,
            [&] { return qkzb_residual(l, kappa, tau, eta, lams, tr, o); });
  }
  for (const QkzbMethod m : {QkzbMethod::integral, QkzbMethod::discrete}) {
    QkzbOptions o;
    o.method = m;
    o.perturbation = 0.1;
    o.m_range = 30;
    const std::string tag = m == QkzbMethod::integral ? "integral" : "discrete";
    b.lower("qkzb_residual/perturbed_" + tag, "a perturbed Delta is not a solution (negative control)",
            with({{"perturbation", "0.1 theta_{0,kappa+2}"}, {"m_range", o.m_range}}), 1e-2, true,
            [&] { return qkzb_residual(l, kappa, tau, eta, lams, tr, o); });
  }

  b.upper("apply_T_bar/zero", "T-bar maps 0 to 0", base, 0.0, false, [&] {
    return std::abs(apply_T_bar([](cplx) { return cplx(0.0); }, kappa, tau, eta, 0.2, ShiftGrid{30}, tr).value);
  });
  b.upper("apply_T_bar/m_range_doubling", "the shift-grid sum is converged in m_range",
          with({{"lambda", "0.2"}, {"m_range", "30 vs 60"}}), tr.tol_rel, false, [&] {
            need();
            const TBar a(kappa, tau, eta, tr, ShiftGrid{30}), c(kappa, tau, eta, tr, ShiftGrid{60});
            return rel_diff(a.apply(f, 0.2).value, c.apply(f, 0.2).value);
          });
  b.upper("apply_T_bar/agrees_with_T_kappa", "T-bar and T_kappa agree on Delta_{l,kappa}",
          with({{"m_range", 40}}), 1e-8, false, [&] {
            need();
            const TBar tb(kappa, tau, eta, tr, ShiftGrid{40});
            double worst = 0.0;
            for (cplx x : lams) worst = std::max(worst, mixed_diff(tb.apply(f, x).value, T->apply_values(x, samples()).value));
            return worst;
          });

  cherednik_checks(b);
}

}  // namespace et::verify::detail
