#include <memory>
#include <string>

#include "macdonald/macdonald.hpp"
#include "operators/cherednik.hpp"
#include "theta/theta.hpp"
#include "verify/builder.hpp"

namespace et::verify::detail {

using namespace et::mac;

namespace {

LaurentPoly mono(int d, const Rational& c = 1) { return LaurentPoly::monomial(d, c); }

}  // namespace

void macdonald_suite(Builder& b, const SuiteOptions& opt) {
  const Truncation& tr = opt.trunc;
  const Rational q53(5, 3), q74(7, 4);

  b.exact("ct_inner_product/unit_m0", "<1,1> = 1 for m = 0", {{"m", 0}}, false,
          [&] { return ct_inner_product(1, 1, 0, q53) == 1; });
  b.exact("ct_inner_product/x_m0", "<x,x> = 1 for m = 0", {{"m", 0}}, false,
          [&] { return ct_inner_product(mono(1), mono(1), 0, q53) == 1; });
  b.exact("ct_inner_product/unit_m1", "<1,1> = 2 for m = 1", {{"m", 1}, {"q", "5/3"}}, false,
          [&] { return ct_inner_product(1, 1, 1, q53) == 2; });

  b.exact("macdonald_general/j0", "P_0 = 1", {{"m", 2}, {"j", 0}, {"q", "5/3"}}, false,
          [&] { return macdonald_general(2, 0, q53) == LaurentPoly(1); });
  b.exact("macdonald_general/j1_form", "P_1 = x + 1/x + c with <P_1, 1> = 0", {{"m", 2}, {"j", 1}, {"q", "5/3"}},
          false, [&] {
            const LaurentPoly P = macdonald_general(2, 1, q53);
            const LaurentPoly rest = P - mono(1) - mono(-1);
            const bool constant = rest.is_zero() || (rest.max_degree() == 0 && rest.min_degree() == 0);
            return constant && ct_inner_product(P, 1, 2, q53) == 0;
          });

  for (const auto& qp : {std::pair{"5/3", q53}, std::pair{"7/4", q74}}) {
    const std::string qs = qp.first;
    const Rational q = qp.second;
    const std::string qtag = std::string("_q") + (qs[0] == '5' ? "53" : "74");
    b.exact("macdonald_general/orthogonality" + qtag, "<P_j, P_k> = 0 for j != k",
            {{"m", 2}, {"j", "0..4"}, {"q", qs}}, true, [&] {
              const auto Ps = macdonald_general_all(2, 4, q);
              for (int j = 0; j <= 4; ++j)
                for (int k = 0; k <= 4; ++k)
                  if (j != k && ct_inner_product(Ps[j], Ps[k], 2, q) != 0) return false;
              return true;
            });
    b.exact("macdonald_m2/division_exact" + qtag, "the closed form numerator is divisible by Pi(x, q)",
            {{"j", "0..6"}, {"q", qs}}, true, [&] {
              const LaurentPoly Pi = pi_poly(q);
              for (int j = 0; j <= 6; ++j) {
                LaurentPoly quot;
                if (!m2_numerator(j, q).divides_into(Pi, &quot)) return false;
              }
              return true;
            });
    b.exact("macdonald_m2/equals_gram_schmidt" + qtag, "closed form equals the Gram-Schmidt construction",
            {{"j", "0..4"}, {"q", qs}}, true, [&] {
              const auto Ps = macdonald_general_all(2, 4, q);
              for (int j = 0; j <= 4; ++j)
                if (!(macdonald_m2(j, q) == Ps[j])) return false;
              return true;
            });
    b.exact("macdonald_m2/symmetric_monic" + qtag, "P_j(1/x) = P_j(x) and P_j = x^j + lower terms",
            {{"j", "0..5"}, {"q", qs}}, false, [&] {
              for (int j = 0; j <= 5; ++j) {
                const LaurentPoly P = macdonald_m2(j, q);
                if (!P.is_symmetric() || P.max_degree() != j || P.coeff(j) != 1) return false;
              }
              return true;
            });
    b.exact("apply_f_of_Y/eigenvalues" + qtag, "f(Y) P_j = f(q^{j+2}) P_j for symmetric f",
            {{"j", "0..4"}, {"f", "x^m + x^-m, m = 1..5"}, {"q", qs}}, true, [&] {
              for (int j = 0; j <= 4; ++j) {
                const LaurentPoly P = macdonald_m2(j, q);
                for (int m = 1; m <= 5; ++m) {
                  const Rational ev = rpow(q, (j + 2) * m) + rpow(q, -(j + 2) * m);
                  if (!(ops::apply_f_of_Y(mono(m) + mono(-m), P, q) == P * ev)) return false;
                }
              }
              return true;
            });
  }
  b.exact("macdonald_m2/j0", "P_0 = 1", {{"j", 0}, {"q", "7/4"}}, false,
          [&] { return macdonald_m2(0, q74) == LaurentPoly(1); });
  b.exact("cherednik_Y/inverse_identity", "Y Y^-1 = Y^-1 Y = 1 on Laurent polynomials",
          {{"q", "5/3"}, {"f", "x^3 + 2 - x^-1, P_0..P_4"}}, true, [&] {
            std::vector<LaurentPoly> fs = {mono(3) + LaurentPoly(2) - mono(-1)};
            for (int j = 0; j <= 4; ++j) fs.push_back(macdonald_m2(j, q53));
            for (const auto& f : fs)
              if (!(ops::cherednik_Y(ops::cherednik_Y_inv(f, q53), q53) == f) ||
                  !(ops::cherednik_Y_inv(ops::cherednik_Y(f, q53), q53) == f))
                return false;
            return true;
          });
  b.expect_error("macdonald_m2/degenerate_q", "the coefficient a is undefined at q = 1",
                 {{"j", 2}, {"q", "1"}}, Errc::domain, false, [&] { macdonald_m2(2, Rational(1)); });

  // Elliptic Macdonald polynomials (numerical)
  const int kappa = std::max(opt.kappa, 5);
  const cplx tau(0, 0.9), eta(0, -0.05);
  const json base = {{"kappa", kappa}, {"tau", cstr(tau)}, {"eta", cstr(eta)}};
  auto with = [&](json extra) {
    json j = base;
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
    return j;
  };
  std::unique_ptr<EllipticMacdonald> E, E1;
  std::string err;
  try {
    E = std::make_unique<EllipticMacdonald>(kappa, tau, eta, tr);
    E1 = std::make_unique<EllipticMacdonald>(kappa, tau + 1.0, eta + 1.0, tr);
  } catch (const Error& e) {
    err = std::string(errc_name(e.code())) + ": " + e.what();
  }
  auto need = [&] {
    if (!E1) throw Error(Errc::domain, err);
  };
  const std::vector<cplx> lams = {0.2, cplx(0.13, 0.06), cplx(-0.37, 0.02)};
  for (int j = 0; j <= kappa - 4; ++j) {
    const std::string jt = "_j" + std::to_string(j);
    b.upper("elliptic_macdonald/even" + jt, "P_{j,kappa}(1/x) = P_{j,kappa}(x)", with({{"j", j}}), 1e-6, false, [&] {
      need();
      double worst = 0.0;
      for (cplx l : lams) worst = std::max(worst, rel_diff(E->value_lambda(j, -l).value, E->value_lambda(j, l).value));
      return worst;
    });
    b.upper("elliptic_macdonald/periodic_tau_eta" + jt, "P_{j,kappa} is 1-periodic in tau and eta",
            with({{"j", j}}), 1e-6, false, [&] {
              need();
              double worst = 0.0;
              for (cplx l : lams)
                worst = std::max(worst, rel_diff(E->value_lambda(j, l).value, E1->value_lambda(j, l).value));
              return worst;
            });
    b.upper("elliptic_macdonald/level" + jt, "P_{j,kappa} is an even theta function of level kappa-4",
            with({{"j", j}, {"rs_range", 1}}), 1e-6, false, [&] {
              need();
              return theta::level_residual([&](cplx l) { return E->value_lambda(j, l).value; }, kappa - 4, tau,
                                           lams, 1);
            });
    b.upper("elliptic_macdonald/branch_convention" + jt, "value via x = e^{pi i lambda} matches direct lambda",
            with({{"j", j}, {"lambda", "1.2+0.06i"}}), 1e-10, false, [&] {
              need();
              const cplx l(1.2, 0.06);
              return rel_diff(E->value(j, std::exp(pi * I * l)).value, E->value_lambda(j, l).value);
            });
  }
}

}  // namespace et::verify::detail
