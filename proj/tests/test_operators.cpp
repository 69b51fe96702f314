#include <gtest/gtest.h>

#include "hts/hts.hpp"
#include "macdonald/macdonald.hpp"
#include "operators/cherednik.hpp"
#include "operators/qkzb.hpp"

using namespace et;
using mac::LaurentPoly;
using mac::Rational;

namespace {

LaurentPoly mono(int d, const Rational& c = 1) { return LaurentPoly::monomial(d, c); }

}  // namespace

TEST(Cherednik, WIsInvolution) {
  const Rational q(5, 3);
  const LaurentPoly f = mono(4, 2) - mono(-3) + LaurentPoly(7);
  EXPECT_EQ(ops::cherednik_w(ops::cherednik_w(f, q), q), f);
}

TEST(Cherednik, YInverse) {
  const Rational q(7, 4);
  const LaurentPoly f = mono(2) + mono(-1, Rational(3, 5));
  EXPECT_EQ(ops::cherednik_Y(ops::cherednik_Y_inv(f, q), q), f);
  EXPECT_EQ(ops::cherednik_Y_inv(ops::cherednik_Y(f, q), q), f);
}

TEST(Cherednik, EigenvaluesOnMacdonaldPolynomials) {
  const Rational q(5, 3);
  for (int j = 0; j <= 4; ++j) {
    const LaurentPoly P = mac::macdonald_m2(j, q);
    for (int m = 1; m <= 3; ++m) {
      const Rational ev = mac::rpow(q, (j + 2) * m) + mac::rpow(q, -(j + 2) * m);
      EXPECT_EQ(ops::apply_f_of_Y(mono(m) + mono(-m), P, q), P * ev) << j << " " << m;
    }
  }
}

TEST(Cherednik, NonSymmetricRejected) {
  EXPECT_THROW(ops::apply_f_of_Y(mono(1), LaurentPoly(1), Rational(5, 3)), Error);
}

TEST(Tq, ConvergentReadingEigenvalue) {
  // |q| < 1 with weight q^{m^2/2}: T(q) P_j = -2 q^-2 sum_m q^{(j+2)m + m^2/2} P_j
  const cplx q(0.6, 0.1), x(0.7, 0.45);
  for (int j = 0; j <= 2; ++j) {
    cplx ev = 0.0;
    for (int m = -60; m <= 60; ++m) ev += std::pow(q, (j + 2) * m) * std::pow(q, 0.5 * m * m);
    ev *= -2.0 / (q * q);
    const cplx lhs = ops::T_q_value(j, x, q, 60, 1);
    const cplx rhs = ev * mac::macdonald_m2_value(j, x, q);
    EXPECT_LT(std::abs(lhs - rhs), 1e-10 * std::abs(rhs)) << j;
  }
}

TEST(Alpha, Gaussian) {
  const cplx eta(0, -0.02), lam(0.3, 0.1);
  EXPECT_LT(std::abs(ops::alpha(lam, eta) - std::exp(-pi * I * lam * lam / (4.0 * eta))),
            1e-14 * std::abs(ops::alpha(lam, eta)));
}

TEST(Qkzb, DeltaSolvesDiscreteForm) {
  const Truncation tr = Truncation::defaults();
  ops::QkzbOptions o;
  o.method = ops::QkzbMethod::discrete;
  o.m_range = 30;
  EXPECT_LT(ops::qkzb_residual(2, 5, cplx(0, 1.2), cplx(0, -0.02), {0.2, cplx(0.31, 0.07)}, tr, o), 1e-4);
  o.perturbation = 0.1;
  EXPECT_GT(ops::qkzb_residual(2, 5, cplx(0, 1.2), cplx(0, -0.02), {0.2, cplx(0.31, 0.07)}, tr, o), 1e-2);
}

TEST(Qkzb, TKappaMatchesTBar) {
  const Truncation tr = Truncation::defaults();
  const int kappa = 5;
  const cplx tau(0, 1.2), eta(0, -0.02);
  const hts::HtsEvaluator h(kappa, tau - 2.0 * eta * static_cast<double>(kappa), eta, tr);
  const ops::Fn f = [&](cplx x) { return h.delta(2, x).value; };
  const cplx a = ops::apply_T_kappa(f, kappa, tau, eta, 0.2, tr).value;
  const cplx b = ops::apply_T_bar(f, kappa, tau, eta, 0.2, ops::ShiftGrid{40}, tr).value;
  EXPECT_LT(std::abs(a - b), 1e-8 * (1.0 + std::abs(b)));
}
