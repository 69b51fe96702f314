#include <gtest/gtest.h>

#include "macdonald/macdonald.hpp"
#include "operators/cherednik.hpp"

using namespace et;
using mac::LaurentPoly;
using mac::Rational;

namespace {

// (a; Q)_n
Rational poch(const Rational& a, const Rational& Q, int n) {
  Rational r = 1;
  Rational qk = 1;
  for (int k = 0; k < n; ++k) {
    r *= Rational(1 - a * qk);
    qk *= Q;
  }
  return r;
}

// Rogers (continuous q-ultraspherical) polynomial in base Q = q^2 with T = Q^2,
// monic: sum_k (T;Q)_k (T;Q)_{n-k} / ((Q;Q)_k (Q;Q)_{n-k}) * (Q;Q)_n/(T;Q)_n x^{n-2k}
LaurentPoly rogers(int n, const Rational& q) {
  const Rational Q = q * q;
  const Rational T = Q * Q;
  const Rational norm = poch(Q, Q, n) / poch(T, Q, n);
  LaurentPoly P;
  for (int k = 0; k <= n; ++k) {
    const Rational c = poch(T, Q, k) * poch(T, Q, n - k) / (poch(Q, Q, k) * poch(Q, Q, n - k)) * norm;
    P += LaurentPoly::monomial(n - 2 * k, c);
  }
  return P;
}

}  // namespace

TEST(MacdonaldM2, RogersOracle) {
  for (const Rational q : {Rational(5, 3), Rational(7, 4), Rational(2, 7)})
    for (int j = 0; j <= 6; ++j) EXPECT_EQ(mac::macdonald_m2(j, q), rogers(j, q)) << j << " q=" << q.get_str();
}

TEST(MacdonaldM2, KnownCoefficient) {
  const LaurentPoly P = mac::macdonald_m2(2, Rational(7, 4));
  EXPECT_EQ(P.coeff(0), Rational(4225, 3441));
}

TEST(MacdonaldGeneral, GramSchmidtMatchesClosedForm) {
  const Rational q(5, 3);
  const auto Ps = mac::macdonald_general_all(2, 5, q);
  for (int j = 0; j <= 5; ++j) EXPECT_EQ(Ps[j], mac::macdonald_m2(j, q));
}

TEST(MacdonaldGeneral, OrthogonalForOtherM) {
  const Rational q(3, 2);
  for (int m : {0, 1, 3}) {
    const auto Ps = mac::macdonald_general_all(m, 4, q);
    for (int a = 0; a <= 4; ++a)
      for (int b = 0; b < a; ++b) EXPECT_EQ(mac::ct_inner_product(Ps[a], Ps[b], m, q), 0) << m;
  }
}

TEST(MacdonaldGeneral, MZeroIsChebyshev) {
  // weight 1: P_j = x^j + x^-j for j >= 1
  const auto Ps = mac::macdonald_general_all(0, 4, Rational(5, 3));
  for (int j = 1; j <= 4; ++j) EXPECT_EQ(Ps[j], LaurentPoly::monomial(j) + LaurentPoly::monomial(-j));
}

TEST(MacdonaldM2, NumericValueMatchesExact) {
  const Rational q(7, 4);
  const cplx x(0.6, 0.8);
  for (int j = 0; j <= 4; ++j) {
    const cplx a = mac::macdonald_m2_value(j, x, mac::to_double(q));
    const cplx b = mac::macdonald_m2(j, q).eval(x);
    EXPECT_LT(std::abs(a - b), 1e-12 * (1.0 + std::abs(b)));
  }
}

TEST(Laurent, ExactDivision) {
  const LaurentPoly a = LaurentPoly::monomial(2) - LaurentPoly(1);
  const LaurentPoly b = LaurentPoly::monomial(1) + LaurentPoly(1);
  LaurentPoly quot;
  EXPECT_TRUE((a * b).divides_into(b, &quot));
  EXPECT_EQ(quot, a);
  EXPECT_FALSE(a.divides_into(LaurentPoly::monomial(1) + LaurentPoly(2), &quot));
}

TEST(Laurent, ParseRational) {
  EXPECT_EQ(mac::parse_rational("7/4"), Rational(7, 4));
  EXPECT_EQ(mac::parse_rational("-0.25"), Rational(-1, 4));
  EXPECT_THROW(mac::parse_rational("x"), Error);
}

TEST(EllipticMacdonald, EvenAndPeriodic) {
  const Truncation tr = Truncation::defaults();
  const cplx tau(0, 0.9), eta(0, -0.05);
  const mac::EllipticMacdonald E(5, tau, eta, tr), E1(5, tau + 1.0, eta + 1.0, tr);
  const cplx lam(0.13, 0.06);
  const cplx v = E.value_lambda(1, lam).value;
  EXPECT_LT(std::abs(E.value_lambda(1, -lam).value - v), 1e-9 * std::abs(v));
  EXPECT_LT(std::abs(E1.value_lambda(1, lam).value - v), 1e-9 * std::abs(v));
}

TEST(Laurent, ParseRationalLeadingZeros) {
  EXPECT_EQ(mac::parse_rational("010/08"), Rational(5, 4));
  EXPECT_EQ(mac::parse_rational("0.075"), Rational(3, 40));
}
