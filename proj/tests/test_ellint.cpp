#include <gtest/gtest.h>

#include "core/quadrature.hpp"
#include "ellint/ellint.hpp"

using namespace et;

namespace {

const Truncation tr = Truncation::defaults();

cplx theta1_product(cplx lam, cplx tau) {
  const cplx q = std::exp(I * pi * tau), z = pi * lam;
  cplx p = 2.0 * std::pow(q, 0.25) * std::sin(z);
  for (int n = 1; n < 200; ++n) {
    const cplx qn = std::pow(q, 2 * n);
    p *= (1.0 - qn) * (1.0 - 2.0 * qn * std::cos(2.0 * z) + qn * qn);
  }
  return p;
}

// prod_k (1 - x p^k)(1 - p^{k+1}/x)
cplx theta0_product(cplx x, cplx p) {
  cplx r = 1.0;
  for (int k = 0; k < 400; ++k) r *= (1.0 - x * std::pow(p, k)) * (1.0 - std::pow(p, k + 1) / x);
  return r;
}

cplx omega_naive(cplx t, cplx tau, cplx sigma, cplx eta, int N) {
  const cplx A = e2pi(t - 2.0 * eta), C = e2pi(t + 2.0 * eta);
  const cplx B = e2pi(-t - 2.0 * eta + tau + sigma), D = e2pi(-t + 2.0 * eta + tau + sigma);
  cplx r = 1.0;
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < N; ++k) {
      const cplx z = e2pi(static_cast<double>(j) * tau + static_cast<double>(k) * sigma);
      r *= (1.0 - A * z) * (1.0 - B * z) / ((1.0 - C * z) * (1.0 - D * z));
    }
  return r;
}

}  // namespace

TEST(Omega, NaiveProduct) {
  const cplx tau(0.1, 0.9), sigma(-0.2, 1.1), eta(0, -0.04), t(0.3, 0.2);
  const cplx a = ellint::omega(t, tau, sigma, eta, tr).value, b = omega_naive(t, tau, sigma, eta, 60);
  EXPECT_LT(std::abs(a - b), 1e-12 * std::abs(b));
}

TEST(Omega, TauShiftIsThetaRatio) {
  // Omega(t + tau)/Omega(t) = theta0(e(t+2eta); p)/theta0(e(t-2eta); p), p = e(sigma)
  const cplx tau(0.1, 0.9), sigma(-0.2, 1.1), eta(0, -0.04), t(0.27, 0.05);
  const cplx lhs = ellint::omega_value(t + tau, tau, sigma, eta) / ellint::omega_value(t, tau, sigma, eta);
  const cplx p = e2pi(sigma);
  const cplx rhs = theta0_product(e2pi(t + 2.0 * eta), p) / theta0_product(e2pi(t - 2.0 * eta), p);
  EXPECT_LT(std::abs(lhs - rhs), 1e-11 * std::abs(rhs));
}

TEST(QWeight, TripleProductOracle) {
  const cplx sigma(0.2, 0.6), eta(0, -0.05);
  // theta'(0) = 2 pi q^{1/4} prod (1 - q^{2n})^3 with q = e^{pi i sigma}
  const cplx q = std::exp(I * pi * sigma);
  cplx d = 2.0 * pi * std::pow(q, 0.25);
  for (int n = 1; n < 200; ++n) d *= std::pow(1.0 - std::pow(q, 2 * n), 3);
  for (cplx mu : {cplx(0.3), cplx(-0.21, 0.1)}) {
    const cplx expect = theta1_product(4.0 * eta, sigma) * d /
                        (theta1_product(mu - 2.0 * eta, sigma) * theta1_product(mu + 2.0 * eta, sigma));
    EXPECT_LT(std::abs(ellint::q_weight(mu, sigma, eta, tr).value - expect), 1e-11 * std::abs(expect));
  }
}

TEST(QWeight, PoleRaises) {
  const cplx sigma(0, 0.6), eta(0, -0.05);
  try {
    ellint::q_weight(2.0 * eta, sigma, eta, tr);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::pole);
  }
}

TEST(Quadrature, SegmentPolynomialExact) {
  const auto r = integrate_contour([](cplx z) { return z * z * z; }, Segment{0.0, cplx(1, 1)}, tr);
  EXPECT_LT(std::abs(r.value - std::pow(cplx(1, 1), 4) / 4.0), 1e-14);
}

TEST(Quadrature, EtaLineGaussian) {
  // t = eta x turns e^{-pi i t^2/eta} into e^{-pi (i eta) x^2}
  const cplx eta(0, -0.05);
  const auto r =
      integrate_contour([&](cplx t) { return std::exp(-I * pi * t * t / eta); }, EtaLine{eta, 30.0}, tr);
  EXPECT_LT(std::abs(r.value - eta / std::sqrt(I * eta)), 1e-12);
}

TEST(UHyper, SymmetryAndContourIndependence) {
  const cplx tau(0, 0.9), sigma(0, 1.1), eta(0, -0.04), lam(0.13, 0.02), mu(-0.21, 0.05);
  const cplx a = ellint::u_hyper({lam, mu, tau, sigma, eta}, tr).value;
  const cplx b = ellint::u_hyper({mu, lam, sigma, tau, eta}, tr).value;
  EXPECT_LT(std::abs(a - b), 1e-9 * std::abs(a));
  ellint::ContourOptions o;
  o.gap_rank = 1;
  const cplx c = ellint::u_hyper({lam, mu, tau, sigma, eta}, tr, o).value;
  EXPECT_LT(std::abs(a - c), 1e-9 * std::abs(a));
}

TEST(UHyper, ApproachesTrigonometricLimit) {
  const cplx eta(0, -0.05), lam(0.17), mu(0.29, 0.03);
  const cplx big = ellint::u_hyper({lam, mu, cplx(0, 30), cplx(0, 30), eta}, tr).value;
  const cplx trig = ellint::u_trig_degenerate_corrected(lam, mu, eta).value;
  EXPECT_LT(std::abs(big - trig), 1e-6 * std::abs(trig));
}

TEST(PinchDistance, OnHyperplaneIsZero) {
  const cplx tau(0, 0.9), eta(0, -0.05);
  // 4 eta + sigma = 0
  EXPECT_LT(ellint::pole_pinch_distance(tau, -4.0 * eta, eta, 3), 1e-14);
  EXPECT_GT(ellint::pole_pinch_distance(tau, cplx(0.31, 1.07), eta, 3), 1e-3);
}
