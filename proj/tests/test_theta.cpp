#include <gtest/gtest.h>

#include "theta/theta.hpp"

using namespace et;

namespace {

// theta(lam, tau) = theta_1(pi lam | e^{pi i tau}), Jacobi triple product
cplx theta1_product(cplx lam, cplx tau) {
  const cplx q = std::exp(I * pi * tau);
  const cplx z = pi * lam;
  cplx p = 2.0 * std::pow(q, 0.25) * std::sin(z);
  cplx qn = q * q;
  for (int n = 1; n < 200; ++n) {
    p *= (1.0 - qn) * (1.0 - 2.0 * qn * std::cos(2.0 * z) + qn * qn);
    qn *= q * q;
  }
  return p;
}

// direct sum over n in Z + j/2kappa
cplx theta_jk_naive(int j, int kappa, cplx lam, cplx tau) {
  cplx s = 0.0;
  for (int m = -60; m <= 60; ++m) {
    const double n = m + static_cast<double>(j) / (2.0 * kappa);
    s += std::exp(2.0 * pi * I * static_cast<double>(kappa) * (n * n * tau + n * lam));
  }
  return s;
}

const Truncation tr = Truncation::defaults();

}  // namespace

TEST(Theta, MatchesTripleProduct) {
  for (cplx tau : {cplx(0, 1), cplx(0.3, 0.8), cplx(-0.2, 0.5)})
    for (cplx lam : {cplx(0.1), cplx(0.37, 0.2), cplx(-0.6, -0.15)}) {
      const cplx a = theta::jacobi_theta(lam, tau, tr).value, b = theta1_product(lam, tau);
      EXPECT_LT(std::abs(a - b), 1e-13 * (1.0 + std::abs(b))) << lam << " " << tau;
    }
}

TEST(Theta, DerivativeAtZero) {
  // theta'(0) = 2 pi q^{1/4} prod (1 - q^{2n})^3
  const cplx tau(0.1, 0.9), q = std::exp(I * pi * tau);
  cplx p = 2.0 * pi * std::pow(q, 0.25);
  for (int n = 1; n < 100; ++n) p *= std::pow(1.0 - std::pow(q, 2 * n), 3);
  EXPECT_LT(std::abs(theta::jacobi_theta_dlam(0.0, tau, tr).value - p), 1e-12 * std::abs(p));
}

TEST(Theta, QuasiPeriodicity) {
  const cplx tau(0.2, 0.7), lam(0.31, 0.1);
  const cplx t = theta::theta(lam, tau);
  EXPECT_LT(std::abs(theta::theta(lam + 1.0, tau) + t), 1e-13);
  const cplx shifted = theta::theta(lam + tau, tau);
  EXPECT_LT(std::abs(shifted + std::exp(-I * pi * (tau + 2.0 * lam)) * t), 1e-12);
}

TEST(Theta, RejectsLowerHalfPlane) {
  try {
    theta::jacobi_theta(0.1, cplx(0, -1), tr);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::domain);
  }
}

TEST(ThetaBasis, MatchesNaiveSum) {
  const cplx tau(0.15, 0.85), lam(0.23, -0.07);
  for (int k = 1; k <= 6; ++k)
    for (int j = 0; j < 2 * k; ++j) {
      const cplx a = theta::theta_basis_value(j, k, lam, tau), b = theta_jk_naive(j, k, lam, tau);
      EXPECT_LT(std::abs(a - b), 1e-13 * (1.0 + std::abs(b))) << j << "," << k;
    }
}

TEST(ThetaBasis, IndexReducedMod2Kappa) {
  const theta::ThetaLevelIndex a(-1, 4), b(7, 4);
  EXPECT_EQ(a.j, 7);
  EXPECT_EQ(b.j, 7);
}

TEST(ThetaBasis, LevelTwoRelation) {
  const cplx tau(0, 1.1);
  for (cplx lam : {cplx(0.2), cplx(0.41, 0.13)}) {
    const cplx rhs = I * (theta::theta_basis_value(-1, 2, lam, tau) - theta::theta_basis_value(1, 2, lam, tau));
    EXPECT_LT(std::abs(theta::theta(lam, tau) - rhs), 1e-13);
  }
}

TEST(ThetaBasis, Dimensions) {
  std::vector<cplx> pts;
  for (int i = 0; i < 14; ++i) pts.push_back(cplx(0.07 * i + 0.03, 0.05 * std::sin(i) + 0.02 * i));
  const cplx tau(0.1, 0.9);
  for (int k = 1; k <= 6; ++k) {
    EXPECT_EQ(theta::theta_space_rank(k, tau, 0, pts), 2 * k);
    EXPECT_EQ(theta::theta_space_rank(k, tau, 1, pts), k + 1);
    EXPECT_EQ(theta::theta_space_rank(k, tau, -1, pts), k - 1);
  }
}

TEST(LevelResidual, DetectsWrongLevel) {
  const cplx tau(0, 0.9);
  const std::vector<cplx> pts = {0.1, cplx(0.3, 0.1)};
  auto f = [&](cplx l) { return theta::theta_basis_value(1, 3, l, tau); };
  EXPECT_LT(theta::level_residual(f, 3, tau, pts, 2), 1e-9);
  EXPECT_GT(theta::level_residual(f, 4, tau, pts, 2), 1e-3);
}

TEST(Theta0, SumAndDivergence) {
  const cplx q(1.7, 0.2), x(0.8, 0.3);
  cplx s = 0.0;
  for (int m = -80; m <= 80; ++m) s += std::pow(x, m) * std::pow(q, -0.5 * m * m);
  EXPECT_LT(std::abs(theta::theta0(x, q, tr).value - s), 1e-13 * std::abs(s));
  EXPECT_THROW(theta::theta0(x, 0.9, tr), Error);
}
