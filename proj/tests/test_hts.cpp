#include <gtest/gtest.h>

#include "hts/hts.hpp"
#include "theta/theta.hpp"

using namespace et;

namespace {

const Truncation tr = Truncation::defaults();
const cplx tau(0, 0.9), eta(0, -0.05);

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace

TEST(Admissible, Rule) {
  for (int k = 4; k <= 8; ++k)
    for (int l = -10; l <= 10; ++l) {
      const int r = ((l % k) + k) % k;
      EXPECT_EQ(hts::is_admissible(l, k), r != 1 && r != k - 1) << l << " " << k;
    }
}

TEST(Hts, RejectsUpperHalfEta) {
  try {
    hts::HtsEvaluator h(5, tau, -eta, tr);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::domain);
  }
}

TEST(Hts, SeriesIntegralRegularizedAgree) {
  const hts::HtsEvaluator h(5, tau, eta, tr);
  for (int l : {2, 3})
    for (cplx lam : {cplx(0.17), cplx(-0.29, 0.08)}) {
      const cplx s = h.delta_tilde(l, lam, hts::Method::series).value;
      EXPECT_LT(rel(s, h.delta_tilde(l, lam, hts::Method::integral).value), 1e-6);
      EXPECT_LT(rel(s, h.delta_tilde(l, lam, hts::Method::regularized).value), 1e-6);
    }
}

TEST(Hts, DeltaIsOdd) {
  const hts::HtsEvaluator h(5, tau, eta, tr);
  const cplx lam(0.21, 0.04);
  const cplx d = h.delta(2, lam).value;
  EXPECT_LT(std::abs(h.delta(2, -lam).value + d), 1e-10 * std::abs(d));
}

TEST(Hts, DeltaLevel) {
  const hts::HtsEvaluator h(5, tau, eta, tr);
  auto f = [&](cplx x) { return h.delta(3, x).value; };
  EXPECT_LT(theta::e_kappa_residual(f, theta::ModularParams(tau, eta, 5), {0.17, cplx(0.3, -0.05)}), 1e-6);
}

TEST(Hts, InadmissibleIndexRaises) {
  const hts::HtsEvaluator h(5, tau, eta, tr);
  try {
    h.delta(4, 0.1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::argument);
  }
}

TEST(Gram, DiagonalPhaseWithMinusQuarterEtaFactor) {
  const hts::HtsEvaluator h(5, tau, eta, tr);
  const hts::GramEvaluator g(h);
  for (int l : {2, 3})
    for (int j : {2, 3}) {
      const cplx v = -4.0 * eta * g.entry(l, j).value;
      const cplx phase = std::exp(pi * I * (4.0 * eta + tau) * static_cast<double>(j * j) / 10.0);
      EXPECT_LT(std::abs(v - (l == j ? phase : cplx(0.0))), 1e-6) << l << "," << j;
    }
}
