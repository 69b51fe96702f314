#include <gtest/gtest.h>

#include "limits/limits.hpp"
#include "theta/theta.hpp"

using namespace et;

TEST(ConformalBlock, EvenInLambda) {
  const cplx tau(0, 1.1);
  const cplx a = limits::conformal_block(2, 5, 0.23, tau).value;
  EXPECT_LT(std::abs(limits::conformal_block(2, 5, -0.23, tau).value - a), 1e-10 * std::abs(a));
}

TEST(ConformalBlock, LogThetaContinuous) {
  // exp of the continued log reproduces theta/theta'(0)
  const cplx tau(0, 1.1);
  const cplx d = theta::theta_dlam(0.0, tau);
  for (double t : {0.01, 0.5, 0.99}) {
    const cplx v = std::exp(limits::log_theta_normalized(t, tau));
    EXPECT_LT(std::abs(v - theta::theta(t, tau) / d), 1e-12);
  }
}

TEST(Mehta, QSquaredReading) {
  const auto r = limits::mehta_check(1, cplx(0, -0.08), 0.3, Truncation::defaults());
  EXPECT_LT(r.corrected, 1e-8);
  EXPECT_GT(r.residual, 1e-2);
}

TEST(DiffEqn, ConvergentReading) {
  const auto r = limits::diff_eqn_check(2, mac::Rational(5, 3), 4, {cplx(0.7, 0.2)});
  EXPECT_LT(r.corrected_residual, 1e-10);
}

TEST(Orthogonality, MatchesGram) {
  const auto r = limits::orthogonality_check(2, 3, 5, cplx(0, 0.9), cplx(0, -0.05), Truncation::defaults());
  EXPECT_LT(std::abs(r.value), 1e-10);
  EXPECT_LT(r.cross_check, 1e-8);
}

TEST(ClassicalLimit, RatiosSettle) {
  const auto r = limits::classical_limit_check(2, 5, 0.23, cplx(0, 1.1), {cplx(0, -0.02), cplx(0, -0.01), cplx(0, -0.005)},
                                               Truncation::defaults());
  ASSERT_EQ(r.ratio_values.size(), 3u);
  EXPECT_LT(std::abs(r.ratio_values[2] - r.ratio_values[1]), std::abs(r.ratio_values[1] - r.ratio_values[0]));
}
