#include <gtest/gtest.h>

#include "modular/modular.hpp"

using namespace et;
using namespace et::modular;

TEST(Psi, Polynomial) {
  const cplx t(0.2, 0.9), p(-0.1, 0.3), e(0, -0.05);
  const cplx expect = 2.0 * ((t + p) * (t + p) + t * p + 3.0 * (t - p) + 8.0 * e * e + 1.0);
  EXPECT_LT(std::abs(psi(t, p, e) - expect), 1e-14 * std::abs(expect));
}

TEST(SqrtPos, PositiveRealPart) {
  for (cplx z : {cplx(-4.0, 1e-3), cplx(0.0, -2.0), cplx(3.0, 4.0)}) {
    const cplx r = sqrt_pos(z);
    EXPECT_GE(r.real(), 0.0);
    EXPECT_LT(std::abs(r * r - z), 1e-14 * std::abs(z));
  }
}

TEST(Transforms, ABOnDelta) {
  DeltaFamily fam(5, Truncation::defaults());
  const cplx tau(0, 0.9), eta(0, -0.04), lam(0.2);
  for (int l : {2, 3}) {
    const cplx d = fam.delta(l, lam, tau, eta);
    EXPECT_LT(std::abs(transform(Op::A, fam.field(l), 5)(lam, tau, eta) - ((l + 1) % 2 ? -d : d)), 1e-6 * std::abs(d));
    const cplx b = fam.delta(l + 5, lam, tau, eta);
    EXPECT_LT(std::abs(transform(Op::B, fam.field(l), 5)(lam, tau, eta) - b), 1e-6 * std::abs(b));
  }
}

TEST(Transforms, TShift) {
  DeltaFamily fam(5, Truncation::defaults());
  EXPECT_LT(check_T_shift(2, fam, cplx(0, 0.9), cplx(0, -0.04), {0.2, cplx(0.1, 0.05)}), 1e-10);
}

TEST(SMatrix, MinusFormHolds) {
  DeltaFamily fam(5, Truncation::defaults());
  EXPECT_LT(check_S_transform(SForm::minus, 2, fam, cplx(0.4, 1.1), cplx(0, -0.05), {0.2}), 1e-3);
}

TEST(SMatrix, RegimeChecked) {
  try {
    S_minus_matrix(5, cplx(-0.4, 1.1), cplx(0, -0.05), Truncation::defaults());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::domain);
  }
}

TEST(Relations, ElementaryOnes) {
  DeltaFamily fam(5, Truncation::defaults());
  int seen = 0;
  for (const auto& r : group_relations(fam, cplx(0.3, 1.2), cplx(0, -0.04), {0.21}, {2, 3}))
    if (r.name == "A^2 = 1" || r.name == "AT = TA" || r.name == "AB = (-1)^kappa BA") {
      ++seen;
      ASSERT_TRUE(r.evaluated) << r.name;
      EXPECT_LT(r.residual, 1e-6) << r.name;
    }
  EXPECT_EQ(seen, 3);
}
