#pragma once

#include <string>
#include <vector>

#include "macdonald/laurent.hpp"
#include "operators/cherednik.hpp"

namespace et::limits {

// log(theta(t, tau) / theta'(0, tau)), continuous in t along (0, 1).
cplx log_theta_normalized(cplx t, cplx tau);

struct ConformalBlockOptions {
  int half_points = 160;
  double step = 0.0;  // 0: 6.5 / half_points
};

// N(lambda) = int_0^1 (theta(t)/theta'(0))^{-1-2/kappa} [f(t, lambda) - counterterm] dt
EvalResult conformal_block_half(int l, int kappa, cplx lam, cplx tau,
                                const ConformalBlockOptions& opt = {});
// v = (N(lambda) - N(-lambda)) / theta(lambda)
EvalResult conformal_block(int l, int kappa, cplx lam, cplx tau,
                           const ConformalBlockOptions& opt = {});
// Regularized integrand at a single t (finite as t -> 0+ and t -> 1-).
cplx conformal_block_integrand(int l, int kappa, cplx lam, cplx tau, double t, double tc);

// The constant in front of v in the eta -> 0 limit.
cplx classical_limit_constant(int l, int kappa, cplx tau);

struct LimitReport {
  std::vector<cplx> parameter_sequence;
  std::vector<cplx> ratio_values;
  cplx extrapolated_limit;
  double convergence_order_estimate = 0.0;
};

// ratio of 2 eta Delta(lambda)/theta(lambda) to constant * v at each eta
LimitReport classical_limit_check(int l, int kappa, cplx lam, cplx tau,
                                  const std::vector<cplx>& etas, const Truncation& tr);

struct MehtaResult {
  cplx lhs;           // q^{-(j+2)^2/2} P_j(e^{pi i lambda})
  cplx integral;      // int_{eta R} V(lambda, mu) P_j(e^{-i pi mu}) dmu
  double residual;    // |lhs - integral| / |lhs|
  double corrected;   // |q^{-2} lhs - integral| / |q^{-2} lhs|
  double err_estimate;
  double radius;
};

MehtaResult mehta_check(int j, cplx eta, cplx lam, const Truncation& tr);

struct DiffEqnTerm {
  int m;
  bool exact;  // paired contribution equals the expected multiple of P_j
};

struct DiffEqnReport {
  std::vector<DiffEqnTerm> terms;
  bool all_exact = true;
  double literal_residual;    // truncated sums, weight q^{-m^2/2}, |q| > 1
  double corrected_residual;  // weight q^{m^2/2} at 1/q, eigenvalue -2 q^-2 sum q^{(j+2)m} q^{m^2/2}
};

DiffEqnReport diff_eqn_check(int j, const mac::Rational& q, int m_range,
                             const std::vector<cplx>& x_samples);

struct OrthogonalityResult {
  cplx value;          // (1/32 pi^2 eta) * 2 * constant Fourier coefficient
  cplx expected;       // delta_{lj} e^{pi i (4 eta + tau) j^2 / 2 kappa}
  cplx gram_scaled;    // the inversion-relation Gram entry times the normalization factors
  double residual;     // |value - expected|
  double cross_check;  // |value - gram_scaled| / max(|gram_scaled|, 1e-300 + |expected|)
  double refinement;   // |value(N) - value(2N)|
};

OrthogonalityResult orthogonality_check(int l, int j, int kappa, cplx tau, cplx eta,
                                        const Truncation& tr, int samples = 256);

struct TrigUCheck {
  double literal;    // max relative deviation of the printed closed form
  double corrected;  // same for -q^2 times it
  double semi;       // tau -> i infinity limit of u(lambda, 2 eta l, tau, -2 eta kappa, eta)
};

// u_hyper at tau = sigma = tau_big against the trigonometric closed forms.
TrigUCheck trig_u_check(cplx eta, double tau_big, int kappa, int l, const Truncation& tr);

}  // namespace et::limits
