#pragma once

#include <functional>
#include <vector>

#include "core/types.hpp"

namespace et::theta {

struct ModularParams {
  cplx tau;
  cplx eta;
  int kappa = 4;

  ModularParams() = default;
  ModularParams(cplx tau, cplx eta, int kappa);  // validates

  int im_eta_sign() const;
  int im_eta_over_tau_sign() const;
};

struct ThetaLevelIndex {
  int j = 0;
  int kappa = 1;
  ThetaLevelIndex(int j, int kappa);  // stores 0 <= j < 2 kappa
};

// Sum over n in Z + offset of n^deriv * exp(a n^2 + b n); requires Re a < 0.
// Summation starts at the Gaussian peak and runs outward far enough that
// the dropped terms are below 1e-18 of the peak.
cplx gauss_sum(cplx a, cplx b, double offset, int deriv = 0);

// Fast evaluators used inside quadrature kernels.
cplx theta(cplx lam, cplx tau);
cplx theta_dlam(cplx lam, cplx tau);
cplx theta_basis_value(int j, int kappa, cplx lam, cplx tau);

// Reporting evaluators (sum_Z_series with tail estimates).
EvalResult jacobi_theta(cplx lam, cplx tau, const Truncation& tr);
EvalResult jacobi_theta_dlam(cplx lam, cplx tau, const Truncation& tr);
EvalResult theta_basis(const ThetaLevelIndex& idx, cplx lam, cplx tau,
                       const Truncation& tr);

// theta0(x,q) = sum x^m q^{-m^2/2}; convergent only for |q| > 1.
// q^{-m^2/2} uses the principal logarithm of q.
EvalResult theta0(cplx x, cplx q, const Truncation& tr);

using Fn = std::function<cplx(cplx)>;

// max |f(l+2r+2s tau) e^{2 pi i kappa(s^2 tau + s l)} - f(l)| / (1+|f(l)|)
double level_residual(const Fn& f, int kappa, cplx tau,
                      const std::vector<cplx>& samples, int rs_range);

struct EKappaParts {
  double level = 0.0;
  double oddness = 0.0;
  double vanishing = 0.0;
  double total() const;
};

// Membership residual for E_kappa(tau, eta): level kappa+2, oddness and
// vanishing at 2 eta j + r + s tau (j = -1,0,1; |r|,|s| <= 1).  Parts (b)
// and (c) are divided by 1 + max |f| over the samples.
EKappaParts e_kappa_parts(const Fn& f, const ModularParams& p,
                          const std::vector<cplx>& samples);
double e_kappa_residual(const Fn& f, const ModularParams& p,
                        const std::vector<cplx>& samples);

}  // namespace et::theta

namespace et::theta {

// Numerical rank of the functions sampled at the given points: singular
// values above rel_tol * max(largest, abs_floor) count.
int numerical_rank(const std::vector<Fn>& fs, const std::vector<cplx>& samples,
                   double rel_tol = 1e-9, double abs_floor = 0.0);

// Rank of {theta_{j,kappa}}, of their even parts (parity = +1) or odd parts (-1).
int theta_space_rank(int kappa, cplx tau, int parity, const std::vector<cplx>& samples);

}  // namespace et::theta
