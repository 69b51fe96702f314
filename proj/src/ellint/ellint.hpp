#pragma once

#include <vector>

#include "core/quadrature.hpp"
#include "core/types.hpp"

namespace et::ellint {

struct UArgs {
  cplx lambda, mu, tau, sigma, eta;
};

// Omega_{2 eta}(t, tau, sigma); cutoffs grow with 1/Im tau, 1/Im sigma and
// never drop below trunc.product_cutoff when called through omega().
cplx omega_value(cplx t, cplx tau, cplx sigma, cplx eta);
EvalResult omega(cplx t, cplx tau, cplx sigma, cplx eta, const Truncation& tr);

// Q(mu, sigma, eta) = theta(4 eta) theta'(0) / (theta(mu-2eta) theta(mu+2eta))
cplx q_value(cplx mu, cplx sigma, cplx eta);
EvalResult q_weight(cplx mu, cplx sigma, cplx eta, const Truncation& tr);

// min |4 eta + l + m tau + n sigma| over |l| <= max_mn, 0 <= m,n <= max_mn
double pole_pinch_distance(cplx tau, cplx sigma, cplx eta, int max_mn);

// Which of the modular parameters are sent to i infinity.
struct Limit {
  bool tau_inf = false;
  bool sigma_inf = false;
};

struct ContourOptions {
  int gap_rank = 0;           // 0: widest pole-height gap, 1: second widest
  bool fixed_height = false;  // use `height` instead of a gap midpoint
  double height = 0.0;
};

// The line-plus-loops path separating t = 2eta + l + m tau + n sigma from
// t = -(2eta + l + m tau + n sigma), m,n >= 0.
LineWithLoops auto_contour(cplx tau, cplx sigma, cplx eta, Limit lim,
                           const ContourOptions& opt, double* min_dist = nullptr);

// Cached quadrature for the hypergeometric integral at fixed (tau,sigma,eta):
// weights[i] already include Omega / (theta(t-2eta,tau) theta(t-2eta,sigma)).
class UKernel {
 public:
  UKernel(cplx tau, cplx sigma, cplx eta, const Truncation& tr,
          Limit lim = {}, ContourOptions opt = {});

  cplx tau() const { return tau_; }
  cplx sigma() const { return sigma_; }
  cplx eta() const { return eta_; }
  const std::vector<cplx>& nodes() const { return t_; }
  const std::vector<cplx>& weights() const { return k_; }
  const LineWithLoops& contour() const { return contour_; }
  double rel_err() const { return rel_err_; }
  double min_pole_distance() const { return min_dist_; }
  bool converged() const { return converged_; }

  // theta(x + t_i, tau) (or sin pi(x+t_i) when tau is at infinity)
  std::vector<cplx> tau_side(cplx x) const;
  // theta(x + t_i, sigma) (or sin)
  std::vector<cplx> sigma_side(cplx x) const;

  // sum_i weights[i] * a[i] * b[i]
  cplx contract(const std::vector<cplx>& a, const std::vector<cplx>& b) const;
  double contract_abs(const std::vector<cplx>& a, const std::vector<cplx>& b) const;

  cplx u(cplx lam, cplx mu) const;
  EvalResult u_eval(cplx lam, cplx mu) const;
  // u(lam, mu) with the lambda-side values precomputed
  cplx u_with(cplx lam, const std::vector<cplx>& lam_side, cplx mu) const;

  template <class G>
  cplx integrate(G&& g) const {
    cplx s = 0.0;
    for (std::size_t i = 0; i < t_.size(); ++i) s += k_[i] * g(t_[i]);
    return s;
  }

 private:
  cplx tau_fn(cplx x) const;
  cplx sigma_fn(cplx x) const;
  cplx kernel_at(cplx t) const;
  void build_weights(const Rule& r, std::vector<cplx>& out) const;

  cplx tau_, sigma_, eta_;
  Limit lim_;
  LineWithLoops contour_;
  std::vector<cplx> t_, k_;
  double rel_err_ = 0.0;
  double min_dist_ = 0.0;
  bool converged_ = true;
};

EvalResult u_hyper(const UArgs& a, const Truncation& tr, ContourOptions opt = {});

// Closed form printed for the tau, sigma -> i infinity limit.
EvalResult u_trig_degenerate(cplx lam, cplx mu, cplx eta);
// The actual limit of u: -q^2 times the printed closed form.
EvalResult u_trig_degenerate_corrected(cplx lam, cplx mu, cplx eta);
// tau -> i infinity limit of u(lam, 2 eta l, tau, -2 eta kappa, eta).
EvalResult u_trig_semi(cplx lam, int l, int kappa, cplx eta, const Truncation& tr);

}  // namespace et::ellint
