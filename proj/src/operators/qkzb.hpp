#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "ellint/ellint.hpp"
#include "hts/hts.hpp"

namespace et::ops {

using Fn = std::function<cplx(cplx)>;

// alpha(lambda, eta) = exp(-pi i lambda^2 / 4 eta)
cplx alpha(cplx lam, cplx eta);

// Quadratic coefficient of the Gaussian envelope of the U-integrand along
// mu = eta x; must be negative.
double envelope_coefficient(cplx tau, cplx sigma, cplx eta);
// Radius where the envelope drops below tol_abs * 1e-2, plus 25%.
double envelope_radius(cplx tau, cplx sigma, cplx eta, const Truncation& tr);

// v -> int_{eta R} u(lambda, mu, tau, sigma, eta) Q(mu, sigma, eta) v(-mu) dmu
// with mu = offset + eta x, |x| <= radius. Q has poles at mu = +-2 eta on eta R
// itself; a real offset steps around them (harmless when v vanishes there).
// Node tables are built once; apply() only needs the values of v at -mu.
class LineOperator {
 public:
  static constexpr double default_offset = -0.25;
  LineOperator(cplx tau, cplx sigma, cplx eta, const Truncation& tr, double radius = 0.0,
               double offset = default_offset);

  double radius() const { return radius_; }
  double offset() const { return offset_; }
  const ellint::UKernel& kernel() const { return *kernel_; }
  // all mu nodes (coarse rule first, then fine rule)
  const std::vector<cplx>& nodes() const { return mu_; }

  // g(lambda) = value of v(-mu) at every node of nodes()
  EvalResult apply_values(cplx lam, const std::vector<cplx>& v_at_minus_mu) const;
  EvalResult apply(const Fn& v, cplx lam) const;

 private:
  std::unique_ptr<ellint::UKernel> kernel_;
  cplx eta_;
  double radius_, offset_;
  std::size_t n_coarse_ = 0;
  std::vector<cplx> mu_, w_;                   // w includes eta dx and Q(mu)
  std::vector<std::vector<cplx>> sigma_side_;  // theta(mu_k + t_i, sigma)
};

EvalResult apply_U(const Fn& v, cplx tau, cplx sigma, cplx eta, cplx lam, const Truncation& tr,
                   double offset = LineOperator::default_offset);

// T_kappa(tau, eta) acting on functions of E_kappa(tau - 2 eta kappa, eta).
class TKappa {
 public:
  TKappa(int kappa, cplx tau, cplx eta, const Truncation& tr);
  cplx prefactor() const { return pref_; }
  const LineOperator& line() const { return *line_; }
  // f evaluated at the points -mu of line().nodes() (pass f itself to apply)
  EvalResult apply_values(cplx lam, const std::vector<cplx>& f_at_minus_mu) const;
  EvalResult apply(const Fn& f, cplx lam) const;
  std::vector<cplx> sample(const Fn& f) const;

 private:
  cplx eta_, pref_;
  std::unique_ptr<LineOperator> line_;
};

EvalResult apply_T_kappa(const Fn& f, int kappa, cplx tau, cplx eta, cplx lam, const Truncation& tr);

struct ShiftGrid {
  int m_range = 40;
};

// Discrete version: C alpha(lambda) sum_m u(lambda, -lambda + 2 eta m) Q(...) alpha f(lambda - 2 eta m)
class TBar {
 public:
  TBar(int kappa, cplx tau, cplx eta, const Truncation& tr, ShiftGrid grid = {});
  cplx normalization() const { return C_; }
  EvalResult apply(const Fn& f, cplx lam) const;

 private:
  cplx tau_, sigma_, eta_, C_;
  Truncation tr_;
  ShiftGrid grid_;
  std::unique_ptr<ellint::UKernel> kernel_;
};

EvalResult apply_T_bar(const Fn& f, int kappa, cplx tau, cplx eta, cplx lam, ShiftGrid grid,
                       const Truncation& tr);

enum class QkzbMethod { integral, discrete };

struct QkzbOptions {
  QkzbMethod method = QkzbMethod::integral;
  bool tilde = false;          // use Delta~ instead of Delta
  double perturbation = 0.0;   // adds this multiple of theta_{0,kappa+2} to the input
  int m_range = 40;
};

// max over lambda of |T Delta(lambda, tau - 2 eta kappa) - Delta(lambda, tau)| / (1 + |Delta(lambda, tau)|)
double qkzb_residual(int l, int kappa, cplx tau, cplx eta, const std::vector<cplx>& lams,
                     const Truncation& tr, const QkzbOptions& opt = {});

}  // namespace et::ops
