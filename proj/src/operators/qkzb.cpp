#include "operators/qkzb.hpp"

#include <cmath>

#include "core/quadrature.hpp"
#include "theta/theta.hpp"

namespace et::ops {

cplx alpha(cplx lam, cplx eta) { return std::exp(-pi * I * lam * lam / (4.0 * eta)); }

double envelope_coefficient(cplx tau, cplx sigma, cplx eta) {
  return pi / 4.0 * eta.imag() * (tau.imag() - 4.0 * eta.imag()) / sigma.imag();
}

double envelope_radius(cplx tau, cplx sigma, cplx eta, const Truncation& tr) {
  if (tr.line_radius > 0) return tr.line_radius;
  const double a = envelope_coefficient(tau, sigma, eta);
  if (!(a < 0))
    throw Error(Errc::divergence, "integrand along eta R does not decay (envelope coefficient >= 0)");
  return 1.25 * std::sqrt(std::log(tr.tol_abs * 1e-2) / a);
}

LineOperator::LineOperator(cplx tau, cplx sigma, cplx eta, const Truncation& tr, double radius,
                           double offset)
    : kernel_(std::make_unique<ellint::UKernel>(tau, sigma, eta, tr)), eta_(eta), offset_(offset) {
  radius_ = radius > 0 ? radius : envelope_radius(tau, sigma, eta, tr);
  const int panels = std::max(4, static_cast<int>(std::ceil(2.0 * radius_ / 4.0)));
  const Rule coarse = segment_rule(-radius_, radius_, panels);
  const Rule fine = segment_rule(-radius_, radius_, 2 * panels);
  n_coarse_ = coarse.size();
  for (const Rule* r : {&coarse, &fine})
    for (std::size_t i = 0; i < r->size(); ++i) {
      const cplx mu = offset + eta * r->t[i];
      mu_.push_back(mu);
      w_.push_back(eta * r->w[i] * ellint::q_weight(mu, sigma, eta, tr).value);
    }
  sigma_side_.reserve(mu_.size());
  for (const cplx mu : mu_) sigma_side_.push_back(kernel_->sigma_side(mu));
}

EvalResult LineOperator::apply_values(cplx lam, const std::vector<cplx>& v) const {
  if (v.size() != mu_.size()) throw Error(Errc::argument, "value table has the wrong length");
  const std::vector<cplx> a = kernel_->tau_side(lam);
  cplx s[2] = {0.0, 0.0};
  for (std::size_t k = 0; k < mu_.size(); ++k) {
    if (v[k] == cplx(0.0)) continue;
    const cplx u = std::exp(-pi * I * lam * mu_[k] / (2.0 * eta_)) *
                   kernel_->contract(a, sigma_side_[k]);
    s[k < n_coarse_ ? 0 : 1] += w_[k] * u * v[k];
  }
  EvalResult r;
  r.value = s[1];
  r.err_estimate = std::abs(s[1] - s[0]);
  r.terms_used = static_cast<int>(mu_.size());
  r.min_pole_distance = kernel_->min_pole_distance();
  r.converged = kernel_->converged();
  return r;
}

EvalResult LineOperator::apply(const Fn& v, cplx lam) const {
  std::vector<cplx> vals(mu_.size());
  for (std::size_t k = 0; k < mu_.size(); ++k) vals[k] = v(-mu_[k]);
  return apply_values(lam, vals);
}

EvalResult apply_U(const Fn& v, cplx tau, cplx sigma, cplx eta, cplx lam, const Truncation& tr,
                   double offset) {
  return LineOperator(tau, sigma, eta, tr, 0.0, offset).apply(v, lam);
}

namespace {

void require_regime(cplx tau, cplx eta) {
  if (!(tau.imag() > 0)) throw Error(Errc::domain, "Im tau must be positive");
  if (!(eta.imag() < 0)) throw Error(Errc::domain, "heat operators need Im eta < 0");
  const int J = hts::hypothesis_check_range(tau, eta);
  for (int j = 1; j <= J; ++j) {
    const cplx z = static_cast<double>(j) * tau + 4.0 * eta;
    if (std::abs(z - std::round(z.real())) < 1e-12)
      throw Error(Errc::domain, "j tau + 4 eta is an integer for j = " + std::to_string(j));
  }
}

}  // namespace

TKappa::TKappa(int kappa, cplx tau, cplx eta, const Truncation& tr) : eta_(eta) {
  require_regime(tau, eta);
  pref_ = -std::exp(4.0 * pi * I * eta) / (2.0 * pi * std::sqrt(4.0 * I * eta));
  line_ = std::make_unique<LineOperator>(tau, tau - 2.0 * eta * static_cast<double>(kappa), eta, tr);
}

std::vector<cplx> TKappa::sample(const Fn& f) const {
  const auto& mu = line_->nodes();
  std::vector<cplx> v(mu.size());
  for (std::size_t k = 0; k < mu.size(); ++k) v[k] = f(-mu[k]);
  return v;
}

EvalResult TKappa::apply_values(cplx lam, const std::vector<cplx>& f) const {
  const auto& mu = line_->nodes();
  std::vector<cplx> v(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) v[k] = alpha(mu[k], eta_) * f[k];
  EvalResult r = line_->apply_values(lam, v);
  const cplx c = pref_ * alpha(lam, eta_);
  r.value *= c;
  r.err_estimate *= std::abs(c);
  return r;
}

EvalResult TKappa::apply(const Fn& f, cplx lam) const { return apply_values(lam, sample(f)); }

EvalResult apply_T_kappa(const Fn& f, int kappa, cplx tau, cplx eta, cplx lam, const Truncation& tr) {
  return TKappa(kappa, tau, eta, tr).apply(f, lam);
}

TBar::TBar(int kappa, cplx tau, cplx eta, const Truncation& tr, ShiftGrid grid)
    : tau_(tau), sigma_(tau - 2.0 * eta * static_cast<double>(kappa)), eta_(eta), tr_(tr), grid_(grid) {
  require_regime(tau, eta);
  if (grid.m_range < 1) throw Error(Errc::argument, "m_range must be >= 1");
  cplx norm = 0.0;
  for (int m = -grid.m_range; m <= grid.m_range; ++m)
    norm += std::exp(-pi * I * eta * static_cast<double>(m * m));
  C_ = I * std::exp(4.0 * pi * I * eta) / (2.0 * pi) / norm;
  kernel_ = std::make_unique<ellint::UKernel>(tau, sigma_, eta, tr);
}

EvalResult TBar::apply(const Fn& f, cplx lam) const {
  const std::vector<cplx> a = kernel_->tau_side(lam);
  cplx s = 0.0;
  double edge = 0.0;
  for (int m = -grid_.m_range; m <= grid_.m_range; ++m) {
    const cplx mu = -lam + 2.0 * eta_ * static_cast<double>(m);
    EvalResult q;
    try {
      q = ellint::q_weight(mu, sigma_, eta_, tr_);
    } catch (const Error& e) {
      throw Error(e.code(), std::string(e.what()) + " (shift m = " + std::to_string(m) + ")");
    }
    const cplx arg = lam - 2.0 * eta_ * static_cast<double>(m);
    const cplx term = kernel_->u_with(lam, a, mu) * q.value * alpha(arg, eta_) * f(arg);
    s += term;
    if (std::abs(m) == grid_.m_range) edge += std::abs(term);
  }
  const cplx c = C_ * alpha(lam, eta_);
  EvalResult r;
  r.value = c * s;
  r.err_estimate = std::abs(c) * edge;
  r.terms_used = 2 * grid_.m_range + 1;
  r.min_pole_distance = kernel_->min_pole_distance();
  r.converged = kernel_->converged();
  if (!std::isfinite(r.value.real()) || !std::isfinite(r.value.imag()))
    throw Error(Errc::divergence, "shift-grid sum is not finite");
  return r;
}

EvalResult apply_T_bar(const Fn& f, int kappa, cplx tau, cplx eta, cplx lam, ShiftGrid grid,
                       const Truncation& tr) {
  return TBar(kappa, tau, eta, tr, grid).apply(f, lam);
}

double qkzb_residual(int l, int kappa, cplx tau, cplx eta, const std::vector<cplx>& lams,
                     const Truncation& tr, const QkzbOptions& opt) {
  const cplx tau0 = tau - 2.0 * eta * static_cast<double>(kappa);
  const hts::HtsEvaluator in(kappa, tau0, eta, tr), out(kappa, tau, eta, tr);
  auto value = [&](const hts::HtsEvaluator& h, cplx lam) {
    return opt.tilde ? h.delta_tilde(l, lam).value : h.delta(l, lam).value;
  };
  const Fn f = [&](cplx lam) {
    cplx v = value(in, lam);
    if (opt.perturbation != 0.0)
      v += opt.perturbation * theta::theta_basis_value(0, kappa + 2, lam, tau0);
    return v;
  };
  double worst = 0.0;
  if (opt.method == QkzbMethod::integral) {
    const TKappa T(kappa, tau, eta, tr);
    const auto samples = T.sample(f);
    for (const cplx lam : lams) {
      const cplx rhs = value(out, lam);
      worst = std::max(worst, std::abs(T.apply_values(lam, samples).value - rhs) / (1.0 + std::abs(rhs)));
    }
  } else {
    const TBar T(kappa, tau, eta, tr, ShiftGrid{opt.m_range});
    for (const cplx lam : lams) {
      const cplx rhs = value(out, lam);
      worst = std::max(worst, std::abs(T.apply(f, lam).value - rhs) / (1.0 + std::abs(rhs)));
    }
  }
  return worst;
}

}  // namespace et::ops
