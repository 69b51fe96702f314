#include "hts/hts.hpp"

#include <algorithm>
#include <cmath>

namespace et::hts {

using ellint::q_value;
using theta::theta;
using theta::theta_basis_value;

namespace {

int mod(int a, int m) { return ((a % m) + m) % m; }

}  // namespace

HTSIndex::HTSIndex(int l_, int kappa_) : l(mod(l_, 2 * kappa_)), kappa(kappa_) {
  if (kappa_ < 4) throw Error(Errc::argument, "kappa must be >= 4");
}

bool HTSIndex::admissible() const { return is_admissible(l, kappa); }

bool is_admissible(int l, int kappa) {
  if (kappa < 4) throw Error(Errc::argument, "kappa must be >= 4");
  const int r = mod(l, kappa);
  return r != 1 && r != kappa - 1;
}

const char* method_name(Method m) {
  switch (m) {
    case Method::series: return "series";
    case Method::integral: return "integral";
    case Method::regularized: return "regularized";
  }
  return "?";
}

int hypothesis_check_range(cplx tau, cplx eta) {
  return 1 + static_cast<int>(std::ceil(4.0 * std::abs(eta) / tau.imag())) + 5;
}

HtsEvaluator::HtsEvaluator(int kappa, cplx tau, cplx eta, const Truncation& tr)
    : kappa_(kappa), tau_(tau), eta_(eta), sigma_(-2.0 * eta * static_cast<double>(kappa)),
      tr_(tr) {
  tr.validate();
  if (kappa < 4) throw Error(Errc::argument, "kappa must be >= 4");
  if (!(tau.imag() > 0)) throw Error(Errc::domain, "Im tau must be positive");
  if (!(eta.imag() < 0)) throw Error(Errc::domain, "hypergeometric theta functions need Im eta < 0");
  const int J = hypothesis_check_range(tau, eta);
  for (int j = 1; j <= J; ++j) {
    const cplx z = static_cast<double>(j) * tau + 4.0 * eta;
    if (std::abs(z - std::round(z.real())) < tr.pinch_tol)
      throw Error(Errc::domain, "j tau + 4 eta is an integer for j = " + std::to_string(j));
  }
  plus_form_ = (tau + 4.0 * eta).imag() > (tau - 4.0 * eta).imag();
  kernel_ = std::make_unique<ellint::UKernel>(tau, sigma_, eta, tr);
}

const char* HtsEvaluator::series_form() const { return plus_form_ ? "tau+4eta" : "tau-4eta"; }

void HtsEvaluator::check_index(int l) const {
  if (!is_admissible(l, kappa_))
    throw Error(Errc::argument, "index l = " + std::to_string(l) +
                                    " is not admissible (l = +-1 mod kappa)");
}

const HtsEvaluator::SeriesData& HtsEvaluator::series_data(int l) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto& slot = series_[l];
  if (slot) return *slot;
  auto d = std::make_unique<SeriesData>();
  const ellint::UKernel& K = *kernel_;
  const double kap = kappa_;
  const cplx g = plus_form_ ? tau_ + 4.0 * eta_ : tau_ - 4.0 * eta_;
  if (!plus_form_)
    d->global = std::exp(4.0 * pi * I * eta_ * static_cast<double>(l * l) / kap) *
                q_value(2.0 * eta_ * static_cast<double>(l), sigma_, eta_);

  // |e^{-pi i lam j}| is bounded by e^{pi |j| Lambda} for |Im lam| <= Lambda.
  const double Lambda = 2.0;
  auto add = [&](int k) {
    const int j = l + 2 * kappa_ * k;
    const cplx mu = 2.0 * eta_ * static_cast<double>(j);
    cplx c = std::exp(pi * I * g * static_cast<double>(j) * static_cast<double>(j) / (2.0 * kap));
    if (plus_form_) c *= q_value(mu, sigma_, eta_);
    std::vector<cplx> w = K.sigma_side(mu);
    double mag = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      w[i] *= K.weights()[i];
      mag += std::abs(w[i]);
    }
    d->js.push_back(j);
    d->coef.push_back(c);
    d->wsig.push_back(std::move(w));
    return std::abs(c) * mag * std::exp(pi * std::abs(j) * Lambda);
  };

  double peak = add(0);
  for (int dir : {1, -1}) {
    int quiet = 0;
    for (int k = 1; k <= tr_.series_cutoff; ++k) {
      const double b = add(dir * k);
      peak = std::max(peak, b);
      if (!std::isfinite(b)) throw Error(Errc::divergence, "series term overflow");
      quiet = (b < 1e-18 * peak) ? quiet + 1 : 0;
      if (quiet >= 2) break;
      if (k == tr_.series_cutoff)
        throw Error(Errc::divergence, "Delta~ series did not decay within series_cutoff");
    }
  }
  slot = std::move(d);
  return *slot;
}

EvalResult HtsEvaluator::delta_tilde(int l, cplx lam, Method m) const {
  check_index(l);
  if (m == Method::integral) {
    EvalResult r = I_integral(l, lam);
    const cplx f = std::exp(2.0 * pi * I * eta_ * static_cast<double>(l * l) /
                            static_cast<double>(kappa_)) *
                   q_value(2.0 * eta_ * static_cast<double>(l), sigma_, eta_);
    r.value *= f;
    r.err_estimate *= std::abs(f);
    return r;
  }
  if (m == Method::regularized) {
    EvalResult r = I_regularized(l, lam);
    const cplx f = std::exp(2.0 * pi * I * eta_ * static_cast<double>(l * l) /
                            static_cast<double>(kappa_)) *
                   q_value(2.0 * eta_ * static_cast<double>(l), sigma_, eta_);
    r.value *= f;
    r.err_estimate *= std::abs(f);
    return r;
  }
  const SeriesData& d = series_data(l);
  const ellint::UKernel& K = *kernel_;
  const std::vector<cplx> a = K.tau_side(lam);
  cplx s = 0.0;
  double mag = 0.0;
  for (std::size_t n = 0; n < d.js.size(); ++n) {
    cplx c = 0.0;
    double ca = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const cplx v = a[i] * d.wsig[n][i];
      c += v;
      ca += std::abs(v);
    }
    const cplx ph = std::exp(-pi * I * lam * static_cast<double>(d.js[n]));
    s += d.coef[n] * ph * c;
    mag += std::abs(d.coef[n] * ph) * ca;
  }
  EvalResult r;
  r.value = d.global * s;
  r.err_estimate = std::abs(d.global) * mag * std::max(K.rel_err(), 1e-16);
  r.terms_used = static_cast<int>(d.js.size());
  r.min_pole_distance = K.min_pole_distance();
  r.converged = K.converged();
  return r;
}

EvalResult HtsEvaluator::delta(int l, cplx lam, Method m) const {
  const EvalResult a = delta_tilde(l, lam, m);
  const EvalResult b = delta_tilde(l, -lam, m);
  EvalResult r = a;
  r.value = a.value - b.value;
  r.err_estimate = a.err_estimate + b.err_estimate;
  r.terms_used = a.terms_used + b.terms_used;
  r.converged = a.converged && b.converged;
  return r;
}

const HtsEvaluator::IntegralData& HtsEvaluator::integral_data(int l) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto& slot = integral_[l];
  if (slot) return *slot;
  auto d = std::make_unique<IntegralData>();
  const ellint::UKernel& K = *kernel_;
  d->w = K.sigma_side(2.0 * eta_ * static_cast<double>(l));
  for (std::size_t i = 0; i < d->w.size(); ++i)
    d->w[i] *= K.weights()[i] *
               std::exp(-2.0 * pi * I * static_cast<double>(l) * K.nodes()[i] /
                        static_cast<double>(kappa_));
  slot = std::move(d);
  return *slot;
}

EvalResult HtsEvaluator::I_integral(int l, cplx lam) const {
  check_index(l);
  const IntegralData& d = integral_data(l);
  const ellint::UKernel& K = *kernel_;
  const double kap = kappa_;
  cplx s = 0.0;
  double mag = 0.0;
  for (std::size_t i = 0; i < d.w.size(); ++i) {
    const cplx t = K.nodes()[i];
    const cplx v = d.w[i] * theta(lam + t, tau_) *
                   theta_basis_value(l, kappa_, 2.0 * t / kap - lam, tau_);
    s += v;
    mag += std::abs(v);
  }
  EvalResult r;
  r.value = s;
  r.err_estimate = mag * std::max(K.rel_err(), 1e-16);
  r.terms_used = static_cast<int>(d.w.size());
  r.min_pole_distance = K.min_pole_distance();
  r.converged = K.converged();
  return r;
}

const ellint::UKernel& HtsEvaluator::reg_kernel() const {
  // caller holds mu_
  if (!reg_kernel_) {
    ellint::ContourOptions opt;
    opt.fixed_height = true;
    opt.height = (4.0 * eta_).imag();
    reg_kernel_ = std::make_unique<ellint::UKernel>(tau_, sigma_, eta_, tr_, ellint::Limit{}, opt);
  }
  return *reg_kernel_;
}

const HtsEvaluator::RegData& HtsEvaluator::reg_data(int l) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto& slot = reg_[l];
  if (slot) return *slot;
  const ellint::UKernel& K = reg_kernel();
  auto d = std::make_unique<RegData>();
  d->t = K.nodes();
  d->w = K.sigma_side(2.0 * eta_ * static_cast<double>(l));
  for (std::size_t i = 0; i < d->w.size(); ++i)
    d->w[i] *= K.weights()[i] *
               std::exp(-2.0 * pi * I * static_cast<double>(l) * d->t[i] /
                        static_cast<double>(kappa_));
  d->theta4eta = theta(4.0 * eta_, tau_);
  slot = std::move(d);
  return *slot;
}

// Integral over the line Im t = Im 4eta of the integrand minus the
// discrete differential that removes its pole at t = 2 eta.
EvalResult HtsEvaluator::I_regularized(int l, cplx lam) const {
  check_index(l);
  const RegData& d = reg_data(l);
  const double kap = kappa_;
  const double ld = l;
  auto g = [&](cplx t) {
    return theta(lam + t, tau_) * theta_basis_value(l, kappa_, 2.0 * t / kap - lam, tau_);
  };
  const cplx c0 = g(2.0 * eta_) /
                  (std::exp(4.0 * pi * I * eta_ * (1.0 - ld / kap)) * d.theta4eta);
  const cplx sh = std::exp(-4.0 * pi * I * ld * eta_);
  cplx s = 0.0;
  double mag = 0.0;
  for (std::size_t i = 0; i < d.t.size(); ++i) {
    const cplx t = d.t[i];
    const cplx ct = c0 * std::exp(2.0 * pi * I * ld * t / kap) *
                    (sh * theta(t + 2.0 * eta_, tau_) - theta(t - 2.0 * eta_, tau_));
    const cplx v = d.w[i] * (g(t) - ct);
    s += v;
    mag += std::abs(v);
  }
  EvalResult r;
  r.value = s;
  r.err_estimate = mag * std::max(reg_kernel_->rel_err(), 1e-16);
  r.terms_used = static_cast<int>(d.t.size());
  r.min_pole_distance = reg_kernel_->min_pole_distance();
  r.converged = reg_kernel_->converged();
  return r;
}

GramEvaluator::GramEvaluator(const HtsEvaluator& h, GramOptions opt) : h_(h) {
  if (opt.samples < 8) throw Error(Errc::argument, "gram samples must be >= 8");
  const cplx eta = h.eta();
  const double c = opt.height < 0 ? 3.0 * std::abs(eta.imag()) : opt.height;
  kminus_ = std::make_unique<ellint::UKernel>(h.tau(), h.sigma(), -eta, h.truncation());
  mu_.resize(opt.samples);
  lam_side_.resize(opt.samples);
  for (int k = 0; k < opt.samples; ++k) {
    mu_[k] = cplx(2.0 * k / opt.samples, c);
    lam_side_[k] = kminus_->tau_side(-mu_[k]);
  }
}

cplx GramEvaluator::integrate(int l, const std::vector<cplx>& g) const {
  const cplx eta = h_.eta();
  const cplx mu_l = 2.0 * eta * static_cast<double>(l);
  const std::vector<cplx> b = kminus_->sigma_side(mu_l);
  cplx s = 0.0;
  for (std::size_t k = 0; k < mu_.size(); ++k) {
    const cplx u = std::exp(-pi * I * (-mu_[k]) * mu_l / (2.0 * (-eta))) *
                   kminus_->contract(lam_side_[k], b);
    s += u * g[k];
  }
  s *= 2.0 / static_cast<double>(mu_.size());
  return s / (32.0 * pi * pi * eta);
}

EvalResult GramEvaluator::entry(int l, int j) const {
  const int kappa = h_.kappa();
  if (l < 2 || l > kappa - 2 || j < 2 || j > kappa - 2)
    throw Error(Errc::argument, "gram indices must lie in 2..kappa-2");
  std::vector<cplx> g(mu_.size());
  double err = 0.0;
  for (std::size_t k = 0; k < mu_.size(); ++k) {
    const EvalResult d = h_.delta(j, mu_[k]);
    g[k] = d.value * q_value(mu_[k], h_.tau(), h_.eta());
    err = std::max(err, d.err_estimate);
  }
  EvalResult r;
  r.value = integrate(l, g);
  r.err_estimate = err;
  r.terms_used = static_cast<int>(mu_.size());
  r.min_pole_distance = kminus_->min_pole_distance();
  r.converged = kminus_->converged();
  return r;
}

}  // namespace et::hts
