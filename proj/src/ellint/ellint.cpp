#include "ellint/ellint.hpp"

#include <algorithm>
#include <cmath>

#include "core/series.hpp"
#include "theta/theta.hpp"

namespace et::ellint {

using theta::theta;
using theta::theta_dlam;

namespace {

constexpr double kProductTol = 1e-17;

// Omega with optional tau or sigma sent to i infinity.
cplx omega_impl(cplx t, cplx tau, cplx sigma, cplx eta, Limit lim) {
  const cplx A = e2pi(t - 2.0 * eta), C = e2pi(t + 2.0 * eta);
  if (lim.tau_inf && lim.sigma_inf) return (1.0 - A) / (1.0 - C);
  const double lt = std::log(kProductTol);
  if (lim.tau_inf || lim.sigma_inf) {
    const cplx step = e2pi(lim.tau_inf ? sigma : tau);
    const double im = lim.tau_inf ? sigma.imag() : tau.imag();
    const double M = std::max({1.0, std::abs(A), std::abs(C)});
    const int n = static_cast<int>((std::log(M) - lt) / (2.0 * pi * im)) + 2;
    cplx p = 1.0, z = 1.0;
    for (int k = 0; k < n; ++k, z *= step) p *= (1.0 - A * z) / (1.0 - C * z);
    return p;
  }
  const cplx B = e2pi(-t - 2.0 * eta + tau + sigma);
  const cplx D = e2pi(-t + 2.0 * eta + tau + sigma);
  const double M = std::max({1.0, std::abs(A), std::abs(B), std::abs(C), std::abs(D)});
  const double L = (std::log(M) - lt) / (2.0 * pi);
  const double it = tau.imag(), is = sigma.imag();
  const cplx et = e2pi(tau), es = e2pi(sigma);
  cplx p = 1.0, zt = 1.0;
  for (int j = 0; j * it <= L; ++j, zt *= et) {
    cplx z = zt;
    for (int k = 0; j * it + k * is <= L; ++k, z *= es)
      p *= (1.0 - A * z) * (1.0 - B * z) / ((1.0 - C * z) * (1.0 - D * z));
  }
  return p;
}

void require_upper(cplx z, const char* name) {
  if (!(z.imag() > 0))
    throw Error(Errc::domain, std::string("Im ") + name + " must be positive");
}

// Distance from z to the lattice Z + sigma Z.
double lattice_distance(cplx z, cplx sigma) {
  const double n = std::round(z.imag() / sigma.imag());
  double best = INFINITY;
  for (double dn = n - 1; dn <= n + 1; ++dn) {
    const cplx w = z - dn * sigma;
    const double m = std::round(w.real());
    best = std::min(best, std::abs(w - m));
  }
  return best;
}

struct Pole {
  cplx z;
  int family;  // +1: 2eta + ..., -1: -(2eta + ...)
};

// Poles of both families with |Im| <= ywin, real part reduced to [0,1).
// Im(2eta + m tau + n sigma) increases in m and n, so both loops stop as
// soon as the height leaves the window.
std::vector<Pole> collect_poles(cplx tau, cplx sigma, cplx eta, Limit lim,
                                double ywin) {
  std::vector<Pole> out;
  const double b = (2.0 * eta).imag();
  const double it = lim.tau_inf ? INFINITY : tau.imag();
  const double is = lim.sigma_inf ? INFINITY : sigma.imag();
  auto h = [](int k, double step) { return k ? k * step : 0.0; };
  for (int m = 0; m == 0 || b + h(m, it) <= ywin; ++m) {
    for (int n = 0; n == 0 || b + h(m, it) + h(n, is) <= ywin; ++n) {
      cplx p = 2.0 * eta;
      if (m) p += static_cast<double>(m) * tau;
      if (n) p += static_cast<double>(n) * sigma;
      if (std::abs(p.imag()) > ywin) {
        if (p.imag() > ywin) break;
        continue;
      }
      for (int fam : {1, -1}) {
        cplx z = static_cast<double>(fam) * p;
        z -= std::floor(z.real());
        out.push_back({z, fam});
      }
    }
    if (b + h(m, it) > ywin) break;
  }
  return out;
}

}  // namespace

cplx omega_value(cplx t, cplx tau, cplx sigma, cplx eta) {
  return omega_impl(t, tau, sigma, eta, {});
}

EvalResult omega(cplx t, cplx tau, cplx sigma, cplx eta, const Truncation& tr) {
  tr.validate();
  require_upper(tau, "tau");
  require_upper(sigma, "sigma");
  const cplx A = e2pi(t - 2.0 * eta), C = e2pi(t + 2.0 * eta);
  const cplx B = e2pi(-t - 2.0 * eta + tau + sigma);
  const cplx D = e2pi(-t + 2.0 * eta + tau + sigma);
  const double M = std::max({1.0, std::abs(A), std::abs(B), std::abs(C), std::abs(D)});
  const double L = (std::log(M) - std::log(kProductTol)) / (2.0 * pi);
  const int J = std::max(tr.product_cutoff + 1, static_cast<int>(L / tau.imag()) + 2);
  const int K = std::max(tr.product_cutoff + 1, static_cast<int>(L / sigma.imag()) + 2);
  const cplx et = e2pi(tau), es = e2pi(sigma);
  std::vector<cplx> pt(J), ps(K);
  pt[0] = ps[0] = 1.0;
  for (int j = 1; j < J; ++j) pt[j] = pt[j - 1] * et;
  for (int k = 1; k < K; ++k) ps[k] = ps[k - 1] * es;
  return product_grid(
      [&](int j, int k) {
        const cplx z = pt[j] * ps[k];
        return std::pair<cplx, cplx>{(1.0 - A * z) * (1.0 - B * z),
                                     (1.0 - C * z) * (1.0 - D * z)};
      },
      J, K, tr.pinch_tol);
}

cplx q_value(cplx mu, cplx sigma, cplx eta) {
  return theta(4.0 * eta, sigma) * theta_dlam(0.0, sigma) /
         (theta(mu - 2.0 * eta, sigma) * theta(mu + 2.0 * eta, sigma));
}

EvalResult q_weight(cplx mu, cplx sigma, cplx eta, const Truncation& tr) {
  tr.validate();
  require_upper(sigma, "sigma");
  const double d = std::min(lattice_distance(mu - 2.0 * eta, sigma),
                            lattice_distance(mu + 2.0 * eta, sigma));
  if (d < tr.pinch_tol)
    throw Error(Errc::pole, "Q pole: mu = +-2 eta mod Z + sigma Z");
  const auto a = theta::jacobi_theta(4.0 * eta, sigma, tr);
  const auto b = theta::jacobi_theta_dlam(0.0, sigma, tr);
  const auto c = theta::jacobi_theta(mu - 2.0 * eta, sigma, tr);
  const auto e = theta::jacobi_theta(mu + 2.0 * eta, sigma, tr);
  EvalResult r;
  r.value = a.value * b.value / (c.value * e.value);
  const double rel = a.err_estimate / std::abs(a.value) + b.err_estimate / std::abs(b.value) +
                     c.err_estimate / std::abs(c.value) + e.err_estimate / std::abs(e.value);
  r.err_estimate = std::abs(r.value) * rel;
  r.terms_used = a.terms_used + b.terms_used + c.terms_used + e.terms_used;
  r.min_pole_distance = d;
  r.converged = a.converged && b.converged && c.converged && e.converged;
  return r;
}

double pole_pinch_distance(cplx tau, cplx sigma, cplx eta, int max_mn) {
  double best = INFINITY;
  for (int l = -max_mn; l <= max_mn; ++l)
    for (int m = 0; m <= max_mn; ++m)
      for (int n = 0; n <= max_mn; ++n)
        best = std::min(best, std::abs(4.0 * eta + static_cast<double>(l) +
                                       static_cast<double>(m) * tau +
                                       static_cast<double>(n) * sigma));
  return best;
}

LineWithLoops auto_contour(cplx tau, cplx sigma, cplx eta, Limit lim,
                           const ContourOptions& opt, double* min_dist) {
  double H = 1.0;
  if (!lim.tau_inf) H = std::min(H, tau.imag());
  if (!lim.sigma_inf) H = std::min(H, sigma.imag());
  if (lim.tau_inf && lim.sigma_inf) H = 1.0;
  H *= 0.75;

  double y = opt.height;
  if (!opt.fixed_height) {
    const auto near = collect_poles(tau, sigma, eta, lim, H);
    std::vector<double> hs{-H, H};
    for (const auto& p : near)
      if (p.z.imag() > -H && p.z.imag() < H) hs.push_back(p.z.imag());
    std::sort(hs.begin(), hs.end());
    std::vector<std::pair<double, double>> gaps;  // (width, midpoint)
    for (std::size_t i = 1; i < hs.size(); ++i)
      gaps.emplace_back(hs[i] - hs[i - 1], 0.5 * (hs[i] + hs[i - 1]));
    std::stable_sort(gaps.begin(), gaps.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    const std::size_t rank = std::min<std::size_t>(opt.gap_rank, gaps.size() - 1);
    y = gaps[rank].second;
  }

  const double ywin = std::abs(y) + 0.5;
  const auto poles = collect_poles(tau, sigma, eta, lim, ywin);
  LineWithLoops c;
  c.start = cplx(0.0, y);
  double dmin = INFINITY;
  for (const auto& p : poles) {
    dmin = std::min(dmin, std::abs(p.z.imag() - y));
    const bool below = p.z.imag() < y;
    if (!((p.family > 0 && below) || (p.family < 0 && !below))) continue;
    double d = std::abs(p.z.imag() - y);
    for (const auto& o : poles)
      for (int sh = -1; sh <= 1; ++sh) {
        const double dd = std::abs(o.z + static_cast<double>(sh) - p.z);
        if (dd > 1e-12) d = std::min(d, dd);
      }
    c.loops.push_back({p.z, std::min(0.1, 0.4 * d), p.family > 0 ? 1 : -1});
  }
  if (min_dist) *min_dist = dmin;
  return c;
}

UKernel::UKernel(cplx tau, cplx sigma, cplx eta, const Truncation& tr, Limit lim,
                 ContourOptions opt)
    : tau_(tau), sigma_(sigma), eta_(eta), lim_(lim) {
  tr.validate();
  if (!lim.tau_inf) require_upper(tau, "tau");
  if (!lim.sigma_inf) require_upper(sigma, "sigma");
  if (eta == cplx(0.0)) throw Error(Errc::domain, "eta must be nonzero");
  double scale = 1.0;
  if (!lim.tau_inf) scale = std::max(scale, std::abs(tau));
  if (!lim.sigma_inf) scale = std::max(scale, std::abs(sigma));
  if (!lim.tau_inf && !lim.sigma_inf) {
    const double pd = pole_pinch_distance(tau, sigma, eta, 8);
    if (pd < tr.pinch_tol * scale)
      throw Error(Errc::pinch, "pole families pinch: |4eta + l + m tau + n sigma| = " +
                                   std::to_string(pd));
  }
  contour_ = auto_contour(tau, sigma, eta, lim, opt, &min_dist_);
  if (min_dist_ < tr.pinch_tol * scale)
    throw Error(Errc::contour, "pole within pinch_tol of the integration line");

  Rule loops;
  for (const auto& lp : contour_.loops) loops.append(loop_rule(lp, 64));

  const cplx lam0(0.31, 0.17), mu0(-0.23, 0.11);
  auto probe = [&](const Rule& r, std::vector<cplx>& kw, double& mag) {
    build_weights(r, kw);
    cplx s = 0.0;
    mag = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      const cplx v = kw[i] * tau_fn(lam0 + r.t[i]) * sigma_fn(mu0 + r.t[i]);
      s += v;
      mag += std::abs(v);
    }
    return s;
  };

  const cplx a = contour_.start;
  int nseg = std::max(4, (tr.quad_points + 31) / 32);
  std::vector<cplx> kw;
  double mag = 0.0;
  Rule line = segment_rule(a, a + 1.0, nseg);
  cplx prev = probe(line, kw, mag);
  for (;;) {
    const int next = 2 * nseg;
    Rule fine = segment_rule(a, a + 1.0, next);
    std::vector<cplx> kw2;
    double mag2 = 0.0;
    const cplx cur = probe(fine, kw2, mag2);
    const double diff = std::abs(cur - prev);
    line = std::move(fine);
    kw = std::move(kw2);
    mag = mag2;
    nseg = next;
    rel_err_ = diff / std::max(mag, 1e-300);
    if (rel_err_ < 1e-14 || nseg >= 2048) break;
    prev = cur;
  }
  converged_ = rel_err_ < 1e-10;

  Rule all = line;
  all.append(loops);
  t_ = all.t;
  std::vector<cplx> kl;
  build_weights(loops, kl);
  k_ = kw;
  k_.insert(k_.end(), kl.begin(), kl.end());
}

cplx UKernel::tau_fn(cplx x) const {
  return lim_.tau_inf ? std::sin(pi * x) : theta(x, tau_);
}

cplx UKernel::sigma_fn(cplx x) const {
  return lim_.sigma_inf ? std::sin(pi * x) : theta(x, sigma_);
}

cplx UKernel::kernel_at(cplx t) const {
  return omega_impl(t, tau_, sigma_, eta_, lim_) /
         (tau_fn(t - 2.0 * eta_) * sigma_fn(t - 2.0 * eta_));
}

void UKernel::build_weights(const Rule& r, std::vector<cplx>& out) const {
  out.resize(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    out[i] = r.w[i] * kernel_at(r.t[i]);
    if (!std::isfinite(out[i].real()) || !std::isfinite(out[i].imag()))
      throw Error(Errc::evaluation, "non-finite kernel at node " + format_complex(r.t[i]));
  }
}

std::vector<cplx> UKernel::tau_side(cplx x) const {
  std::vector<cplx> v(t_.size());
  for (std::size_t i = 0; i < t_.size(); ++i) v[i] = tau_fn(x + t_[i]);
  return v;
}

std::vector<cplx> UKernel::sigma_side(cplx x) const {
  std::vector<cplx> v(t_.size());
  for (std::size_t i = 0; i < t_.size(); ++i) v[i] = sigma_fn(x + t_[i]);
  return v;
}

cplx UKernel::contract(const std::vector<cplx>& a, const std::vector<cplx>& b) const {
  cplx s = 0.0;
  for (std::size_t i = 0; i < k_.size(); ++i) s += k_[i] * a[i] * b[i];
  return s;
}

double UKernel::contract_abs(const std::vector<cplx>& a, const std::vector<cplx>& b) const {
  double s = 0.0;
  for (std::size_t i = 0; i < k_.size(); ++i) s += std::abs(k_[i] * a[i] * b[i]);
  return s;
}

cplx UKernel::u_with(cplx lam, const std::vector<cplx>& lam_side, cplx mu) const {
  cplx s = 0.0;
  for (std::size_t i = 0; i < k_.size(); ++i) s += k_[i] * lam_side[i] * sigma_fn(mu + t_[i]);
  return std::exp(-pi * I * lam * mu / (2.0 * eta_)) * s;
}

cplx UKernel::u(cplx lam, cplx mu) const {
  return u_with(lam, tau_side(lam), mu);
}

EvalResult UKernel::u_eval(cplx lam, cplx mu) const {
  const auto a = tau_side(lam);
  const auto b = sigma_side(mu);
  const cplx pref = std::exp(-pi * I * lam * mu / (2.0 * eta_));
  EvalResult r;
  r.value = pref * contract(a, b);
  r.err_estimate = std::abs(pref) * contract_abs(a, b) * std::max(rel_err_, 1e-16);
  r.terms_used = static_cast<int>(t_.size());
  r.min_pole_distance = min_dist_;
  r.converged = converged_;
  return r;
}

EvalResult u_hyper(const UArgs& a, const Truncation& tr, ContourOptions opt) {
  UKernel k(a.tau, a.sigma, a.eta, tr, {}, opt);
  return k.u_eval(a.lambda, a.mu);
}

EvalResult u_trig_degenerate(cplx lam, cplx mu, cplx eta) {
  const cplx s = std::sin(4.0 * pi * eta);
  if (std::abs(s) < 1e-14) throw Error(Errc::pole, "sin 4 pi eta = 0");
  const cplx q = std::exp(-2.0 * pi * I * eta);
  EvalResult r;
  r.value = I * std::exp(-I * pi * lam * mu / (2.0 * eta)) *
            (std::cos(pi * (lam + mu)) / (q * q) - std::cos(pi * (lam - mu))) / s;
  r.err_estimate = 1e-15 * std::abs(r.value);
  return r;
}

EvalResult u_trig_degenerate_corrected(cplx lam, cplx mu, cplx eta) {
  auto r = u_trig_degenerate(lam, mu, eta);
  const cplx q = std::exp(-2.0 * pi * I * eta);
  r.value *= -q * q;
  return r;
}

EvalResult u_trig_semi(cplx lam, int l, int kappa, cplx eta, const Truncation& tr) {
  if (!(eta.imag() < 0))
    throw Error(Errc::domain, "u_trig_semi needs Im eta < 0 (|q| < 1)");
  const cplx sigma = -2.0 * eta * static_cast<double>(kappa);
  UKernel k(cplx(0.0, 1.0), sigma, eta, tr, Limit{true, false});
  return k.u_eval(lam, 2.0 * eta * static_cast<double>(l));
}

}  // namespace et::ellint
