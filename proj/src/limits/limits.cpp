#include "limits/limits.hpp"

#include <cmath>

#include "core/quadrature.hpp"
#include "ellint/ellint.hpp"
#include "hts/hts.hpp"
#include "macdonald/macdonald.hpp"
#include "theta/theta.hpp"

namespace et::limits {

using theta::theta;
using theta::theta_basis_value;
using theta::theta_dlam;

cplx log_theta_normalized(cplx t, cplx tau) {
  // theta(t)/theta'(0) = sin(pi t)/pi prod_n (1 - p^n e(t))(1 - p^n e(-t)) / (1 - p^n)^2
  const cplx p = e2pi(tau);
  cplx s = std::log(std::sin(pi * t) / pi);
  cplx pn = p;
  for (int n = 1; n < 10000 && std::abs(pn) > 1e-18; ++n, pn *= p)
    s += std::log(1.0 - pn * e2pi(t)) + std::log(1.0 - pn * e2pi(-t)) - 2.0 * std::log(1.0 - pn);
  return s;
}

namespace {

struct BlockCtx {
  int l, kappa;
  cplx lam, tau, tp0, f0;
};

BlockCtx block_ctx(int l, int kappa, cplx lam, cplx tau) {
  BlockCtx c{l, kappa, lam, tau, theta_dlam(0.0, tau), 0.0};
  c.f0 = theta(-lam, tau) * theta_basis_value(l, kappa, lam, tau);
  return c;
}

// t and tc = 1 - t passed separately so both endpoints keep full precision.
cplx block_integrand(const BlockCtx& c, double t, double tc) {
  const double k = c.kappa;
  const bool left = t <= 0.5;
  // theta(1 - s) = theta(s), theta'(1 - s) = -theta'(s)
  const double s = left ? t : tc;
  const cplx th = theta(s, c.tau);
  const cplx thp = left ? theta_dlam(s, c.tau) : -theta_dlam(s, c.tau);
  const cplx pw = std::exp((-1.0 - 2.0 / k) * log_theta_normalized(s, c.tau));
  const cplx f = theta(t - c.lam, c.tau) * theta_basis_value(c.l, c.kappa, 2.0 * t / k + c.lam, c.tau);
  const cplx ct = c.f0 / c.tp0 * std::exp(2.0 * pi * I * static_cast<double>(c.l) * t / k) *
                  (thp - pi * I * static_cast<double>(c.l) * th);
  return pw * (f - ct);
}

}  // namespace

cplx conformal_block_integrand(int l, int kappa, cplx lam, cplx tau, double t, double tc) {
  return block_integrand(block_ctx(l, kappa, lam, tau), t, tc);
}

EvalResult conformal_block_half(int l, int kappa, cplx lam, cplx tau, const ConformalBlockOptions& opt) {
  if (!(tau.imag() > 0)) throw Error(Errc::domain, "Im tau must be positive");
  if (kappa < 4) throw Error(Errc::argument, "kappa must be >= 4");
  const BlockCtx c = block_ctx(l, kappa, lam, tau);
  const double h = opt.step > 0 ? opt.step : 6.5 / opt.half_points;
  const TanhSinhRule r = tanh_sinh_rule(opt.half_points, h);
  // Below delta the bracket loses digits to cancellation; there the integrand
  // is replaced by its leading power c t^{-2/kappa}, fitted at delta.
  const double delta = 1e-6, ex = -2.0 / kappa;
  const cplx c0 = block_integrand(c, delta, 1.0 - delta) / std::pow(delta, ex);
  const cplx c1 = block_integrand(c, 1.0 - delta, delta) / std::pow(delta, ex);
  cplx full = 0.0, half = 0.0;
  for (std::size_t i = 0; i < r.x.size(); ++i) {
    cplx v;
    if (r.x[i] < delta)
      v = c0 * std::pow(r.x[i], ex);
    else if (r.xc[i] < delta)
      v = c1 * std::pow(r.xc[i], ex);
    else
      v = block_integrand(c, r.x[i], r.xc[i]);
    full += r.w[i] * v;
    if (i % 2 == (r.x.size() / 2) % 2) half += 2.0 * r.w[i] * v;
  }
  EvalResult out;
  out.value = full;
  out.err_estimate = std::abs(full - half);
  out.terms_used = static_cast<int>(r.x.size());
  if (!std::isfinite(full.real()) || !std::isfinite(full.imag()))
    throw Error(Errc::evaluation, "conformal block integrand is not finite");
  return out;
}

EvalResult conformal_block(int l, int kappa, cplx lam, cplx tau, const ConformalBlockOptions& opt) {
  const cplx th = theta(lam, tau);
  if (std::abs(th) < 1e-12) throw Error(Errc::pole, "theta(lambda, tau) = 0");
  const EvalResult a = conformal_block_half(l, kappa, lam, tau, opt);
  const EvalResult b = conformal_block_half(l, kappa, -lam, tau, opt);
  EvalResult r;
  r.value = (a.value - b.value) / th;
  r.err_estimate = (a.err_estimate + b.err_estimate) / std::abs(th);
  r.terms_used = a.terms_used + b.terms_used;
  return r;
}

cplx classical_limit_constant(int l, int kappa, cplx tau) {
  const double k = kappa;
  const cplx c = -(std::pow(2.0 * pi, -2.0 / k) * std::exp(pi * I * static_cast<double>(l + 2) / k) *
                   std::sin(2.0 * pi / k)) /
                 (2.0 * std::sin(pi * (l + 1) / k) * std::sin(pi * (l - 1) / k));
  // principal power of the product
  cplx prod = 1.0, pj = e2pi(tau);
  const cplx p = pj;
  for (int j = 1; j < 10000 && std::abs(pj) > 1e-18; ++j, pj *= p) prod *= 1.0 - pj;
  return c * std::pow(prod, -3.0 - 4.0 / k);
}

LimitReport classical_limit_check(int l, int kappa, cplx lam, cplx tau,
                                  const std::vector<cplx>& etas, const Truncation& tr) {
  if (etas.empty()) throw Error(Errc::argument, "empty eta sequence");
  for (std::size_t i = 1; i < etas.size(); ++i)
    if (!(std::abs(etas[i]) < std::abs(etas[i - 1])))
      throw Error(Errc::argument, "eta sequence must decrease in magnitude");
  const cplx rhs = classical_limit_constant(l, kappa, tau) * conformal_block(l, kappa, lam, tau).value;
  const cplx th = theta(lam, tau);
  LimitReport rep;
  for (const cplx eta : etas) {
    const hts::HtsEvaluator H(kappa, tau, eta, tr);
    const cplx d = H.delta(l, lam, hts::Method::regularized).value;
    rep.parameter_sequence.push_back(eta);
    rep.ratio_values.push_back(2.0 * eta * d / th / rhs);
  }
  const auto& r = rep.ratio_values;
  const std::size_t n = r.size();
  rep.extrapolated_limit = r.back();
  if (n >= 3) {
    const double h1 = std::abs(rep.parameter_sequence[n - 2]) / std::abs(rep.parameter_sequence[n - 1]);
    const double a = std::abs(r[n - 3] - r[n - 2]), b = std::abs(r[n - 2] - r[n - 1]);
    if (a > 0 && b > 0 && h1 > 1) {
      const double order = std::log(a / b) / std::log(h1);
      rep.convergence_order_estimate = order;
      const double f = std::pow(h1, order) - 1.0;
      if (f > 1e-12) rep.extrapolated_limit = r[n - 1] + (r[n - 1] - r[n - 2]) / f;
    }
  }
  return rep;
}

MehtaResult mehta_check(int j, cplx eta, cplx lam, const Truncation& tr) {
  if (!(eta.imag() < 0)) throw Error(Errc::domain, "Mehta identity needs Im eta < 0");
  if (j < 0) throw Error(Errc::argument, "j must be non-negative");
  const cplx q = std::exp(-2.0 * pi * I * eta);
  const cplx den = std::sin(pi * (lam - 2.0 * eta)) * std::sin(pi * lam) * std::sin(pi * (lam + 2.0 * eta));
  if (std::abs(den) < 1e-12) throw Error(Errc::pole, "lambda at a zero of the kernel denominator");
  const cplx pre = std::pow(q, -2) / (2.0 * I * std::sqrt(4.0 * I * eta) * den);
  auto V = [&](cplx mu) {
    return pre * std::exp(-I * pi * (lam + mu) * (lam + mu) / (4.0 * eta)) *
           (std::pow(q, -2) * std::cos(pi * (lam + mu)) - std::cos(pi * (lam - mu))) * std::sin(pi * mu);
  };
  double R = tr.line_radius;
  if (!(R > 0)) {
    const double a = pi * std::abs(eta.imag()) / 4.0;
    const double c = pi * (std::abs(eta) * (j + 4) + std::abs(lam.imag()) / 2.0 + std::abs(lam) / 2.0);
    R = 1.25 * (c + std::sqrt(c * c + 4.0 * a * 45.0)) / (2.0 * a);
  }
  const int panels = std::max(4, static_cast<int>(std::ceil(R)));
  cplx val[2];
  for (int pass = 0; pass < 2; ++pass) {
    const Rule r = segment_rule(-R, R, panels << pass);
    cplx s = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      const cplx mu = eta * r.t[i];
      s += eta * r.w[i] * V(mu) * mac::macdonald_m2_value(j, std::exp(-I * pi * mu), q);
    }
    val[pass] = s;
  }
  MehtaResult out;
  out.lhs = std::exp(pi * I * eta * static_cast<double>((j + 2) * (j + 2))) *
            mac::macdonald_m2_value(j, std::exp(pi * I * lam), q);
  out.integral = val[1];
  out.err_estimate = std::abs(val[1] - val[0]);
  out.radius = R;
  out.residual = std::abs(out.lhs - out.integral) / std::abs(out.lhs);
  const cplx lc = std::pow(q, -2) * out.lhs;
  out.corrected = std::abs(lc - out.integral) / std::abs(lc);
  return out;
}

DiffEqnReport diff_eqn_check(int j, const mac::Rational& q, int m_range,
                             const std::vector<cplx>& x_samples) {
  const mac::LaurentPoly P = mac::macdonald_m2(j, q);
  const auto app = ops::T_q_apply(P, q, m_range);
  DiffEqnReport rep;
  auto term = [&](int m) -> const mac::LaurentPoly& { return app.terms[m + m_range].numerator; };
  for (int m = 0; m <= m_range; ++m) {
    mac::LaurentPoly lhs = term(m);
    mac::Rational w = 1;
    if (m > 0) {
      lhs += term(-m);
      w = mac::rpow(q, (j + 2) * m) + mac::rpow(q, -(j + 2) * m);
    }
    const bool ok = lhs == P * app.denominator * w;
    rep.terms.push_back({m, ok});
    rep.all_exact = rep.all_exact && ok;
  }
  // Truncated sums. Literal: weight q^{-m^2/2}, convergent for |q| > 1.
  // Corrected: weight qs^{m^2/2} with qs = 1/q inside the unit disc.
  cplx qd = mac::to_double(q);
  if (std::abs(qd) < 1.0) qd = 1.0 / qd;
  const cplx qs = 1.0 / qd;
  const int M = 60;
  cplx th_lit = 0.0, th_cor = 0.0;
  for (int m = -M; m <= M; ++m) {
    th_lit += std::pow(qd, (j + 2) * m) * std::pow(qd, -0.5 * m * m);
    th_cor += std::pow(qs, (j + 2) * m) * std::pow(qs, 0.5 * m * m);
  }
  rep.literal_residual = 0.0;
  rep.corrected_residual = 0.0;
  for (const cplx x : x_samples) {
    const cplx a = ops::T_q_value(j, x, qd, M, -1);
    const cplx b = th_lit * mac::macdonald_m2_value(j, x, qd);
    rep.literal_residual = std::max(rep.literal_residual, std::abs(a - b) / std::abs(b));
    const cplx c = ops::T_q_value(j, x, qs, M, +1);
    const cplx d = -2.0 * std::pow(qs, -2) * th_cor * mac::macdonald_m2_value(j, x, qs);
    rep.corrected_residual = std::max(rep.corrected_residual, std::abs(c - d) / std::abs(d));
  }
  return rep;
}

OrthogonalityResult orthogonality_check(int l, int j, int kappa, cplx tau, cplx eta,
                                        const Truncation& tr, int samples) {
  if (l < 2 || l > kappa - 2 || j < 2 || j > kappa - 2)
    throw Error(Errc::argument, "orthogonality indices must lie in 2..kappa-2");
  const mac::EllipticMacdonald E(kappa, tau, eta, tr);
  auto value_with = [&](int n) {
    hts::GramOptions go;
    go.samples = n;
    const hts::GramEvaluator G(E.hts(), go);
    std::vector<cplx> g;
    for (const cplx mu : G.nodes())
      g.push_back(E.value(j - 2, std::exp(pi * I * mu)).value * theta(mu, tau));
    return std::make_pair(G.integrate(l, g), G.entry(l, j).value);
  };
  const auto [v1, gram] = value_with(samples);
  const auto [v2, gram2] = value_with(2 * samples);
  (void)gram2;
  const cplx phase = std::exp(pi * I * (4.0 * eta + tau) * static_cast<double>(j * j) /
                              (2.0 * static_cast<double>(kappa)));
  const cplx scale = E.normalization(j - 2) / (theta(4.0 * eta, tau) * theta_dlam(0.0, tau));
  OrthogonalityResult r;
  r.value = v1;
  r.expected = l == j ? phase : cplx(0.0);
  r.gram_scaled = scale * gram;
  r.residual = std::abs(r.value - r.expected);
  r.cross_check = std::abs(r.value - r.gram_scaled) / (std::abs(scale * phase) / (4.0 * std::abs(eta)));
  r.refinement = std::abs(v1 - v2);
  return r;
}

TrigUCheck trig_u_check(cplx eta, double tau_big, int kappa, int l, const Truncation& tr) {
  const std::vector<std::pair<cplx, cplx>> pts = {
      {0.21, 0.13}, {0.37, -0.22}, {cplx(0.11, 0.05), 0.31}, {-0.28, cplx(0.17, -0.04)}, {0.45, 0.08}};
  const cplx T(0.0, tau_big);
  TrigUCheck out{0.0, 0.0, 0.0};
  const ellint::UKernel K(T, T, eta, tr);
  for (const auto& [lam, mu] : pts) {
    const cplx u = K.u(lam, mu);
    const cplx a = ellint::u_trig_degenerate(lam, mu, eta).value;
    const cplx b = ellint::u_trig_degenerate_corrected(lam, mu, eta).value;
    out.literal = std::max(out.literal, std::abs(u - a) / std::abs(u));
    out.corrected = std::max(out.corrected, std::abs(u - b) / std::abs(u));
  }
  if (eta.imag() < 0) {
    const cplx sigma = -2.0 * eta * static_cast<double>(kappa);
    const ellint::UKernel Ks(T, sigma, eta, tr);
    for (const auto& pt : pts) {
      const cplx lam = pt.first;
      const cplx u = Ks.u(lam, 2.0 * eta * static_cast<double>(l));
      const cplx s = ellint::u_trig_semi(lam, l, kappa, eta, tr).value;
      out.semi = std::max(out.semi, std::abs(u - s) / std::abs(u));
    }
  } else {
    out.semi = std::nan("");
  }
  return out;
}

}  // namespace et::limits
